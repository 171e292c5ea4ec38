"""Tiny helper: expose dataclass fields as --flags."""

import argparse
import dataclasses
from decimal import Decimal


def _int(text):
    return int(Decimal(text))  # allows 1e7


def parse(cls, argv=None):
    p = argparse.ArgumentParser(description=cls.__doc__)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, bool):
            p.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        elif isinstance(default, (list, tuple)):
            p.add_argument(flag, nargs="+", type=type(default[0]) if default else str, default=list(default))
        else:
            p.add_argument(flag, type=_int if isinstance(default, int) else type(default), default=default)
    return cls(**vars(p.parse_args(argv)))
