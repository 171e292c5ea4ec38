"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from decimal import Decimal, InvalidOperation

from . import __version__
from .errors import DataError, SelbergKitError

MAX_XMAX = 10**9
MAX_LIMIT = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _integer(text: str) -> int:
    """Accept 10000, 1e7, 2.5e6 (anything integral)."""
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def _real(text: str) -> float:
    try:
        return float(Decimal(text.strip()))
    except (InvalidOperation, ValueError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _window(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("window must look like A,B")
    a, b = (_real(p) for p in parts)
    if not a < b:
        raise argparse.ArgumentTypeError("window must satisfy A < B")
    return a, b


def _cap(value: int, cap: int, flag: str, floor: int = 1):
    if value > cap:
        raise UsageError(f"{flag} {value} exceeds the cap {cap:.0e}")
    if value < floor:
        raise UsageError(f"{flag} must be at least {floor}")
    return value


# series names ---------------------------------------------------------------------


def parse_series_name(name: str) -> tuple:
    """zeta | dirichlet:q:i | zetaK:<entry> | artin:<entry>:<char>."""
    parts = name.split(":")
    kind = parts[0]
    if kind == "zeta" and len(parts) == 1:
        return ("zeta",)
    if kind == "dirichlet" and len(parts) == 3:
        try:
            return ("dirichlet", int(parts[1]), int(parts[2]))
        except ValueError:
            pass
    if kind == "zetaK" and len(parts) == 2 and parts[1]:
        return ("zetaK", parts[1])
    if kind == "artin" and len(parts) == 3 and parts[1] and parts[2]:
        return ("artin", parts[1], parts[2])
    raise UsageError(f"bad series name {name!r}; expected zeta, dirichlet:q:i, zetaK:E or artin:E:C")


def _catalog():
    from .galois import load_catalog

    return load_catalog()


def _dirichlet(q, i):
    from .dirichlet import DirichletCharacter

    try:
        return DirichletCharacter(q, i)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_series(name: str, N: int):
    from .artin import artin_series, dedekind_series
    from .dirichlet import zeta_series

    parsed = parse_series_name(name)
    if parsed[0] == "zeta":
        return zeta_series(N)
    if parsed[0] == "dirichlet":
        return _dirichlet(parsed[1], parsed[2]).series(N)
    entry = _catalog()[parsed[1]]
    if parsed[0] == "zetaK":
        return dedekind_series(entry, N)
    return artin_series(entry, _character(entry, parsed[2]), N)


def build_source(name: str):
    from .selberg import ArtinSource, DedekindSource, DirichletSource, ZetaSource

    parsed = parse_series_name(name)
    if parsed[0] == "zeta":
        return ZetaSource()
    if parsed[0] == "dirichlet":
        _dirichlet(parsed[1], parsed[2])
        return DirichletSource(parsed[1], parsed[2])
    entry = _catalog()[parsed[1]]
    if parsed[0] == "zetaK":
        return DedekindSource(entry)
    return ArtinSource(entry, _character(entry, parsed[2]))


def _character(group_or_entry, name):
    G = getattr(group_or_entry, "group", group_or_entry)
    try:
        return G.character(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


# output helpers -------------------------------------------------------------------


def _dump_json(doc, args, fh=None):
    if not args.deterministic:
        doc = dict(doc)
        doc["generated"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    (fh or sys.stdout).write(text)


def _write(path, writer):
    if path in (None, "-"):
        writer(sys.stdout)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer(fh)


def _checkpoints(xmax, per_decade):
    from .arith.primes import geometric_checkpoints

    return geometric_checkpoints(xmax, per_decade=per_decade, start=10) if xmax >= 10 else [xmax]


# subcommands ----------------------------------------------------------------------


def cmd_catalog(args):
    cat = _catalog()
    if args.action == "list":
        rows = [("id", "group", "order", "disc", "field")]
        for e in cat:
            rows.append((e.id, e.group.name, str(e.group.order), str(e.disc), e.field_name))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        for r in rows:
            sys.stdout.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
        return 0
    if not args.entry:
        raise UsageError("catalog show needs an entry id")
    e = cat[args.entry]
    doc = e.summary()
    doc["table"] = {chi.name: [str(v) for v in chi.values] for chi in e.group.characters}
    doc["class_sizes"] = {c.name: c.size for c in e.group.classes}
    doc["ramified_data"] = {
        str(p): {"e": rd.e, "f": rd.f, "g": rd.g(e.group), "note": rd.note} for p, rd in sorted(e.ramified.items())
    }
    _dump_json(doc, args)
    return 0


def cmd_coeffs(args):
    N = _cap(args.limit, MAX_LIMIT, "--limit")
    F = build_series(args.series, N)
    if args.exact:
        _write(args.out, lambda fh: fh.write(json.dumps(F.to_json()) + "\n"))
    else:
        _write(args.out, F.to_csv)
    return 0


def cmd_check(args):
    from .artin import dedekind_quotient, induction_check, restriction_tensor_check, zeta_factorization_check

    N = _cap(args.limit, MAX_LIMIT, "--limit", floor=2)
    entry = _catalog()[args.entry]
    if args.kind == "zeta-factor":
        report = zeta_factorization_check(entry, N)
    elif args.kind == "dedekind":
        result = dedekind_quotient(entry, N)
        report = result.report
        if args.out:
            _write(args.out, result.series.to_csv)
    else:
        if not args.subgroup or not args.char:
            raise UsageError(f"check {args.kind} needs --subgroup and --char")
        try:
            H = entry.group.subgroup(args.subgroup)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        if args.kind == "induction":
            report = induction_check(entry, H, _character(H, args.char), N)
        else:
            report = restriction_tensor_check(entry, H, _character(entry, args.char), N)
    doc = report.to_json()
    if args.kind == "dedekind" or report.details:
        doc["details"] = report.details
    _dump_json(doc, args)
    return 0 if report.passed else 1


def cmd_sum(args):
    from .selberg import conjecture_sum, edge_sum, estimate_nF

    xmax = _cap(args.xmax, MAX_XMAX, "--xmax", floor=2)
    src = build_source(args.series)
    cps = _checkpoints(xmax, args.per_decade)
    if args.kind == "conjA":
        if args.series2:
            raise UsageError("sum conjA takes a single --series")
        res = conjecture_sum(src, xmax=xmax, checkpoints=cps, workers=args.threads)
    elif args.kind == "conjB":
        if not args.series2:
            raise UsageError("sum conjB needs --series2")
        res = conjecture_sum(src, build_source(args.series2), xmax=xmax, checkpoints=cps, workers=args.threads)
    else:
        res = edge_sum(src, args.t, xmax=xmax, checkpoints=cps, workers=args.threads)
    _write(args.out, res.to_csv)
    if args.out not in (None, "-"):
        summary = {"series": res.label, "kind": res.kind, "xmax": xmax, "checkpoints": len(res.checkpoints)}
        last = res.values[-1]
        if res.is_complex:
            summary["final"] = {"re": float(last.real), "im": float(last.imag), "abs": float(abs(last))}
            summary["max_abs"] = float(abs(res.values).max())
        else:
            summary["final"] = float(last)
        if args.kind == "conjA":
            window = args.window or (1e3, float(xmax))
            try:
                summary["nF"] = estimate_nF(res, window).to_json()
            except ValueError as exc:
                summary["nF"] = {"error": str(exc)}
        _dump_json(summary, args)
    return 0


def cmd_chebotarev(args):
    import csv

    from .galois import chebotarev_statistics

    xmax = _cap(args.xmax, MAX_XMAX, "--xmax", floor=100)
    entry = _catalog()[args.entry]
    stats = chebotarev_statistics(entry, xmax, _checkpoints(xmax, args.per_decade), workers=args.threads)

    def write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "class", "count", "fraction", "density", "recip_sum"])
        for r in stats.as_rows():
            w.writerow([r["x"], r["class"], r["count"], repr(float(r["fraction"])), repr(r["density"]), repr(r["recip_sum"])])

    _write(args.out, write)
    if args.out not in (None, "-"):
        fr = stats.fractions()
        _dump_json(
            {
                "entry": entry.id,
                "xmax": xmax,
                "unramified_primes": int(stats.counts[-1].sum()),
                "ramified_primes": int(stats.ramified_counts[-1]),
                "classes": {
                    c: {"count": int(n), "fraction": float(f), "density": s / stats.group_order}
                    for c, n, f, s in zip(stats.classes, stats.counts[-1], fr, stats.sizes)
                },
            },
            args,
        )
    return 0


def cmd_axioms(args):
    from .dirichlet import multiplicativity_failures, ramanujan_report

    N = _cap(args.limit, MAX_LIMIT, "--limit")
    if args.epsilon <= 0:
        raise UsageError("--epsilon must be positive")
    F = build_series(args.series, N)
    mult_limit = min(N, 10**4)
    failures = multiplicativity_failures(F, mult_limit)
    doc = {
        "series": args.series,
        "limit": N,
        "a1": str(F[1]),
        "ramanujan": ramanujan_report(F, args.epsilon).to_json(),
        "multiplicative": {"checked_up_to": mult_limit, "failures": len(failures), "first": list(failures[0]) if failures else None},
    }
    _dump_json(doc, args)
    return 0 if not failures and F[1] == 1 else 1


# parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes for prime sums")
    common.add_argument("--deterministic", action="store_true", help="omit timestamps from JSON output")
    common.add_argument("--out", help="output path (default stdout)")

    p = _Parser(prog="selbergkit", description="Artin L-functions and Selberg-class experiments.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("catalog", parents=[common], help="inspect the Galois catalog")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("entry", nargs="?")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("coeffs", parents=[common], help="Dirichlet coefficients of a series")
    c.add_argument("--series", required=True)
    c.add_argument("--limit", type=_integer, required=True)
    c.add_argument("--exact", action="store_true", help="exact JSON instead of float CSV")
    c.set_defaults(func=cmd_coeffs)

    c = sub.add_parser("check", parents=[common], help="exact L-function identities")
    c.add_argument("kind", choices=["zeta-factor", "induction", "restriction", "dedekind"])
    c.add_argument("--entry", required=True)
    c.add_argument("--subgroup")
    c.add_argument("--char")
    c.add_argument("--limit", type=_integer, default=10_000)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("sum", parents=[common], help="prime sums for Conjectures A and B")
    c.add_argument("kind", choices=["conjA", "conjB", "edge"])
    c.add_argument("--series", required=True)
    c.add_argument("--series2")
    c.add_argument("--t", type=_real, default=0.0)
    c.add_argument("--xmax", type=_integer, required=True)
    c.add_argument("--window", type=_window)
    c.add_argument("--per-decade", type=int, default=16)
    c.set_defaults(func=cmd_sum)

    c = sub.add_parser("chebotarev", parents=[common], help="Frobenius class statistics")
    c.add_argument("--entry", required=True)
    c.add_argument("--xmax", type=_integer, required=True)
    c.add_argument("--per-decade", type=int, default=16)
    c.set_defaults(func=cmd_chebotarev)

    c = sub.add_parser("axioms", parents=[common], help="Euler-product and Ramanujan diagnostics")
    c.add_argument("--series", required=True)
    c.add_argument("--limit", type=_integer, required=True)
    c.add_argument("--epsilon", type=_real, default=0.01)
    c.set_defaults(func=cmd_axioms)
    return p


def execute(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DataError as exc:
        sys.stderr.write(f"data error: {exc}\n")
        return 3
    except SelbergKitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(execute())


if __name__ == "__main__":
    main()
