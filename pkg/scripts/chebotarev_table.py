"""Frobenius class frequencies against |C|/|G| for every catalog entry."""

import csv
from dataclasses import dataclass
from pathlib import Path

from _config import parse

from selbergkit.galois import chebotarev_statistics, load_catalog


@dataclass
class Config:
    """Chebotarev frequency table."""

    xmax: int = 10**6
    workers: int = 1
    out: str = "results/chebotarev.csv"


def main(cfg: Config):
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["entry", "class", "count", "fraction", "density", "deviation"])
        for e in load_catalog():
            st = chebotarev_statistics(e, cfg.xmax, workers=cfg.workers)
            dens = st.densities()
            worst = 0.0
            for c, n, f, d in zip(st.classes, st.counts[-1], st.fractions(), dens):
                w.writerow([e.id, c, int(n), f"{float(f):.6f}", f"{float(d):.6f}", f"{float(f) - float(d):+.6f}"])
                worst = max(worst, abs(float(f) - float(d)))
            print(f"{e.id:16s} {e.group.name:3s} classes={len(st.classes)}  max |freq - density| = {worst:.4f}")


if __name__ == "__main__":
    main(parse(Config))
