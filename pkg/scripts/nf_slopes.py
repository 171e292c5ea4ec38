"""Fit n_F for a list of series and compare with sum e_i^2.

    python scripts/nf_slopes.py --xmax 10000000 --workers 2
"""

import csv
import time
from dataclasses import dataclass, field
from pathlib import Path

from _config import parse

from selbergkit.arith import geometric_checkpoints
from selbergkit.chars import decompose_character, regular_character
from selbergkit.cli import build_source, parse_series_name
from selbergkit.galois import load_catalog
from selbergkit.selberg import conjecture_sum, estimate_nF, nF_from_multiplicities


@dataclass
class Config:
    """Conjecture A slope table."""

    series: list = field(
        default_factory=lambda: [
            "zeta",
            "dirichlet:4:3",
            "dirichlet:5:2",
            "artin:s3_x3m2:std",
            "artin:d4_x4m2:std",
            "zetaK:qi_x2p1",
            "zetaK:s3_x3m2",
            "zetaK:d4_x4m2",
        ]
    )
    xmax: int = 10**7
    window_lo: float = 1e3
    workers: int = 1
    out: str = "results/nf_slopes.csv"


def expected(name):
    """sum e_i^2 from the irreducible decomposition (each Artin L of an irreducible is primitive)."""
    parsed = parse_series_name(name)
    if parsed[0] in ("zeta", "dirichlet", "artin"):
        return 1
    G = load_catalog()[parsed[1]].group
    return nF_from_multiplicities(decompose_character(regular_character(G)).values())


def main(cfg: Config):
    cps = geometric_checkpoints(cfg.xmax, start=2)
    rows = []
    for name in cfg.series:
        t0 = time.perf_counter()
        s = conjecture_sum(build_source(name), xmax=cfg.xmax, checkpoints=cps, workers=cfg.workers)
        est = estimate_nF(s, (cfg.window_lo, cfg.xmax), label=name)
        want = expected(name)
        rows.append([name, want, f"{est.slope:.4f}", est.rounded, f"{est.residual:.4f}", est.conclusive, f"{time.perf_counter() - t0:.1f}"])
        print(f"{name:22s} expect {want:2d}  slope {est.slope:7.4f}  resid {est.residual:.4f}  {'ok' if est.rounded == want else 'MISMATCH'}")
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["series", "expected", "slope", "rounded", "residual", "conclusive", "seconds"])
        w.writerows(rows)


if __name__ == "__main__":
    main(parse(Config))
