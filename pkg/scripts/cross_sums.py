"""Cross sums sum a_p conj(b_p)/p for pairs of distinct primitive series.

The dirichlet:4:3 / artin:qi_x2p1:sgn pair is one L-function written two
ways; it is kept as a control whose sum grows like loglog x.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

from _config import parse

from selbergkit.cli import build_source
from selbergkit.selberg import conjecture_sum


@dataclass
class Config:
    """Conjecture B(ii) probe."""

    pairs: list = field(
        default_factory=lambda: [
            "zeta,dirichlet:4:3",
            "zeta,artin:s3_x3m2:std",
            "dirichlet:4:3,artin:qi_x2p1:sgn",
            "artin:s3_x3m2:sign,artin:s3_x3m2:std",
            "artin:d4_x4m2:std,artin:s3_x3m2:std",
        ]
    )
    xmax: int = 10**7
    workers: int = 1
    out: str = "results/cross_sums.csv"


def main(cfg: Config):
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["F", "G", "final_re", "final_im", "max_abs"])
        for pair in cfg.pairs:
            a, b = pair.split(",")
            s = conjecture_sum(build_source(a), build_source(b), xmax=cfg.xmax, workers=cfg.workers)
            last, peak = s.values[-1], float(abs(s.values).max())
            w.writerow([a, b, f"{last.real:.6f}", f"{last.imag:.6f}", f"{peak:.6f}"])
            print(f"{a:22s} x {b:22s} final {last.real:+.4f}{last.imag:+.4f}i  max|.| {peak:.4f}")


if __name__ == "__main__":
    main(parse(Config))
