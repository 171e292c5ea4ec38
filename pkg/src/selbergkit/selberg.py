"""Numerical probes of Selberg's conjectures over prime-indexed sums.

Sources stream a_p for an array of primes without ever building the full
coefficient list. Sums are accumulated by :func:`prime_partial_sums`, so the
checkpoint values do not depend on the number of workers.

Conjecture A predicts sum_{p<=x} |a_p|^2/p = n_F loglog x + O(1) with n_F a
positive integer; :func:`estimate_nF` fits that slope by least squares in
loglog x. The fits are evidence tables only.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .arith.cyclotomic import embed_complex
from .arith.primes import geometric_checkpoints, prime_partial_sums
from .artin import _ramified_charpoly, resolve_character
from .dirichlet import DirichletCharacter, DirichletSeries
from .errors import InsufficientCoefficients

__all__ = [
    "ZetaSource",
    "DirichletSource",
    "ArtinSource",
    "DedekindSource",
    "SeriesSource",
    "SumSeries",
    "NFEstimate",
    "conjecture_sum",
    "edge_sum",
    "estimate_nF",
    "nF_from_multiplicities",
    "chebotarev_decomposition",
    "INCONCLUSIVE_BAND",
    "as_source",
]

INCONCLUSIVE_BAND = 0.35


# coefficient sources --------------------------------------------------------------


class ZetaSource:
    label = "zeta"
    limit = None

    def __call__(self, primes):
        return np.ones(primes.size, dtype=np.complex128)


class DirichletSource:
    limit = None

    def __init__(self, modulus: int, index: int):
        chi = DirichletCharacter(modulus, index)
        self.modulus = modulus
        self.label = f"dirichlet:{modulus}:{index}"
        self.table = np.array([embed_complex(chi(n)) for n in range(modulus)], dtype=np.complex128)

    def __call__(self, primes):
        return self.table[primes % self.modulus]


class ArtinSource:
    """a_p = chi(sigma_p) at unramified p; the trace on V^{I_p} at ramified p.

    With ``skip_ramified`` the ramified primes contribute 0 (no fixtures needed).
    """

    limit = None

    def __init__(self, entry, chi, skip_ramified: bool = False):
        chi = resolve_character(entry.group, chi)
        self.label = f"artin:{entry.id}:{chi.name}"
        self.resolver = entry._resolver
        self.table = np.array([embed_complex(v) for v in chi.values], dtype=np.complex128)
        self.ramified = {}
        for p in entry.bad_primes:
            if skip_ramified:
                self.ramified[p] = 0j
                continue
            P = _ramified_charpoly(entry, chi, p)  # raises MissingRamifiedData
            self.ramified[p] = -embed_complex(P[1]) if len(P) > 1 else 0j

    def __call__(self, primes):
        cls = self.resolver.classify(primes)
        out = self.table[np.maximum(cls, 0)]
        for p, v in self.ramified.items():
            out[primes == p] = v
        return out


class DedekindSource:
    """a_p of zeta_K: |G| when sigma_p = 1, else 0; g when f = 1 at ramified p."""

    limit = None

    def __init__(self, entry):
        self.label = f"zetaK:{entry.id}"
        self.resolver = entry._resolver
        self.order = entry.group.order
        self.ramified = {}
        for p in entry.bad_primes:
            _, f, g = entry.local_fg(p)
            self.ramified[p] = float(g) if f == 1 else 0.0

    def __call__(self, primes):
        cls = self.resolver.classify(primes)
        out = np.where(cls == 0, float(self.order), 0.0).astype(np.complex128)
        for p, v in self.ramified.items():
            out[primes == p] = v
        return out


class SeriesSource:
    """a_p read from a materialized DirichletSeries; cannot reach past its limit."""

    def __init__(self, F: DirichletSeries):
        self.label = F.label or "series"
        self.limit = F.limit
        self.values = np.zeros(F.limit + 1, dtype=np.complex128)
        for n, v in F.items():
            self.values[n] = embed_complex(v)

    def __call__(self, primes):
        return self.values[primes]


def as_source(F):
    if isinstance(F, DirichletSeries):
        return SeriesSource(F)
    if callable(F):
        return F
    raise TypeError(f"cannot use {type(F).__name__} as a coefficient source")


# kernels (module level so they pickle) ----------------------------------------------


class _SquareKernel:
    def __init__(self, src):
        self.src = src

    def __call__(self, primes):
        a = self.src(primes)
        return (a.real**2 + a.imag**2) / primes


class _CrossKernel:
    def __init__(self, src, src2, t: float = 0.0):
        self.src, self.src2, self.t = src, src2, t

    def __call__(self, primes):
        a = self.src(primes)
        if self.src2 is not None:
            a = a * np.conj(self.src2(primes))
        w = a / primes
        if self.t:
            w = w * np.exp(-1j * self.t * np.log(primes.astype(np.float64)))
        return np.stack([w.real, w.imag], axis=1)


# results --------------------------------------------------------------------------


@dataclass
class SumSeries:
    label: str
    checkpoints: np.ndarray
    values: np.ndarray  # real for conjA/chebotarev, complex for conjB/edge
    kind: str
    counts: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    KINDS = ("conjA", "conjB", "chebotarev", "edge")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        self.checkpoints = np.asarray(self.checkpoints, dtype=np.int64)
        self.values = np.asarray(self.values)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def to_csv(self, fh=None):
        buf = fh if fh is not None else io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        counts = self.counts if self.counts is not None else [""] * len(self.checkpoints)
        if self.is_complex:
            w.writerow(["x", "re", "im", "abs", "arg", "terms"])
            for x, v, c in zip(self.checkpoints.tolist(), self.values.tolist(), list(counts)):
                w.writerow([x, repr(v.real), repr(v.imag), repr(abs(v)), repr(math.atan2(v.imag, v.real)), c])
        else:
            w.writerow(["x", "value", "terms"])
            for x, v, c in zip(self.checkpoints.tolist(), self.values.tolist(), list(counts)):
                w.writerow([x, repr(float(v)), c])
        if fh is None:
            return buf.getvalue()
        return None


@dataclass
class NFEstimate:
    slope: float
    rounded: int
    residual: float
    window: tuple
    intercept: float = 0.0
    points: int = 0
    label: str = ""

    @property
    def conclusive(self) -> bool:
        return abs(self.slope - self.rounded) <= INCONCLUSIVE_BAND

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "slope": self.slope,
            "rounded": self.rounded,
            "intercept": self.intercept,
            "residual": self.residual,
            "window": list(self.window),
            "points": self.points,
            "conclusive": self.conclusive,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# operations -----------------------------------------------------------------------


def _prepare(sources, xmax, checkpoints):
    xmax = int(xmax)
    if xmax < 2:
        raise ValueError("xmax must be at least 2")
    for s in sources:
        if s is not None and s.limit is not None and s.limit < xmax:
            raise InsufficientCoefficients(f"{s.label} only has coefficients up to {s.limit}, need {xmax}")
    if checkpoints is None:
        checkpoints = geometric_checkpoints(xmax, start=2) if xmax >= 10 else np.array([xmax])
    return xmax, np.asarray(checkpoints, dtype=np.int64)


def conjecture_sum(F, F2=None, *, xmax: int, checkpoints=None, workers: int = 1) -> SumSeries:
    """sum_{p<=x} a_p(F) conj(a_p(F2))/p at each checkpoint; |a_p(F)|^2/p when F2 is None."""
    src = as_source(F)
    src2 = None if F2 is None else as_source(F2)
    xmax, cps = _prepare([src, src2], xmax, checkpoints)
    if src2 is None:
        sums, counts = prime_partial_sums(_SquareKernel(src), xmax, cps, workers=workers)
        return SumSeries(src.label, cps, sums[:, 0], "conjA", counts)
    sums, counts = prime_partial_sums(_CrossKernel(src, src2), xmax, cps, workers=workers)
    return SumSeries(f"{src.label} x {src2.label}", cps, sums[:, 0] + 1j * sums[:, 1], "conjB", counts)


def edge_sum(F, t: float = 0.0, *, xmax: int, checkpoints=None, workers: int = 1) -> SumSeries:
    """sum_{p<=x} a_p(F) / p^(1+it) at each checkpoint."""
    src = as_source(F)
    xmax, cps = _prepare([src], xmax, checkpoints)
    sums, counts = prime_partial_sums(_CrossKernel(src, None, float(t)), xmax, cps, workers=workers)
    return SumSeries(src.label, cps, sums[:, 0] + 1j * sums[:, 1], "edge", counts, {"t": float(t)})


def estimate_nF(series: SumSeries, window=None, label: str | None = None) -> NFEstimate:
    """Least-squares slope of the series against loglog x over the window."""
    x = series.checkpoints.astype(np.float64)
    y = np.asarray(series.values.real if series.is_complex else series.values, dtype=np.float64)
    lo, hi = window if window is not None else (1e3, float(x[-1]))
    if lo <= math.e:
        raise ValueError("window must start above e so that loglog x is positive")
    mask = (x >= lo) & (x <= hi)
    if mask.sum() < 4:
        raise ValueError(f"window [{lo:g}, {hi:g}] holds {int(mask.sum())} checkpoints; need at least 4")
    u = np.log(np.log(x[mask]))
    if u[-1] - u[0] < 0.5:
        raise ValueError(f"window spans {u[-1] - u[0]:.3f} in loglog x; need at least 0.5")
    A = np.stack([u, np.ones_like(u)], axis=1)
    (slope, intercept), *_ = np.linalg.lstsq(A, y[mask], rcond=None)
    resid = float(np.max(np.abs(y[mask] - slope * u - intercept)))
    return NFEstimate(float(slope), int(round(slope)), resid, (lo, hi), float(intercept), int(mask.sum()), label or series.label)


def nF_from_multiplicities(e) -> int:
    """n_F = sum e_i^2 for F = prod F_i^{e_i} with distinct primitive F_i."""
    e = [int(v) for v in e]
    if not e or any(v < 1 for v in e):
        raise ValueError("multiplicities must be a nonempty list of positive integers")
    return sum(v * v for v in e)


def chebotarev_decomposition(stats, chi, group) -> SumSeries:
    """sum_C |chi(g_C)|^2 recip_sum_C(x): the class-by-class form of the conjA sum over unramified p."""
    chi = resolve_character(group, chi)
    w = np.array([abs(embed_complex(v)) ** 2 for v in chi.values])
    vals = stats.recip_sums @ w
    return SumSeries(f"chebotarev:{stats.entry}:{chi.name}", stats.checkpoints, vals, "chebotarev", stats.counts.sum(axis=1))

