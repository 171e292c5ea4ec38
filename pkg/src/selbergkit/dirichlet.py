"""Truncated formal Dirichlet series with exact coefficients.

A series stores a_n for 1 <= n <= limit as cyclotomic numbers; absent indices
are zero. Euler products are assembled from local factors F_p(s) = 1/P(p^-s),
with P a polynomial in T = p^-s and P(0) = 1.

Mixing truncation bounds raises :class:`TruncationMismatch` instead of quietly
truncating to the smaller bound.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .arith.cyclotomic import ONE, ZERO, CyclotomicNumber, embed_complex
from .arith.primes import sieve_primes
from .errors import (
    MissingLocalFactor,
    NonInvertibleSeries,
    NonUnitLocalFactor,
    TruncationMismatch,
)

__all__ = [
    "LocalFactor",
    "DirichletSeries",
    "DirichletCharacter",
    "RamanujanReport",
    "MAX_LOCAL_DEGREE",
    "euler_to_coefficients",
    "series_multiply",
    "series_divide",
    "series_power",
    "local_log_coefficients",
    "local_exp_coefficients",
    "ramanujan_report",
    "local_log_growth",
    "multiplicativity_failures",
    "poly_mul",
    "poly_pow",
    "poly_divmod",
    "poly_inflate",
    "zeta_series",
]

MAX_LOCAL_DEGREE = 8

C = CyclotomicNumber.coerce


# polynomials in T with cyclotomic coefficients (ascending tuples) -----------


def _ptrim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return tuple(a)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _ptrim(out)


def poly_pow(a, k: int):
    out = (ONE,)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_inflate(a, f: int):
    """Substitute T -> T^f."""
    out = [ZERO] * ((len(a) - 1) * f + 1) if a else []
    for i, x in enumerate(a):
        out[i * f] = x
    return _ptrim(out)


def poly_divmod(a, b):
    """Quotient and remainder of polynomials; b must have an invertible leading coefficient."""
    a = list(_ptrim(a))
    b = _ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead_inv = b[-1].inverse() if b[-1] != ONE else ONE
    q = [ZERO] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        c = a[-1] * lead_inv
        shift = len(a) - 1 - db
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - c * bj
        a = list(_ptrim(a))
    return _ptrim(q), tuple(a)


def _poly_str(a):
    terms = []
    for k, c in enumerate(a):
        if not c:
            continue
        cs = str(c)
        if k == 0:
            terms.append(cs)
            continue
        mono = "T" if k == 1 else f"T^{k}"
        if cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class LocalFactor:
    """Euler factor at ``prime``: F_p(s) = 1/P(p^-s) with P = ``denom`` (ascending in T).

    ``prime`` is None for a template applied to every prime not listed
    explicitly.
    """

    prime: int | None
    denom: tuple

    def __post_init__(self):
        denom = _ptrim(C(c) for c in self.denom)
        if len(denom) - 1 > MAX_LOCAL_DEGREE:
            raise ValueError(f"local factor degree {len(denom) - 1} exceeds {MAX_LOCAL_DEGREE}")
        object.__setattr__(self, "denom", denom)

    @classmethod
    def from_ints(cls, prime, coeffs):
        return cls(prime, tuple(CyclotomicNumber.rational(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.denom) - 1

    def check_unit(self):
        if not self.denom or self.denom[0] != ONE:
            raise NonUnitLocalFactor(f"P(0) != 1 for local factor at p={self.prime}: {self}")

    def inverse_series(self, kmax: int) -> list:
        """Coefficients c_0..c_kmax of 1/P(T) as a power series."""
        self.check_unit()
        P = self.denom
        c = [ONE]
        for k in range(1, kmax + 1):
            acc = ZERO
            for i in range(1, min(k, len(P) - 1) + 1):
                if P[i] and c[k - i]:
                    acc = acc + P[i] * c[k - i]
            c.append(-acc)
        return c

    def at(self, prime: int) -> "LocalFactor":
        return LocalFactor(prime, self.denom)

    def __str__(self):
        return _poly_str(self.denom)


class DirichletSeries:
    """Coefficients a_1..a_limit of a formal Dirichlet series sum a_n n^-s."""

    __slots__ = ("limit", "_coeffs", "label", "_keys")

    def __init__(self, limit: int, coeffs: Mapping[int, object] | None = None, label: str = ""):
        self.limit = int(limit)
        self.label = label
        data = {}
        for n, v in (coeffs or {}).items():
            n = int(n)
            if not 1 <= n <= self.limit:
                raise ValueError(f"index {n} outside 1..{self.limit}")
            v = C(v)
            if v:
                data[n] = v
        self._coeffs = data
        self._keys = None

    @classmethod
    def unit(cls, limit: int) -> "DirichletSeries":
        return cls(limit, {1: ONE}, "1")

    def __getitem__(self, n: int) -> CyclotomicNumber:
        return self._coeffs.get(n, ZERO)

    def keys(self) -> list[int]:
        if self._keys is None:
            self._keys = sorted(self._coeffs)
        return self._keys

    def items(self):
        return [(n, self._coeffs[n]) for n in self.keys()]

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, DirichletSeries):
            return NotImplemented
        return self.limit == other.limit and self._coeffs == other._coeffs

    def __mul__(self, other):
        return series_multiply(self, other)

    def __truediv__(self, other):
        return series_divide(self, other)

    def __pow__(self, k: int):
        return series_power(self, k)

    def __repr__(self):
        head = ", ".join(f"{n}: {v}" for n, v in self.items()[:6])
        return f"DirichletSeries(limit={self.limit}, label={self.label!r}, {{{head}, ...}})"

    def first_mismatch(self, other: "DirichletSeries", coprime_to: int | None = None) -> int | None:
        """Smallest n with a_n != b_n (optionally only n coprime to ``coprime_to``)."""
        _check_limits(self, other)
        bad = [
            n
            for n in set(self._coeffs) | set(other._coeffs)
            if self[n] != other[n] and (coprime_to is None or math.gcd(n, coprime_to) == 1)
        ]
        return min(bad) if bad else None

    def restricted(self, coprime_to: int) -> "DirichletSeries":
        return DirichletSeries(
            self.limit,
            {n: v for n, v in self._coeffs.items() if math.gcd(n, coprime_to) == 1},
            self.label,
        )

    def orders(self) -> int:
        m = 1
        for v in self._coeffs.values():
            m = math.lcm(m, v.order)
        return m

    # export -------------------------------------------------------------

    def to_csv(self, fh=None) -> str | None:
        """Columns n, re(a_n), im(a_n) for every n in 1..limit."""
        own = fh is None
        fh = io.StringIO() if own else fh
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "re", "im"])
        for n in range(1, self.limit + 1):
            z = embed_complex(self[n])
            w.writerow([n, repr(z.real + 0.0), repr(z.imag + 0.0)])
        return fh.getvalue() if own else None

    def to_json(self) -> dict:
        m = self.orders()
        return {
            "label": self.label,
            "limit": self.limit,
            "order": m,
            "coeffs": [[n, v.to_json(m)] for n, v in self.items()],
        }

    @classmethod
    def from_json(cls, doc) -> "DirichletSeries":
        if isinstance(doc, str):
            doc = json.loads(doc)
        m = int(doc["order"])
        return cls(
            doc["limit"],
            {int(n): CyclotomicNumber(m, cs) for n, cs in doc["coeffs"]},
            doc.get("label", ""),
        )


def _check_limits(a: DirichletSeries, b: DirichletSeries):
    if a.limit != b.limit:
        raise TruncationMismatch(f"truncation bounds differ: {a.limit} vs {b.limit}")


def _spf_table(N: int) -> np.ndarray:
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in sieve_primes(math.isqrt(N)):
        p = int(p)
        block = spf[p * p :: p]
        block[block == 0] = p
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx
    return spf


def euler_to_coefficients(
    factors: Mapping[int, LocalFactor],
    default: LocalFactor | None,
    N: int,
    label: str = "",
) -> DirichletSeries:
    """Dirichlet coefficients up to N of the Euler product over the given local factors."""
    N = int(N)
    local: dict[int, list] = {}
    for p in sieve_primes(N).tolist():
        lf = factors.get(p, default)
        if lf is None:
            raise MissingLocalFactor(f"no local factor for prime {p}")
        kmax = 1
        while p ** (kmax + 1) <= N:
            kmax += 1
        local[p] = lf.inverse_series(kmax)
    for lf in factors.values():
        lf.check_unit()
    coeffs: list = [None, ONE] + [None] * (N - 1) if N >= 1 else [None]
    spf = _spf_table(N).tolist() if N >= 2 else []
    for n in range(2, N + 1):
        p = spf[n]
        m, e = n // p, 1
        while m % p == 0:
            m //= p
            e += 1
        ape = local[p][e]
        if not ape:
            continue
        am = coeffs[m]
        if am is None:
            continue
        coeffs[n] = ape if m == 1 else ape * am
    return DirichletSeries(N, {n: v for n, v in enumerate(coeffs) if v is not None and n >= 1}, label)


def series_multiply(A: DirichletSeries, B: DirichletSeries) -> DirichletSeries:
    """Dirichlet convolution c_n = sum_{d|n} a_d b_{n/d}, truncated at the common bound."""
    _check_limits(A, B)
    N = A.limit
    out: dict[int, CyclotomicNumber] = {}
    bitems = B.items()
    for d, a in A.items():
        cap = N // d
        for m, b in bitems:
            if m > cap:
                break
            n = d * m
            prod = a * b
            prev = out.get(n)
            out[n] = prod if prev is None else prev + prod
    label = f"({A.label})*({B.label})" if A.label or B.label else ""
    return DirichletSeries(N, out, label)


def series_divide(A: DirichletSeries, B: DirichletSeries) -> DirichletSeries:
    """The unique C with B*C = A up to the common bound; requires b_1 = 1."""
    _check_limits(A, B)
    if B[1] != ONE:
        raise NonInvertibleSeries(f"b_1 = {B[1]} != 1")
    N = A.limit
    c = [ZERO] * (N + 1)
    for n, v in A.items():
        c[n] = v
    btail = [(m, b) for m, b in B.items() if m > 1]
    for d in range(1, N + 1):
        cd = c[d]
        if not cd:
            continue
        cap = N // d
        for m, b in btail:
            if m > cap:
                break
            c[d * m] = c[d * m] - cd * b
    label = f"({A.label})/({B.label})" if A.label or B.label else ""
    return DirichletSeries(N, {n: v for n, v in enumerate(c) if n and v}, label)


def series_power(A: DirichletSeries, k: int) -> DirichletSeries:
    out = DirichletSeries.unit(A.limit)
    for _ in range(k):
        out = series_multiply(out, A)
    out.label = f"({A.label})^{k}"
    return out


def local_log_coefficients(lf: LocalFactor, kmax: int) -> list:
    """b_{p^k}, k = 1..kmax, with log(1/P(T)) = sum_k b_{p^k} T^k."""
    lf.check_unit()
    P = lf.denom
    b = [ZERO]  # b[0] unused
    for k in range(1, kmax + 1):
        # k b_k = -k P_k - sum_{i=1}^{k-1} P_i (k - i) b_{k-i}
        acc = -(P[k] * k) if k < len(P) else ZERO
        for i in range(1, min(k - 1, len(P) - 1) + 1):
            if P[i]:
                acc = acc - P[i] * (b[k - i] * (k - i))
        b.append(acc / k)
    return b[1:]


def local_exp_coefficients(b: Iterable, kmax: int) -> list:
    """Coefficients e_0..e_kmax of exp(sum_k b_k T^k); ``b`` starts at k = 1."""
    b = [ZERO] + [C(x) for x in b]
    e = [ONE]
    for n in range(1, kmax + 1):
        acc = ZERO
        for k in range(1, min(n, len(b) - 1) + 1):
            if b[k]:
                acc = acc + b[k] * e[n - k] * k
        e.append(acc / n)
    return e


@dataclass(frozen=True)
class RamanujanReport:
    epsilon: float
    max_ratio: float
    argmax: int
    limit: int

    def to_json(self):
        return {"epsilon": self.epsilon, "max_ratio": self.max_ratio, "argmax": self.argmax, "limit": self.limit}


def ramanujan_report(F: DirichletSeries, epsilon: float) -> RamanujanReport:
    """max over n <= N of |a_n| / n^epsilon; diagnostic only."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    best, arg = -1.0, 1
    for n, v in F.items():
        r = abs(embed_complex(v)) / n**epsilon
        if r > best:
            best, arg = r, n
    return RamanujanReport(epsilon, max(best, 0.0), arg, F.limit)


def local_log_growth(factors: Mapping[int, LocalFactor], theta: float, N: int) -> dict:
    """Empirical max_{p, p^k <= N} |b_{p^k}| / p^(k theta) over the listed factors."""
    best = {"theta": theta, "max_ratio": 0.0, "prime": None, "k": None}
    for p, lf in sorted(factors.items()):
        kmax = 1
        while p ** (kmax + 1) <= N:
            kmax += 1
        for k, b in enumerate(local_log_coefficients(lf, kmax), start=1):
            r = abs(embed_complex(b)) / p ** (k * theta)
            if r > best["max_ratio"]:
                best.update(max_ratio=r, prime=p, k=k)
    return best


def multiplicativity_failures(F: DirichletSeries, limit: int | None = None) -> list[tuple[int, int]]:
    """All coprime pairs (m, n), 1 < m < n, mn <= limit with a_mn != a_m a_n."""
    limit = F.limit if limit is None else min(limit, F.limit)
    bad = []
    for m in range(2, math.isqrt(limit) + 1):
        am = F[m]
        for n in range(m + 1, limit // m + 1):
            if math.gcd(m, n) == 1 and F[m * n] != am * F[n]:
                bad.append((m, n))
    return bad


def zeta_series(N: int) -> DirichletSeries:
    return euler_to_coefficients({}, LocalFactor.from_ints(None, [1, -1]), N, "zeta")


# Dirichlet characters (Conrey labelling) -------------------------------------


def _factorint(n: int) -> dict[int, int]:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _is_primitive_root(g: int, mod: int, phi: int) -> bool:
    if math.gcd(g, mod) != 1:
        return False
    return all(pow(g, phi // q, mod) != 1 for q in _factorint(phi))


@dataclass(frozen=True)
class DirichletCharacter:
    """The Dirichlet character chi_q(index, .) in Conrey's labelling.

    For odd p^e the generator is the least primitive root modulo p^max(e, 2); for
    2^e, e >= 3, residues are written as +-5^a. Values are zeta_order^k.
    """

    modulus: int
    index: int
    order: int = field(init=False)
    exponents: tuple = field(init=False, repr=False)

    def __post_init__(self):
        q, m = self.modulus, self.index % self.modulus
        if q < 1:
            raise ValueError("modulus must be positive")
        if math.gcd(m, q) != 1:
            raise ValueError(f"index {self.index} is not coprime to {q}")
        # each local component contributes a rational exponent ind_m * ind_n / period
        comps = []
        order = 1
        for p, e in sorted(_factorint(q).items()):
            pe = p**e
            if p == 2:
                if e == 1:
                    continue
                comps.append(("2", e, pe))
                order = math.lcm(order, 2 if e == 2 else 2 ** (e - 2))
            else:
                # a primitive root mod p^2 generates (Z/p^e)^* for every e
                g = next(g for g in range(2, p * p) if _is_primitive_root(g, p * p, p * p - p))
                phi = pe - pe // p
                comps.append(("odd", (g, phi), pe))
                order = math.lcm(order, phi)
        exps = [-1] * q
        logs = []
        for kind, data, pe in comps:
            if kind == "odd":
                g, phi = data
                table = {}
                x = 1
                for k in range(phi):
                    table[x] = k
                    x = x * g % pe
                logs.append((kind, data, pe, table))
            else:
                e = data
                table = {}
                x = 1
                for a in range(max(1, 2 ** (e - 2))):
                    table[x] = (0, a)
                    table[(-x) % pe] = (1, a)
                    x = x * 5 % pe
                logs.append((kind, data, pe, table))

        def frac(n):
            tot = Fraction(0)
            for kind, data, pe, table in logs:
                if kind == "odd":
                    tot += Fraction(table[m % pe] * table[n % pe], data[1])
                else:
                    e = data
                    sm, am = table[m % pe]
                    sn, an = table[n % pe]
                    tot += Fraction(sm * sn, 2)
                    if e >= 3:
                        tot += Fraction(am * an, 2 ** (e - 2))
            return tot

        for n in range(q):
            if math.gcd(n, q) == 1:
                f = frac(n)
                k = f * order
                assert k.denominator == 1
                exps[n] = int(k) % order
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponents", tuple(exps))

    def __call__(self, n: int) -> CyclotomicNumber:
        k = self.exponents[n % self.modulus]
        return ZERO if k < 0 else CyclotomicNumber.zeta(self.order, k)

    def values_complex(self, n) -> np.ndarray:
        """Vectorised embedded values at an integer array n."""
        exps = np.asarray(self.exponents, dtype=np.int64)[np.asarray(n, dtype=np.int64) % self.modulus]
        vals = np.exp(2j * np.pi * exps / self.order)
        return np.where(exps < 0, 0, vals)

    def local_factor(self, p: int) -> LocalFactor:
        return LocalFactor(p, (ONE, -self(p)))

    def series(self, N: int) -> DirichletSeries:
        default = None
        factors = {p: self.local_factor(p) for p in sieve_primes(N).tolist()}
        return euler_to_coefficients(factors, default, N, f"dirichlet:{self.modulus}:{self.index}")
