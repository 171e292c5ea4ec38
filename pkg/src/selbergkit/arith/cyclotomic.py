"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored in the power basis 1, z, ..., z^(phi(m)-1) with
z = exp(2*pi*i/m), reduced modulo the m-th cyclotomic polynomial. The
representation is canonical for a fixed order, so equality within an order is
coefficient-wise. Elements of different orders are combined by lifting both to
Q(zeta_lcm).

Coefficients are Python ints where possible and ``Fraction`` otherwise; the two
compare and hash consistently, and keeping ints avoids most Fraction overhead.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "CyclotomicNumber",
    "cyclo_reduce",
    "cyclotomic_polynomial",
    "embed_complex",
    "totient",
    "ZERO",
    "ONE",
]


def _q(x):
    """Normalise a rational-like value to int or Fraction."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        x = Fraction(x)
    elif not isinstance(x, Fraction):
        if isinstance(x, Rational):
            x = Fraction(x.numerator, x.denominator)
        elif isinstance(x, float) and x.is_integer():
            return int(x)
        else:
            raise TypeError(f"expected an exact rational, got {type(x).__name__}")
    return x.numerator if x.denominator == 1 else x


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    result, n, d = m, m, 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            result -= result // d
        d += 1
    if n > 1:
        result -= result // n
    return result


def _mobius(n: int) -> int:
    sign, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            sign = -sign
        d += 1
    return -sign if n > 1 else sign


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # integer polynomials, ascending coefficients, den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Row k is z^k (k < m) in the power basis, as sparse (index, coeff) pairs."""
    phi = totient(m)
    cp = cyclotomic_polynomial(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple((j, c) for j, c in enumerate(cur) if c))
        # multiply by z, then eliminate z^phi using the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_weights(m: int) -> tuple[Fraction, ...]:
    # Tr(z^k)/phi(m) = mu(m/g)/phi(m/g), g = gcd(k, m); independent of the ambient order
    out = []
    for k in range(totient(m)):
        r = m // math.gcd(k, m)
        out.append(Fraction(_mobius(r), totient(r)))
    return tuple(out)


@lru_cache(maxsize=None)
def _roots(m: int) -> tuple[complex, ...]:
    out = []
    for k in range(m):
        if (4 * k) % m == 0:
            out.append((1, 1j, -1, -1j)[(4 * k) // m])
        else:
            out.append(cmath.exp(2j * math.pi * k / m))
    return tuple(out)


def _reduce_raw(m: int, raw) -> tuple:
    phi = totient(m)
    table = _reduction_table(m)
    out = [0] * phi
    for k, c in enumerate(raw):
        if c:
            for j, t in table[k % m]:
                out[j] += c * t
    return tuple(_q(c) for c in out)


class CyclotomicNumber:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(_q(c) for c in coeffs)
        if order < 1:
            raise ValueError("order must be positive")
        if len(coeffs) != totient(order):
            raise ValueError(
                f"expected {totient(order)} coefficients for order {order}, got {len(coeffs)}"
            )
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    # constructors -----------------------------------------------------------

    @classmethod
    def _raw(cls, order, coeffs):
        # trusted path: coeffs already normalised and of the right length
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "CyclotomicNumber":
        return cls._raw(1, (_q(q),))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CyclotomicNumber":
        """The root of unity exp(2*pi*i*k/m)."""
        raw = [0] * m
        raw[k % m] = 1
        return cls._raw(m, _reduce_raw(m, raw))

    @classmethod
    def coerce(cls, x) -> "CyclotomicNumber":
        if isinstance(x, CyclotomicNumber):
            return x
        return cls.rational(x)

    @classmethod
    def from_json(cls, value, order: int = 1) -> "CyclotomicNumber":
        """Parse a rational (int or "p/q") or a list of power-basis coefficients."""
        if isinstance(value, (list, tuple)):
            return cls(order, value)
        return cls.rational(value)

    def to_json(self, order: int | None = None) -> list[str]:
        coeffs = self.lift(order).coeffs if order else self.coeffs
        return [str(c) for c in coeffs]

    # structure --------------------------------------------------------------

    def lift(self, order: int) -> "CyclotomicNumber":
        """Re-express in Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        step = order // self.order
        raw = [0] * order
        for k, c in enumerate(self.coeffs):
            raw[k * step] = c
        return CyclotomicNumber._raw(order, _reduce_raw(order, raw))

    def _common(self, other):
        if not isinstance(other, CyclotomicNumber):
            try:
                other = CyclotomicNumber.rational(other)
            except TypeError:
                return None, None
        if other.order == self.order:
            return self, other
        m = math.lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and isinstance(self.coeffs[0], int)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber._raw(a.order, tuple(_q(x + y) for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber._raw(a.order, tuple(_q(x - y) for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, CyclotomicNumber):
            try:
                q = _q(other)
            except TypeError:
                return NotImplemented
            return CyclotomicNumber._raw(self.order, tuple(_q(x * q) for x in self.coeffs))
        if other.order == 1:
            q = other.coeffs[0]
            return CyclotomicNumber._raw(self.order, tuple(_q(x * q) for x in self.coeffs))
        if self.order == 1:
            q = self.coeffs[0]
            return CyclotomicNumber._raw(other.order, tuple(_q(x * q) for x in other.coeffs))
        a, b = self._common(other)
        m = a.order
        raw = [0] * m
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bnz:
                    raw[(i + j) % m] += x * y
        return CyclotomicNumber._raw(m, _reduce_raw(m, raw))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse, by solving the multiplication-matrix system over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            return CyclotomicNumber.rational(Fraction(1) / self.coeffs[0])
        m, phi = self.order, len(self.coeffs)
        basis = [CyclotomicNumber.zeta(m, j) for j in range(phi)]
        # column j is self * z^j
        cols = [(self * e).coeffs for e in basis]
        mat = [[Fraction(cols[j][i]) for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            inv = 1 / mat[c][c]
            mat[c] = [v * inv for v in mat[c]]
            for r in range(phi):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[c])]
        return CyclotomicNumber(m, [mat[i][phi] for i in range(phi)])

    def __truediv__(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order == 1:
                other = other.coeffs[0]
            else:
                return self * other.inverse()
        try:
            q = _q(other)
        except TypeError:
            return NotImplemented
        if q == 0:
            raise ZeroDivisionError("division by zero")
        inv = Fraction(1, q) if isinstance(q, int) else 1 / q
        return CyclotomicNumber._raw(self.order, tuple(_q(x * inv) for x in self.coeffs))

    def __rtruediv__(self, other):
        return CyclotomicNumber.coerce(other) * self.inverse()

    def conj(self) -> "CyclotomicNumber":
        """Complex conjugate, z -> z^-1."""
        if self.order <= 2:
            return self
        m = self.order
        raw = [0] * m
        for k, c in enumerate(self.coeffs):
            raw[(-k) % m] = c
        return CyclotomicNumber._raw(m, _reduce_raw(m, raw))

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CyclotomicNumber):
            try:
                other = CyclotomicNumber.rational(other)
            except TypeError:
                return NotImplemented
        if other.order == self.order:
            return self.coeffs == other.coeffs
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                w = _trace_weights(self.order)
                self._hash = hash(sum(c * t for c, t in zip(self.coeffs, w)))
        return self._hash

    # numeric views ----------------------------------------------------------

    def __complex__(self):
        return embed_complex(self)

    def __abs__(self):
        return abs(embed_complex(self))

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {list(map(str, self.coeffs))})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{self.order}" + (f"^{k}" if k > 1 else "")
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append("-" + z)
                else:
                    terms.append(f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ")


ZERO = CyclotomicNumber.rational(0)
ONE = CyclotomicNumber.rational(1)


def cyclo_reduce(order: int, raw) -> CyclotomicNumber:
    """Canonical element of Q(zeta_order) from coefficients on 1, z, ..., z^(order-1).

    ``raw`` may be longer than ``order``; exponents are taken modulo ``order``.
    """
    return CyclotomicNumber._raw(order, _reduce_raw(order, [_q(c) for c in raw]))


def embed_complex(z: CyclotomicNumber) -> complex:
    """Evaluate at zeta_m = exp(2*pi*i/m) in double precision."""
    roots = _roots(z.order)
    re = math.fsum(float(c) * roots[k].real for k, c in enumerate(z.coeffs) if c)
    im = math.fsum(float(c) * roots[k].imag for k, c in enumerate(z.coeffs) if c)
    return complex(re, im)
