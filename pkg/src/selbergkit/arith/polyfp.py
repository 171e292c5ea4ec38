"""Splitting types of integer polynomials modulo primes.

Polynomials are coefficient lists in ascending order: x^3 - 2 is [-2, 0, 0, 1].

Two independent routes compute the splitting type of a squarefree f mod p:

* :func:`splitting_type` -- scalar distinct-degree splitting with gcds against
  x^(p^d) - x, in pure Python integers.
* :func:`splitting_types` -- vectorised over an array of primes with numpy. It
  counts the roots R_d of f in F_(p^d) as deg gcd(x^(p^d) - x, f), obtained as
  the nullity of multiplication by x^(p^d) - x on F_p[x]/(f), and recovers the
  number of degree-k factors by Moebius inversion of R_d = sum_{k|d} k c_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import RamifiedPrime

__all__ = [
    "SplittingType",
    "splitting_type",
    "splitting_types",
    "discriminant",
    "count_roots_mod_p",
    "powmod_vec",
    "legendre_vec",
]


@dataclass(frozen=True)
class SplittingType:
    """Degrees of the irreducible factors of f mod p, ascending, with multiplicity."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(int(d) for d in self.degrees)))

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def __str__(self):
        return "{" + ",".join(map(str, self.degrees)) + "}"


# scalar F_p[x] arithmetic ---------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    """Remainder of a by b over F_p (b nonzero, lists ascending)."""
    a = [c % p for c in a]
    _trim(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def _pdivmod(a, b, p):
    a = [c % p for c in a]
    _trim(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 1)
    while a and len(a) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return _trim(q), a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pgcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _derivative(f):
    return [i * c for i, c in enumerate(f)][1:]


def splitting_type(f, p: int) -> SplittingType:
    """Factor degrees of the monic integer polynomial f over F_p.

    Raises :class:`RamifiedPrime` when f mod p is not squarefree, which for
    monic f happens exactly when p divides disc(f).
    """
    f = [int(c) for c in f]
    if f[-1] != 1:
        raise ValueError("polynomial must be monic")
    n = len(f) - 1
    fp = _trim([c % p for c in f])
    if n == 0:
        return SplittingType(())
    if len(_pgcd(fp, _derivative(fp), p)) > 1:
        raise RamifiedPrime(p)
    degrees: list[int] = []
    g = fp
    x = [0, 1]
    h = x
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, g, p)
        t = _pgcd(g, _psub(h, x, p), p)
        if len(t) > 1:
            degrees.extend([d] * ((len(t) - 1) // d))
            g, _ = _pdivmod(g, t, p)
            h = _pmod(h, g, p)
    if len(g) > 1:
        degrees.append(len(g) - 1)
    return SplittingType(tuple(degrees))


def count_roots_mod_p(f, p: int) -> int:
    """Number of distinct roots of f in F_p, by direct scan (an oracle, O(p))."""
    count = 0
    for r in range(p):
        v = 0
        for c in reversed(f):
            v = (v * r + c) % p
        count += v == 0
    return count


def discriminant(f) -> int:
    """Discriminant of an integer polynomial via the Sylvester resultant of f and f'."""
    f = [Fraction(int(c)) for c in f]
    n = len(f) - 1
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        return 1
    df = [i * c for i, c in enumerate(f)][1:]
    m = n - 1
    size = n + m
    a_desc, b_desc = f[::-1], df[::-1]
    rows = []
    for i in range(m):
        rows.append([Fraction(0)] * i + a_desc + [Fraction(0)] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Fraction(0)] * i + b_desc + [Fraction(0)] * (size - m - 1 - i))
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, size):
            if rows[r][c] != 0:
                k = rows[r][c] * inv
                rows[r] = [x - k * y for x, y in zip(rows[r], rows[c])]
    res = det / f[-1]  # Res(f, f') = (-1)^(n(n-1)/2) * lc * disc
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    out = sign * res
    assert out.denominator == 1
    return int(out)


# vectorised F_p[x]/(f) arithmetic over many primes ---------------------------
# Residues are int64 in [0, p). Sums of up to deg f products of residues must fit in
# int64, so p < 2^30 is required for deg f <= 8 (p <= 10^9 is the supported range).


def powmod_vec(base, exp, p):
    """Elementwise base^exp mod p for int64 arrays (exp >= 0)."""
    base = np.asarray(base, dtype=np.int64) % p
    exp = np.asarray(exp, dtype=np.int64).copy()
    result = np.ones_like(base)
    while np.any(exp):
        odd = (exp & 1).astype(bool)
        result = np.where(odd, result * base % p, result)
        base = base * base % p
        exp >>= 1
    return result


def legendre_vec(d: int, p):
    """Kronecker symbol (d/p) for an array of primes p with p not dividing d."""
    p = np.asarray(p, dtype=np.int64)
    out = np.empty(p.shape, dtype=np.int64)
    odd = p != 2
    if np.any(odd):
        po = p[odd]
        e = powmod_vec(np.full(po.shape, d, dtype=np.int64) % po, (po - 1) // 2, po)
        out[odd] = np.where(e == 1, 1, -1)
    if np.any(~odd):
        # (d/2) for odd d: +1 if d = +-1 mod 8, -1 if d = +-3 mod 8
        out[~odd] = 1 if d % 8 in (1, 7) else -1
    return out


class _PolyRing:
    """Batched arithmetic in F_p[x]/(f) for a fixed monic f and an array of primes."""

    def __init__(self, f, p):
        self.n = n = len(f) - 1
        self.p = np.asarray(p, dtype=np.int64)
        self.pc = self.p[:, None]
        # f = x^n + sum c_j x^j, so x^n == -sum c_j x^j
        low = np.array([(-int(c)) for c in f[:-1]], dtype=np.int64)[None, :] % self.pc
        self.low = low
        # rows k = n .. 2n-2: x^k mod f
        table = [np.broadcast_to(low, (self.p.size, n)).copy()]
        for _ in range(n - 2):
            table.append(self.mul_x(table[-1]))
        self.table = table

    def mul(self, a, b):
        n = self.n
        pc = self.pc
        raw = []
        for k in range(2 * n - 1):
            acc = None
            for i in range(max(0, k - n + 1), min(k, n - 1) + 1):
                term = a[:, i] * b[:, k - i]
                acc = term if acc is None else acc + term
            raw.append(acc % self.p)
        out = np.stack(raw[:n], axis=1)
        for k in range(n, 2 * n - 1):
            out += raw[k][:, None] * self.table[k - n]
        return out % pc

    def mul_x(self, a):
        top = a[:, -1:]
        shifted = np.concatenate([np.zeros_like(top), a[:, :-1]], axis=1)
        return (shifted + top * self.low) % self.pc

    def x_pow_p(self):
        """x^p mod f for each prime, by left-to-right binary powering."""
        n = self.n
        B = self.p.size
        result = np.zeros((B, n), dtype=np.int64)
        result[:, 0] = 1
        nbits = int(self.p.max()).bit_length()
        for bit in range(nbits - 1, -1, -1):
            result = self.mul(result, result)
            sel = ((self.p >> bit) & 1).astype(bool)
            if np.any(sel):
                result = np.where(sel[:, None], self.mul_x(result), result)
        return result

    def frobenius_apply(self, g, xp_powers):
        """g(x)^p = g(x^p) since coefficients lie in F_p; xp_powers[j] = x^(p*j) mod f."""
        acc = g[:, 0:1] * xp_powers[0]
        for j in range(1, self.n):
            acc = acc + g[:, j : j + 1] * xp_powers[j]
        return acc % self.pc

    def mult_matrix(self, h):
        """Matrix (B, n, n) whose column j is h * x^j mod f."""
        cols = [h]
        for _ in range(1, self.n):
            cols.append(self.mul_x(cols[-1]))
        return np.stack(cols, axis=2)


def _rank_mod_p(mat, p):
    mat = mat % p[:, None, None]
    B, n, _ = mat.shape
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(n)
    for col in range(n):
        cand = (mat[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not np.any(has):
            continue
        b = np.flatnonzero(has)
        pb = p[b]
        r = rank[b]
        piv = np.argmax(cand[b], axis=1)
        row_r = mat[b, r, :].copy()
        row_p = mat[b, piv, :].copy()
        mat[b, piv, :] = row_r
        mat[b, r, :] = row_p
        inv = powmod_vec(row_p[:, col], pb - 2, pb)
        prow = row_p * inv[:, None] % pb[:, None]
        mat[b, r, :] = prow
        sub = mat[b]
        factor = sub[:, :, col].copy()
        factor[np.arange(b.size), r] = 0
        sub = (sub - factor[:, :, None] * prow[:, None, :] % pb[:, None, None]) % pb[:, None, None]
        mat[b] = sub
        rank[b] += 1
    return rank


def _mobius(n):
    sign, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            sign = -sign
        d += 1
    return -sign if n > 1 else sign


def splitting_types(f, primes) -> np.ndarray:
    """Factor-degree counts of monic f modulo each prime (vectorised).

    Returns an int64 array of shape (len(primes), deg f) whose column k-1 holds
    the number of irreducible factors of degree k. The primes must not divide
    disc(f); this is not checked here.
    """
    f = [int(c) for c in f]
    n = len(f) - 1
    primes = np.asarray(primes, dtype=np.int64)
    B = primes.size
    counts = np.zeros((B, n), dtype=np.int64)
    if B == 0 or n == 0:
        return counts
    if n == 1:
        counts[:, 0] = 1
        return counts
    ring = _PolyRing(f, primes)
    xp = ring.x_pow_p()
    one = np.zeros((B, n), dtype=np.int64)
    one[:, 0] = 1
    xp_powers = [one, xp]
    for _ in range(2, n):
        xp_powers.append(ring.mul(xp_powers[-1], xp))
    x = np.zeros((B, n), dtype=np.int64)
    x[:, 1] = 1
    roots = {}  # R_d = number of roots in F_(p^d)
    g = xp  # x^(p^d)
    for d in range(1, n):
        if d > 1:
            g = ring.frobenius_apply(g, xp_powers)
        h = (g - x) % ring.pc
        roots[d] = n - _rank_mod_p(ring.mult_matrix(h), primes)
    covered = np.zeros(B, dtype=np.int64)
    for k in range(1, n):
        total = np.zeros(B, dtype=np.int64)
        for j in range(1, k + 1):
            if k % j == 0:
                mu = _mobius(k // j)
                if mu:
                    total += mu * roots[j]
        counts[:, k - 1] = total // k
        covered += total
    # whatever degree is left over is a single factor of degree n
    counts[:, n - 1] = (n - covered) // n
    return counts
