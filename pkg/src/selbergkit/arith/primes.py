"""Segmented sieve of Eratosthenes and ordered reductions over prime ranges.

Only a single odd-only segment bitmap is resident at a time, so enumerating the
primes up to 10^9 costs one segment of memory plus whatever the caller keeps.

:func:`prime_partial_sums` is the engine behind every sum over p <= x in the
package. The integer range is cut into fixed-size blocks; each block is sieved
and reduced independently (optionally in worker processes), and the block
results are merged in ascending order, so the output does not depend on the
number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

__all__ = [
    "sieve_primes",
    "iter_prime_segments",
    "small_primes",
    "prime_partial_sums",
    "geometric_checkpoints",
    "DEFAULT_SEGMENT",
    "DEFAULT_BLOCK",
]

DEFAULT_SEGMENT = 1 << 21
DEFAULT_BLOCK = 1 << 22


def small_primes(n: int) -> np.ndarray:
    """Primes <= n by a plain (unsegmented) sieve; used for base primes."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(n) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


def iter_prime_segments(lo: int, hi: int, segment: int = DEFAULT_SEGMENT):
    """Yield ascending arrays of the primes p with lo <= p <= hi, one per segment."""
    lo = max(lo, 2)
    if hi < lo:
        return
    if lo == 2:
        yield np.array([2], dtype=np.int64)
        lo = 3
        if hi < 3:
            return
    base = small_primes(math.isqrt(hi))[1:]  # odd base primes
    span = 2 * (segment // 2)
    start = lo | 1  # first odd number >= lo
    while start <= hi:
        stop = min(start + span, hi + 1)  # exclusive
        n_odd = (stop - start + 1) // 2
        flags = np.ones(n_odd, dtype=bool)
        for q in base:
            q = int(q)
            qq = q * q
            if qq >= stop:
                break
            first = max(qq, ((start + q - 1) // q) * q)
            if first % 2 == 0:
                first += q
            flags[(first - start) // 2 :: q] = False
        out = start + 2 * np.flatnonzero(flags).astype(np.int64)
        if out.size:
            yield out
        start = stop if stop % 2 else stop + 1


def sieve_primes(limit: int, segment: int = DEFAULT_SEGMENT) -> np.ndarray:
    """All primes <= limit in ascending order (empty for limit < 2)."""
    limit = int(limit)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    parts = list(iter_prime_segments(2, limit, segment))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def geometric_checkpoints(xmax: int, per_decade: int = 16, start: int = 10) -> np.ndarray:
    """Integer checkpoints floor(10^(k/per_decade)) in [start, xmax], always ending at xmax."""
    xmax = int(xmax)
    if xmax < 2:
        raise ValueError("xmax must be at least 2")
    top = math.log10(xmax)
    k0 = math.ceil(math.log10(max(start, 2)) * per_decade - 1e-9)
    pts = set()
    k = k0
    while k / per_decade <= top + 1e-12:
        x = int(math.floor(10 ** (k / per_decade) + 1e-6))
        if x <= xmax:
            pts.add(x)
        k += 1
    pts.add(xmax)
    return np.array(sorted(pts), dtype=np.int64)


def _as_columns(values, n):
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    if values.shape[0] != n:
        raise ValueError("kernel returned the wrong number of rows")
    return values


def _block_pieces(kernel, segment, block):
    """Reduce one block [lo, hi] into partial sums split at the given cuts."""
    lo, hi, cuts = block
    parts = list(iter_prime_segments(lo, hi, segment))
    primes = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    terms = _as_columns(kernel(primes), primes.size) if primes.size else None
    bounds = np.searchsorted(primes, np.asarray(cuts, dtype=np.int64), side="right")
    pieces = []
    prev = 0
    for b in list(bounds) + [primes.size]:
        b = int(b)
        if terms is None or b == prev:
            pieces.append((None, b - prev))
        else:
            seg = terms[prev:b]
            pieces.append(([math.fsum(seg[:, j].tolist()) for j in range(seg.shape[1])], b - prev))
        prev = b
    return pieces


def prime_partial_sums(
    kernel,
    xmax: int,
    checkpoints,
    *,
    workers: int = 1,
    block: int = DEFAULT_BLOCK,
    segment: int = DEFAULT_SEGMENT,
    lo: int = 2,
):
    """Partial sums of per-prime terms at each checkpoint.

    ``kernel(primes)`` maps an ascending int64 array of primes to an array of
    shape (n,) or (n, k) of float terms. Returns ``(sums, counts)`` where
    ``sums[i, j]`` is the sum of column j over primes lo <= p <= checkpoints[i]
    and ``counts[i]`` the number of such primes.
    """
    xmax = int(xmax)
    cps = np.asarray(checkpoints, dtype=np.int64)
    if cps.size and (np.any(np.diff(cps) <= 0) or cps[-1] > xmax):
        raise ValueError("checkpoints must be strictly ascending and <= xmax")
    blocks = []
    start = lo
    while start <= xmax:
        stop = min(start + block - 1, xmax)
        inside = cps[(cps >= start) & (cps <= stop)]
        blocks.append((start, stop, inside.tolist()))
        start = stop + 1

    fn = partial(_block_pieces, kernel, segment)
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, blocks))
    else:
        results = [fn(b) for b in blocks]

    ncol = None
    for res in results:
        for sums, _ in res:
            if sums is not None:
                ncol = len(sums)
                break
        if ncol is not None:
            break
    ncol = ncol or 1

    acc = [[] for _ in range(ncol)]
    count = 0
    out_sums = np.zeros((cps.size, ncol))
    out_counts = np.zeros(cps.size, dtype=np.int64)
    idx = 0
    # cps below lo have empty sums
    while idx < cps.size and cps[idx] < lo:
        idx += 1
    for (bstart, bstop, cuts), res in zip(blocks, results):
        for i, (sums, n) in enumerate(res):
            if sums is not None:
                for j in range(ncol):
                    acc[j].append(sums[j])
            count += n
            if i < len(cuts):
                out_sums[idx] = [math.fsum(a) for a in acc]
                out_counts[idx] = count
                idx += 1
    return out_sums, out_counts
