import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from selbergkit.arith import geometric_checkpoints, iter_prime_segments, prime_partial_sums, sieve_primes


def naive_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, math.isqrt(k) + 1))]


def test_small_cases():
    assert sieve_primes(10).tolist() == [2, 3, 5, 7]
    assert sieve_primes(2).tolist() == [2]
    assert sieve_primes(1).size == 0
    assert sieve_primes(0).size == 0
    assert sieve_primes(-5).size == 0


def test_count_to_ten_million():
    # frozen from an independent bytearray sieve and sympy.primepi
    assert sieve_primes(10**7).size == 664_579


def test_against_trial_division_to_1e5():
    assert sieve_primes(10**5).tolist() == naive_primes(10**5)


@given(st.integers(min_value=0, max_value=3000))
def test_against_trial_division(n):
    assert sieve_primes(n).tolist() == naive_primes(n)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=20000),
    st.integers(min_value=0, max_value=20000),
    st.sampled_from([2, 16, 100, 1024, 4096]),
)
def test_segments_cover_range(lo, span, segment):
    hi = lo + span
    parts = list(iter_prime_segments(lo, hi, segment))
    got = np.concatenate(parts).tolist() if parts else []
    want = [p for p in sieve_primes(hi).tolist() if p >= lo]
    assert got == want
    assert all(part.size for part in parts)


def test_geometric_checkpoints():
    cps = geometric_checkpoints(10**6)
    assert cps[0] == 10 and cps[-1] == 10**6
    assert np.all(np.diff(cps) > 0)
    # 16 per decade over five decades, plus the starting point
    assert cps.size == 5 * 16 + 1
    odd = geometric_checkpoints(12345)
    assert odd[-1] == 12345
    with pytest.raises(ValueError):
        geometric_checkpoints(1)


def test_partial_sums_counts_match_primepi():
    cps = [10, 100, 1000, 5000, 65536, 100000]
    sums, counts = prime_partial_sums(lambda p: 1.0 / p, 100000, cps, block=7919)
    assert counts.tolist() == [int(sympy.primepi(x)) for x in cps]
    for x, s in zip(cps, sums[:, 0]):
        exact = math.fsum(1.0 / p for p in sympy.primerange(2, x + 1))
        assert abs(s - exact) <= 1e-14 * exact


def _recip_and_log(p):
    return np.stack([1.0 / p, np.log(p) / p], axis=1)


@pytest.mark.parametrize("block", [1000, 4096, 1 << 15, 1 << 22])
def test_partial_sums_chunking_invariance(block):
    cps = geometric_checkpoints(300000)
    ref, rc = prime_partial_sums(_recip_and_log, 300000, cps)
    got, gc = prime_partial_sums(_recip_and_log, 300000, cps, block=block, segment=2048)
    assert gc.tolist() == rc.tolist()
    assert np.all(np.abs(got - ref) <= 1e-9 * np.abs(ref))


def test_partial_sums_workers_identical():
    cps = geometric_checkpoints(400000)
    a, ac = prime_partial_sums(_recip_and_log, 400000, cps, block=50000)
    b, bc = prime_partial_sums(_recip_and_log, 400000, cps, block=50000, workers=2)
    assert ac.tolist() == bc.tolist()
    assert np.array_equal(a, b)


def test_partial_sums_rejects_bad_checkpoints():
    with pytest.raises(ValueError):
        prime_partial_sums(lambda p: 1.0 / p, 100, [50, 20])
    with pytest.raises(ValueError):
        prime_partial_sums(lambda p: 1.0 / p, 100, [200])
