import random

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from selbergkit.arith import SplittingType, discriminant, sieve_primes, splitting_type, splitting_types
from selbergkit.arith.polyfp import count_roots_mod_p, legendre_vec
from selbergkit.errors import RamifiedPrime

X = sympy.Symbol("x")
SMALL_PRIMES = sieve_primes(1000).tolist()


def sympy_degrees(f, p):
    poly = sympy.Poly(list(reversed(f)), X, modulus=p)
    _, factors = poly.factor_list()
    return tuple(sorted(fac.degree() for fac, mult in factors for _ in range(mult)))


def test_examples():
    assert splitting_type([-2, 0, 0, 1], 5) == SplittingType((1, 2))
    assert splitting_type([-2, 0, 0, 1], 31) == SplittingType((1, 1, 1))
    assert splitting_type([1, 0, 1], 3) == SplittingType((2,))
    assert str(splitting_type([-2, 0, 0, 1], 5)) == "{1,2}"


def test_ramified_prime_raises():
    with pytest.raises(RamifiedPrime):
        splitting_type([-2, 0, 0, 1], 3)
    with pytest.raises(RamifiedPrime):
        splitting_type([1, 0, 1], 2)
    with pytest.raises(ValueError):
        splitting_type([-2, 0, 0, 1], 2)


@pytest.mark.parametrize(
    "f",
    [[-2, 0, 0, 1], [-2, 0, 0, 0, 1], [1, 1, 1, 1, 1], [-1, -3, 0, 1], [1, 0, 1], [-1, -1, 1], [3, -1, 0, 2, 0, 1]],
)
def test_discriminant_matches_sympy(f):
    assert discriminant(f) == int(sympy.discriminant(sympy.Poly(list(reversed(f)), X)))


def test_catalog_discriminants():
    assert discriminant([-2, 0, 0, 1]) == -108
    assert discriminant([-2, 0, 0, 0, 1]) == -2048
    assert discriminant([1, 1, 1, 1, 1]) == 125
    assert discriminant([-1, -3, 0, 1]) == 81


monic = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.lists(st.integers(min_value=-20, max_value=20), min_size=n, max_size=n).map(lambda c: c + [1])
)


@settings(max_examples=150, deadline=None)
@given(monic, st.sampled_from(SMALL_PRIMES))
def test_scalar_splitting_properties(f, p):
    d = discriminant(f)
    assume(d % p != 0)
    st_ = splitting_type(f, p)
    assert st_.degree == len(f) - 1
    assert st_.counts().get(1, 0) == count_roots_mod_p(f, p)
    assert st_.degrees == sympy_degrees(f, p)


@settings(max_examples=40, deadline=None)
@given(monic, st.randoms(use_true_random=False))
def test_batch_matches_scalar(f, rnd):
    d = discriminant(f)
    assume(d != 0)
    primes = [p for p in rnd.sample(sieve_primes(50000).tolist(), 60) if d % p]
    counts = splitting_types(f, primes)
    for p, row in zip(primes, counts.tolist()):
        want = splitting_type(f, p).counts()
        assert row == [want.get(k, 0) for k in range(1, len(f))]


def test_batch_large_primes():
    rng = random.Random(7)
    primes = sorted(rng.sample(sieve_primes(10**6).tolist()[1000:], 200))
    for f in ([-2, 0, 0, 1], [-2, 0, 0, 0, 1], [1, 1, 1, 1, 1]):
        counts = splitting_types(f, primes)
        for p, row in zip(primes, counts.tolist()):
            want = splitting_type(f, p).counts()
            assert row == [want.get(k, 0) for k in range(1, len(f))]


@given(st.integers(min_value=-50, max_value=50).filter(lambda d: d != 0))
def test_legendre_vec(d):
    primes = np.array([p for p in sieve_primes(2000).tolist() if d % p and p != 2])
    got = legendre_vec(d, primes)
    want = [sympy.legendre_symbol(d % int(p), int(p)) for p in primes]
    assert got.tolist() == want


def test_legendre_at_two():
    assert legendre_vec(-7, [2]).tolist() == [1]
    assert legendre_vec(5, [2]).tolist() == [-1]
    assert legendre_vec(-3, [2]).tolist() == [-1]
