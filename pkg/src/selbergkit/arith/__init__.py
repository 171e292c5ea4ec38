"""Exact and modular arithmetic substrate."""

from .cyclotomic import (
    ONE,
    ZERO,
    CyclotomicNumber,
    cyclo_reduce,
    cyclotomic_polynomial,
    embed_complex,
    totient,
)
from .polyfp import SplittingType, discriminant, splitting_type, splitting_types
from .primes import geometric_checkpoints, iter_prime_segments, prime_partial_sums, sieve_primes
