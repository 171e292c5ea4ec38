import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from selbergkit.arith import embed_complex, geometric_checkpoints
from selbergkit.artin import artin_series, dedekind_series
from selbergkit.chars import inner_product
from selbergkit.dirichlet import DirichletCharacter, zeta_series
from selbergkit.errors import InsufficientCoefficients
from selbergkit.galois import chebotarev_statistics
from selbergkit.selberg import (
    ArtinSource,
    DedekindSource,
    DirichletSource,
    SumSeries,
    ZetaSource,
    chebotarev_decomposition,
    conjecture_sum,
    edge_sum,
    estimate_nF,
    nF_from_multiplicities,
)


def test_zeta_at_ten():
    s = conjecture_sum(ZetaSource(), xmax=10, checkpoints=[10])
    assert math.isclose(s.values[0], 1 / 2 + 1 / 3 + 1 / 5 + 1 / 7, rel_tol=1e-15)
    assert round(float(s.values[0]), 4) == 1.1762


def test_chi4_differs_from_zeta_by_half():
    cps = geometric_checkpoints(10**6, start=2)
    a = conjecture_sum(ZetaSource(), xmax=10**6, checkpoints=cps)
    b = conjecture_sum(DirichletSource(4, 3), xmax=10**6, checkpoints=cps)
    assert np.allclose(a.values - b.values, 0.5, rtol=0, atol=1e-12)


def test_cross_sum_terms():
    cps = list(range(2, 200))
    c = conjecture_sum(ZetaSource(), DirichletSource(4, 3), xmax=199, checkpoints=cps)
    terms = np.diff(np.concatenate([[0], c.values.real]))
    for x, t in zip(cps, terms):
        if sympy.isprime(x):
            assert t == pytest.approx(0 if x == 2 else (1 if x % 4 == 1 else -1) / x, abs=1e-15)
        else:
            assert t == 0
    assert np.all(c.values.imag == 0)
    big = conjecture_sum(ZetaSource(), DirichletSource(4, 3), xmax=10**6)
    assert np.max(np.abs(big.values)) <= 1


def test_conjA_monotone_for_all_sources(catalog):
    s3 = catalog["s3_x3m2"]
    for src in [ZetaSource(), DirichletSource(5, 2), ArtinSource(s3, "std"), DedekindSource(s3)]:
        s = conjecture_sum(src, xmax=10**5)
        assert s.kind == "conjA" and np.all(np.diff(s.values) >= 0)


def test_streaming_sources_match_exact_series(catalog):
    N = 5000
    primes = np.array(list(sympy.primerange(2, N + 1)))
    for e in catalog:
        for chi in e.group.characters:
            L = artin_series(e, chi, N)
            got = ArtinSource(e, chi)(primes)
            want = np.array([embed_complex(L[int(p)]) for p in primes])
            assert np.allclose(got, want, atol=1e-12)
        Z = dedekind_series(e, N)
        assert np.allclose(DedekindSource(e)(primes), [embed_complex(Z[int(p)]) for p in primes])
    chi = DirichletCharacter(7, 3)
    F = chi.series(N)
    assert np.allclose(DirichletSource(7, 3)(primes), [embed_complex(F[int(p)]) for p in primes])
    assert np.allclose(conjecture_sum(F, xmax=N).values, conjecture_sum(DirichletSource(7, 3), xmax=N).values, rtol=1e-13)


def test_insufficient_coefficients():
    with pytest.raises(InsufficientCoefficients):
        conjecture_sum(zeta_series(100), xmax=1000)
    with pytest.raises(InsufficientCoefficients):
        conjecture_sum(ZetaSource(), zeta_series(10), xmax=100)


@pytest.mark.parametrize("workers,block", [(1, 1 << 15), (2, 1 << 16), (1, 1 << 22)])
def test_chunking_invariance(catalog, workers, block):
    from selbergkit.arith import prime_partial_sums
    from selbergkit.selberg import _SquareKernel

    src = ArtinSource(catalog["d4_x4m2"], "std")
    cps = geometric_checkpoints(400000)
    ref, _ = prime_partial_sums(_SquareKernel(src), 400000, cps)
    got, _ = prime_partial_sums(_SquareKernel(src), 400000, cps, workers=workers, block=block)
    assert np.all(np.abs(got - ref) <= 1e-9 * np.abs(ref))


def test_conjecture_sum_workers_identical():
    a = conjecture_sum(ZetaSource(), DirichletSource(4, 3), xmax=300000)
    b = conjecture_sum(ZetaSource(), DirichletSource(4, 3), xmax=300000, workers=2)
    assert np.array_equal(a.values, b.values)


def test_synthetic_slope():
    x = geometric_checkpoints(10**8)
    s = SumSeries("synthetic", x, 2 * np.log(np.log(x.astype(float))) + 0.3, "conjA")
    est = estimate_nF(s, (1e3, 1e8))
    assert est.slope == pytest.approx(2.0, abs=1e-12)
    assert est.intercept == pytest.approx(0.3, abs=1e-12)
    assert est.rounded == 2 and est.residual < 1e-12 and est.conclusive


def test_inconclusive_flag():
    x = geometric_checkpoints(10**8)
    s = SumSeries("half", x, 1.5 * np.log(np.log(x.astype(float))), "conjA")
    assert not estimate_nF(s, (1e3, 1e8)).conclusive


def test_degenerate_windows():
    x = geometric_checkpoints(10**6)
    s = SumSeries("z", x, np.log(np.log(x.astype(float))), "conjA")
    with pytest.raises(ValueError):
        estimate_nF(s, (1e3, 1.2e3))
    with pytest.raises(ValueError):
        estimate_nF(s, (1e5, 1e6))
    with pytest.raises(ValueError):
        estimate_nF(s, (2, 1e6))


def test_zeta_slope_at_1e6():
    est = estimate_nF(conjecture_sum(ZetaSource(), xmax=10**6), (1e3, 1e6))
    assert est.rounded == 1 and 0.8 <= est.slope <= 1.2


def test_nF_from_multiplicities():
    assert nF_from_multiplicities([1]) == 1
    assert nF_from_multiplicities([1, 1, 2]) == 6
    assert nF_from_multiplicities([3]) == 9
    with pytest.raises(ValueError):
        nF_from_multiplicities([])
    with pytest.raises(ValueError):
        nF_from_multiplicities([1, 0])


@given(st.lists(st.integers(min_value=1, max_value=20), min_size=1, max_size=10))
def test_nF_formula_property(e):
    assert nF_from_multiplicities(e) == sum(v * v for v in e) >= len(e)


def test_edge_sums():
    one = edge_sum(DirichletSource(4, 3), 1.5, xmax=2, checkpoints=[2])
    assert one.values[0] == 0
    z = edge_sum(ZetaSource(), 2.0, xmax=2, checkpoints=[2])
    assert z.values[0] == pytest.approx(2 ** (-1 - 2j), abs=1e-15)
    zt = edge_sum(ZetaSource(), 0.0, xmax=10**6)
    za = conjecture_sum(ZetaSource(), xmax=10**6)
    assert np.allclose(zt.values.real, za.values, rtol=1e-13)
    assert zt.values[-1].real > 2.8
    chi = edge_sum(DirichletSource(4, 3), 0.0, xmax=10**6)
    assert np.all(np.abs(chi.values) <= 1)
    t = edge_sum(DirichletSource(5, 2), 3.0, xmax=10**5)
    csv = t.to_csv()
    assert csv.splitlines()[0] == "x,re,im,abs,arg,terms"


def test_chebotarev_decomposition(catalog):
    for eid in ("s3_x3m2", "d4_x4m2", "c3_x3m3xm1"):
        e = catalog[eid]
        stats = chebotarev_statistics(e, 10**5)
        for phi in e.group.characters:
            assert inner_product(phi, phi) == 1
            direct = conjecture_sum(ArtinSource(e, phi, skip_ramified=True), xmax=10**5, checkpoints=stats.checkpoints)
            dec = chebotarev_decomposition(stats, phi, e.group)
            assert np.all(np.abs(direct.values - dec.values) <= 1e-12 * np.abs(direct.values))


def test_csv_layout():
    s = conjecture_sum(ZetaSource(), xmax=1000)
    rows = s.to_csv().splitlines()
    assert rows[0] == "x,value,terms"
    assert rows[-1].startswith("1000,") and rows[-1].endswith(",168")
    with pytest.raises(ValueError):
        SumSeries("bad", [1], [0.0], "nonsense")
