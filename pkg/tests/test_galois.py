import copy
import json

import numpy as np
import pytest
import sympy

from selbergkit.arith import sieve_primes, splitting_type
from selbergkit.artin import zeta_factorization_check
from selbergkit.chars import cycle_type
from selbergkit.errors import CatalogError, MissingRamifiedData, RamifiedPrime
from selbergkit.galois import DEFAULT_CATALOG, chebotarev_statistics, dedekind_local_factor, frobenius_class, load_catalog

QUADRATIC = {"qi_x2p1": -4, "qsqrt5_x2mxm1": 5, "qsqrtm3_x2pxp1": -3}


def raw_catalog():
    with open(DEFAULT_CATALOG, encoding="utf-8") as fh:
        return json.load(fh)


def write(tmp_path, doc, name="cat.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def kronecker(d, p):
    if p == 2:
        return 1 if d % 8 in (1, 7) else -1
    return sympy.legendre_symbol(d % p, p)


def test_catalog_contents(catalog):
    ids = {e.id for e in catalog}
    assert {"qi_x2p1", "qsqrt5_x2mxm1", "qzeta5_cyclo5", "c3_x3m3xm1", "s3_x3m2", "d4_x4m2"} <= ids
    orders = {e.id: e.group.order for e in catalog}
    assert orders["s3_x3m2"] == 6 and orders["d4_x4m2"] == 8 and orders["qzeta5_cyclo5"] == 4
    with pytest.raises(CatalogError):
        catalog["nope"]


def test_frobenius_examples(s3, qi):
    assert frobenius_class(s3, 5).name == "2a"
    assert cycle_type(frobenius_class(s3, 5).rep) == (1, 2)
    assert frobenius_class(s3, 31).name == "1a"
    assert frobenius_class(qi, 13).name == "1a"
    for p in sieve_primes(2000).tolist()[1:]:
        assert (frobenius_class(qi, p).name == "1a") == (p % 4 == 1)


def test_ramified_primes_rejected(s3, d4):
    for p in (2, 3):
        with pytest.raises(RamifiedPrime):
            frobenius_class(s3, p)
    with pytest.raises(RamifiedPrime):
        frobenius_class(d4, 2)


def test_resolver_total_to_1e5(catalog):
    primes = sieve_primes(10**5)
    for e in catalog:
        cls = e.frobenius_classes(primes)
        ram = np.isin(primes, e.bad_primes)
        assert np.all(cls[ram] == -1)
        assert np.all(cls[~ram] >= 0)
        sizes = np.bincount(cls[~ram], minlength=len(e.group.classes))
        assert np.all(sizes > 0)


def test_scalar_and_batch_agree_with_cycle_types(catalog):
    primes = sieve_primes(5000).tolist()
    for e in catalog:
        good = [p for p in primes if not e.is_ramified(p)]
        batch = e.frobenius_classes(good).tolist()
        for p, b in zip(good, batch):
            C = frobenius_class(e, p)
            assert C.index == b
            assert cycle_type(C.rep) == splitting_type(list(e.poly), p).degrees


def test_abelian_depends_on_residue(catalog):
    for e in catalog:
        if not e.is_abelian:
            continue
        m = e.residue_modulus
        seen = {}
        for p in sieve_primes(10**4).tolist():
            if e.is_ramified(p):
                continue
            seen.setdefault(p % m, set()).add(frobenius_class(e, p).index)
        assert all(len(v) == 1 for v in seen.values())


def test_quadratic_entries_follow_kronecker(catalog):
    for eid, d in QUADRATIC.items():
        e = catalog[eid]
        for p in sieve_primes(5000).tolist():
            if d % p and not (p == 2 and d % 4 != 1):
                assert (frobenius_class(e, p).name == "1a") == (kronecker(d, p) == 1)


def test_d4_quadratic_characters_follow_kronecker(d4):
    G = d4.group
    chars = {"quad_m1": -4, "quad_2": 8, "quad_m2": -8}
    primes = [p for p in sieve_primes(20000).tolist() if p > 2]
    classes = d4.frobenius_classes(primes).tolist()
    for p, ci in zip(primes, classes):
        for name, d in chars.items():
            assert G.character(name).values[ci] == kronecker(d, p)


def test_s3_sign_follows_minus_three(s3):
    primes = [p for p in sieve_primes(20000).tolist() if p > 3]
    sign = s3.group.character("sign")
    for p, ci in zip(primes, s3.frobenius_classes(primes).tolist()):
        assert sign.values[ci] == kronecker(-3, p)


def test_cyclic_quintic_residues(catalog):
    e = catalog["qzeta5_cyclo5"]
    for p in sieve_primes(5000).tolist():
        if p != 5:
            C = frobenius_class(e, p)
            assert e.group.element_order(C.rep) == sympy.n_order(p, 5)


def test_dedekind_local_factor_examples(s3, catalog):
    def ints(lf):
        return [c.as_rational() for c in lf.denom]

    assert ints(dedekind_local_factor(s3, 31)) == [1, -6, 15, -20, 15, -6, 1]
    for p in (5, 11, 17, 23):
        assert ints(dedekind_local_factor(s3, p)) == [1, 0, -3, 0, 3, 0, -1]
    assert ints(dedekind_local_factor(s3, 2)) == [1, 0, -1]
    assert ints(dedekind_local_factor(s3, 3)) == [1, -1]
    for e in catalog:
        for p in sieve_primes(3000).tolist():
            if e.is_ramified(p):
                continue
            a_p = -dedekind_local_factor(e, p).denom[1] if dedekind_local_factor(e, p).degree else 0
            assert a_p == (e.group.order if frobenius_class(e, p).index == 0 else 0)


def test_ramified_fixtures_consistent(catalog):
    for e in catalog:
        G = e.group
        assert e.has_all_ramified_data
        for p, rd in e.ramified.items():
            assert rd.inertia.is_subgroup_of(rd.decomposition)
            assert G.order == rd.e * rd.f * rd.g(G)
            assert p in e.bad_primes
    s3 = catalog["s3_x3m2"]
    assert (s3.ramified[2].e, s3.ramified[2].f, s3.ramified[2].g(s3.group)) == (3, 2, 1)
    assert (s3.ramified[3].e, s3.ramified[3].f) == (6, 1)


def test_missing_fixtures(tmp_path):
    doc = raw_catalog()
    doc["entries"]["s3_x3m2"]["ramified"] = {}
    cat = load_catalog(write(tmp_path, doc))
    e = cat["s3_x3m2"]
    with pytest.raises(MissingRamifiedData):
        dedekind_local_factor(e, 2)
    report = zeta_factorization_check(e, 2000)
    assert report.passed and report.restricted_to_coprime


def test_env_override(tmp_path, monkeypatch):
    doc = raw_catalog()
    doc["entries"] = {"qi_x2p1": doc["entries"]["qi_x2p1"]}
    monkeypatch.setenv("SELBERG_CATALOG", str(write(tmp_path, doc)))
    assert [e.id for e in load_catalog()] == ["qi_x2p1"]


def _corrupt(doc, how):
    doc = copy.deepcopy(doc)
    s3 = doc["entries"]["s3_x3m2"]
    if how == "resolver":
        s3["resolver"][1]["class"] = "3a"
    elif how == "missing-rule":
        del s3["resolver"][2]
    elif how == "disc":
        s3["disc"] = -107
    elif how == "table":
        doc["groups"]["S3"]["characters"]["std"] = [2, 0, 1]
    elif how == "inertia":
        s3["ramified"]["2"]["inertia"] = [[0, 2, 1]]
    elif how == "frobenius":
        s3["ramified"]["2"]["frobenius"] = [1, 2, 0]
    elif how == "residue":
        doc["entries"]["qi_x2p1"]["residue"]["classes"]["3"] = "1a"
    elif how == "symbol":
        d4 = doc["entries"]["d4_x4m2"]
        d4["resolver"][1]["class"], d4["resolver"][2]["class"] = d4["resolver"][2]["class"], d4["resolver"][1]["class"]
    elif how == "json":
        return "{not json"
    return doc


@pytest.mark.parametrize("how", ["resolver", "missing-rule", "disc", "table", "inertia", "frobenius", "residue", "symbol", "json"])
def test_corrupt_catalog_rejected(tmp_path, how):
    doc = _corrupt(raw_catalog(), how)
    path = tmp_path / f"{how}.json"
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    with pytest.raises(CatalogError):
        load_catalog(path)


def test_chebotarev_partition(s3):
    x = 10**6
    stats = chebotarev_statistics(s3, x)
    assert stats.checkpoints[-1] == x
    total = stats.counts.sum(axis=1) + stats.ramified_counts
    assert total.tolist() == stats.prime_counts.tolist()
    assert stats.prime_counts[-1] == sympy.primepi(x)
    assert np.all(np.abs(stats.fractions() - stats.densities()) < 0.01)
    assert np.all(np.diff(stats.recip_sums, axis=0) >= 0)


def test_chebotarev_workers_and_checkpoints(qi):
    cps = [100, 1000, 10**4, 123456]
    a = chebotarev_statistics(qi, 123456, cps)
    b = chebotarev_statistics(qi, 123456, cps, workers=2)
    assert a.counts.tolist() == b.counts.tolist()
    assert np.all(np.abs(a.recip_sums - b.recip_sums) <= 1e-9 * np.abs(a.recip_sums))
    ones = [p for p in sympy.primerange(3, 10**4 + 1) if p % 4 == 1]
    assert a.counts[2, 0] == len(ones)
    assert abs(a.recip_sums[2, 0] - sum(1.0 / p for p in ones)) < 1e-12
    with pytest.raises(ValueError):
        chebotarev_statistics(qi, 50)
