"""Catalog of Galois extensions K/Q with computable Frobenius classes.

Each entry fixes a monic polynomial f whose splitting field is K and the
action of G = Gal(K/Q) on its roots. For an unramified prime p the Frobenius
class is read off from the factorization pattern of f mod p (which equals the
cycle type of Frobenius on the roots), refined where needed by quadratic
symbols (d/p) or, for conjugate class pairs, by p modulo the conductor.

The catalog is validated when loaded: every class of G must be reachable by
exactly one resolver rule, ramified fixtures must satisfy |D| = e*f with
I normal in D, and residue tables are cross-checked against factorization
patterns for small primes.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .arith.cyclotomic import CyclotomicNumber
from .arith.polyfp import discriminant, legendre_vec, splitting_type, splitting_types
from .arith.primes import prime_partial_sums, sieve_primes
from .chars import ClassFunction, ConjugacyClass, FiniteGroup, compose, cycle_type, invert, validate_character_table
from .dirichlet import LocalFactor, poly_inflate, poly_pow
from .errors import CatalogError, MissingRamifiedData, RamifiedPrime

__all__ = [
    "GaloisCatalog",
    "GaloisCatalogEntry",
    "RamifiedPrimeData",
    "ChebotarevStatistics",
    "load_catalog",
    "get_entry",
    "frobenius_class",
    "dedekind_local_factor",
    "chebotarev_statistics",
    "DEFAULT_CATALOG",
    "CHUNK",
]

DEFAULT_CATALOG = Path(__file__).with_name("data") / "catalog.json"
CHUNK = 1 << 16
RESIDUE = -2


def _prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _kronecker(d: int, p: int) -> int:
    """(d/p) for a prime p not dividing d; independent of the vectorised version."""
    if p == 2:
        return 1 if d % 8 in (1, 7) else -1
    return 1 if pow(d % p, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class RamifiedPrimeData:
    """Local data at a ramified prime: decomposition group, inertia group, Frobenius mod inertia."""

    prime: int
    decomposition: FiniteGroup
    inertia: FiniteGroup
    frobenius: tuple
    note: str = ""

    @property
    def e(self) -> int:
        return self.inertia.order

    @property
    def f(self) -> int:
        j, x = 1, self.frobenius
        while x not in self.inertia:
            x = compose(self.frobenius, x)
            j += 1
        return j

    def g(self, G: FiniteGroup) -> int:
        return G.order // self.decomposition.order

    def frobenius_power(self, k: int) -> tuple:
        return self.decomposition.power(self.frobenius, k)


class _Resolver:
    """Vectorised Frobenius classification; plain data so it pickles cheaply."""

    def __init__(self, poly, symbols, table, residue_modulus, residue_classes, bad_primes):
        self.poly = tuple(poly)
        self.n = len(poly) - 1
        self.symbols = tuple(symbols)
        self.table = dict(table)  # (counts tuple, sign tuple) -> class index or RESIDUE
        self.residue_modulus = residue_modulus
        self.residue_classes = None if residue_classes is None else np.asarray(residue_classes, dtype=np.int64)
        self.bad_primes = tuple(bad_primes)

    def classify(self, primes) -> np.ndarray:
        primes = np.asarray(primes, dtype=np.int64)
        out = np.full(primes.size, -1, dtype=np.int64)
        for s in range(0, primes.size, CHUNK):
            out[s : s + CHUNK] = self._classify_chunk(primes[s : s + CHUNK])
        return out

    def _classify_chunk(self, primes):
        out = np.full(primes.size, -1, dtype=np.int64)
        good = np.ones(primes.size, dtype=bool)
        for q in self.bad_primes:
            good &= primes != q
        if not good.any():
            return out
        ps = primes[good]
        counts = splitting_types(self.poly, ps)
        base = self.n + 1
        code = np.zeros(ps.size, dtype=np.int64)
        for k in range(self.n):
            code = code * base + counts[:, k]
        signs = np.zeros(ps.size, dtype=np.int64)
        for d in self.symbols:
            signs = signs * 2 + (legendre_vec(d, ps) > 0)
        key = code * (1 << len(self.symbols)) + signs
        res = np.empty(ps.size, dtype=np.int64)
        uniq, inv = np.unique(key, return_inverse=True)
        for u_idx, u in enumerate(uniq.tolist()):
            target = self._lookup.get(u)
            if target is None:
                raise CatalogError(f"no resolver rule for factor pattern code {u} (f = {list(self.poly)})")
            res[inv == u_idx] = target
        need = res == RESIDUE
        if need.any():
            res[need] = self.residue_classes[ps[need] % self.residue_modulus]
        if (res < 0).any():
            raise CatalogError("residue table does not cover every unramified prime")
        out[good] = res
        return out

    @property
    def _lookup(self):
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = {}
            base = self.n + 1
            for (counts, signs), target in self.table.items():
                code = 0
                for c in counts:
                    code = code * base + c
                scode = 0
                for s in signs:
                    scode = scode * 2 + (s > 0)
                cache[code * (1 << len(self.symbols)) + scode] = target
            self.__dict__["_lookup_cache"] = cache
        return cache


def _counts_of(degrees, n) -> tuple:
    c = [0] * n
    for d in degrees:
        c[d - 1] += 1
    return tuple(c)


@dataclass(eq=False)
class GaloisCatalogEntry:
    id: str
    field_name: str
    poly: tuple
    group: FiniteGroup
    disc: int
    roots: tuple
    symbols: tuple  # ((d, kernel subgroup), ...)
    rules: tuple
    residue_modulus: int | None
    residue_table: dict  # residue -> class index
    ramified: dict = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self):
        self.bad_primes = tuple(_prime_divisors(self.disc))
        self._table = self._validate_rules()
        self._resolver = _Resolver(
            self.poly,
            [d for d, _ in self.symbols],
            self._table,
            self.residue_modulus,
            self._residue_array(),
            self.bad_primes,
        )

    # validation -------------------------------------------------------------

    def _symbol_vector(self, g) -> tuple:
        return tuple(1 if g in H else -1 for _, H in self.symbols)

    def _rule_matches(self, rule, degrees, signs) -> bool:
        if tuple(sorted(rule["type"])) != degrees:
            return False
        for d, want in rule.get("symbols", {}).items():
            idx = [s for s, _ in self.symbols].index(int(d))
            if signs[idx] != want:
                return False
        return True

    def _validate_rules(self) -> dict:
        G = self.group
        n = len(self.poly) - 1
        if G.degree != n:
            raise CatalogError(f"{self.id}: group acts on {G.degree} points but deg f = {n}")
        if discriminant(list(self.poly)) != self.disc:
            raise CatalogError(f"{self.id}: recorded disc {self.disc} differs from disc(f)")
        for d, H in self.symbols:
            if 2 * H.order != G.order or not H.is_subgroup_of(G):
                raise CatalogError(f"{self.id}: kernel for symbol {d} is not an index-2 subgroup")
            for q in _prime_divisors(d) + ([2] if d % 4 != 1 else []):
                if self.disc % q:
                    raise CatalogError(f"{self.id}: symbol {d} needs prime {q} to be ramified")
        table: dict = {}
        for C in G.classes:
            degrees = cycle_type(C.rep)
            for g in C.elements:
                if self._symbol_vector(g) != self._symbol_vector(C.rep):
                    raise CatalogError(f"{self.id}: symbol kernel is not a union of classes")
            signs = self._symbol_vector(C.rep)
            hits = [r for r in self.rules if self._rule_matches(r, degrees, signs)]
            if len(hits) != 1:
                raise CatalogError(f"{self.id}: class {C.name} matched by {len(hits)} resolver rules")
            rule = hits[0]
            key = (_counts_of(degrees, n), signs)
            if rule.get("residue"):
                if self.residue_modulus is None:
                    raise CatalogError(f"{self.id}: residue rule but no residue table")
                table[key] = RESIDUE
            else:
                target = G.class_named(rule["class"]).index
                if target != C.index:
                    raise CatalogError(f"{self.id}: class {C.name} resolves to {rule['class']}")
                table[key] = target
        return table

    def _residue_array(self):
        if self.residue_modulus is None:
            return None
        arr = np.full(self.residue_modulus, -1, dtype=np.int64)
        for r, idx in self.residue_table.items():
            if math.gcd(r, self.residue_modulus) != 1:
                raise CatalogError(f"{self.id}: residue {r} is not a unit mod {self.residue_modulus}")
            arr[r] = idx
        for r in range(self.residue_modulus):
            if math.gcd(r, self.residue_modulus) == 1 and arr[r] < 0:
                raise CatalogError(f"{self.id}: residue table misses {r} mod {self.residue_modulus}")
        return arr

    def cross_validate(self, bound: int = 10_000):
        """Compare the scalar and vectorised resolvers and the residue table for p <= bound."""
        primes = [p for p in sieve_primes(bound).tolist() if p not in self.bad_primes]
        batch = self._resolver.classify(primes).tolist()
        for p, b in zip(primes, batch):
            C = self.frobenius_class(p)
            if C.index != b:
                raise CatalogError(f"{self.id}: scalar and batch Frobenius disagree at p={p}")
            if cycle_type(C.rep) != splitting_type(list(self.poly), p).degrees:
                raise CatalogError(f"{self.id}: class {C.name} does not match the splitting type at p={p}")
            if self.residue_modulus is not None:
                r = self.residue_table[p % self.residue_modulus]
                if r != C.index:
                    raise CatalogError(f"{self.id}: residue table gives {self.group.classes[r].name} at p={p}")

    # queries ----------------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        return self.group.is_abelian()

    def is_ramified(self, p: int) -> bool:
        return p in self.bad_primes

    def frobenius_class(self, p: int) -> ConjugacyClass:
        """Frobenius class of an unramified prime p (scalar path)."""
        if p in self.bad_primes:
            raise RamifiedPrime(p, self.disc)
        st = splitting_type(list(self.poly), p)
        signs = tuple(_kronecker(d, p) for d, _ in self.symbols)
        target = self._table.get((_counts_of(st.degrees, len(self.poly) - 1), signs))
        if target is None:
            raise CatalogError(f"{self.id}: no resolver rule for type {st} and symbols {signs} at p={p}")
        if target == RESIDUE:
            target = self.residue_table[p % self.residue_modulus]
        return self.group.classes[target]

    def frobenius_classes(self, primes) -> np.ndarray:
        """Class indices for an array of primes; -1 for primes dividing disc."""
        return self._resolver.classify(primes)

    def ramified_data(self, p: int) -> RamifiedPrimeData:
        try:
            return self.ramified[p]
        except KeyError:
            raise MissingRamifiedData(f"{self.id}: no ramified data recorded for p={p}") from None

    def local_fg(self, p: int) -> tuple[int, int, int]:
        """(e, f, g) at p."""
        G = self.group
        if p in self.bad_primes:
            rd = self.ramified_data(p)
            return rd.e, rd.f, rd.g(G)
        f = G.element_order(self.frobenius_class(p).rep)
        return 1, f, G.order // f

    def dedekind_local_factor(self, p: int) -> LocalFactor:
        _, f, g = self.local_fg(p)
        return LocalFactor(p, poly_pow(poly_inflate((CyclotomicNumber.rational(1), CyclotomicNumber.rational(-1)), f), g))

    @property
    def has_all_ramified_data(self) -> bool:
        return all(p in self.ramified for p in self.bad_primes)

    def summary(self) -> dict:
        return {
            "id": self.id,
            "field": self.field_name,
            "poly": list(self.poly),
            "group": self.group.name,
            "order": self.group.order,
            "disc": self.disc,
            "ramified": list(self.bad_primes),
            "fixtures": sorted(self.ramified),
            "classes": [c.name for c in self.group.classes],
            "characters": [chi.name for chi in self.group.characters],
            "subgroups": sorted(self.group.subgroups),
        }


@dataclass
class GaloisCatalog:
    path: str
    groups: dict
    entries: dict

    def __getitem__(self, key: str) -> GaloisCatalogEntry:
        try:
            return self.entries[key]
        except KeyError:
            raise CatalogError(f"unknown catalog entry {key!r}") from None

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self):
        return len(self.entries)


def _build_group(name, doc, degree, generators) -> FiniteGroup:
    G = FiniteGroup(name, degree, generators, [(c, tuple(r)) for c, r in doc["classes"]])
    order = int(doc.get("order", 1))
    G.characters = [
        ClassFunction(G, tuple(CyclotomicNumber.from_json(v, order) for v in vals), cname)
        for cname, vals in doc["characters"].items()
    ]
    validate_character_table(G)
    return G


def _load_groups(doc) -> dict:
    groups = {}
    for name, gdoc in doc["groups"].items():
        G = _build_group(name, gdoc, gdoc["degree"], gdoc["generators"])
        for sname, sdoc in gdoc.get("subgroups", {}).items():
            H = _build_group(f"{name}/{sname}", sdoc, gdoc["degree"], sdoc["generators"])
            G.add_subgroup(sname, H)
        groups[name] = G
    return groups


def _is_normal(N: FiniteGroup, D: FiniteGroup) -> bool:
    return all(compose(compose(x, n), invert(x)) in N for x in D.generators for n in N.generators)


def _load_ramified(entry_id, G, p, rdoc) -> RamifiedPrimeData:
    D = FiniteGroup(f"D_{p}", G.degree, rdoc["decomposition"])
    I = FiniteGroup(f"I_{p}", G.degree, rdoc["inertia"])
    frob = tuple(rdoc["frobenius"])
    if not D.is_subgroup_of(G):
        raise CatalogError(f"{entry_id}: D_{p} is not a subgroup of {G.name}")
    if not I.is_subgroup_of(D):
        raise CatalogError(f"{entry_id}: I_{p} is not contained in D_{p}")
    if not _is_normal(I, D):
        raise CatalogError(f"{entry_id}: I_{p} is not normal in D_{p}")
    if frob not in D:
        raise CatalogError(f"{entry_id}: Frobenius at {p} is not in D_{p}")
    rd = RamifiedPrimeData(p, D, I, frob, rdoc.get("note", ""))
    if D.order != rd.e * rd.f:
        raise CatalogError(f"{entry_id}: Frobenius at {p} does not generate D/I")
    if G.order != rd.e * rd.f * rd.g(G):
        raise CatalogError(f"{entry_id}: |G| != e*f*g at {p}")
    return rd


def _load_entry(entry_id, edoc, groups) -> GaloisCatalogEntry:
    try:
        G = groups[edoc["group"]]
    except KeyError:
        raise CatalogError(f"{entry_id}: unknown group {edoc['group']!r}") from None
    symbols = tuple((int(s["d"]), G.subgroup(s["kernel"])) for s in edoc.get("symbols", []))
    residue = edoc.get("residue")
    modulus, rtable = None, {}
    if residue:
        modulus = int(residue["modulus"])
        rtable = {int(r): G.class_named(c).index for r, c in residue["classes"].items()}
    disc = int(edoc["disc"])
    bad = _prime_divisors(disc)
    ramified = {}
    for ps, rdoc in edoc.get("ramified", {}).items():
        p = int(ps)
        if p not in bad:
            raise CatalogError(f"{entry_id}: ramified fixture for {p}, which does not divide disc")
        ramified[p] = _load_ramified(entry_id, G, p, rdoc)
    return GaloisCatalogEntry(
        id=entry_id,
        field_name=edoc.get("field", ""),
        poly=tuple(int(c) for c in edoc["poly"]),
        group=G,
        disc=disc,
        roots=tuple(edoc.get("roots", ())),
        symbols=symbols,
        rules=tuple(edoc["resolver"]),
        residue_modulus=modulus,
        residue_table=rtable,
        ramified=ramified,
        notes=edoc.get("generator", ""),
    )


@lru_cache(maxsize=8)
def _load(path: str, check_bound: int) -> GaloisCatalog:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    try:
        groups = _load_groups(doc)
        entries = {eid: _load_entry(eid, edoc, groups) for eid, edoc in doc["entries"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CatalogError):
            raise
        raise CatalogError(f"malformed catalog {path}: {exc!r}") from exc
    if check_bound:
        for e in entries.values():
            e.cross_validate(check_bound)
    return GaloisCatalog(path, groups, entries)


def load_catalog(path=None, check_bound: int = 10_000) -> GaloisCatalog:
    """Load (and cache) the catalog; SELBERG_CATALOG overrides the built-in file."""
    if path is None:
        path = os.environ.get("SELBERG_CATALOG") or DEFAULT_CATALOG
    return _load(str(Path(path).resolve()), int(check_bound))


def get_entry(entry_id: str) -> GaloisCatalogEntry:
    return load_catalog()[entry_id]


def frobenius_class(entry: GaloisCatalogEntry, p: int) -> ConjugacyClass:
    return entry.frobenius_class(p)


def dedekind_local_factor(entry: GaloisCatalogEntry, p: int) -> LocalFactor:
    return entry.dedekind_local_factor(p)


# Chebotarev statistics ---------------------------------------------------------


class _ChebotarevKernel:
    def __init__(self, resolver: _Resolver, nclasses: int):
        self.resolver = resolver
        self.nclasses = nclasses

    def __call__(self, primes):
        cls = self.resolver.classify(primes)
        k = self.nclasses
        out = np.zeros((primes.size, 2 * k + 1))
        rows = np.flatnonzero(cls >= 0)
        out[rows, cls[rows]] = 1.0
        out[rows, k + cls[rows]] = 1.0 / primes[rows]
        out[:, 2 * k] = cls < 0
        return out


@dataclass
class ChebotarevStatistics:
    entry: str
    classes: list
    sizes: list
    group_order: int
    checkpoints: np.ndarray
    counts: np.ndarray  # (n_checkpoints, n_classes), exact integers
    recip_sums: np.ndarray  # (n_checkpoints, n_classes)
    ramified_counts: np.ndarray
    prime_counts: np.ndarray

    def fractions(self, i: int = -1) -> np.ndarray:
        c = self.counts[i]
        return c / c.sum()

    def densities(self) -> np.ndarray:
        return np.array(self.sizes) / self.group_order

    def as_rows(self):
        """One dict per (checkpoint, class), for CSV export."""
        for i, x in enumerate(self.checkpoints.tolist()):
            total = int(self.counts[i].sum())
            for j, name in enumerate(self.classes):
                yield {
                    "x": x,
                    "class": name,
                    "count": int(self.counts[i, j]),
                    "fraction": self.counts[i, j] / total if total else 0.0,
                    "density": self.sizes[j] / self.group_order,
                    "recip_sum": float(self.recip_sums[i, j]),
                }


def chebotarev_statistics(entry: GaloisCatalogEntry, xmax: int, checkpoints=None, workers: int = 1) -> ChebotarevStatistics:
    """Per-class prime counts and sums of 1/p over unramified p <= x at each checkpoint."""
    from .arith.primes import geometric_checkpoints

    xmax = int(xmax)
    if xmax < 100:
        raise ValueError("xmax must be at least 100")
    cps = geometric_checkpoints(xmax) if checkpoints is None else np.asarray(checkpoints, dtype=np.int64)
    k = len(entry.group.classes)
    kernel = _ChebotarevKernel(entry._resolver, k)
    sums, counts = prime_partial_sums(kernel, xmax, cps, workers=workers)
    return ChebotarevStatistics(
        entry=entry.id,
        classes=[c.name for c in entry.group.classes],
        sizes=[c.size for c in entry.group.classes],
        group_order=entry.group.order,
        checkpoints=cps,
        counts=np.rint(sums[:, :k]).astype(np.int64),
        recip_sums=sums[:, k : 2 * k],
        ramified_counts=np.rint(sums[:, 2 * k]).astype(np.int64),
        prime_counts=counts,
    )
