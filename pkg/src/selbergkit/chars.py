"""Exact character theory of small permutation groups.

Groups are given by permutations of {0, ..., n-1} (for catalog groups: the
action on the roots of the defining polynomial). A permutation g is a tuple
with g[i] the image of i, and products compose right to left:
(g*h)(i) = g(h(i)).

Representations never appear as matrices; every computation goes through
character values on conjugacy classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith.cyclotomic import ONE, ZERO, CyclotomicNumber
from .errors import CatalogError, GroupMismatch, NotACharacter

__all__ = [
    "FiniteGroup",
    "ConjugacyClass",
    "ClassFunction",
    "compose",
    "invert",
    "cycle_type",
    "inner_product",
    "induce_character",
    "restrict_character",
    "tensor_character",
    "decompose_character",
    "power_class",
    "trivial_character",
    "regular_character",
    "permutation_character",
    "validate_character_table",
]

Perm = tuple


def compose(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def invert(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


def cycle_type(g: Perm) -> tuple[int, ...]:
    seen = [False] * len(g)
    lengths = []
    for i in range(len(g)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths))


def _generate(gens, degree) -> frozenset:
    e = tuple(range(degree))
    elems = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


@dataclass(eq=False)
class ConjugacyClass:
    name: str
    index: int
    rep: Perm
    elements: frozenset

    @property
    def size(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"ConjugacyClass({self.name!r}, size={self.size})"


class FiniteGroup:
    """A finite permutation group with named classes and (optionally) its irreducible characters."""

    def __init__(self, name: str, degree: int, generators, class_spec=None):
        self.name = name
        self.degree = degree
        self.generators = tuple(tuple(g) for g in generators)
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise CatalogError(f"{name}: {g} is not a permutation of {degree} points")
        elems = _generate(self.generators, degree)
        self.elements = tuple(sorted(elems))
        self._elemset = elems
        self.identity = tuple(range(degree))
        self.order = len(self.elements)
        self.exponent = math.lcm(*(self.element_order(g) for g in self.elements))
        self.classes: list[ConjugacyClass] = []
        self.class_of: dict[Perm, int] = {}
        self._build_classes(class_spec)
        self.characters: list[ClassFunction] = []
        self.subgroups: dict[str, FiniteGroup] = {}
        self.parent: FiniteGroup | None = None

    def _conj_class(self, g) -> frozenset:
        return frozenset(compose(compose(x, g), invert(x)) for x in self.elements)

    def _build_classes(self, class_spec):
        if class_spec is None:
            # automatic: identity first, then by element order and size
            rest = set(self.elements)
            found = []
            for g in sorted(self.elements, key=lambda g: (self.element_order(g), g)):
                if g in rest:
                    cl = self._conj_class(g)
                    rest -= cl
                    found.append((g, cl))
            counters: dict[int, int] = {}
            class_spec = []
            for g, cl in found:
                o = self.element_order(g)
                k = counters.get(o, 0)
                counters[o] = k + 1
                class_spec.append((f"{o}{chr(ord('a') + k)}", g))
        for idx, (cname, rep) in enumerate(class_spec):
            rep = tuple(rep)
            if rep not in self._elemset:
                raise CatalogError(f"{self.name}: class rep {rep} not in group")
            cl = self._conj_class(rep)
            for g in cl:
                if g in self.class_of:
                    raise CatalogError(f"{self.name}: classes {cname} and {self.classes[self.class_of[g]].name} overlap")
                self.class_of[g] = idx
            self.classes.append(ConjugacyClass(cname, idx, rep, cl))
        if sum(c.size for c in self.classes) != self.order:
            raise CatalogError(f"{self.name}: class sizes do not sum to |G| = {self.order}")
        if self.class_of[self.identity] != 0:
            raise CatalogError(f"{self.name}: first class must be the identity")

    # element helpers -------------------------------------------------------

    def mul(self, g, h) -> Perm:
        return compose(g, h)

    def inv(self, g) -> Perm:
        return invert(g)

    def power(self, g, k: int) -> Perm:
        out = self.identity
        if k < 0:
            g, k = invert(g), -k
        for _ in range(k):
            out = compose(g, out)
        return out

    def element_order(self, g) -> int:
        n, x = 1, tuple(g)
        while x != self.identity:
            x = compose(g, x)
            n += 1
        return n

    def __contains__(self, g) -> bool:
        return tuple(g) in self._elemset

    def class_named(self, name: str) -> ConjugacyClass:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(f"{self.name} has no class {name!r}")

    def class_index(self, c) -> int:
        if isinstance(c, ConjugacyClass):
            return c.index
        if isinstance(c, str):
            return self.class_named(c).index
        if isinstance(c, int):
            return c
        return self.class_of[tuple(c)]

    def character(self, name: str) -> "ClassFunction":
        for chi in self.characters:
            if chi.name == name:
                return chi
        raise KeyError(f"{self.name} has no irreducible character {name!r}")

    def subgroup(self, name: str) -> "FiniteGroup":
        try:
            return self.subgroups[name]
        except KeyError:
            raise KeyError(f"{self.name} has no recorded subgroup {name!r}") from None

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.degree == other.degree and self._elemset <= other._elemset

    def is_abelian(self) -> bool:
        return len(self.classes) == self.order

    def add_subgroup(self, name: str, sub: "FiniteGroup"):
        if not sub.is_subgroup_of(self):
            raise CatalogError(f"{sub.name} is not a subgroup of {self.name}")
        sub.parent = self
        self.subgroups[name] = sub

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """A class function: one cyclotomic value per conjugacy class, in class order."""

    group: FiniteGroup
    values: tuple
    name: str = field(default="")

    def __post_init__(self):
        vals = tuple(CyclotomicNumber.coerce(v) for v in self.values)
        if len(vals) != len(self.group.classes):
            raise ValueError(f"expected {len(self.group.classes)} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @property
    def degree(self):
        d = self.values[0]
        return d.as_rational() if d.is_rational() else d

    def __call__(self, g) -> CyclotomicNumber:
        return self.values[self.group.class_index(g)]

    def _same(self, other):
        if not isinstance(other, ClassFunction):
            return False
        if other.group is not self.group:
            raise GroupMismatch(f"class functions on {self.group.name} and {other.group.name}")
        return True

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and self.values == other.values

    def __hash__(self):
        return hash((id(self.group), self.values))

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)), f"{self.name}+{other.name}")

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)), f"{self.name}-{other.name}")

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return tensor_character(self, other)
        return ClassFunction(self.group, tuple(v * other for v in self.values), f"{other}*{self.name}")

    __rmul__ = __mul__

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v.conj() for v in self.values), f"conj({self.name})")

    def __repr__(self):
        return f"ClassFunction({self.group.name}:{self.name} = [{', '.join(map(str, self.values))}])"


def inner_product(phi: ClassFunction, psi: ClassFunction) -> CyclotomicNumber:
    """sum_C |C|/|G| phi(g_C) conj(psi(g_C)), exactly."""
    if phi.group is not psi.group:
        raise GroupMismatch(f"inner product across {phi.group.name} and {psi.group.name}")
    G = phi.group
    acc = ZERO
    for c, a, b in zip(G.classes, phi.values, psi.values):
        if a and b:
            acc = acc + a * b.conj() * c.size
    return acc / G.order


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, (ONE,) * len(G.classes), "triv")


def regular_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, (G.order,) + (0,) * (len(G.classes) - 1), "reg")


def induce_character(G: FiniteGroup, H: FiniteGroup, psi: ClassFunction) -> ClassFunction:
    """Ind_H^G psi(g) = (1/|H|) sum over x in G with x g x^-1 in H of psi(x g x^-1)."""
    if psi.group is not H:
        raise GroupMismatch("psi must be a class function on H")
    if not H.is_subgroup_of(G):
        raise ValueError(f"{H.name} is not a subgroup of {G.name}")
    vals = []
    for c in G.classes:
        g = c.rep
        acc = ZERO
        for x in G.elements:
            y = compose(compose(x, g), invert(x))
            if y in H:
                v = psi(y)
                if v:
                    acc = acc + v
        vals.append(acc / H.order)
    return ClassFunction(G, tuple(vals), f"Ind({psi.name})")


def restrict_character(G: FiniteGroup, H: FiniteGroup, phi: ClassFunction) -> ClassFunction:
    if phi.group is not G:
        raise GroupMismatch("phi must be a class function on G")
    if not H.is_subgroup_of(G):
        raise ValueError(f"{H.name} is not a subgroup of {G.name}")
    return ClassFunction(H, tuple(phi(c.rep) for c in H.classes), f"Res({phi.name})")


def tensor_character(phi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    if phi.group is not psi.group:
        raise GroupMismatch(f"tensor across {phi.group.name} and {psi.group.name}")
    return ClassFunction(phi.group, tuple(a * b for a, b in zip(phi.values, psi.values)), f"{phi.name}*{psi.name}")


def decompose_character(phi: ClassFunction, table=None) -> dict[str, int]:
    """Multiplicities (phi, chi_i) over the irreducible table, keeping the nonzero ones."""
    G = phi.group
    table = G.characters if table is None else table
    if not table:
        raise ValueError(f"{G.name} has no character table")
    mults: dict[str, int] = {}
    rebuilt = [ZERO] * len(G.classes)
    for chi in table:
        m = inner_product(phi, chi)
        if not m.is_integer() or m.as_rational() < 0:
            raise NotACharacter(f"multiplicity of {chi.name} in {phi.name} is {m}")
        m = m.as_rational()
        if m:
            mults[chi.name] = m
            rebuilt = [r + v * m for r, v in zip(rebuilt, chi.values)]
    if tuple(rebuilt) != phi.values:
        raise NotACharacter(f"{phi.name} is not in the span of the table")
    return mults


def power_class(G: FiniteGroup, C, k: int) -> ConjugacyClass:
    """The class containing g_C^k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rep = G.classes[G.class_index(C)].rep
    return G.classes[G.class_of[G.power(rep, k)]]


def permutation_character(G: FiniteGroup, H: FiniteGroup) -> ClassFunction:
    """Character of G acting on the left cosets G/H, by counting fixed cosets."""
    if not H.is_subgroup_of(G):
        raise ValueError(f"{H.name} is not a subgroup of {G.name}")
    cosets = []
    seen = set()
    for g in G.elements:
        if g not in seen:
            coset = frozenset(compose(g, h) for h in H.elements)
            seen |= coset
            cosets.append(coset)
    vals = []
    for c in G.classes:
        x = c.rep
        fixed = sum(1 for cs in cosets if compose(x, next(iter(cs))) in cs)
        vals.append(fixed)
    return ClassFunction(G, tuple(vals), f"perm({G.name}/{H.name})")


def validate_character_table(G: FiniteGroup):
    """Row and column orthogonality, sum of squared degrees, power-map sanity."""
    table = G.characters
    k = len(G.classes)
    if len(table) != k:
        raise CatalogError(f"{G.name}: {len(table)} characters for {k} classes")
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            ip = inner_product(a, b)
            if ip != (1 if i == j else 0):
                raise CatalogError(f"{G.name}: <{a.name},{b.name}> = {ip}")
    if sum(chi.degree**2 for chi in table) != G.order:
        raise CatalogError(f"{G.name}: squared degrees do not sum to |G|")
    for c1 in G.classes:
        for c2 in G.classes:
            s = ZERO
            for chi in table:
                s = s + chi.values[c1.index] * chi.values[c2.index].conj()
            expected = Fraction(G.order, c1.size) if c1 is c2 else 0
            if s != expected:
                raise CatalogError(f"{G.name}: column orthogonality fails at {c1.name},{c2.name}")
    for c in G.classes:
        for kk in range(G.exponent + 1):
            images = {G.class_of[G.power(g, kk)] for g in c.elements}
            if len(images) != 1:
                raise CatalogError(f"{G.name}: power map of {c.name} at k={kk} is not class-valued")
