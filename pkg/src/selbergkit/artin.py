"""Artin L-functions of catalog extensions and exact checks of their identities.

Local factors are characteristic polynomials det(1 - rho(sigma_p) T), built
from character power sums s_k = chi(sigma_p^k) by Newton's identities, so no
representation matrices are ever chosen. At a ramified prime the power sums
are traces on the inertia invariants, s_k = (1/|I|) sum_{tau in I} chi(sigma^k tau).

Every check compares two independently built Dirichlet series coefficient by
coefficient and reports the smallest index where they differ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arith.cyclotomic import ONE, ZERO, CyclotomicNumber
from .arith.primes import sieve_primes
from .chars import (
    ClassFunction,
    FiniteGroup,
    compose,
    decompose_character,
    induce_character,
    invert,
    power_class,
    restrict_character,
    tensor_character,
    trivial_character,
)
from .dirichlet import (
    DirichletSeries,
    LocalFactor,
    euler_to_coefficients,
    poly_divmod,
    poly_inflate,
    poly_mul,
    series_divide,
    series_multiply,
    series_power,
    zeta_series,
)
from .errors import GroupMismatch, MissingRamifiedData, NotACharacter

__all__ = [
    "power_sums_to_charpoly",
    "charpoly_to_power_sums",
    "local_power_sums",
    "artin_local_factor",
    "ArtinLabel",
    "artin_coefficients",
    "artin_series",
    "dedekind_series",
    "CheckReport",
    "zeta_factorization_check",
    "induction_check",
    "restriction_tensor_check",
    "dedekind_quotient",
    "double_coset_factor",
    "resolve_character",
]

C = CyclotomicNumber.coerce


# Newton's identities -------------------------------------------------------------


def power_sums_to_charpoly(s, degree: int) -> tuple:
    """Coefficients c_0..c_d of prod (1 - a_i T) from power sums s_1..s_d of the a_i."""
    s = [C(v) for v in s]
    if len(s) < degree:
        raise ValueError(f"need {degree} power sums, got {len(s)}")
    c = [ONE]
    for k in range(1, degree + 1):
        acc = s[k - 1]
        for i in range(1, k):
            if c[i] and s[k - 1 - i]:
                acc = acc + c[i] * s[k - 1 - i]
        c.append(-acc / k)
    return tuple(c)


def charpoly_to_power_sums(P, kmax: int) -> list:
    """Power sums s_1..s_kmax of the inverse roots of P (with P(0) = 1)."""
    P = [C(v) for v in P]
    if not P or P[0] != ONE:
        raise ValueError("P(0) must be 1")
    d = len(P) - 1
    s = []
    for k in range(1, kmax + 1):
        acc = P[k] * k if k <= d else ZERO
        for i in range(1, min(k - 1, d) + 1):
            if P[i] and s[k - 1 - i]:
                acc = acc + P[i] * s[k - 1 - i]
        s.append(-acc)
    return s


# characters -----------------------------------------------------------------------


def resolve_character(G: FiniteGroup, chi) -> ClassFunction:
    """Accept a name from G's table or a class function on G (rejecting virtual characters)."""
    if isinstance(chi, str):
        return G.character(chi)
    if not isinstance(chi, ClassFunction):
        raise TypeError(f"expected a character name or ClassFunction, got {type(chi).__name__}")
    if chi.group is not G:
        raise GroupMismatch(f"character lives on {chi.group.name}, not {G.name}")
    if G.characters:
        decompose_character(chi)  # raises NotACharacter for virtual or non-characters
    return chi


def _degree(chi: ClassFunction) -> int:
    d = chi.values[0]
    if not d.is_integer() or d.as_rational() < 0:
        raise NotACharacter(f"{chi.name} has degree {d}")
    return int(d.as_rational())


def _class_charpoly(G: FiniteGroup, chi: ClassFunction, cls_index: int) -> tuple:
    d = _degree(chi)
    s = [chi.values[power_class(G, cls_index, k).index] for k in range(1, d + 1)]
    return power_sums_to_charpoly(s, d)


def _element_charpoly(G: FiniteGroup, chi: ClassFunction, g) -> tuple:
    return _class_charpoly(G, chi, G.class_of[tuple(g)])


def local_power_sums(entry, chi: ClassFunction, p: int, kmax: int) -> list:
    """s_0..s_kmax: traces of sigma_p^k on the inertia invariants (all of V when unramified)."""
    G = entry.group
    if not entry.is_ramified(p):
        rep = entry.frobenius_class(p).rep
        return [chi(G.power(rep, k)) for k in range(kmax + 1)]
    rd = entry.ramified_data(p)
    out = []
    for k in range(kmax + 1):
        sk = rd.frobenius_power(k)
        acc = ZERO
        for tau in rd.inertia.elements:
            v = chi(compose(sk, tau))
            if v:
                acc = acc + v
        out.append(acc / rd.e)
    return out


def _ramified_charpoly(entry, chi: ClassFunction, p: int) -> tuple:
    s0 = local_power_sums(entry, chi, p, 0)[0]
    if not s0.is_integer() or s0.as_rational() < 0:
        raise NotACharacter(f"dim V^I = {s0} at p={p} for {chi.name}")
    d = int(s0.as_rational())
    s = local_power_sums(entry, chi, p, d)[1:]
    return power_sums_to_charpoly(s, d)


def artin_local_factor(entry, chi, p: int) -> LocalFactor:
    """det(1 - rho(sigma_p) T | V^{I_p}) as a LocalFactor."""
    chi = resolve_character(entry.group, chi)
    if entry.is_ramified(p):
        return LocalFactor(p, _ramified_charpoly(entry, chi, p))
    return LocalFactor(p, _class_charpoly(entry.group, chi, entry.frobenius_class(p).index))


@dataclass(frozen=True)
class ArtinLabel:
    entry: str
    character: str
    N: int

    def __str__(self):
        return f"artin:{self.entry}:{self.character}"


def _local_factors(entry, N: int, unramified, ramified, missing: str = "raise"):
    """Local factors at all p <= N; returns (factors, primes whose fixtures were missing).

    ``unramified(class_index)`` and ``ramified(p)`` produce denominators.
    With missing="trivial", primes lacking fixtures get the factor 1.
    """
    primes = sieve_primes(N)
    classes = entry.frobenius_classes(primes).tolist()
    cache: dict[int, tuple] = {}
    factors = {}
    skipped = []
    for p, ci in zip(primes.tolist(), classes):
        if ci >= 0:
            if ci not in cache:
                cache[ci] = unramified(ci)
            factors[p] = LocalFactor(p, cache[ci])
            continue
        try:
            factors[p] = LocalFactor(p, ramified(p))
        except MissingRamifiedData:
            if missing != "trivial":
                raise
            factors[p] = LocalFactor(p, (ONE,))
            skipped.append(p)
    return factors, skipped


def artin_series(entry, chi, N: int, missing: str = "raise") -> DirichletSeries:
    """Coefficients a_1..a_N of L(s, chi, K/Q)."""
    G = entry.group
    chi = resolve_character(G, chi)
    factors, _ = _local_factors(
        entry,
        N,
        lambda ci: _class_charpoly(G, chi, ci),
        lambda p: _ramified_charpoly(entry, chi, p),
        missing,
    )
    return euler_to_coefficients(factors, None, N, f"artin:{entry.id}:{chi.name}")


def artin_coefficients(label: ArtinLabel, catalog=None) -> DirichletSeries:
    from .galois import load_catalog

    entry = (catalog or load_catalog())[label.entry]
    return artin_series(entry, label.character, label.N)


def _dedekind_ramified(entry, p):
    _, f, g = entry.local_fg(p)
    return _one_minus_t_power(f, g)


def _one_minus_t_power(f: int, g: int) -> tuple:
    base = poly_inflate((ONE, -ONE), f)
    out = (ONE,)
    for _ in range(g):
        out = poly_mul(out, base)
    return out


def dedekind_series(entry, N: int, missing: str = "raise", overrides=None) -> DirichletSeries:
    """Coefficients of zeta_K from the (e, f, g) data: P_p = (1 - T^f)^g.

    ``overrides`` maps primes to replacement LocalFactors (used for fault injection).
    """
    G = entry.group
    factors, _ = _local_factors(
        entry,
        N,
        lambda ci: _one_minus_t_power(G.element_order(G.classes[ci].rep), G.order // G.element_order(G.classes[ci].rep)),
        lambda p: _dedekind_ramified(entry, p),
        missing,
    )
    for p, lf in (overrides or {}).items():
        factors[p] = lf if isinstance(lf, LocalFactor) else LocalFactor(p, tuple(lf))
    return euler_to_coefficients(factors, None, N, f"zetaK:{entry.id}")


# reports --------------------------------------------------------------------------


@dataclass
class CheckReport:
    check: str
    entry: str
    character: str | None
    N: int
    restricted_to_coprime: bool
    passed: bool
    first_fail: int | None
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "entry": self.entry,
            "character": self.character,
            "N": self.N,
            "restricted_to_coprime": self.restricted_to_coprime,
            "pass": self.passed,
            "first_fail": self.first_fail,
            "witness": self.witness,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def __bool__(self):
        return self.passed


def _compare(check, entry, character, N, lhs, rhs, restrict_to, restricted) -> CheckReport:
    bad = lhs.first_mismatch(rhs, coprime_to=restrict_to if restricted else None)
    witness = None
    if bad is not None:
        witness = {"n": bad, "lhs": str(lhs[bad]), "rhs": str(rhs[bad])}
    return CheckReport(check, entry.id, character, N, restricted, bad is None, bad, witness)


def _skip_modulus(entry, skipped) -> int:
    m = 1
    for p in skipped:
        m *= p
    return m


def zeta_factorization_check(entry, N: int, overrides=None) -> CheckReport:
    """zeta_K = prod_chi L(s, chi)^chi(1), coefficient by coefficient up to N."""
    if N < 2:
        raise ValueError("N must be at least 2")
    G = entry.group
    lhs = dedekind_series(entry, N, missing="trivial", overrides=overrides)
    skipped = [p for p in entry.bad_primes if p not in entry.ramified and p <= N]
    rhs = DirichletSeries.unit(N)
    for chi in G.characters:
        L = artin_series(entry, chi, N, missing="trivial")
        rhs = series_multiply(rhs, series_power(L, _degree(chi)))
    restricted = bool(skipped)
    return _compare("zeta-factor", entry, None, N, lhs, rhs, _skip_modulus(entry, skipped), restricted)


def double_coset_factor(G: FiniteGroup, H: FiniteGroup, psi: ClassFunction, sigma) -> tuple:
    """prod over H x D in H\\G/D of det(1 - psi(x sigma^f_x x^-1) T^f_x), D = <sigma>."""
    sigma = tuple(sigma)
    D = [G.identity]
    x = sigma
    while x != G.identity:
        D.append(x)
        x = compose(sigma, x)
    seen = set()
    out = (ONE,)
    for x in G.elements:
        if x in seen:
            continue
        coset = {compose(compose(h, x), d) for h in H.elements for d in D}
        seen |= coset
        xinv = invert(x)
        j, y = 1, sigma
        while compose(compose(x, y), xinv) not in H:
            y = compose(sigma, y)
            j += 1
        local = _element_charpoly(H, psi, compose(compose(x, y), xinv))
        out = poly_mul(out, poly_inflate(local, j))
    return out


def _grouped_series(entry, N, per_class, label) -> DirichletSeries:
    factors, _ = _local_factors(entry, N, per_class, lambda p: (ONE,), "trivial")
    return euler_to_coefficients(factors, None, N, label)


def _subgroup_char(entry, H, psi):
    G = entry.group
    if isinstance(H, str):
        H = G.subgroup(H)
    if not H.is_subgroup_of(G):
        raise GroupMismatch(f"{H.name} is not a subgroup of {G.name}")
    psi = resolve_character(H, psi)
    return H, psi


def induction_check(entry, H, psi, N: int) -> CheckReport:
    """L(Ind_H^G psi, K/Q) = L(psi, K/K^H) at indices coprime to disc.

    The left side uses the induced character on G; the right side enumerates
    the primes of K^H above p as double cosets H x D_p.
    """
    G = entry.group
    H, psi = _subgroup_char(entry, H, psi)
    ind = induce_character(G, H, psi)
    lhs = _grouped_series(entry, N, lambda ci: _class_charpoly(G, ind, ci), f"artin:{entry.id}:Ind({psi.name})")
    rhs = _grouped_series(
        entry, N, lambda ci: double_coset_factor(G, H, psi, G.classes[ci].rep), f"artin:{entry.id}/{H.name}:{psi.name}"
    )
    return _compare("induction", entry, f"{H.name}:{psi.name}", N, lhs, rhs, abs(entry.disc), True)


def restriction_tensor_check(entry, H, chi, N: int) -> CheckReport:
    """L(Res_H chi, K/K^H) = L(chi (x) Ind_H^G 1, K/Q) at indices coprime to disc."""
    G = entry.group
    if isinstance(H, str):
        H = G.subgroup(H)
    chi = resolve_character(G, chi)
    res = restrict_character(G, H, chi)
    rhs_char = tensor_character(chi, induce_character(G, H, trivial_character(H)))
    lhs = _grouped_series(
        entry, N, lambda ci: double_coset_factor(G, H, res, G.classes[ci].rep), f"artin:{entry.id}/{H.name}:Res({chi.name})"
    )
    rhs = _grouped_series(entry, N, lambda ci: _class_charpoly(G, rhs_char, ci), f"artin:{entry.id}:{rhs_char.name}")
    report = _compare("restriction", entry, f"{H.name}:{chi.name}", N, lhs, rhs, abs(entry.disc), True)
    index = G.order // H.order
    degrees_ok = True
    for ci in range(len(G.classes)):
        lp = double_coset_factor(G, H, res, G.classes[ci].rep)
        rp = _class_charpoly(G, rhs_char, ci)
        if len(lp) - 1 != _degree(chi) * index or len(rp) - 1 != _degree(chi) * index:
            degrees_ok = False
    report.details["degree"] = _degree(chi) * index
    report.details["degrees_ok"] = degrees_ok
    report.passed = report.passed and degrees_ok
    return report


@dataclass
class QuotientResult:
    series: DirichletSeries
    report: CheckReport
    divisible_primes: int


def dedekind_quotient(entry, N: int) -> QuotientResult:
    """zeta_K / zeta by series division, with the local divisibility of (1 - T^f)^g by (1 - T)."""
    zk = dedekind_series(entry, N, missing="trivial")
    q = series_divide(zk, zeta_series(N))
    q.label = f"zetaK:{entry.id}/zeta"
    first_bad = None
    count = 0
    for p in sieve_primes(N).tolist():
        try:
            _, f, g = entry.local_fg(p)
        except MissingRamifiedData:
            continue
        _, rem = poly_divmod(_one_minus_t_power(f, g), (ONE, -ONE))
        if any(rem):
            first_bad = first_bad or p
        count += 1
    skipped = [p for p in entry.bad_primes if p not in entry.ramified and p <= N]
    report = CheckReport(
        "dedekind",
        entry.id,
        None,
        N,
        bool(skipped),
        first_bad is None and q[1] == ONE,
        first_bad,
    )
    report.details["primes_checked"] = count
    return QuotientResult(q, report, count)
