"""Graded characters for the restricted Cherednik algebra of S_n at t = 0.

Computes fake degrees (by the hook product and, independently, by a Molien
sum), Kostka polynomials, the q = t specialization of Kostka-Macdonald
coefficients, classes of baby Verma and simple modules in the graded
Grothendieck group, Poincare polynomials of the zero-fibre components, and
exact verification suites for the character identities relating them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping, Optional

from .exactalg import ONE, ZERO, LaurentPoly, RatFunc, lp_exact_div, rf_sum
from .symcomb import (
    Partition,
    _table,
    charge_kostka,
    induced_young_character,
    kronecker,
    partitions,
)

__all__ = [
    "GradedWCharacter",
    "FakeDegreeRecord",
    "IdentityViolation",
    "TooLarge",
    "Mismatch",
    "Report",
    "MAX_SUITE_N",
    "MAX_QUERY_N",
    "hook_poly",
    "fake_degree",
    "fake_degree_molien",
    "kostka_poly",
    "km_tt",
    "verma_class",
    "lsimple_class",
    "poincare_p",
    "poincare_general",
    "verify_simmult",
    "verify_import",
    "verify_oracles",
    "common_component",
]

MAX_SUITE_N = 8
MAX_QUERY_N = 10


class IdentityViolation(AssertionError):
    """Two routes to the same quantity disagreed."""


class TooLarge(ValueError):
    pass


def _p(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def _check_n(n: int, limit: int) -> None:
    if n > limit:
        raise TooLarge(f"n={n} exceeds the configured maximum {limit}")


@dataclass(frozen=True)
class GradedWCharacter:
    """A class in the graded Grothendieck group of S_n: irreducible -> Laurent polynomial."""

    n: int
    coeffs: Mapping[Partition, LaurentPoly]

    def __post_init__(self):
        for lam in self.coeffs:
            if _p(lam).n != self.n:
                raise ValueError(f"{lam} is not a partition of {self.n}")

    def __getitem__(self, lam) -> LaurentPoly:
        return self.coeffs.get(_p(lam), ZERO)

    def dimension(self) -> Fraction:
        return sum((c(1) * _p(lam).dim() for lam, c in self.coeffs.items()), Fraction(0))

    def graded_dimension(self) -> LaurentPoly:
        total = ZERO
        for lam, c in self.coeffs.items():
            total = total + c * _p(lam).dim()
        return total

    def __eq__(self, other):
        if not isinstance(other, GradedWCharacter):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return self.n == other.n and all(self[k] == other[k] for k in keys)

    def to_json(self) -> list:
        return [
            {"mu": list(mu), "coeff": self[mu].to_json()}
            for mu in partitions(self.n)
            if not self[mu].is_zero()
        ]


@dataclass(frozen=True)
class FakeDegreeRecord:
    lam: Partition
    f: LaurentPoly
    b: int
    j: int


def phi(n: int) -> LaurentPoly:
    """(1 - t)(1 - t^2)...(1 - t^n)."""
    out = ONE
    for j in range(1, n + 1):
        out = out * (ONE - LaurentPoly.monomial(j))
    return out


@lru_cache(maxsize=None)
def hook_poly(lam: Partition) -> LaurentPoly:
    """H_lam(t) = prod over cells of (1 - t^hook)."""
    out = ONE
    for h in _p(lam).hooks():
        out = out * (ONE - LaurentPoly.monomial(h))
    return out


def cycle_denominator(rho) -> LaurentPoly:
    """prod_i (1 - t^{rho_i}) = det(1 - t w) for w of cycle type rho."""
    out = ONE
    for r in _p(rho):
        out = out * (ONE - LaurentPoly.monomial(r))
    return out


@lru_cache(maxsize=None)
def _fake_degree(lam: Partition) -> FakeDegreeRecord:
    f = lp_exact_div(phi(lam.n), hook_poly(lam)).shift(lam.nstat())
    return FakeDegreeRecord(lam, f, f.valuation(), f.degree())


def fake_degree(lam) -> FakeDegreeRecord:
    lam = _p(lam)
    if lam.n < 1:
        raise ValueError("fake degrees need n >= 1")
    return _fake_degree(lam)


@lru_cache(maxsize=None)
def _fake_degree_molien(lam: Partition) -> LaurentPoly:
    n = lam.n
    tab = _table(n)
    row = tab.values[tab.index(lam)]
    ph = phi(n)
    terms = [
        RatFunc(ph * Fraction(chi, z), cycle_denominator(rho))
        for rho, chi, z in zip(tab.labels, row, tab.zee)
        if chi
    ]
    return rf_sum(terms).to_poly()


def fake_degree_molien(lam, max_n: int = MAX_QUERY_N) -> LaurentPoly:
    """Graded multiplicity of S_lam in the coinvariant ring via a Molien sum."""
    lam = _p(lam)
    _check_n(lam.n, max_n)
    return _fake_degree_molien(lam)


@lru_cache(maxsize=None)
def _kostka_poly(lam: Partition) -> LaurentPoly:
    return lp_exact_div(phi(lam.n), hook_poly(lam))


def kostka_poly(lam) -> LaurentPoly:
    """K_lam(t) = (1-t)...(1-t^n) / prod (1 - t^hook), taken verbatim.

    The single-row and single-column shapes both give 1; t^{n(lam)} K_lam(t)
    is the cocharge generating function over standard tableaux.
    """
    return _kostka_poly(_p(lam))


# km_tt values loaded from a disk cache, keyed by (mu, lam)
_KM_OVERRIDES: dict = {}


@lru_cache(maxsize=None)
def _km_tt(mu: Partition, lam: Partition) -> LaurentPoly:
    key = (mu, lam)
    if key in _KM_OVERRIDES:
        return _KM_OVERRIDES[key]
    tab = _table(mu.n)
    a = tab.values[tab.index(mu)]
    b = tab.values[tab.index(lam)]
    h = hook_poly(lam)
    terms = [
        RatFunc(h * Fraction(x * y, z), cycle_denominator(rho))
        for rho, x, y, z in zip(tab.labels, a, b, tab.zee)
        if x * y
    ]
    return rf_sum(terms).to_poly()


def km_tt(mu, lam, max_n: int = MAX_QUERY_N) -> LaurentPoly:
    """K_{mu lam}(t, t), by inverting the character expansion with orthogonality."""
    mu, lam = _p(mu), _p(lam)
    if mu.n != lam.n:
        raise ValueError(f"|{mu}| != |{lam}|")
    _check_n(mu.n, max_n)
    return _km_tt(mu, lam)


def install_km_table(n: int, table: Mapping) -> None:
    """Seed km_tt with precomputed values ``{(mu, lam): LaurentPoly}``."""
    for (mu, lam), val in table.items():
        _KM_OVERRIDES[(_p(mu), _p(lam))] = val
    _km_tt.cache_clear()


def verma_class(lam) -> GradedWCharacter:
    """[M(S_lam)] = sum_T f_T(t) [T (x) S_lam]."""
    lam = _p(lam)
    coeffs: dict = {}
    for T in partitions(lam.n):
        f = fake_degree(T).f
        for mu, mult in kronecker(T, lam).items():
            coeffs[mu] = coeffs.get(mu, ZERO) + f * mult
    return GradedWCharacter(lam.n, {k: v for k, v in coeffs.items() if v})


def lsimple_class(lam) -> GradedWCharacter:
    """[L(S_lam)] = sum_mu K_{mu lam}(t, t) [S_mu]."""
    lam = _p(lam)
    coeffs = {mu: km_tt(mu, lam) for mu in partitions(lam.n)}
    return GradedWCharacter(lam.n, {k: v for k, v in coeffs.items() if v})


def dual_label(lam) -> Partition:
    """S* for S_n: every irreducible is self-dual."""
    return _p(lam)


def poincare_general(f_S: LaurentPoly, f_Sstar: LaurentPoly) -> LaurentPoly:
    """t^{b_{S*} - b_S} f_S(t) f_{S*}(1/t), valid in any smooth block."""
    return (f_S * f_Sstar.reverse()).shift(f_Sstar.valuation() - f_S.valuation())


def poincare_p(lam) -> LaurentPoly:
    """p_{S_lam}(t), cross-checked between the Kostka and fake-degree forms."""
    lam = _p(lam)
    k = kostka_poly(lam)
    via_kostka = k * k.reverse()
    via_fake = poincare_general(fake_degree(lam).f, fake_degree(dual_label(lam)).f)
    if via_kostka != via_fake:
        raise IdentityViolation(f"p_S mismatch for {lam}: {via_kostka} != {via_fake}")
    return via_kostka


@dataclass(frozen=True)
class Mismatch:
    identity: str
    lam: tuple
    rho: Optional[tuple]
    expected: str
    got: str

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "lambda": list(self.lam),
            "rho": None if self.rho is None else list(self.rho),
            "expected": self.expected,
            "got": self.got,
        }


@dataclass
class Report:
    suite: str
    n: int
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, identity, lam, rho, expected, got) -> None:
        self.cases += 1
        if expected != got:
            self.failures.append(
                Mismatch(identity, tuple(lam), None if rho is None else tuple(rho), str(expected), str(got))
            )

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "cases": self.cases,
            "failures": [m.to_json() for m in self.failures],
        }


KmSource = Callable[[Partition, Partition], LaurentPoly]


def verify_simmult(n: int, km: Optional[KmSource] = None, max_n: int = MAX_SUITE_N) -> Report:
    """Check [M(S_lam)] = sum_mu t^{-b_lam} f_lam(t) K_{mu lam}(t,t) [S_mu] for all lam."""
    _check_n(n, max_n)
    km = km or km_tt
    report = Report("simmult", n)
    for lam in partitions(n):
        fd = fake_degree(lam)
        scale = fd.f.shift(-fd.b)
        lhs = verma_class(lam)
        for mu in partitions(n):
            report.record("simmult", lam, mu, lhs[mu], scale * km(mu, lam))
    return report


def verify_import(n: int, km: Optional[KmSource] = None, max_n: int = MAX_SUITE_N) -> Report:
    """Check the power-sum expansion of the K(t,t) rows, its lam = (n) case and the
    resulting identity for the fake degrees."""
    _check_n(n, max_n)
    km = km or km_tt
    report = Report("import", n)
    tab = _table(n)
    ph = phi(n)
    for lam in tab.labels:
        h = hook_poly(lam)
        krow = [km(mu, lam) for mu in tab.labels]
        for j, rho in enumerate(tab.labels):
            chi_lam = tab.values[tab.index(lam)][j]
            lhs = rf_sum(k * tab.values[i][j] for i, k in enumerate(krow))
            rhs = RatFunc(h * chi_lam, cycle_denominator(rho))
            report.record("import", lam, rho, rhs, lhs)
            # fake degrees weighted by characters against the coinvariant Molien term
            fsum = rf_sum(
                fake_degree(mu).f * (tab.values[i][j] * chi_lam) for i, mu in enumerate(tab.labels)
            )
            report.record("fional", lam, rho, RatFunc(ph * chi_lam, cycle_denominator(rho)), fsum)
    top = Partition((n,))
    for mu in tab.labels:
        report.record("K_mu_n_equals_fake_degree", mu, None, fake_degree(mu).f, km(mu, top))
    return report


def verify_oracles(n: int, max_n: int = MAX_SUITE_N) -> Report:
    """Hook product vs Molien sum for fake degrees; hook product vs cocharge for Kostka."""
    _check_n(n, max_n)
    report = Report("oracles", n)
    for lam in partitions(n):
        report.record("fake_degree_molien", lam, None, fake_degree(lam).f, fake_degree_molien(lam))
        report.record("kostka_charge", lam, None, charge_kostka(lam), kostka_poly(lam).shift(lam.nstat()))
    return report


def common_component(lam) -> tuple[Partition, int]:
    """Unique common constituent of Ind_{S_lam'} 1 and Ind_{S_lam} sign."""
    lam = _p(lam)
    conj = lam.conjugate()
    triv = induced_young_character(conj, "trivial")
    sgn = induced_young_character(lam, "sign")
    common = {mu: min(triv[mu], sgn[mu]) for mu in triv if mu in sgn}
    if list(common.items()) != [(conj, 1)]:
        raise IdentityViolation(f"common constituents for {lam}: {common}")
    return conj, 1


def dimension_checks(lam) -> dict:
    """Dimension counts at t = 1 that the classes must satisfy."""
    lam = _p(lam)
    n = lam.n
    return {
        "verma": verma_class(lam).dimension() == factorial(n) * lam.dim(),
        "simple": lsimple_class(lam).dimension() == factorial(n),
        "poincare": poincare_p(lam)(1) == lam.dim() ** 2,
    }
