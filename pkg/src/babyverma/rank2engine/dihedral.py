"""Dihedral reflection groups I_2(m): group data, irreducibles, polynomials and coinvariants.

Conventions. ``X, Y`` are coordinates on h* (so C[h*] = Q(zeta)[X, Y] and
X, Y have degree +1). The rotation ``r`` acts by X -> zeta X, Y -> zeta^{-1} Y
and the reflection ``s`` swaps X and Y. The dual basis ``X*, Y*`` of h* (the
y-generators, degree -1) transforms contragrediently. The reflections are
``s_k = r^k s`` for k = 0..m-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from .cyclo import CycloField, CycloNum, mat_identity, mat_mul, rref

__all__ = [
    "Element",
    "Reflection",
    "DihedralData",
    "DihedralIrrep",
    "CoinvariantBasis",
    "Poly",
    "build_group",
    "irreps",
    "irrep",
    "coinvariant_basis",
    "RelationViolation",
]


class RelationViolation(AssertionError):
    """A defining relation failed as an exact matrix identity."""


@dataclass(frozen=True)
class Element:
    """r^k s^f with k mod m and f in {0, 1}."""

    k: int
    f: int

    def mul(self, other: "Element", m: int) -> "Element":
        sign = -1 if self.f else 1
        return Element((self.k + sign * other.k) % m, (self.f + other.f) % 2)

    def inverse(self, m: int) -> "Element":
        if self.f:
            return self
        return Element((-self.k) % m, 0)


@dataclass(frozen=True)
class Reflection:
    k: int  # s_k = r^k s
    alpha: tuple  # root in h, coefficients on (X, Y)
    alpha_vee: tuple  # coroot in h*, coefficients on (X*, Y*)
    n_s: Fraction
    lambda_s: CycloNum
    cls: str

    @property
    def element(self) -> Element:
        return Element(self.k, 1)

    def pairing(self) -> CycloNum:
        """alpha_vee(alpha)."""
        return self.alpha_vee[0] * self.alpha[0] + self.alpha_vee[1] * self.alpha[1]


@dataclass(frozen=True)
class DihedralData:
    m: int
    field: CycloField
    elements: tuple
    reflections: tuple
    classes: tuple  # reflection class labels

    @property
    def order(self) -> int:
        return 2 * self.m

    def zeta(self, k: int = 1) -> CycloNum:
        return self.field.zeta(k)

    def validate_c(self, c: Mapping[str, Fraction]) -> dict:
        missing = set(self.classes) - set(c)
        if missing:
            raise ValueError(f"missing parameter for reflection classes {sorted(missing)}")
        return {k: Fraction(c[k]) for k in self.classes}

    def c_from_values(self, values) -> dict:
        """Map a list of 1 or 2 rationals onto the reflection classes."""
        values = [Fraction(v) for v in values]
        if len(values) == 1:
            values = values * len(self.classes)
        if len(values) != len(self.classes):
            raise ValueError(f"I_2({self.m}) has {len(self.classes)} reflection classes, got {len(values)} values")
        return dict(zip(self.classes, values))

    def conjugacy_classes(self) -> list:
        """Representatives with class sizes, as (label, Element, size)."""
        m = self.m
        out = [("r0", Element(0, 0), 1)]
        for k in range(1, m // 2 + 1):
            size = 1 if 2 * k == m else 2
            out.append((f"r{k}", Element(k, 0), size))
        if m % 2:
            out.append(("s", Element(0, 1), m))
        else:
            out.append(("s", Element(0, 1), m // 2))
            out.append(("rs", Element(1, 1), m // 2))
        return out


def build_group(m: int, root_scales: Optional[Mapping[int, tuple]] = None) -> DihedralData:
    """Group elements and reflection data of I_2(m).

    ``root_scales`` optionally rescales (alpha_s, alpha_s^vee) per reflection;
    every downstream formula is invariant under this.
    """
    if m < 3:
        raise ValueError("dihedral reflection groups need m >= 3")
    F = CycloField(m)
    elements = tuple(Element(k, f) for f in (0, 1) for k in range(m))
    refl = []
    for k in range(m):
        a_scale, v_scale = (root_scales or {}).get(k, (1, 1))
        alpha = (F.one * a_scale, -F.zeta(-k) * a_scale)
        alpha_vee = (F.one * v_scale, -F.zeta(k) * v_scale)
        cls = "s" if m % 2 else ("s_even" if k % 2 == 0 else "s_odd")
        refl.append(Reflection(k, alpha, alpha_vee, Fraction(1, 2), F.from_rational(2), cls))
    classes = ("s",) if m % 2 else ("s_even", "s_odd")
    return DihedralData(m, F, elements, tuple(refl), classes)


@dataclass(frozen=True)
class DihedralIrrep:
    label: str
    dim: int
    r: tuple  # matrix of the rotation, rows of CycloNum
    s: tuple  # matrix of the reflection s
    m: int

    def matrix(self, g: Element, field: CycloField) -> list:
        out = mat_identity(field, self.dim)
        R = [list(row) for row in self.r]
        for _ in range(g.k % self.m):
            out = mat_mul(out, R, field)
        if g.f:
            out = mat_mul(out, [list(row) for row in self.s], field)
        return out

    def character(self, g: Element, field: CycloField) -> CycloNum:
        mat = self.matrix(g, field)
        return sum((mat[i][i] for i in range(self.dim)), field.zero)


@lru_cache(maxsize=None)
def irreps(m: int) -> tuple:
    """All irreducible representations of I_2(m), linear ones first."""
    F = CycloField(m)
    one, zero = F.one, F.zero
    out = [
        DihedralIrrep("triv", 1, ((one,),), ((one,),), m),
        DihedralIrrep("sgn", 1, ((one,),), ((-one,),), m),
    ]
    if m % 2 == 0:
        out.append(DihedralIrrep("eps+", 1, ((-one,),), ((one,),), m))
        out.append(DihedralIrrep("eps-", 1, ((-one,),), ((-one,),), m))
    for k in range(1, (m + 1) // 2):
        r = ((F.zeta(k), zero), (zero, F.zeta(-k)))
        s = ((zero, one), (one, zero))
        out.append(DihedralIrrep(f"phi{k}", 2, r, s, m))
    return tuple(out)


def irrep(m: int, label: str) -> DihedralIrrep:
    for rep in irreps(m):
        if rep.label == label:
            return rep
    raise KeyError(f"I_2({m}) has no irreducible labelled {label!r}")


class Poly:
    """Homogeneous-or-not polynomial in two variables over Q(zeta): {(a, b): coeff}."""

    __slots__ = ("field", "terms")

    def __init__(self, field: CycloField, terms: Optional[dict] = None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, field, a: int, b: int, coeff=None) -> "Poly":
        return cls(field, {(a, b): field.one if coeff is None else coeff})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return Poly(self.field, out)

    def __neg__(self):
        return Poly(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            out: dict = {}
            for (a, b), u in self.terms.items():
                for (c, d), v in other.terms.items():
                    key = (a + c, b + d)
                    w = u * v
                    out[key] = out[key] + w if key in out else w
            return Poly(self.field, out)
        return Poly(self.field, {k: v * other for k, v in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def act(self, g: Element, m: int, dual: bool = False) -> "Poly":
        """Left action of g. ``dual`` selects the contragredient (y-variable) action."""
        out = {}
        sign = -1 if dual else 1
        for (a, b), v in self.terms.items():
            if g.f:
                a, b = b, a
            out[(a, b)] = v * self.field.zeta(sign * g.k * (a - b))
        return Poly(self.field, out)

    def div_linear(self, l0: CycloNum, l1: CycloNum) -> "Poly":
        """Exact quotient by the linear form l0*X + l1*Y; raises if not divisible."""
        from ..exactalg import NotDivisible

        out: dict = {}
        by_deg: dict = {}
        for (a, b), v in self.terms.items():
            by_deg.setdefault(a + b, {})[a] = v
        for d, coeffs in by_deg.items():
            if d == 0:
                raise NotDivisible("nonzero constant is not divisible by a linear form")
            # solve (l0 X + l1 Y) * sum_i q_i X^i Y^{d-1-i} = sum_a p_a X^a Y^{d-a}
            q = {}
            if l0:
                inv0 = l0.inverse()
                for a in range(d, 0, -1):
                    # coefficient of X^a Y^{d-a}: l0 q_{a-1} + l1 q_a
                    pa = coeffs.get(a, self.field.zero)
                    qa = q.get(a, self.field.zero)
                    q[a - 1] = (pa - l1 * qa) * inv0
                rem = coeffs.get(0, self.field.zero) - l1 * q.get(0, self.field.zero)
            else:
                inv1 = l1.inverse()
                for a in range(0, d):
                    pa = coeffs.get(a, self.field.zero)
                    prev = q.get(a - 1, self.field.zero) if a > 0 else self.field.zero
                    q[a] = (pa - l0 * prev) * inv1
                rem = coeffs.get(d, self.field.zero) - l0 * q.get(d - 1, self.field.zero)
            if rem:
                raise NotDivisible("polynomial is not divisible by the linear form")
            for i, v in q.items():
                if v:
                    key = (i, d - 1 - i)
                    out[key] = out[key] + v if key in out else v
        return Poly(self.field, out)

    def __repr__(self):
        return " + ".join(f"({v})X^{a}Y^{b}" for (a, b), v in sorted(self.terms.items())) or "0"


@dataclass
class CoinvariantBasis:
    """Standard monomials of Q(zeta)[X, Y] / (XY, X^m + Y^m), degree by degree."""

    m: int
    by_degree: list  # list of lists of (a, b)
    normal_forms: dict = field(repr=False)  # (a, b) -> {(a', b'): Fraction}

    @property
    def top_degree(self) -> int:
        return len(self.by_degree) - 1

    def hilbert(self) -> list:
        return [len(b) for b in self.by_degree]

    def dimension(self) -> int:
        return sum(self.hilbert())

    def monomials(self) -> list:
        return [mono for block in self.by_degree for mono in block]

    def reduce(self, poly: Poly) -> dict:
        """Normal form of ``poly`` as {standard monomial: CycloNum}."""
        out: dict = {}
        for mono, v in poly.terms.items():
            for std, q in self.normal_form(mono).items():
                w = v * q
                out[std] = out[std] + w if std in out else w
        return {k: v for k, v in out.items() if v}

    def normal_form(self, mono: tuple) -> dict:
        d = mono[0] + mono[1]
        if d > self.top_degree:
            return {}
        return self.normal_forms[mono]


@lru_cache(maxsize=None)
def coinvariant_basis(m: int) -> CoinvariantBasis:
    """Quotient of Q[X, Y] by the ideal of the invariants XY and X^m + Y^m.

    Each graded piece is computed by row reduction over Q: the ideal in degree
    d is spanned by XY times monomials of degree d-2 and X^m + Y^m times
    monomials of degree d-m. Mixed monomials are eliminated first, then pure
    Y-powers, so the standard monomials are 1, X^a, Y^b (b < m) and X^m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    F = CycloField(1)
    by_degree = []
    normal_forms: dict = {}
    d = 0
    while True:
        # column order: mixed monomials, then Y^d, then X^d
        cols = [(a, d - a) for a in range(1, d)] + ([(0, d), (d, 0)] if d > 0 else [(0, 0)])
        index = {mono: i for i, mono in enumerate(cols)}
        rows = []
        for i in range(d - 1):  # XY * X^i Y^{d-2-i}
            row = [F.zero] * len(cols)
            row[index[(i + 1, d - 1 - i)]] = F.one
            rows.append(row)
        for i in range(d - m + 1):  # (X^m + Y^m) * X^i Y^{d-m-i}
            row = [F.zero] * len(cols)
            row[index[(m + i, d - m - i)]] += F.one
            row[index[(i, d - i)]] += F.one
            rows.append(row)
        red, pivots = rref(rows, len(cols), F)
        standard = [cols[j] for j in range(len(cols)) if j not in pivots]
        if not standard:
            break
        for mono in cols:
            j = index[mono]
            vec = {c: Fraction(0) for c in standard}
            if j in pivots:
                row = red[pivots.index(j)]
                for c in standard:
                    vec[c] = -row[index[c]].to_rational()
            else:
                vec[mono] = Fraction(1)
            normal_forms[mono] = {k: v for k, v in vec.items() if v}
        by_degree.append(sorted(standard, key=lambda mono: (-mono[0], mono[1])))
        d += 1
    basis = CoinvariantBasis(m, by_degree, normal_forms)
    expected = [1] + [2] * (m - 1) + [1]
    if basis.hilbert() != expected:
        raise AssertionError(f"coinvariant Hilbert function {basis.hilbert()} != {expected}")
    return basis
