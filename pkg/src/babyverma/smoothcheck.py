"""Dimension bounds that certify singularity of the Calogero-Moser space for Coxeter groups.

For an irreducible S with fake degree f_S, b_S its lowest exponent and j_S the
degree of f_{S*} (= f_S for Coxeter groups), L(S) is bounded by

    dim S * (h_{<b_S} + h_{>j_S} + min(h_{b_S}, h_{j_S}))

where h is the Hilbert function of the coinvariant algebra. Any bound below |W|
witnesses singularity for every c. So does a fake degree whose lowest
coefficient is not 1. The method never proves smoothness, so the other verdict
is "inconclusive".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import prod
from pathlib import Path
from typing import Optional, Union

from .exactalg import LaurentPoly, lp_exact_div

__all__ = [
    "Irreducible",
    "CoxeterDatum",
    "BoundEntry",
    "BoundReport",
    "SchemaError",
    "InvariantViolation",
    "MissingData",
    "coinv_hilbert",
    "bound_rhs",
    "window_bound",
    "sign_series",
    "sign_refinement",
    "leading_coeff_test",
    "check_singular",
    "ingest_coxeter_datum",
    "datum_from_dict",
    "dihedral_datum",
    "h3_datum",
    "symmetric_datum",
    "internal_datum",
    "SINGULAR",
    "INCONCLUSIVE",
]

SINGULAR = "singular-witness"
INCONCLUSIVE = "inconclusive"
EXTRAPOLATION = "paper-faithful extrapolation"


class SchemaError(ValueError):
    pass


class InvariantViolation(ValueError):
    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"{check}: {detail}" if detail else check)


class MissingData(KeyError):
    pass


@dataclass(frozen=True)
class Irreducible:
    label: str
    dim: int
    fake_degree: LaurentPoly
    sign_twist: Optional[str] = None


@dataclass(frozen=True)
class CoxeterDatum:
    name: str
    order: int
    degrees: tuple
    irreducibles: tuple

    def get(self, label: str) -> Irreducible:
        for irr in self.irreducibles:
            if irr.label == label:
                return irr
        raise MissingData(f"{self.name} has no irreducible {label!r}")

    @property
    def labels(self) -> list:
        return [irr.label for irr in self.irreducibles]

    @property
    def top_degree(self) -> int:
        return sum(d - 1 for d in self.degrees)

    def hilbert(self) -> LaurentPoly:
        return coinv_hilbert(self.degrees)

    def validate(self) -> "CoxeterDatum":
        if any(d < 1 for d in self.degrees):
            raise InvariantViolation("degrees", f"nonpositive degree in {list(self.degrees)}")
        if prod(self.degrees) != self.order:
            raise InvariantViolation("product of degrees", f"{prod(self.degrees)} != |W| = {self.order}")
        if sum(irr.dim**2 for irr in self.irreducibles) != self.order:
            raise InvariantViolation("sum of dim^2", f"!= |W| = {self.order}")
        labels = self.labels
        if len(set(labels)) != len(labels):
            raise InvariantViolation("labels", "duplicate irreducible label")
        for irr in self.irreducibles:
            f = irr.fake_degree
            if f(1) != irr.dim:
                raise InvariantViolation("f(1) = dim", f"{irr.label}: f(1) = {f(1)} but dim = {irr.dim}")
            if any(c < 0 or c.denominator != 1 for _, c in f.items()) or f.valuation() < 0:
                raise InvariantViolation("fake degree coefficients", f"{irr.label}: {f}")
            if irr.sign_twist is not None and irr.sign_twist not in labels:
                raise InvariantViolation("sign twist", f"{irr.label}: unknown label {irr.sign_twist!r}")
        total = sum((irr.fake_degree * irr.dim for irr in self.irreducibles), LaurentPoly())
        if total != self.hilbert():
            raise InvariantViolation("sum of dim * f", "does not match the coinvariant Hilbert series")
        return self


def coinv_hilbert(degrees) -> LaurentPoly:
    """prod_i (1 - t^{d_i}) / (1 - t)."""
    out = LaurentPoly({0: 1})
    one_minus_t = LaurentPoly({0: 1, 1: -1})
    for d in degrees:
        out = out * lp_exact_div(LaurentPoly({0: 1, d: -1}), one_minus_t)
    return out


def _window(datum: CoxeterDatum, label: str) -> tuple:
    irr = datum.get(label)
    h = datum.hilbert()
    b = irr.fake_degree.valuation()
    # Coxeter groups are self-dual, so f_{S*} = f_S
    j = irr.fake_degree.degree()
    return irr, h, b, j


def window_bound(degrees, dim: int, b: int, j: int) -> int:
    """dim * (h_{<b} + h_{>j} + min(h_b, h_j)) for the coinvariant Hilbert function h."""
    h = coinv_hilbert(degrees)
    below = sum(c for k, c in h.items() if k < b)
    above = sum(c for k, c in h.items() if k > j)
    return int(dim * (below + above + min(h.coeff(b), h.coeff(j))))


def bound_rhs(datum: CoxeterDatum, label: str) -> int:
    irr, _, b, j = _window(datum, label)
    return window_bound(datum.degrees, irr.dim, b, j)


def sign_series(datum: CoxeterDatum, label: str) -> LaurentPoly:
    """Graded multiplicity of the sign representation in M(S): f_{S'} for S' = S (x) sign.

    Uses the datum's twist label when present, else f_{S'}(q) = q^N f_S(1/q)
    with N = sum(d_i - 1).
    """
    irr = datum.get(label)
    if irr.sign_twist is not None:
        return datum.get(irr.sign_twist).fake_degree
    return irr.fake_degree.reverse().shift(datum.top_degree)


def _excess_signs(datum: CoxeterDatum, label: str) -> int:
    _, _, _, j = _window(datum, label)
    count = sum(c for k, c in sign_series(datum, label).items() if k > j)
    return max(0, int(count) - 1)


def sign_refinement(datum: CoxeterDatum, label: str) -> int:
    """Subtract one dimension per copy of the sign representation above j_S beyond the first."""
    return bound_rhs(datum, label) - _excess_signs(datum, label)


def leading_coeff_test(datum: CoxeterDatum) -> list:
    return [irr.label for irr in datum.irreducibles if irr.fake_degree.lowest_coeff() != 1]


@dataclass(frozen=True)
class BoundEntry:
    label: str
    dim: int
    b: int
    j: int
    bound: int
    refined: int
    refinement_applied: bool
    verdict: str

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "dim": self.dim,
            "b": self.b,
            "j": self.j,
            "bound": self.bound,
            "refined_bound": self.refined,
            "verdict": self.verdict,
        }
        if self.refinement_applied:
            out["refinement"] = EXTRAPOLATION
        return out


@dataclass
class BoundReport:
    name: str
    order: int
    entries: list
    leading_coeff_witnesses: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.leading_coeff_witnesses or any(e.verdict == SINGULAR for e in self.entries):
            return SINGULAR
        return INCONCLUSIVE

    def entry(self, label: str) -> BoundEntry:
        return next(e for e in self.entries if e.label == label)

    def to_json(self) -> dict:
        return {
            "group": self.name,
            "order": self.order,
            "verdict": self.verdict,
            "leading_coefficient_witnesses": list(self.leading_coeff_witnesses),
            "irreducibles": [e.to_json() for e in self.entries],
        }

    def to_table(self) -> str:
        rows = [("label", "dim", "b", "j", "bound", "refined", "verdict")]
        for e in self.entries:
            refined = f"{e.refined}*" if e.refinement_applied else str(e.refined)
            rows.append((e.label, str(e.dim), str(e.b), str(e.j), str(e.bound), refined, e.verdict))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = [f"{self.name} (|W| = {self.order}): {self.verdict}"]
        lines += ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        if any(e.refinement_applied for e in self.entries):
            lines.append(f"* sign refinement applied ({EXTRAPOLATION})")
        if self.leading_coeff_witnesses:
            lines.append("lowest fake-degree coefficient != 1: " + ", ".join(self.leading_coeff_witnesses))
        return "\n".join(lines)


def check_singular(datum: CoxeterDatum) -> BoundReport:
    entries = []
    for irr in datum.irreducibles:
        _, _, b, j = _window(datum, irr.label)
        bound = bound_rhs(datum, irr.label)
        refined = sign_refinement(datum, irr.label)
        verdict = SINGULAR if refined < datum.order else INCONCLUSIVE
        entries.append(BoundEntry(irr.label, irr.dim, b, j, bound, refined, refined < bound, verdict))
    return BoundReport(datum.name, datum.order, entries, leading_coeff_test(datum))


# data


def datum_from_dict(raw) -> CoxeterDatum:
    if not isinstance(raw, dict):
        raise SchemaError("top level must be an object")
    for key, kind in (("name", str), ("order", int), ("degrees", list), ("irreducibles", list)):
        if key not in raw:
            raise SchemaError(f"missing field {key!r}")
        if not isinstance(raw[key], kind) or isinstance(raw[key], bool):
            raise SchemaError(f"field {key!r} must be {kind.__name__}")
    if not all(isinstance(d, int) and not isinstance(d, bool) for d in raw["degrees"]):
        raise SchemaError("degrees must be integers")
    irreducibles = []
    for i, item in enumerate(raw["irreducibles"]):
        if not isinstance(item, dict):
            raise SchemaError(f"irreducible #{i} must be an object")
        for key in ("label", "dim", "fake_degree"):
            if key not in item:
                raise SchemaError(f"irreducible #{i} lacks {key!r}")
        if not isinstance(item["label"], str) or not isinstance(item["dim"], int):
            raise SchemaError(f"irreducible #{i}: label must be a string and dim an integer")
        fd = item["fake_degree"]
        if not isinstance(fd, dict):
            raise SchemaError(f"irreducible #{i}: fake_degree must be an object")
        try:
            f = LaurentPoly({int(k): Fraction(str(v)) for k, v in fd.items()})
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"irreducible #{i}: bad fake_degree entry ({exc})") from None
        if f.is_zero():
            raise InvariantViolation("f(1) = dim", f"{item['label']}: zero fake degree")
        twist = item.get("sign_twist")
        if twist is not None and not isinstance(twist, str):
            raise SchemaError(f"irreducible #{i}: sign_twist must be a string")
        irreducibles.append(Irreducible(item["label"], item["dim"], f, twist))
    datum = CoxeterDatum(raw["name"], raw["order"], tuple(raw["degrees"]), tuple(irreducibles))
    return datum.validate()


def ingest_coxeter_datum(file: Union[str, Path]) -> CoxeterDatum:
    try:
        raw = json.loads(Path(file).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{file}: not valid JSON ({exc})") from None
    return datum_from_dict(raw)


@lru_cache(maxsize=None)
def h3_datum() -> CoxeterDatum:
    text = resources.files("babyverma").joinpath("data/H3.json").read_text()
    return datum_from_dict(json.loads(text))


@lru_cache(maxsize=None)
def dihedral_datum(m: int) -> CoxeterDatum:
    """I_2(m) from the closed-form fake degrees; phi_k (x) sign = phi_k."""
    if not 3 <= m <= 12:
        raise MissingData(f"internal dihedral data covers 3 <= m <= 12, got {m}")
    irr = [
        Irreducible("triv", 1, LaurentPoly({0: 1}), "sgn"),
        Irreducible("sgn", 1, LaurentPoly({m: 1}), "triv"),
    ]
    if m % 2 == 0:
        # eps+ is -1 on r and 1 on s, so eps+ (x) sign = eps-
        irr.append(Irreducible("eps+", 1, LaurentPoly({m // 2: 1}), "eps-"))
        irr.append(Irreducible("eps-", 1, LaurentPoly({m // 2: 1}), "eps+"))
    for k in range(1, (m + 1) // 2):
        irr.append(Irreducible(f"phi{k}", 2, LaurentPoly({k: 1, m - k: 1}), f"phi{k}"))
    return CoxeterDatum(f"I2({m})", 2 * m, (2, m), tuple(irr)).validate()


@lru_cache(maxsize=None)
def symmetric_datum(n: int) -> CoxeterDatum:
    """S_n acting on its n-dimensional permutation representation: degrees 1..n."""
    from .cherepoly import MAX_SUITE_N, fake_degree
    from .symcomb import partitions

    if not 1 <= n <= MAX_SUITE_N:
        raise MissingData(f"internal symmetric group data covers 1 <= n <= {MAX_SUITE_N}, got {n}")

    def label(lam):
        return "(" + ",".join(map(str, lam)) + ")"

    irr = tuple(
        Irreducible(label(lam), lam.dim(), fake_degree(lam).f, label(lam.conjugate())) for lam in partitions(n)
    )
    return CoxeterDatum(f"S{n}", prod(range(1, n + 1)), tuple(range(1, n + 1)), irr).validate()


def internal_datum(name: str) -> CoxeterDatum:
    """Parse a group name: ``I2:7``, ``H3`` or ``Sn:6``."""
    key = name.strip()
    try:
        if key.upper() == "H3":
            return h3_datum()
        kind, _, arg = key.partition(":")
        if kind.upper() == "I2":
            return dihedral_datum(int(arg))
        if kind.lower() == "sn":
            return symmetric_datum(int(arg))
    except ValueError:
        raise MissingData(f"cannot parse group {name!r}") from None
    raise MissingData(f"no internal datum for {name!r}; supply a file")
