"""Exact univariate Laurent polynomials and rational functions in ``t`` over Q.

Every graded invariant in the package (fake degrees, Kostka polynomials,
Poincare polynomials, decomposition polynomials) is a :class:`LaurentPoly`.
Intermediate sums over conjugacy classes live in :class:`RatFunc`.

Coefficients are :class:`fractions.Fraction`; there is no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "NotDivisible",
    "NotPolynomial",
    "lp_arith",
    "lp_exact_div",
    "lp_reverse",
    "rf_sum",
    "poly_gcd",
    "T",
    "ONE",
    "ZERO",
]

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""


class NotPolynomial(ArithmeticError):
    """Raised when a rational function is asked to be a Laurent polynomial but is not."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class LaurentPoly:
    """An element of Q[t, 1/t], stored sparsely as ``{exponent: coefficient}``.

    Instances are immutable and hashable. Zero has empty support; asking for
    its degree or valuation raises ``ValueError``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = _frac(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], shift: int = 0) -> "LaurentPoly":
        """Build from a dense coefficient list ``[c_shift, c_shift+1, ...]``."""
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls({0: other})
        raise TypeError(f"cannot coerce {type(other).__name__} to LaurentPoly")

    # accessors

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial is undefined")
        return min(self._terms)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.degree()]

    def lowest_coeff(self) -> Fraction:
        return self._terms[self.valuation()]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def dense(self) -> tuple[int, list[Fraction]]:
        """Return ``(valuation, [coefficients from valuation to degree])``."""
        if not self._terms:
            return 0, []
        lo, hi = self.valuation(), self.degree()
        return lo, [self._terms.get(k, Fraction(0)) for k in range(lo, hi + 1)]

    def __call__(self, value: Scalar) -> Fraction:
        value = _frac(value)
        total = Fraction(0)
        for k, c in self._terms.items():
            total += c * value**k
        return total

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def reverse(self) -> "LaurentPoly":
        """Substitute ``t -> 1/t``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def is_palindromic(self) -> bool:
        """Symmetric about the midpoint of its support."""
        if not self._terms:
            return True
        s = self.valuation() + self.degree()
        return all(self._terms.get(s - e) == c for e, c in self._terms.items())

    # ring structure

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return LaurentPoly._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                out[a + b] = out.get(a + b, 0) + ca * cb
        return LaurentPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials are units in Q[t, 1/t]")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({e * k: c**k})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other) -> "LaurentPoly":
        return lp_exact_div(self, LaurentPoly.coerce(other))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # serialization

    def to_json(self) -> dict:
        return {
            str(k): str(c) for k, c in sorted(self._terms.items())
        }

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(k): Fraction(v) for k, v in data.items()})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for k, c in sorted(self._terms.items()):
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "t"
            else:
                mono = f"t^{k}"
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def lp_reverse(a: LaurentPoly) -> LaurentPoly:
    return a.reverse()


# dense helpers on coefficient lists, lowest degree first


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _divmod_dense(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        c = c / lead
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _monic(p: list) -> tuple:
    lead = p[-1]
    return tuple(c / lead for c in p)


@lru_cache(maxsize=65536)
def _gcd_monic(a: tuple, b: tuple) -> tuple:
    a, b = list(a), list(b)
    while b:
        _, r = _divmod_dense(a, b)
        a, b = b, r
        if b:
            b = list(_monic(b))
    return _monic(a)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd over Q of the polynomial parts (monomial factors stripped)."""
    if a.is_zero() and b.is_zero():
        return ZERO
    if a.is_zero():
        _, db = b.dense()
        return LaurentPoly.from_coeffs(_monic(db))
    if b.is_zero():
        _, da = a.dense()
        return LaurentPoly.from_coeffs(_monic(da))
    _, da = a.dense()
    _, db = b.dense()
    key = tuple(sorted((_monic(da), _monic(db))))
    return LaurentPoly.from_coeffs(_gcd_monic(*key))


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * b == a``; raise :class:`NotDivisible` otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if a.is_zero():
        return ZERO
    va, da = a.dense()
    vb, db = b.dense()
    q, r = _divmod_dense(da, db)
    if r:
        raise NotDivisible(f"({a}) is not divisible by ({b})")
    return LaurentPoly.from_coeffs(q, va - vb)


class RatFunc:
    """A quotient ``numerator / denominator`` of Laurent polynomials, kept canonical.

    Canonical form: the denominator is an honest polynomial with constant term
    1, it shares no factor with the numerator, and any monomial unit sits in
    the numerator. Equal field elements therefore compare equal field-wise.
    """

    __slots__ = ("num", "den")

    def __init__(self, numerator, denominator=None, _canonical: bool = False):
        num = LaurentPoly.coerce(numerator)
        den = ONE if denominator is None else LaurentPoly.coerce(denominator)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    def __add__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return rf_sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return rf_sum([self, -other])

    def __mul__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den, self.den * other.num)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise NotPolynomial(f"({self.num}) / ({self.den}) is not a Laurent polynomial")
        return self.num

    def __eq__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"


def _as_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RatFunc(x, _canonical=True)
    return None


def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return ZERO, ONE
    # move the monomial part of the denominator into the numerator
    vd = den.valuation()
    num = num.shift(-vd)
    den = den.shift(-vd)
    g = poly_gcd(num, den)
    if g.degree() > 0:
        num = lp_exact_div(num, g)
        den = lp_exact_div(den, g)
    c0 = den.coeff(0)
    if c0 != 1:
        num = num * (1 / c0)
        den = den * (1 / c0)
    return num, den


@lru_cache(maxsize=65536)
def _lcm_cofactors(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """For canonical denominators a, b return (lcm, lcm/a, lcm/b)."""
    g = poly_gcd(a, b)
    bg = lp_exact_div(b, g)
    lcm = a * bg
    return lcm, bg, lp_exact_div(a, g)


def rf_sum(terms: Iterable) -> RatFunc:
    """Exact sum of rational functions, canonicalized once at the end."""
    grouped: dict = {}
    order = []
    for term in terms:
        term = _as_rf(term)
        if term is None:
            raise TypeError("rf_sum expects RatFunc, LaurentPoly or rational terms")
        if term.den not in grouped:
            grouped[term.den] = term.num
            order.append(term.den)
        else:
            grouped[term.den] = grouped[term.den] + term.num
    if not order:
        return RatFunc(ZERO, _canonical=True)
    den = order[0]
    num = grouped[den]
    for d in order[1:]:
        lcm, co_acc, co_new = _lcm_cofactors(den, d)
        num = num * co_acc + grouped[d] * co_new
        den = lcm
    return RatFunc(num, den)
