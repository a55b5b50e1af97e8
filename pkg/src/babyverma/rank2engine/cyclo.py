"""Exact arithmetic in the cyclotomic field Q(zeta_m) and small dense linear algebra over it."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

__all__ = [
    "CycloField",
    "CycloNum",
    "cyclotomic_poly",
    "mat_zero",
    "mat_identity",
    "mat_mul",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_is_zero",
    "mat_eq",
    "rref",
    "trace",
]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    # x^m - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_exact_div(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] // b[-1]
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    assert not any(a), "cyclotomic division left a remainder"
    return q


class CycloField:
    """Q(zeta) with zeta a primitive m-th root of unity, elements reduced mod Phi_m."""

    _cache: dict = {}

    def __new__(cls, m: int):
        if m in cls._cache:
            return cls._cache[m]
        obj = super().__new__(cls)
        obj._setup(m)
        cls._cache[m] = obj
        return obj

    def _setup(self, m: int) -> None:
        self.m = m
        self.phi = tuple(Fraction(c) for c in cyclotomic_poly(m))
        self.degree = len(self.phi) - 1
        d = self.degree
        # reduction of x^k for d <= k < 2d - 1
        table = []
        cur = [-c for c in self.phi[:d]]  # x^d
        for _ in range(max(d - 1, 0)):
            table.append(tuple(cur))
            # multiply by x
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.phi[:d])]
        self._reduce_table = table
        self.zero = CycloNum(self, (Fraction(0),) * d)
        self.one = self.from_rational(1)

    def __reduce__(self):
        return (CycloField, (self.m,))

    def __repr__(self):
        return f"CycloField({self.m})"

    def from_rational(self, q) -> "CycloNum":
        return CycloNum(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def zeta(self, k: int = 1) -> "CycloNum":
        """zeta**k for any integer k."""
        return self.from_poly_coeffs({k % self.m: 1})

    def from_poly_coeffs(self, coeffs) -> "CycloNum":
        """Reduce an arbitrary polynomial in zeta, given as ``{power: coeff}``."""
        d = self.degree
        out = [Fraction(0)] * d
        for k, c in coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            k %= self.m
            vec = self._power_vector(k)
            for i in range(d):
                if vec[i]:
                    out[i] += c * vec[i]
        return CycloNum(self, tuple(out))

    @lru_cache(maxsize=None)
    def _power_vector(self, k: int) -> tuple:
        d = self.degree
        if k < d:
            v = [Fraction(0)] * d
            v[k] = Fraction(1)
            return tuple(v)
        prev = self._power_vector(k - 1)
        top = prev[-1]
        v = [Fraction(0)] + list(prev[:-1])
        if top:
            v = [c - top * p for c, p in zip(v, self.phi[:d])]
        return tuple(v)

    def _mul_coeffs(self, a: tuple, b: tuple) -> tuple:
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                red = self._reduce_table[k - d]
                for i in range(d):
                    if red[i]:
                        out[i] += c * red[i]
        return tuple(out)


class CycloNum:
    __slots__ = ("field", "c")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def _lift(self, other):
        if isinstance(other, CycloNum):
            if other.field is not self.field:
                raise ValueError("mixing elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return CycloNum(self.field, tuple(x + y for x, y in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, tuple(-x for x in self.c))

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return CycloNum(self.field, tuple(x - y for x, y in zip(self.c, other.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.field.zero
            return CycloNum(self.field, tuple(x * other for x in self.c))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if self.is_rational():
            return other * self.c[0]
        if other.is_rational():
            return self * other.c[0]
        return CycloNum(self.field, self.field._mul_coeffs(self.c, other.c))

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def inverse(self) -> "CycloNum":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return self.field.from_rational(1 / self.c[0])
        # extended Euclid on (self, Phi_m) over Q
        f = self.field
        a = _trim(list(self.c))
        b = list(f.phi)
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while len(b) > 0 and any(b):
            q, r = _divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _sub(s0, _mul(q, s1))
        # now a is a nonzero constant and s0 * self == a (mod Phi)
        const = a[0]
        coeffs = [c / const for c in s0]
        return f.from_poly_coeffs(dict(enumerate(coeffs)))

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self) -> "CycloNum":
        """Image under zeta -> zeta^{-1} (complex conjugation)."""
        return self.field.from_poly_coeffs({-k: c for k, c in enumerate(self.c) if c})

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash((self.field.m, self.c))

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __repr__(self):
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.c) if c]
        return " + ".join(terms) if terms else "0"


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _divmod(a, b):
    a = list(a)
    b = _trim(list(b))
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / b[-1]
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q, _trim(a[:db])


def _mul(a, b):
    if not a or not b:
        return [Fraction(0)]
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# dense matrices: list of rows of CycloNum


def mat_zero(field: CycloField, rows: int, cols: int) -> list:
    return [[field.zero] * cols for _ in range(rows)]


def mat_identity(field: CycloField, n: int) -> list:
    out = mat_zero(field, n, n)
    for i in range(n):
        out[i][i] = field.one
    return out


def mat_mul(a: list, b: list, field: CycloField) -> list:
    rows = len(a)
    cols = len(b[0]) if b else 0
    out = mat_zero(field, rows, cols)
    # sparse-aware: skip zero entries of a and of b's rows
    b_nz = [[(j, x) for j, x in enumerate(row) if x] for row in b]
    for i in range(rows):
        acc = {}
        for k, x in enumerate(a[i]):
            if not x:
                continue
            for j, y in b_nz[k]:
                v = x * y
                acc[j] = acc[j] + v if j in acc else v
        row = out[i]
        for j, v in acc.items():
            row[j] = v
    return out


def mat_add(a: list, b: list) -> list:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: list, b: list) -> list:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: list, s) -> list:
    return [[x * s if x else x for x in row] for row in a]


def mat_is_zero(a: list) -> bool:
    return not any(x for row in a for x in row)


def mat_eq(a: list, b: list) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def trace(a: list, field: CycloField) -> CycloNum:
    total = field.zero
    for i in range(len(a)):
        total = total + a[i][i]
    return total


def rref(rows: list, ncols: int, field: CycloField) -> tuple[list, list]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for col in range(ncols):
        if r == len(mat):
            break
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [x * inv if x else x for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y if y else x for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return mat[:r], pivots
