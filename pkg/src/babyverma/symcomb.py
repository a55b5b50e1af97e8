"""Partitions and exact character theory of the symmetric group.

Partitions are listed in reverse lexicographic order everywhere, so
``partitions(3) == [(3,), (2, 1), (1, 1, 1)]``.

Characters come from the Murnaghan-Nakayama rule on beta-sets; Kronecker
coefficients are z-weighted triple character sums.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator

from .exactalg import LaurentPoly

__all__ = [
    "Partition",
    "CharacterTable",
    "SizeMismatch",
    "TooLarge",
    "MAX_TABLE_N",
    "MAX_CHARGE_N",
    "partitions",
    "partition_stats",
    "mn_character",
    "character_table",
    "kronecker",
    "kostka_number",
    "induced_young_character",
    "standard_tableaux",
    "semistandard_tableaux",
    "cocharge",
    "charge",
    "charge_kostka",
]

MAX_TABLE_N = 10
MAX_CHARGE_N = 10


class SizeMismatch(ValueError):
    pass


class TooLarge(ValueError):
    pass


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self):
            for j in range(p):
                yield i, j

    def hooks(self) -> list[int]:
        conj = self.conjugate()
        return [self[i] - j + conj[j] - i - 1 for i, j in self.cells()]

    def nstat(self) -> int:
        """n(lambda) = sum_i (i - 1) lambda_i, rows indexed from 1."""
        return sum(i * p for i, p in enumerate(self))

    def zee(self) -> int:
        """Centralizer order of a permutation with this cycle type."""
        return prod(j**m * factorial(m) for j, m in Counter(self).items())

    def dim(self) -> int:
        """Number of standard tableaux, by the hook length formula."""
        return factorial(self.n) // prod(self.hooks())

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


@lru_cache(maxsize=None)
def _partitions(n: int, bound: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, bound), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions(n, n)]


@dataclass(frozen=True)
class PartitionStats:
    conjugate: Partition
    hooks: tuple
    nstat: int
    zrho: int


def partition_stats(lam) -> PartitionStats:
    lam = _as_partition(lam)
    return PartitionStats(lam.conjugate(), tuple(sorted(lam.hooks(), reverse=True)), lam.nstat(), lam.zee())


def _beta_set(lam: tuple, length: int) -> tuple:
    lam = tuple(lam) + (0,) * (length - len(lam))
    return tuple(lam[i] + length - 1 - i for i in range(length))


def _from_beta(beta: list) -> tuple:
    beta = sorted(beta, reverse=True)
    k = len(beta)
    return tuple(p for p in (beta[i] - (k - 1 - i) for i in range(k)) if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple, rho: tuple) -> int:
    if not rho:
        return 1 if not lam else 0
    r, rest = rho[0], rho[1:]
    beta = _beta_set(lam, len(lam))
    members = set(beta)
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in members:
            continue
        height = sum(1 for x in beta if b - r < x < b)
        new_beta = [x for x in beta if x != b] + [b - r]
        total += (-1) ** height * _mn(_from_beta(new_beta), rest)
    return total


def mn_character(lam, rho) -> int:
    """chi^lam evaluated on the class of cycle type ``rho``."""
    lam, rho = _as_partition(lam), _as_partition(rho)
    if lam.n != rho.n:
        raise SizeMismatch(f"|{lam}| != |{rho}|")
    # strip the largest part of rho first
    return _mn(tuple(lam), tuple(sorted(rho, reverse=True)))


@dataclass(frozen=True)
class CharacterTable:
    n: int
    labels: tuple  # partitions, reverse lex
    values: tuple  # values[i][j] = chi^{labels[i]}_{labels[j]}
    zee: tuple = field(default=())

    @property
    def class_sizes(self) -> tuple:
        nf = factorial(self.n)
        return tuple(nf // z for z in self.zee)

    def index(self, lam) -> int:
        return self.labels.index(_as_partition(lam))

    def chi(self, lam, rho) -> int:
        return self.values[self.index(lam)][self.index(rho)]

    def inner(self, f, g) -> Fraction:
        """<f, g> for class functions given as sequences over ``labels``."""
        return sum((Fraction(a * b, z) for a, b, z in zip(f, g, self.zee)), Fraction(0))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partitions": [list(p) for p in self.labels],
            "zee": list(self.zee),
            "values": [list(row) for row in self.values],
        }

    @classmethod
    def from_json(cls, data) -> "CharacterTable":
        labels = tuple(Partition(p) for p in data["partitions"])
        return cls(data["n"], labels, tuple(tuple(r) for r in data["values"]), tuple(data["zee"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lambda\\rho"] + [str(p) for p in self.labels])
        for lam, row in zip(self.labels, self.values):
            writer.writerow([str(lam)] + list(row))
        return buf.getvalue()


@lru_cache(maxsize=None)
def _character_table(n: int) -> CharacterTable:
    labels = tuple(partitions(n))
    values = tuple(tuple(mn_character(lam, rho) for rho in labels) for lam in labels)
    return CharacterTable(n, labels, values, tuple(p.zee() for p in labels))


def character_table(n: int, max_n: int = MAX_TABLE_N) -> CharacterTable:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise TooLarge(f"character table for n={n} exceeds the limit {max_n}")
    if n in _TABLE_OVERRIDES:
        return _TABLE_OVERRIDES[n]
    return _character_table(n)


def install_character_table(table: CharacterTable) -> None:
    """Seed the in-memory memo with a table loaded from disk."""
    _TABLE_OVERRIDES[table.n] = table


_TABLE_OVERRIDES: dict = {}


def _table(n: int) -> CharacterTable:
    if n in _TABLE_OVERRIDES:
        return _TABLE_OVERRIDES[n]
    return character_table(n, max_n=max(n, MAX_TABLE_N))


def kronecker(lam, mu) -> dict:
    """Multiplicities of irreducibles in S_lam (x) S_mu."""
    lam, mu = _as_partition(lam), _as_partition(mu)
    if lam.n != mu.n:
        raise SizeMismatch(f"|{lam}| != |{mu}|")
    return dict(_kronecker(lam, mu))


@lru_cache(maxsize=None)
def _kronecker(lam: Partition, mu: Partition) -> tuple:
    tab = _table(lam.n)
    a = tab.values[tab.index(lam)]
    b = tab.values[tab.index(mu)]
    prod_char = [x * y for x, y in zip(a, b)]
    out = []
    for nu, row in zip(tab.labels, tab.values):
        m = tab.inner(prod_char, row)
        assert m.denominator == 1 and m >= 0
        if m:
            out.append((nu, int(m)))
    return tuple(out)


def _horizontal_strips(shape: tuple, k: int) -> Iterator[tuple]:
    """Shapes obtained from ``shape`` by adding a horizontal strip of size k."""
    rows = list(shape) + [0]

    def rec(i, remaining, acc):
        if i == len(rows):
            if remaining == 0:
                yield tuple(p for p in acc if p > 0)
            return
        cap = remaining if i == 0 else min(remaining, rows[i - 1] - rows[i])
        for add in range(cap, -1, -1):
            yield from rec(i + 1, remaining - add, acc + [rows[i] + add])

    yield from rec(0, k, [])


@lru_cache(maxsize=None)
def _kostka(mu: tuple, content: tuple) -> int:
    shapes = Counter({(): 1})
    for k in content:
        nxt: Counter = Counter()
        for shape, cnt in shapes.items():
            for s in _horizontal_strips(shape, k):
                if len(s) <= len(mu) and all(a <= b for a, b in zip(s, mu)):
                    nxt[s] += cnt
        shapes = nxt
    return shapes.get(tuple(mu), 0)


def kostka_number(mu, lam) -> int:
    """Number of semistandard tableaux of shape ``mu`` and content ``lam``."""
    mu, lam = _as_partition(mu), _as_partition(lam)
    if mu.n != lam.n:
        raise SizeMismatch(f"|{mu}| != |{lam}|")
    return _kostka(tuple(mu), tuple(lam))


def induced_young_character(lam, sign_flag: str = "trivial") -> dict:
    """Decompose Ind_{S_lam}^{S_n} of the trivial or sign character."""
    lam = _as_partition(lam)
    if sign_flag not in ("trivial", "sign"):
        raise ValueError("sign_flag must be 'trivial' or 'sign'")
    out = {}
    for mu in partitions(lam.n):
        m = kostka_number(mu, lam) if sign_flag == "trivial" else kostka_number(mu.conjugate(), lam)
        if m:
            out[mu] = m
    return out


def standard_tableaux(lam) -> list[tuple]:
    """Standard Young tableaux of shape ``lam`` as tuples of rows."""
    lam = _as_partition(lam)
    n = lam.n
    results = []

    def rec(rows, k):
        if k > n:
            results.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            if len(rows[i]) < lam[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                rec(rows, k + 1)
                rows[i].pop()

    rec([[] for _ in lam], 1)
    return results


def semistandard_tableaux(mu, content) -> list[tuple]:
    """Brute-force SSYT enumeration; used as an independent check on Kostka numbers."""
    mu = _as_partition(mu)
    letters = [i + 1 for i, c in enumerate(content) for _ in range(c)]
    cells = list(mu.cells())
    out = set()

    def rec(idx, grid, pool):
        if idx == len(cells):
            out.add(tuple(tuple(grid[(i, j)] for j in range(mu[i])) for i in range(len(mu))))
            return
        i, j = cells[idx]
        for v in sorted(set(pool)):
            if j > 0 and grid[(i, j - 1)] > v:
                continue
            if i > 0 and grid[(i - 1, j)] >= v:
                continue
            grid[(i, j)] = v
            pool.remove(v)
            rec(idx + 1, grid, pool)
            pool.append(v)
            del grid[(i, j)]

    rec(0, {}, letters)
    return sorted(out)


def _reading_word(tab: tuple) -> list[int]:
    word = []
    for row in reversed(tab):
        word.extend(row)
    return word


def charge(tab: tuple) -> int:
    """Lascoux-Schutzenberger charge of a standard tableau (via its reading word)."""
    word = _reading_word(tab)
    pos = {v: i for i, v in enumerate(word)}
    index = 0
    total = 0
    for r in range(2, len(word) + 1):
        if pos[r] > pos[r - 1]:
            index += 1
        total += index
    return total


def cocharge(tab: tuple) -> int:
    n = sum(len(r) for r in tab)
    return n * (n - 1) // 2 - charge(tab)


def charge_kostka(lam, max_n: int = MAX_CHARGE_N) -> LaurentPoly:
    """Sum of t**cocharge(T) over standard tableaux T of shape ``lam``.

    This equals t**n(lam) times the hook-product polynomial, i.e. the
    normalization in which the single-row shape gives 1.
    """
    lam = _as_partition(lam)
    if lam.n > max_n:
        raise TooLarge(f"charge enumeration for n={lam.n} exceeds the limit {max_n}")
    counts = Counter(cocharge(T) for T in standard_tableaux(lam))
    return LaurentPoly(dict(counts))
