"""Root systems of the simple Dynkin types, in exact arithmetic.

Weights are plain tuples of ints holding coefficients in the basis of
fundamental weights, so ``w[i]`` is the pairing of ``w`` with the simple
coroot ``alpha_{i+1}^vee``. Node labels in the public API follow Bourbaki
numbering and are 1-based; tuple indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import NamedTuple

Weight = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DynkinType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in "ABCDEFG" or len(self.series) != 1:
            raise RootSystemError(f"unknown Dynkin series {self.series!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise RootSystemError(f"rank must be a positive integer, got {self.rank!r}")
        if self.series in _FIXED_RANKS:
            allowed = _FIXED_RANKS[self.series]
            if self.rank not in allowed:
                raise RootSystemError(
                    f"type {self.series} requires rank in {allowed}, got {self.rank}"
                )
        elif self.rank < _MIN_RANK[self.series]:
            raise RootSystemError(
                f"type {self.series} requires rank >= {_MIN_RANK[self.series]}, got {self.rank}"
            )

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "DynkinType":
        """Parse ``"E8"``, ``"B"`` (with *rank*) or ``"B_4"``."""
        text = text.strip().upper().replace("_", "")
        if not text:
            raise RootSystemError("empty Dynkin type")
        series, digits = text[0], text[1:]
        if digits:
            if not digits.isdigit():
                raise RootSystemError(f"cannot parse Dynkin type {text!r}")
            if rank is not None and rank != int(digits):
                raise RootSystemError(f"conflicting ranks {digits} and {rank}")
            rank = int(digits)
        if rank is None:
            raise RootSystemError(f"type {series} needs a rank")
        return cls(series, rank)

    def __str__(self):
        return f"{self.series}{self.rank}"


def _simple_root_form(dt: DynkinType) -> list[list[Fraction]]:
    """Gram matrix of the simple roots, long roots of squared length 2."""
    n = dt.rank
    norms = [Fraction(2)] * n
    edges: list[tuple[int, int, Fraction]] = []
    if dt.series in "ABC":
        edges = [(i, i + 1, Fraction(-1)) for i in range(n - 1)]
        if dt.series == "B":
            norms[n - 1] = Fraction(1)
        elif dt.series == "C":
            norms = [Fraction(1)] * (n - 1) + [Fraction(2)]
            edges = [(i, i + 1, Fraction(-1, 2)) for i in range(n - 2)]
            edges.append((n - 2, n - 1, Fraction(-1)))
    elif dt.series == "D":
        edges = [(i, i + 1, Fraction(-1)) for i in range(n - 2)]
        edges.append((n - 3, n - 1, Fraction(-1)))
    elif dt.series == "E":
        edges = [(0, 2, Fraction(-1)), (1, 3, Fraction(-1))]
        edges += [(i, i + 1, Fraction(-1)) for i in range(2, n - 1)]
    elif dt.series == "F":
        norms = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
        edges = [(0, 1, Fraction(-1)), (1, 2, Fraction(-1)), (2, 3, Fraction(-1, 2))]
    elif dt.series == "G":
        norms = [Fraction(2, 3), Fraction(2)]
        edges = [(0, 1, Fraction(-1))]
    form = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        form[i][i] = norms[i]
    for i, j, v in edges:
        form[i][j] = form[j][i] = v
    return form


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class PositiveRoot(NamedTuple):
    simple: Weight  # coefficients over the simple roots
    weight: Weight  # fundamental-weight coordinates
    coroot: Weight  # coefficients of the coroot over the simple coroots
    norm: Fraction  # (alpha, alpha)


class Regular(NamedTuple):
    dominant: Weight
    length: int


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root system data for one Dynkin type.

    ``cartan[i][j]`` is the pairing of ``alpha_i`` with ``alpha_j^vee``, so row
    ``i`` is the simple root ``alpha_i`` in fundamental coordinates.
    """

    dynkin: DynkinType
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    positive_roots: tuple[PositiveRoot, ...]
    rho: Weight
    highest_long_root: Weight
    highest_short_root: Weight
    gram: tuple[tuple[Fraction, ...], ...]
    # integer multiple of ``gram``; inner products are compared after scaling
    gram_scale: int = field(repr=False)
    gram_int: tuple[tuple[int, ...], ...] = field(repr=False)
    _neighbours: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.dynkin.rank

    def simple_root(self, i: int) -> Weight:
        """Simple root ``alpha_i`` (1-based) in fundamental coordinates."""
        return self.cartan[self._node(i)]

    def _node(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"node index {i} out of range 1..{self.rank}")
        return i - 1

    def zero(self) -> Weight:
        return (0,) * self.rank

    def fundamental(self, i: int) -> Weight:
        k = self._node(i)
        return tuple(int(j == k) for j in range(self.rank))

    def check_weight(self, w) -> Weight:
        w = tuple(w)
        if len(w) != self.rank or not all(isinstance(x, int) for x in w):
            raise RootSystemError(f"weight {w} is not an integer vector of length {self.rank}")
        return w

    def scaled_inner(self, a: Weight, b: Weight) -> int:
        """``gram_scale * (a, b)`` as an integer."""
        g = self.gram_int
        return sum(a[i] * sum(g[i][j] * b[j] for j in range(len(b))) for i in range(len(a)) if a[i])


@lru_cache(maxsize=None)
def build_root_system(dynkin: DynkinType) -> RootSystem:
    n = dynkin.rank
    form = _simple_root_form(dynkin)
    cartan = tuple(
        tuple(int(2 * form[i][j] / form[j][j]) for j in range(n)) for i in range(n)
    )
    sym = tuple(form[i][i] / 2 for i in range(n))

    # additive closure, one height at a time, via root strings
    layer = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(layer)
    roots = list(layer)
    while layer:
        nxt = []
        for beta in layer:
            pair = [sum(beta[j] * cartan[j][i] for j in range(n)) for i in range(n)]
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                if p - pair[i] > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        nxt.sort()
        roots.extend(nxt)
        layer = nxt

    def norm(beta):
        return sum(beta[i] * beta[j] * form[i][j] for i in range(n) for j in range(n))

    pos = []
    for beta in roots:
        wt = tuple(sum(beta[j] * cartan[j][i] for j in range(n)) for i in range(n))
        nb = norm(beta)
        cor = tuple(beta[i] * form[i][i] / nb for i in range(n))
        assert all(c.denominator == 1 for c in cor)
        pos.append(PositiveRoot(beta, wt, tuple(int(c) for c in cor), nb))
    pos.sort(key=lambda r: (sum(r.simple), r.simple))

    theta = max(pos, key=lambda r: sum(r.simple))
    short_norm = min(r.norm for r in pos)
    theta_s = max((r for r in pos if r.norm == short_norm), key=lambda r: sum(r.simple))

    inv = _inverse([[Fraction(x) for x in row] for row in cartan])
    gram = tuple(tuple(inv[i][j] * sym[j] for j in range(n)) for i in range(n))
    scale = lcm(*(x.denominator for row in gram for x in row))
    gram_int = tuple(tuple(int(x * scale) for x in row) for row in gram)
    neighbours = tuple(
        tuple((j, cartan[i][j]) for j in range(n) if cartan[i][j] != 0 and j != i)
        for i in range(n)
    )
    return RootSystem(
        dynkin=dynkin,
        cartan=cartan,
        symmetrizer=sym,
        positive_roots=tuple(pos),
        rho=(1,) * n,
        highest_long_root=theta.weight,
        highest_short_root=theta_s.weight,
        gram=gram,
        gram_scale=scale,
        gram_int=gram_int,
        _neighbours=neighbours,
    )


def root_system(series: str, rank: int | None = None) -> RootSystem:
    return build_root_system(DynkinType.parse(series, rank))


def reflect(rs: RootSystem, w: Weight, i: int) -> Weight:
    """Simple reflection ``s_i`` (1-based node) applied to ``w``."""
    k = rs._node(i)
    c = w[k]
    if c == 0:
        return tuple(w)
    row = rs.cartan[k]
    return tuple(x - c * a for x, a in zip(w, row))


def sort_to_chamber(rs: RootSystem, w: Weight, nodes=None) -> tuple[Weight, int]:
    """Move ``w`` into the dominant chamber of the reflection subgroup on ``nodes``.

    ``nodes`` are 0-based indices (all nodes by default). Returns the dominant
    representative and the number of reflections used, which is the length of
    the minimal Weyl element for regular ``w``. Walls are allowed.
    """
    w = list(w)
    order = range(len(w)) if nodes is None else nodes
    nbrs = rs._neighbours
    length = 0
    while True:
        for i in order:
            c = w[i]
            if c < 0:
                w[i] = -c
                for j, a in nbrs[i]:
                    w[j] -= c * a
                length += 1
                break
        else:
            return tuple(w), length


def dominant_conjugate(rs: RootSystem, w: Weight, nodes=None) -> Regular | None:
    """Dominant conjugate of a regular weight, or ``None`` when ``w`` lies on a wall."""
    dom, length = sort_to_chamber(rs, w, nodes)
    order = range(len(dom)) if nodes is None else nodes
    if any(dom[i] == 0 for i in order):
        return None
    return Regular(dom, length)


def inner_product(rs: RootSystem, a: Weight, b: Weight) -> Fraction:
    return Fraction(rs.scaled_inner(a, b), rs.gram_scale)


def weight_label(w: Weight) -> str:
    """Human readable form such as ``ω_1-2ω_2+ω_3``; the zero weight is ``0``."""
    parts = []
    for i, c in enumerate(w, start=1):
        if c == 0:
            continue
        coeff = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign}{coeff}ω_{i}")
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text[0] == "+" else text
