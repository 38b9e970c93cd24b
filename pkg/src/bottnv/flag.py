"""Generalised flag varieties G/P given by marked Dynkin diagrams.

The fibre of the tangent bundle at the base point has as weights the
positive roots outside the Levi factor. They are graded by their total
coefficient over the marked simple roots; the graded pieces are the Levi
representations making up the associated graded of the tangent bundle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

from .characters import (
    Character,
    SymmetryContext,
    char_tensor,
    decompose,
    exterior_power,
    irrep_character,
)
from .rootsystem import DynkinType, RootSystem, Weight, build_root_system


class FlagError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MarkedDiagram:
    dynkin: DynkinType
    marked: tuple[int, ...]  # 1-based, sorted

    def __post_init__(self):
        marked = tuple(sorted(set(self.marked)))
        if not marked:
            raise FlagError("a marking needs at least one node")
        if any(not 1 <= k <= self.dynkin.rank for k in marked):
            raise FlagError(f"marked nodes {marked} out of range for {self.dynkin}")
        object.__setattr__(self, "marked", marked)

    def __str__(self):
        return f"{self.dynkin}/P_{','.join(map(str, self.marked))}"


def _marking_from(rs: RootSystem, theta: Weight) -> MarkedDiagram:
    return MarkedDiagram(rs.dynkin, tuple(i + 1 for i, c in enumerate(theta) if c))


def adjoint_marking(dynkin: DynkinType) -> MarkedDiagram:
    return _marking_from(build_root_system(dynkin), build_root_system(dynkin).highest_long_root)


def coadjoint_marking(dynkin: DynkinType) -> MarkedDiagram:
    return _marking_from(build_root_system(dynkin), build_root_system(dynkin).highest_short_root)


class FlagVariety:
    """``G/P`` with its tangent bundle filtration.

    Convention: the tangent weights are the roots themselves, so
    ``index_weight`` (their sum) is the anticanonical class and the line
    bundle ``O(1)`` has weight ``ample`` = sum of the marked fundamental weights.
    """

    def __init__(self, md: MarkedDiagram):
        self.md = md
        self.rs = build_root_system(md.dynkin)
        self.ctx = SymmetryContext.for_marking(self.rs, md.marked)
        idx = [k - 1 for k in md.marked]
        graded: dict[int, list[Weight]] = {}
        for r in self.rs.positive_roots:
            level = sum(r.simple[i] for i in idx)
            if level:
                graded.setdefault(level, []).append(r.weight)
        self._graded_weights = [graded.get(j, []) for j in range(1, max(graded) + 1)]
        self.dim = sum(len(g) for g in self._graded_weights)
        iw = [0] * self.rs.rank
        for g in self._graded_weights:
            for w in g:
                iw = [a + b for a, b in zip(iw, w)]
        self.index_weight: Weight = tuple(iw)
        self.ample: Weight = tuple(int(i in idx) for i in range(self.rs.rank))
        self._powers: dict[tuple[int, int], Character] = {}

    def __repr__(self):
        return f"FlagVariety({self.md})"

    @property
    def is_maximal(self) -> bool:
        return len(self.md.marked) == 1

    @property
    def index(self) -> int | None:
        """``i_X`` with ``ω_X^∨ = O(i_X)``, or ``None`` if not a multiple of ``O(1)``."""
        vals = {self.index_weight[k - 1] for k in self.md.marked}
        if len(vals) == 1:
            return vals.pop()
        return None

    @property
    def canonical_weight(self) -> Weight:
        return tuple(-x for x in self.index_weight)

    @cached_property
    def graded_pieces(self) -> list[Character]:
        return [Character.from_weights(self.ctx, g) for g in self._graded_weights]

    def is_projective_space(self) -> bool:
        # Fano of index dim + 1 is projective space
        return self.is_maximal and self.index == self.dim + 1

    def check_twist(self, twist: Weight) -> Weight:
        twist = self.rs.check_weight(twist)
        if any(twist[i] for i in self.ctx.levi):
            raise FlagError(f"twist {twist} must vanish on the unmarked nodes")
        return twist

    def line(self, m: int) -> Weight:
        """Weight of ``O(m)``."""
        return tuple(m * x for x in self.ample)

    def piece_power(self, j: int, q: int) -> Character:
        key = (j, q)
        c = self._powers.get(key)
        if c is None:
            c = self._powers.setdefault(key, exterior_power(self.graded_pieces[j], q))
        return c


@lru_cache(maxsize=None)
def build_flag(md: MarkedDiagram) -> FlagVariety:
    return FlagVariety(md)


def flag(series: str, rank: int | None = None, marked=None, *, kind: str | None = None) -> FlagVariety:
    """Convenience constructor: ``flag("B4", kind="adjoint")`` or ``flag("E8", marked=[8])``."""
    dt = DynkinType.parse(series, rank)
    if kind == "adjoint":
        md = adjoint_marking(dt)
    elif kind == "coadjoint":
        md = coadjoint_marking(dt)
    elif kind is None:
        md = MarkedDiagram(dt, tuple(marked or ()))
    else:
        raise FlagError(f"unknown marking selector {kind!r}")
    return build_flag(md)


def compositions(X: FlagVariety, q: int):
    """All ``(q_1, q_2, ...)`` with ``sum = q`` and ``q_j <= rank gr_j``."""
    dims = [len(g) for g in X._graded_weights]
    for parts in product(*(range(min(d, q) + 1) for d in dims)):
        if sum(parts) == q:
            yield parts


def lambda_q_tangent_e1(X: FlagVariety, q: int, twist: Weight | None = None):
    """Associated graded of ``Λ^q T_X ⊗ L(twist)`` as ``[(character, composition)]``."""
    if not 0 <= q <= X.dim:
        raise FlagError(f"q must lie in 0..{X.dim}, got {q}")
    twist = X.rs.zero() if twist is None else X.check_twist(twist)
    out = []
    for parts in compositions(X, q):
        c = Character.trivial(X.ctx)
        for j, qj in enumerate(parts):
            if qj:
                c = char_tensor(c, X.piece_power(j, qj))
        out.append((c.shift(twist), parts))
    return out


def tangent_highest_piece_check(X: FlagVariety) -> dict[Weight, int]:
    """Decomposition of the first graded piece; irreducible for adjoint markings."""
    dec = decompose(X.graded_pieces[0])
    if X.md == adjoint_marking(X.md.dynkin) and X.md.dynkin.series != "A" and len(dec) != 1:
        raise FlagError(f"first graded piece of {X.md} is reducible: {dec}")
    return dec


def canonical_check(X: FlagVariety) -> bool:
    if not X.is_maximal:
        raise FlagError("canonical_check needs a maximal parabolic")
    k = X.md.marked[0] - 1
    return all(c == 0 for i, c in enumerate(X.index_weight) if i != k) and X.index_weight[k] > 0


# -- symbolic bundle expressions ----------------------------------------------


@dataclass(frozen=True)
class IrrepBundle:
    weight: Weight


@dataclass(frozen=True)
class LambdaQTangent:
    q: int


@dataclass(frozen=True)
class LineTwist:
    weight: Weight


@dataclass(frozen=True)
class TensorProduct:
    factors: tuple


def evaluate(X: FlagVariety, expr) -> list[tuple[Character, str]]:
    """Completely reducible graded pieces of a bundle expression."""
    if isinstance(expr, IrrepBundle):
        return [(irrep_character(X.ctx, tuple(expr.weight)), f"U{list(expr.weight)}")]
    if isinstance(expr, LineTwist):
        w = X.check_twist(expr.weight)
        return [(Character.line(X.ctx, w), f"O{list(w)}")]
    if isinstance(expr, LambdaQTangent):
        return [(c, f"L^{expr.q}T{list(p)}") for c, p in lambda_q_tangent_e1(X, expr.q)]
    if isinstance(expr, TensorProduct):
        acc = [(Character.trivial(X.ctx), "")]
        for f in expr.factors:
            acc = [
                (char_tensor(a, b), f"{ta}*{tb}" if ta else tb)
                for a, ta in acc
                for b, tb in evaluate(X, f)
            ]
        return acc
    raise FlagError(f"not a bundle expression: {expr!r}")
