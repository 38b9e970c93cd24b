"""Borel-Weil-Bott for irreducible homogeneous bundles on G/P."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .characters import CharacterError, weyl_dimension, SymmetryContext
from .flag import FlagVariety
from .rootsystem import Weight, dominant_conjugate


class Cohomology(NamedTuple):
    """``H^degree(X, U^λ) = V^rep``; every other degree vanishes."""

    degree: int
    rep: Weight


class Contribution(NamedTuple):
    degree: int
    rep: Weight
    label: Weight  # Levi highest weight of the summand
    tag: tuple  # composition of q, or any caller supplied provenance
    mult: int


@dataclass
class CohomologyTable:
    """``{degree: {G-dominant weight: multiplicity}}`` plus per-summand provenance."""

    entries: dict[int, dict[Weight, int]] = field(default_factory=dict)
    provenance: list[Contribution] = field(default_factory=list)

    def add(self, c: Contribution):
        row = self.entries.setdefault(c.degree, {})
        row[c.rep] = row.get(c.rep, 0) + c.mult
        self.provenance.append(c)

    def degrees_of(self) -> dict[Weight, dict[int, int]]:
        """``{rep: {degree: multiplicity}}``."""
        out: dict[Weight, dict[int, int]] = defaultdict(dict)
        for p, row in self.entries.items():
            for w, m in row.items():
                out[w][p] = m
        return dict(out)

    def merged(self, other: "CohomologyTable") -> "CohomologyTable":
        t = CohomologyTable()
        for c in self.provenance + other.provenance:
            t.add(c)
        return t

    def canonical(self) -> dict[int, dict[Weight, int]]:
        return {p: dict(sorted(self.entries[p].items())) for p in sorted(self.entries)}


def bwb_line(X: FlagVariety, lam: Weight) -> Cohomology | None:
    """Cohomology of ``U^λ``: ``None`` if ``λ+ρ`` is singular."""
    lam = X.rs.check_weight(lam)
    if not X.ctx.is_dominant(lam):
        bad = next(i for i in X.ctx.levi if lam[i] < 0)
        raise CharacterError(
            f"{lam} is not dominant for the Levi factor of {X.md}: "
            f"coordinate ω_{bad + 1} is {lam[bad]}"
        )
    shifted = tuple(x + 1 for x in lam)
    reg = dominant_conjugate(X.rs, shifted)
    if reg is None:
        return None
    assert reg.length <= X.dim
    return Cohomology(reg.length, tuple(x - 1 for x in reg.dominant))


def bundle_cohomology(X: FlagVariety, summands, tag=()) -> CohomologyTable:
    """E1-page of a completely reducible bundle.

    ``summands`` is ``{λ: m}`` or an iterable of ``(λ, m, tag)``.
    """
    table = CohomologyTable()
    items = ((lam, m, tag) for lam, m in summands.items()) if isinstance(summands, dict) else summands
    for lam, m, t in items:
        h = bwb_line(X, lam)
        if h is not None:
            table.add(Contribution(h.degree, h.rep, tuple(lam), t, m))
    return table


def euler_characteristic(X: FlagVariety, lam: Weight) -> Fraction:
    """Weyl's product over all positive roots of G, evaluated at a Levi weight."""
    num = den = 1
    for r in X.rs.positive_roots:
        num *= sum((x + 1) * c for x, c in zip(lam, r.coroot))
        den *= sum(r.coroot)
    return Fraction(num, den)


def euler_char_check(X: FlagVariety, lam: Weight) -> bool:
    chi = euler_characteristic(X, lam)
    h = bwb_line(X, lam)
    if h is None:
        return chi == 0
    full = SymmetryContext.full(X.rs)
    return chi == (-1) ** h.degree * weyl_dimension(full, h.rep)


def serre_dual_label(X: FlagVariety, lam: Weight) -> Weight:
    """Label of ``(U^λ)^∨ ⊗ ω_X``."""
    dual = X.ctx.dominant(tuple(-x for x in lam))
    return tuple(a - b for a, b in zip(dual, X.index_weight))


def dual_rep(X: FlagVariety, rep: Weight) -> Weight:
    return SymmetryContext.full(X.rs).dominant(tuple(-x for x in rep))
