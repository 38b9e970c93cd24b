"""End-to-end certification of Bott non-vanishing on (co)adjoint varieties.

For ``Λ^q T_X ⊗ L`` the associated graded of the tangent filtration gives a
completely reducible bundle whose cohomology (the E1-page) is computed by
Borel-Weil-Bott. A G-representation survives to ``H^p`` when it cannot be
cancelled: every differential changes the total degree by one, so the
multiplicity of ``V`` in ``H^p`` is at least ``m_p(V) - m_{p-1}(V) - m_{p+1}(V)``.
A representation occupying a single degree survives with full multiplicity.
"""

from __future__ import annotations

import os
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import budget as _budget
from .budget import Budget, BudgetExceeded
from .bwb import CohomologyTable, Contribution, bwb_line, euler_characteristic
from .characters import SymmetryContext, decompose, weyl_dimension
from .flag import (
    FlagVariety,
    MarkedDiagram,
    adjoint_marking,
    build_flag,
    coadjoint_marking,
    lambda_q_tangent_e1,
    tangent_highest_piece_check,
)
from .rootsystem import DynkinType, Weight

THREADS_ENV = "BOTTNV_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class Certificate:
    variety: MarkedDiagram
    q: int
    twist: Weight
    degree: int
    survivors: dict[Weight, int]
    status: str  # "certified" or "ambiguous"
    exact: bool
    method: str  # "single-degree", "rank-bound" or "none"
    witnesses: dict[Weight, dict[int, int]]
    table: CohomologyTable
    elapsed: float = 0.0

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def provenance_counts(self) -> dict[str, int]:
        out: dict[str, int] = defaultdict(int)
        for c in self.table.provenance:
            out[",".join(map(str, c.tag))] += 1
        return dict(sorted(out.items()))


def survivors_in_degree(table: CohomologyTable, p: int):
    """``(survivors, witnesses, exact, single)`` for degree ``p`` of an E1-page."""
    occ = table.degrees_of()
    survivors: dict[Weight, int] = {}
    witnesses: dict[Weight, dict[int, int]] = {}
    exact = True
    single = True
    for rep, m in table.entries.get(p, {}).items():
        degs = occ[rep]
        if len(degs) > 1:
            witnesses[rep] = dict(sorted(degs.items()))
        lower = m - degs.get(p - 1, 0) - degs.get(p + 1, 0)
        if degs.get(p - 1) or degs.get(p + 1):
            exact = False
        if lower > 0:
            survivors[rep] = lower
            if len(degs) > 1:
                single = False
    return dict(sorted(survivors.items())), dict(sorted(witnesses.items())), exact, single


def _summand_table(md: MarkedDiagram, q: int, twist: Weight, parts, limits):
    X = build_flag(md)
    with Budget(*limits):
        for c, p in lambda_q_tangent_e1(X, q, twist):
            if p == parts:
                dec = decompose(c)
                break
        else:
            raise AssertionError(parts)
    return parts, [(lam, m) for lam, m in sorted(dec.items())]


def e1_page(X: FlagVariety, q: int, twist: Weight, threads: int = 1, limits=(None, None)):
    """E1-page of ``Λ^q T_X ⊗ L(twist)`` with per-composition provenance."""
    twist = X.check_twist(twist)
    summands = lambda_q_tangent_e1(X, q, twist)
    if threads > 1 and len(summands) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futs = [
                pool.submit(_summand_table, X.md, q, twist, parts, limits)
                for _, parts in summands
            ]
            results = [f.result() for f in futs]
    else:
        results = []
        for c, parts in summands:
            _budget.check(len(c))
            results.append((parts, sorted(decompose(c).items())))
    table = CohomologyTable()
    for parts, dec in sorted(results):
        for lam, m in dec:
            h = bwb_line(X, lam)
            if h is not None:
                table.add(Contribution(h.degree, h.rep, lam, parts, m))
    return table


def certify(
    md: MarkedDiagram,
    q: int,
    twist: Weight | None = None,
    degree: int = 1,
    *,
    threads: int = 1,
    max_seconds: float | None = None,
    max_weights: int | None = None,
) -> Certificate:
    """Certify that ``H^degree(X, Λ^q T_X ⊗ L(twist))`` is non-zero.

    ``twist`` defaults to ``O(-1)``. Raises :class:`BudgetExceeded` when a cap
    is hit; nothing is truncated silently.
    """
    X = build_flag(md)
    twist = X.line(-1) if twist is None else tuple(twist)
    start = time.monotonic()
    with Budget(max_seconds, max_weights):
        table = e1_page(X, q, twist, threads, (max_seconds, max_weights))
    survivors, witnesses, exact, single = survivors_in_degree(table, degree)
    if survivors:
        status, method = "certified", "single-degree" if single else "rank-bound"
    else:
        status, method, exact = "ambiguous", "none", False
    return Certificate(
        variety=md,
        q=q,
        twist=twist,
        degree=degree,
        survivors=survivors,
        status=status,
        exact=exact,
        method=method,
        witnesses=witnesses,
        table=table,
        elapsed=time.monotonic() - start,
    )


@dataclass
class MinimalQ:
    variety: MarkedDiagram
    q: int | None  # None: nothing certified up to q_max
    certificate: Certificate | None
    audit: list[tuple[int, str]] = field(default_factory=list)
    q_max: int = 0
    error: str | None = None


def find_minimal_q(md: MarkedDiagram, q_max: int, twist: Weight | None = None, **kw) -> MinimalQ:
    """Scan ``q = 1, 2, ...`` for the first certified ``H^1(Λ^q T_X ⊗ O(-1))``."""
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    X = build_flag(md)
    out = MinimalQ(md, None, None, q_max=q_max)
    for q in range(1, min(q_max, X.dim) + 1):
        try:
            cert = certify(md, q, twist, **kw)
        except BudgetExceeded as exc:
            out.audit.append((q, "budget"))
            out.error = f"budget exceeded at q={q}: {exc}"
            return out
        out.audit.append((q, cert.status))
        if cert.certified:
            out.q, out.certificate = q, cert
            return out
    return out


# -- Bott vanishing scans --------------------------------------------------------


@dataclass
class ScanEntry:
    q: int  # Ω^q
    m: int  # ample multiple
    table: dict[int, dict[Weight, int]]
    higher_occupied: bool
    certified_degrees: list[int]
    h0_dimension: int = 0


def bott_vanishing_scan(md: MarkedDiagram, q_range, ample_range, **kw) -> list[ScanEntry]:
    """E1-pages of ``Ω^q ⊗ O(m)`` realised as ``Λ^{dim-q} T_X ⊗ ω_X ⊗ O(m)``."""
    X = build_flag(md)
    full = SymmetryContext.full(X.rs)
    out = []
    for q in q_range:
        if not 0 <= q <= X.dim:
            raise ValueError(f"Ω^{q} does not exist on a {X.dim}-dimensional variety")
        for m in ample_range:
            twist = tuple(a + m * b for a, b in zip(X.canonical_weight, X.ample))
            table = e1_page(X, X.dim - q, twist, **kw)
            certified = [
                p for p in sorted(table.entries)
                if p >= 1 and survivors_in_degree(table, p)[0]
            ]
            entry = ScanEntry(
                q=q,
                m=m,
                table=table.canonical(),
                higher_occupied=any(p >= 1 and row for p, row in table.entries.items()),
                certified_degrees=certified,
            )
            entry.h0_dimension = sum(
                k * weyl_dimension(full, w) for w, k in table.entries.get(0, {}).items()
            )
            out.append(entry)
    return out


def e1_euler_check(X: FlagVariety, q: int, twist: Weight) -> bool:
    """E1 Euler characteristic against Weyl's product formula on every summand."""
    full = SymmetryContext.full(X.rs)
    table = e1_page(X, q, twist)
    chi_table = sum(
        (-1) ** p * m * weyl_dimension(full, w) for p, row in table.entries.items() for w, m in row.items()
    )
    chi_oracle = 0
    for c, _ in lambda_q_tangent_e1(X, q, twist):
        for lam, m in decompose(c).items():
            chi_oracle += m * euler_characteristic(X, lam)
    return chi_table == chi_oracle


# -- stabilisation in the classical families ---------------------------------


@dataclass
class StabilizationReport:
    family: str
    q: int
    decompositions: dict[int, dict[Weight, int]]
    truncated: dict[int, dict[Weight, int]]
    support_ok: dict[int, bool]
    stable_from: int


def _truncate(w: Weight, k: int = 5) -> Weight:
    return tuple(w[:k]) + (0,) * max(0, k - len(w))


def stabilization_scan(series: str, q: int, n_window) -> StabilizationReport:
    """Decompose ``Λ^q E`` for the adjoint ``B_n`` / ``D_n`` varieties over a window of ``n``."""
    from .characters import exterior_power

    series = series.upper()
    if series not in ("B", "D"):
        raise ValueError("stabilisation is defined for the B and D families")
    decs, trunc, support = {}, {}, {}
    for n in n_window:
        X = build_flag(adjoint_marking(DynkinType(series, n)))
        dec = decompose(exterior_power(X.graded_pieces[0], q))
        decs[n] = dict(sorted(dec.items()))
        support[n] = all(all(c == 0 for c in w[5:]) for w in dec)
        t: dict[Weight, int] = defaultdict(int)
        for w, m in dec.items():
            t[_truncate(w)] += m
        trunc[n] = dict(sorted(t.items()))
    # truncation alone would hide spin-node coordinates of small ranks
    ns = sorted(trunc)
    stable_from = ns[-1]
    for n in reversed(ns[:-1]):
        if support[n] and trunc[n] == trunc[ns[-1]]:
            stable_from = n
        else:
            break
    return StabilizationReport(series, q, decs, trunc, support, stable_from)


# -- tables -----------------------------------------------------------------------


def _row(X: FlagVariety, kind: str) -> dict:
    return {
        "kind": kind,
        "type": str(X.md.dynkin),
        "variety": str(X.md),
        "marked": list(X.md.marked),
        "dimension": X.dim,
        "index": X.index,
    }


def adjoint_table(n_max: int = 8) -> list[dict]:
    rows = []
    for series, lo in (("A", 2), ("B", 3), ("D", 3)):
        for n in range(lo, n_max + 1):
            rows.append(_row(build_flag(adjoint_marking(DynkinType(series, n))), "adjoint"))
    for series, n in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)):
        rows.append(_row(build_flag(adjoint_marking(DynkinType(series, n))), "adjoint"))
    return rows


def coadjoint_table(n_max: int = 8) -> list[dict]:
    """Coadjoint varieties that are not adjoint (types C and F)."""
    rows = [
        _row(build_flag(coadjoint_marking(DynkinType("C", n))), "coadjoint")
        for n in range(3, n_max + 1)
    ]
    rows.append(_row(build_flag(coadjoint_marking(DynkinType("F", 4))), "coadjoint"))
    return rows


def e_weight_table(n_max: int = 8) -> list[dict]:
    """Highest weight of the irreducible bundle ``E`` (first graded piece)."""
    from .rootsystem import weight_label

    cases = [("B", n) for n in range(3, n_max + 1)] + [("D", n) for n in range(4, n_max + 1)]
    cases += [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
    rows = []
    for series, n in cases:
        X = build_flag(adjoint_marking(DynkinType(series, n)))
        (w, _), = tangent_highest_piece_check(X).items()
        rows.append(
            {
                "type": str(X.md.dynkin),
                "variety": str(X.md),
                "weight": list(w),
                "label": weight_label(w),
                "rank": weyl_dimension(X.ctx, w),
            }
        )
    return rows


def reproduce_tables(n_max: int = 8) -> dict[str, list[dict]]:
    return {
        "adjoint": adjoint_table(n_max),
        "coadjoint": coadjoint_table(n_max),
        "E-weights": e_weight_table(n_max),
    }
