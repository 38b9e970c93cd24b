"""Stable JSON-ready views of the engine's results."""

from __future__ import annotations

import json

from .characters import SymmetryContext, weyl_dimension
from .rootsystem import Weight, weight_label

SCHEMA_VERSION = 1


def weight(w: Weight) -> dict:
    return {"coords": list(w), "label": weight_label(w)}


def irreps(ctx: SymmetryContext, entries: dict[Weight, int]) -> list[dict]:
    return [
        {**weight(w), "multiplicity": m, "dimension": weyl_dimension(ctx, w)}
        for w, m in sorted(entries.items())
    ]


def table(full: SymmetryContext, entries: dict[int, dict[Weight, int]]) -> dict[str, list[dict]]:
    return {str(p): irreps(full, entries[p]) for p in sorted(entries)}


def certificate(cert, timing: bool = True) -> dict:
    from .flag import build_flag

    X = build_flag(cert.variety)
    full = SymmetryContext.full(X.rs)
    out = {
        "schema_version": SCHEMA_VERSION,
        "variety": str(cert.variety),
        "type": str(cert.variety.dynkin),
        "marked": list(cert.variety.marked),
        "dimension": X.dim,
        "q": cert.q,
        "twist": weight(cert.twist),
        "degree": cert.degree,
        "status": cert.status,
        "exact": cert.exact,
        "method": cert.method,
        "survivors": [list(w) for w in sorted(cert.survivors)],
        "survivor_entries": irreps(full, cert.survivors),
        "witnesses": [
            {**weight(w), "degrees": {str(p): m for p, m in degs.items()}}
            for w, degs in sorted(cert.witnesses.items())
        ],
        "e1_page": table(full, cert.table.canonical()),
        "provenance_counts": cert.provenance_counts(),
    }
    if timing:
        out["elapsed_seconds"] = round(cert.elapsed, 3)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
