"""Command line interface: ``bottnv <command> [options]``.

Exit codes: 0 success (everything certified), 1 usage or internal error,
2 ambiguous, not found, or budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import serialize
from .budget import BudgetExceeded
from .bwb import bundle_cohomology
from .characters import (
    CharacterError,
    SymmetryContext,
    decompose,
    central_charge_check,
    exterior_power,
    irrep_character,
)
from .flag import (
    FlagError,
    MarkedDiagram,
    adjoint_marking,
    build_flag,
    coadjoint_marking,
)
from .rootsystem import DynkinType, RootSystemError, build_root_system, weight_label
from .verify import certify, default_threads, find_minimal_q, reproduce_tables

EXIT_OK, EXIT_ERROR, EXIT_UNCERTIFIED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _weight_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _nodes_arg(text: str) -> tuple[int, ...]:
    return _weight_arg(text)


def _positive(kind):
    def parse(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v

    return parse


def _add_type(p, required=True):
    p.add_argument("--type", required=required, help="Dynkin type, e.g. E8, G2 or B (with --rank)")
    p.add_argument("--rank", type=int)


def _add_marking(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--marked", type=_nodes_arg, help="comma separated marked nodes (Bourbaki)")
    g.add_argument("--adjoint", action="store_true")
    g.add_argument("--coadjoint", action="store_true")


def _add_common(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--threads", type=_positive(int), default=None)
    p.add_argument("--budget-seconds", type=_positive(float), default=None)
    p.add_argument("--budget-weights", type=_positive(int), default=None)
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bottnv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("roots", help="root system data")
    _add_type(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("tables", help="dimension/index tables and E weights")
    p.add_argument("which", choices=("adjoint", "coadjoint", "E-weights"))
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("exterior", help="decompose Λ^q of an irreducible Levi representation")
    _add_type(p)
    _add_marking(p)
    p.add_argument("--weight", type=_weight_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("cohomology", help="Borel-Weil-Bott for an irreducible bundle")
    _add_type(p)
    _add_marking(p)
    p.add_argument("--weight", type=_weight_arg, required=True)
    _add_common(p)

    p = sub.add_parser("verify", help="certify H^1(Λ^q T_X ⊗ O(-1)) != 0")
    _add_type(p)
    _add_marking(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--q", type=int)
    g.add_argument("--q-max", type=int)
    p.add_argument("--twist", type=_weight_arg, default=None)
    _add_common(p)

    p = sub.add_parser("certify-all", help="run every (co)adjoint case")
    _add_type(p, required=False)
    p.add_argument("--extended", action="store_true", help="include E8")
    _add_common(p)
    return parser


def _dynkin(args) -> DynkinType:
    return DynkinType.parse(args.type, args.rank)


def _marking(args) -> MarkedDiagram:
    dt = _dynkin(args)
    if args.adjoint:
        return adjoint_marking(dt)
    if args.coadjoint:
        return coadjoint_marking(dt)
    return MarkedDiagram(dt, args.marked)


def _threads(args) -> int:
    return args.threads if args.threads is not None else default_threads()


def _emit(args, payload: dict, text: str, out):
    if args.format == "json":
        out.write(serialize.dumps(payload))
    else:
        out.write(text if text.endswith("\n") else text + "\n")


# -- commands ---------------------------------------------------------------


def cmd_roots(args, out) -> int:
    rs = build_root_system(_dynkin(args))
    payload = {
        "schema_version": serialize.SCHEMA_VERSION,
        "type": str(rs.dynkin),
        "cartan": [list(r) for r in rs.cartan],
        "symmetrizer": [str(d) for d in rs.symmetrizer],
        "rho": list(rs.rho),
        "highest_long_root": serialize.weight(rs.highest_long_root),
        "highest_short_root": serialize.weight(rs.highest_short_root),
        "positive_roots": [
            {"simple": list(r.simple), **serialize.weight(r.weight)} for r in rs.positive_roots
        ],
        "gram": [[str(x) for x in row] for row in rs.gram],
    }
    lines = [
        f"type {rs.dynkin}: {len(rs.positive_roots)} positive roots",
        "cartan: " + " ".join(str(list(r)) for r in rs.cartan),
        f"highest root: {weight_label(rs.highest_long_root)}",
        f"highest short root: {weight_label(rs.highest_short_root)}",
    ]
    lines += [f"  {list(r.simple)}  {weight_label(r.weight)}" for r in rs.positive_roots]
    _emit(args, payload, "\n".join(lines), out)
    return EXIT_OK


def cmd_tables(args, out) -> int:
    rows = reproduce_tables(args.n_max)[args.which]
    payload = {"schema_version": serialize.SCHEMA_VERSION, "table": args.which, "rows": rows}
    if args.which == "E-weights":
        lines = [f"{r['variety']:<10} E = U^{r['label']}  (rank {r['rank']})" for r in rows]
    else:
        lines = [f"{r['variety']:<12} dim {r['dimension']:>3}  index {r['index']}" for r in rows]
    _emit(args, payload, "\n".join(lines), out)
    return EXIT_OK


def cmd_exterior(args, out) -> int:
    X = build_flag(_marking(args))
    lam = X.rs.check_weight(args.weight)
    dec = decompose(exterior_power(irrep_character(X.ctx, lam), args.q))
    payload = {
        "schema_version": serialize.SCHEMA_VERSION,
        "variety": str(X.md),
        "weight": serialize.weight(lam),
        "q": args.q,
        "summands": serialize.irreps(X.ctx, dec),
    }
    if X.is_maximal:
        payload["central_charge_check"] = central_charge_check(X.ctx, lam, args.q, dec)
    lines = [f"Λ^{args.q} U^{weight_label(lam)} on {X.md}:"]
    lines += [f"  {m} x U^{weight_label(w)}" for w, m in sorted(dec.items())]
    _emit(args, payload, "\n".join(lines), out)
    return EXIT_OK


def cmd_cohomology(args, out) -> int:
    X = build_flag(_marking(args))
    lam = X.rs.check_weight(args.weight)
    table = bundle_cohomology(X, {lam: 1})
    full = SymmetryContext.full(X.rs)
    payload = {
        "schema_version": serialize.SCHEMA_VERSION,
        "variety": str(X.md),
        "weight": serialize.weight(lam),
        "cohomology": serialize.table(full, table.canonical()),
    }
    lines = [f"H^*({X.md}, U^{weight_label(lam)}):"]
    for p, row in table.canonical().items():
        lines += [f"  H^{p}: V^{weight_label(w)}" for w in row]
    if not table.entries:
        lines.append("  all cohomology vanishes")
    _emit(args, payload, "\n".join(lines), out)
    return EXIT_OK


def _reject_projective_space(md: MarkedDiagram):
    X = build_flag(md)
    if X.is_projective_space():
        raise UsageError(f"{md} is the projective space P^{X.dim}, which satisfies Bott vanishing")


def cmd_verify(args, out) -> int:
    md = _marking(args)
    _reject_projective_space(md)
    kw = dict(
        threads=_threads(args),
        max_seconds=args.budget_seconds,
        max_weights=args.budget_weights,
    )
    try:
        if args.q is not None:
            cert = certify(md, args.q, args.twist, **kw)
            audit = None
        else:
            res = find_minimal_q(md, args.q_max, args.twist, **kw)
            if res.error:
                raise BudgetExceeded(res.error)
            audit = res.audit
            cert = res.certificate
    except BudgetExceeded as exc:
        payload = {"schema_version": serialize.SCHEMA_VERSION, "variety": str(md), "status": "budget", "error": str(exc)}
        _emit(args, payload, f"{md}: budget exceeded: {exc}", out)
        return EXIT_UNCERTIFIED
    if cert is None:
        payload = {
            "schema_version": serialize.SCHEMA_VERSION,
            "variety": str(md),
            "status": "not-found",
            "q_max": args.q_max,
            "audit": [[q, s] for q, s in audit],
        }
        _emit(args, payload, f"{md}: nothing certified for q <= {args.q_max}", out)
        return EXIT_UNCERTIFIED
    payload = serialize.certificate(cert, timing=not args.no_timing)
    if audit is not None:
        payload["audit"] = [[q, s] for q, s in audit]
    text = _certificate_line(payload)
    _emit(args, payload, text, out)
    return EXIT_OK if cert.certified else EXIT_UNCERTIFIED


def _certificate_line(payload: dict) -> str:
    surv = " + ".join(
        (f"{e['multiplicity']}x" if e["multiplicity"] != 1 else "") + f"V^{e['label']}"
        for e in payload["survivor_entries"]
    ) or "-"
    flags = payload["status"]
    if payload["status"] == "certified":
        flags += f" ({payload['method']}{', exact' if payload['exact'] else ''})"
    line = f"{payload['variety']:<12} q={payload['q']:<3} H^{payload['degree']} ⊇ {surv:<30} {flags}"
    if "elapsed_seconds" in payload:
        line += f"  {payload['elapsed_seconds']:.2f}s"
    return line


# -- certify-all --------------------------------------------------------------


def standard_suite(extended: bool = False) -> list[tuple[str, DynkinType]]:
    """The (co)adjoint varieties not isomorphic to projective space."""
    cases = [("adjoint", DynkinType("A", n)) for n in range(2, 6)]
    cases += [("adjoint", DynkinType("B", n)) for n in range(3, 8)]
    cases += [("adjoint", DynkinType("D", n)) for n in range(4, 9)]
    cases += [("adjoint", DynkinType(s, n)) for s, n in (("E", 6), ("E", 7), ("F", 4), ("G", 2))]
    cases += [("coadjoint", DynkinType("C", n)) for n in range(3, 7)]
    cases += [("coadjoint", DynkinType("F", 4))]
    if extended:
        cases.append(("adjoint", DynkinType("E", 8)))
    return cases


def _run_case(kind: str, dt: DynkinType, max_seconds, max_weights, timing: bool) -> dict:
    md = adjoint_marking(dt) if kind == "adjoint" else coadjoint_marking(dt)
    X = build_flag(md)
    start = time.monotonic()
    res = find_minimal_q(md, X.dim, max_seconds=max_seconds, max_weights=max_weights)
    row = {"kind": kind, "variety": str(md), "type": str(dt)}
    if res.error:
        row.update(status="budget", error=res.error)
    elif res.certificate is None:
        row.update(status="not-found")
    else:
        row.update(serialize.certificate(res.certificate, timing=False))
        row["kind"] = kind
    if timing:
        row["elapsed_seconds"] = round(time.monotonic() - start, 3)
    return row


def cmd_certify_all(args, out) -> int:
    cases = standard_suite(args.extended)
    if args.type:
        want = _dynkin(args) if (args.rank or any(c.isdigit() for c in args.type)) else None
        cases = [
            c for c in cases
            if (c[1] == want if want else c[1].series == args.type.strip().upper())
        ]
        if not cases:
            raise UsageError(f"no case of type {args.type} in the suite")
    timing = not args.no_timing
    job = [(k, dt, args.budget_seconds, args.budget_weights, timing) for k, dt in cases]
    threads = _threads(args)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_run_case, *zip(*job)))
    else:
        rows = [_run_case(*j) for j in job]
    ok = all(r["status"] == "certified" for r in rows)
    payload = {"schema_version": serialize.SCHEMA_VERSION, "cases": rows, "all_certified": ok}
    lines = []
    for r in rows:
        if r["status"] == "certified":
            line = _certificate_line(r)
        else:
            line = f"{r['variety']:<12} {r['status']}: {r.get('error', '')}".rstrip()
        lines.append(line)
    lines.append(f"{sum(r['status'] == 'certified' for r in rows)}/{len(rows)} certified")
    _emit(args, payload, "\n".join(lines), out)
    return EXIT_OK if ok else EXIT_UNCERTIFIED


COMMANDS = {
    "roots": cmd_roots,
    "tables": cmd_tables,
    "exterior": cmd_exterior,
    "cohomology": cmd_cohomology,
    "verify": cmd_verify,
    "certify-all": cmd_certify_all,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"bottnv: error: {exc}\n")
        return EXIT_ERROR
    except (RootSystemError, FlagError, CharacterError, ValueError) as exc:
        err.write(f"bottnv: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
