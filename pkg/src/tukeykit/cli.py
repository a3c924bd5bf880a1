"""Command line surface.

Exit codes: 0 success (or positive verdict), 1 negative mathematical
verdict or certified violation, 2 usage error, 3 budget or resource
exhaustion.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys

from . import adversary as adv
from . import branchmap, gadgets, splitorder, wire
from .apfuncs import parse_apfunc
from .catalog import catalog as triple_catalog
from .catalog import vd_diagram
from .triples import (
    FiniteTriple,
    MachineBudgetError,
    MorphismCandidate,
    SearchBoundExceeded,
    finite_norm,
)
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=False))


def cmd_catalog(args) -> int:
    cat = triple_catalog()
    if args.format == "json":
        _emit(
            [
                {
                    "id": t.name,
                    "minus": t.minus_kind,
                    "plus": t.plus_kind,
                    "relation": t.relation_name,
                    "property": t.property.name if t.property else None,
                    "property_note": t.property.note if t.property else None,
                }
                for t in cat.values()
            ]
        )
        return EXIT_OK
    for t in cat.values():
        prop = f"  [{t.property.name}]" if t.property else ""
        print(f"{t.name:10s} {t.minus_kind:14s} {t.plus_kind:12s} {t.relation_name}{prop}")
    return EXIT_OK


def cmd_diagram(args) -> int:
    if args.kind == "splitting":
        if args.format == "dot":
            print(splitorder.order_digraph_dot(args.limit, hasse=args.hasse))
        elif args.format == "json":
            _emit(splitorder.order_digraph_json(args.limit, hasse=args.hasse))
        else:
            _, edges = splitorder.order_digraph(args.limit, hasse=args.hasse)
            for a, b in edges:
                print(f"{a} -> {b}")
        return EXIT_OK
    d = vd_diagram(args.kind)
    if args.format == "dot":
        print(d.to_dot())
    elif args.format == "json":
        _emit(d.to_json())
    else:
        for e in d.edges:
            print(f"{e.source:3s} -> {e.target:3s}  {e.verdict:18s} {e.provenance}")
    return EXIT_OK


def cmd_edge(args) -> int:
    verdict = splitorder.bt_edge(
        splitorder.SplitSpec(args.n, args.m), splitorder.SplitSpec(args.n2, args.m2)
    )
    print(verdict.describe())
    return EXIT_OK if verdict.morphism else EXIT_NEGATIVE


def cmd_antichain(args) -> int:
    report = splitorder.antichain(args.top)
    for (m, m2), (fwd, back) in zip(report.pairs, report.verdicts):
        print(
            f"(2^{m},{m}) vs (2^{m2},{m2}): "
            f"forward {fwd.reason}, backward {back.reason} (lhs {back.lhs})"
        )
    if report.all_incomparable:
        print(f"antichain confirmed for indices 3..{report.top}")
        return EXIT_OK
    print("antichain FAILED")
    return EXIT_NEGATIVE


def _parse_index_set(text: str) -> list[int]:
    if not text.strip():
        return []
    return [int(v) for v in text.split(",")]


def cmd_embed(args) -> int:
    verdict = splitorder.x_order(_parse_index_set(args.x), _parse_index_set(args.y))
    if verdict.morphism:
        print(f"morphism: {sorted(verdict.x)} contains {sorted(verdict.y)}")
        return EXIT_OK
    print(
        f"no morphism: {verdict.missing} in Y but not in X; "
        f"separations via specs "
        + ", ".join(str(fwd.target) for fwd, _ in verdict.separations)
    )
    return EXIT_NEGATIVE


def cmd_psi(args) -> int:
    f = parse_apfunc(args.f)
    result = branchmap.image_prefix(f, args.N)
    _emit(
        {
            "function": f.literal(),
            "bound": result.bound,
            "depth_used": result.depth_used,
            "elements": list(result.elements),
        }
    )
    return EXIT_OK


def cmd_witnesses(args) -> int:
    fs = [parse_apfunc(text) for text in args.fs]
    found = branchmap.common_witnesses(fs, args.count)
    _emit(
        {
            "column": found.column,
            "count": len(found.elements),
            "elements": list(found.elements),
            "tuples": [t.to_json() for t in found.tuples],
        }
    )
    return EXIT_OK


def cmd_intersect(args) -> int:
    fs = [parse_apfunc(text) for text in args.fs]
    branches = [branchmap.branch_of(f, args.n) for f in fs]
    result = branchmap.exact_intersection(args.n, branches)
    _emit(
        {
            "column": result.column,
            "separation_level": result.separation_level,
            "size": result.size,
            "tuples": [t.to_json() for t in result.tuples],
        }
    )
    return EXIT_OK


def cmd_bound(args) -> int:
    with open(args.obs) as handle:
        data = json.load(handle)
    observed = [
        branchmap.ColumnTuple(args.column, tuple(tuple(n) for n in item["nodes"]))
        for item in data
    ]
    cert = branchmap.bound_from_trace(args.column, observed)
    _emit(
        {
            "column": cert.column,
            "empty": cert.empty,
            "bound": list(cert.bound),
            "chains": cert.chains,
            "constraints": [t.to_json() for t in cert.constraints],
        }
    )
    return EXIT_OK


def cmd_refute(args) -> int:
    pull = wire.subprocess_map(shlex.split(args.phi))
    push = wire.subprocess_map(shlex.split(args.psi))
    candidate = MorphismCandidate(pull=pull, push=push, name="external candidate")
    try:
        if args.gadget == "a2b":
            violation = gadgets.refute_filterclass_to_unbounded(candidate)
            _emit(
                {
                    "violation": "relation",
                    "combined": violation.combined.literal(),
                    "side": violation.side_name,
                    "pulled": violation.pulled.literal(),
                    "pushed_side": violation.pushed_side.literal(),
                    "verified": violation.verify(),
                }
            )
        else:
            violation = gadgets.refute_pseudo_intersection_to_tower(candidate)
            out = {"violation": violation.kind, "detail": violation.detail,
                   "verified": violation.verify()}
            if violation.kind == "family":
                out["pair"] = [s.literal() for s in violation.pair]
                out["images"] = [s.literal() for s in violation.images]
            else:
                out["common"] = violation.common.literal()
                out["culprit"] = violation.culprit.literal()
                out["pulled"] = violation.pulled.literal()
            _emit(out)
    finally:
        pull.process.close()
        push.process.close()
    return EXIT_NEGATIVE  # a certified violation is the negative verdict


BUILTIN_MACHINES = {
    "identity": adv.identity_machine,
    "ones": lambda: adv.constant_machine(1),
    "zeros": lambda: adv.constant_machine(0),
    "flip": adv.flip_machine,
}


def cmd_adversary(args) -> int:
    if args.builtin:
        machine = BUILTIN_MACHINES[args.builtin]()
    elif args.machine:
        machine = wire.subprocess_machine(shlex.split(args.machine))
    else:
        print("adversary: need --machine or --builtin", file=sys.stderr)
        return EXIT_USAGE
    try:
        cert = adv.build_adversary(machine, args.depth, args.budget)
    except adv.BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        if args.machine:
            machine.process.close()
    _emit(cert.to_json())
    return EXIT_OK


def _load_finite_triple(path: str) -> tuple[FiniteTriple, object]:
    with open(path) as handle:
        data = json.load(handle)
    t = FiniteTriple(
        tuple(data["minus"]),
        tuple(data["plus"]),
        tuple(tuple(bool(v) for v in row) for row in data["relation"]),
    )
    prop = None
    if "allowed_families" in data:
        allowed = [frozenset(f) for f in data["allowed_families"]]

        def prop(family, _allowed=allowed):  # noqa: ANN001
            return any(frozenset(family) <= a for a in _allowed)

    return t, prop


def cmd_norm(args) -> int:
    t, file_prop = _load_finite_triple(args.triple)
    prop = None
    if args.property == "from-file":
        prop = file_prop
    elif args.property != "none":
        print(f"unknown property {args.property!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        value = finite_norm(t, prop)
    except SearchBoundExceeded as exc:
        print(f"search bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if value is None:
        print("norm: infinity (no dominating family)")
        return EXIT_NEGATIVE
    print(f"norm: {value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tukeykit",
        description="Exact desk-scale calculus for morphisms between "
        "cardinal-invariant triples.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("catalog", help="list the coded triples")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("diagram", help="comparison diagrams")
    p.add_argument(
        "--kind", choices=["classical", "borel", "splitting"], required=True
    )
    p.add_argument("--format", choices=["table", "dot", "json"], default="table")
    p.add_argument("--limit", type=int, default=4, help="box bound for --kind splitting")
    p.add_argument("--hasse", action="store_true", help="transitive reduction")
    p.set_defaults(fn=cmd_diagram)

    p = sub.add_parser("edge", help="order verdict between two splitting specs")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("m2", type=int)
    p.set_defaults(fn=cmd_edge)

    p = sub.add_parser("antichain", help="verify the power-of-two antichain")
    p.add_argument("top", type=int)
    p.set_defaults(fn=cmd_antichain)

    p = sub.add_parser("embed", help="index-set order verdict")
    p.add_argument("x", help="comma separated indices, e.g. 3,4")
    p.add_argument("y")
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("psi", help="glued image of a function below a bound")
    p.add_argument("--f", required=True, help="APFunc literal, e.g. ';0;1'")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(fn=cmd_psi)

    p = sub.add_parser("witnesses", help="common image elements of several functions")
    p.add_argument("--fs", nargs="+", required=True)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(fn=cmd_witnesses)

    p = sub.add_parser("intersect", help="exact finite column intersection")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fs", nargs="+", required=True)
    p.set_defaults(fn=cmd_intersect)

    p = sub.add_parser("bound", help="bound certificate from observed tuples")
    p.add_argument("--column", type=int, required=True)
    p.add_argument("--obs", required=True, help="JSON file of {level, nodes} tuples")
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("refute", help="run a refutation gadget on external maps")
    p.add_argument("gadget", choices=["a2b", "p2t"])
    p.add_argument("--phi", required=True, help="pull map command (shell quoted)")
    p.add_argument("--psi", required=True, help="push map command (shell quoted)")
    p.set_defaults(fn=cmd_refute)

    p = sub.add_parser("adversary", help="build a predictor against a machine")
    adv_sub = p.add_subparsers(dest="subverb", required=True)
    run = adv_sub.add_parser("run")
    run.add_argument("--machine", help="external machine command (shell quoted)")
    run.add_argument("--builtin", choices=sorted(BUILTIN_MACHINES))
    run.add_argument("--depth", type=int, default=5)
    run.add_argument("--budget", type=int, default=10**6)
    run.set_defaults(fn=cmd_adversary)

    p = sub.add_parser("norm", help="exact norm of a finite triple from JSON")
    p.add_argument("--triple", required=True)
    p.add_argument("--property", default="none", help="none or from-file")
    p.set_defaults(fn=cmd_norm)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (ValueError, gadgets.ContractBreach) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MachineBudgetError, SearchBoundExceeded, branchmap.EnumerationBudget) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    raise SystemExit(main())
