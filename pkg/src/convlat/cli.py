"""Command-line front end.

Structures are looked up by name in a DSL document: the file given with
``-f`` or, by default, the bundled fixtures (E1..E7, Sierpinski, C3).
Exit status: 0 on success, 1 when a property or suite fails, 2 on input errors.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources

from .dsl import (
    Document,
    DslError,
    parse,
    render_dot,
    render_lattice,
    render_map,
    render_space,
    render_topology,
)
from .errors import ConvlatError, NotATopology
from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    conv_of_topology,
    finite_depth_modification,
    topological_modification,
)
from .finlat import Category, FiniteConvLattice, powerset_lattice
from .miner import EnumSpec, Mode, condition_name, survey
from .points import pt_prime, pt_space
from .props import PropertyId, check_properties, holds
from .sobr import sobrify
from .suites import SUITES, coverage_header, verify_suite


class InputError(Exception):
    pass


def bundled_text() -> str:
    return resources.files("convlat").joinpath("data/fixtures.conv").read_text(encoding="utf-8")


def load_document(path: str | None) -> Document:
    if path is None:
        return parse(bundled_text())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except DslError as exc:
        raise InputError(f"{path}:{exc}") from None


def _lookup(doc: Document, name: str):
    if name not in doc:
        raise InputError(f"no declaration named {name!r}")
    return doc.kind(name), doc[name]


def as_space(doc: Document, name: str) -> FiniteConvergence:
    kind, value = _lookup(doc, name)
    if kind == "space":
        return value
    if kind == "topology":
        return conv_of_topology(value)
    raise InputError(f"{name!r} is a {kind}, not a space")


def as_topology(doc: Document, name: str) -> FiniteTopology:
    kind, value = _lookup(doc, name)
    if kind == "topology":
        return value
    if kind == "space":
        if not holds(value, PropertyId.TOPOLOGICAL):
            raise NotATopology(f"{name!r} is not topological")
        return topological_modification(value)
    raise InputError(f"{name!r} is a {kind}, not a space")


def as_lattice(doc: Document, name: str) -> FiniteConvLattice:
    kind, value = _lookup(doc, name)
    if kind == "lattice":
        return value
    if kind in ("space", "topology"):
        return powerset_lattice(as_space(doc, name))
    raise InputError(f"{name!r} is a {kind}, not a lattice or space")


def _props(text: str | None) -> list[PropertyId]:
    if not text:
        return list(PropertyId)
    try:
        return [PropertyId.parse(p.strip()) for p in text.split(",") if p.strip()]
    except ConvlatError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args, doc: Document) -> int:
    conv = as_space(doc, args.name)
    props = list(PropertyId) if args.all else _props(args.props)
    report = check_properties(conv, props)
    print("\n".join(report.render(conv)))
    return 0 if not report.failed() else 1


def cmd_modify(args, doc: Document) -> int:
    conv = as_space(doc, args.name)
    if args.top:
        print(render_topology(f"{args.name}_top", topological_modification(conv)))
    else:
        print(render_space(f"{args.name}_fd", finite_depth_modification(conv)))
    return 0


def cmd_pt(args, doc: Document) -> int:
    L = as_lattice(doc, args.name)
    ps = pt_space(L, Category(args.cat))
    print(f"# {ps.n} points ({Category(args.cat).value})")
    print(render_space(f"pt_{args.name}", ps.conv))
    return 0


def cmd_ptprime(args, doc: Document) -> int:
    L = as_lattice(doc, args.name)
    ps = pt_space(L)
    conv2, qm = pt_prime(ps)
    names = L.lattice.names
    for k, v in enumerate(qm.class_rep):
        members = " ".join(ps.conv.carrier.members(qm.members(k)))
        print(f"# class {conv2.names[k]}: lim = {names[v]}; points {members}")
    print(render_space(f"ptprime_{args.name}", conv2))
    return 0


def cmd_sobrify(args, doc: Document) -> int:
    top = as_topology(doc, args.name)
    s = sobrify(top)
    for i, k in enumerate(s.e):
        print(f"# e({top.carrier.names[i]}) = {s.topology.carrier.names[k]}")
    print(render_topology(f"s_{args.name}", s.topology))
    return 0


def cmd_mine(args, doc: Document | None) -> int:
    try:
        spec = EnumSpec(args.n, Mode(args.mode))
    except ConvlatError as exc:
        raise InputError(str(exc)) from None
    conds = _props(args.props)
    result = survey(spec, conds)
    print(f"# {result.size} spaces ({spec.mode.value}, n={spec.n})")
    for p in conds:
        for q in conds:
            if p == q:
                continue
            if result.implies(p, q):
                print(f"{condition_name(p)} => {condition_name(q)}")
            else:
                print(f"{condition_name(p)} =/=> {condition_name(q)} ({result.failures(p, q)} counterexamples)")
                print(render_space("Witness", result.counterexample(p, q)))
    return 0


def cmd_verify(args, doc: Document | None) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    if args.suite == "all":
        for line in coverage_header():
            print(f"# {line}")
    ok = True
    for name in names:
        result = verify_suite(name)
        print(result.report())
        ok = ok and result.passed
    return 0 if ok else 1


def cmd_export(args, doc: Document) -> int:
    kind, value = _lookup(doc, args.name)
    if args.dot:
        print(render_dot(args.name, as_space(doc, args.name)))
    elif kind == "space":
        print(render_space(args.name, value))
    elif kind == "topology":
        print(render_topology(args.name, value))
    elif kind == "lattice":
        print(render_lattice(args.name, value))
    else:
        src, dst, f = value
        print(render_map(args.name, src, dst, f))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convlat", description="Finite convergence spaces and convergence lattices.")
    parser.add_argument("-f", "--file", help="DSL document (default: bundled fixtures)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check properties of a space")
    p.add_argument("name")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--props", help="comma-separated property ids")
    g.add_argument("--all", action="store_true", help="every property")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("modify", help="topological or finite-depth modification")
    p.add_argument("name")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--top", action="store_true")
    g.add_argument("--finite-depth", action="store_true")
    p.set_defaults(fn=cmd_modify)

    p = sub.add_parser("pt", help="space of points of a lattice (or of the powerset lattice of a space)")
    p.add_argument("name")
    p.add_argument("--cat", choices=[c.value for c in Category], default="lat")
    p.set_defaults(fn=cmd_pt)

    p = sub.add_parser("ptprime", help="quotient of the point space by equal limits")
    p.add_argument("name")
    p.set_defaults(fn=cmd_ptprime)

    p = sub.add_parser("sobrify", help="sobrification of a topological space")
    p.add_argument("name")
    p.set_defaults(fn=cmd_sobrify)

    p = sub.add_parser("mine", help="implication survey over an enumeration")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="fd")
    p.add_argument("--props", required=True)
    p.set_defaults(fn=cmd_mine, needs_doc=False)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, help="suite name or 'all'")
    p.set_defaults(fn=cmd_verify, needs_doc=False)

    p = sub.add_parser("export", help="print a declaration (DSL or DOT)")
    p.add_argument("name")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        doc = load_document(args.file) if getattr(args, "needs_doc", True) else None
        return args.fn(args, doc)
    except (InputError, ConvlatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
