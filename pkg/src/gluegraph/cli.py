"""Command-line interface.

Exit codes: 0 success or true, 1 property false or mismatches found,
2 guard rejection, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .canon import code_hex, graph_from_code
from .closure import closure_fixpoint, find_basis_for, verify_class
from .errors import GlueGraphError, GuardRejected, InternalInconsistency
from .gluing import glue, make_spec
from .graph import MultiGraph, to_gfmt
from .guards import first_rejection, parse_guards
from .planar import db_search
from .properties import TAGS, PropertyKind, holds
from .registry import (
    SPECIAL,
    Basis,
    ClassDescriptor,
    Pred,
    all_descriptors,
    diagram_diff,
    diagram_edges,
    get_descriptor,
    to_dot,
)
from .superposition import resolve_graph, parse_script, run_script

EXIT_OK, EXIT_FALSE, EXIT_GUARD, EXIT_USAGE = 0, 1, 2, 3


@dataclass
class CommandOutcome:
    exit_code: int
    stdout: str
    stderr: str = ""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        raise UsageError(message)


def _graph(token: str) -> MultiGraph:
    return resolve_graph(token, None)


def _ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    if text in ("", "-"):
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad index list {text!r}") from None


def _edges_text(g: MultiGraph) -> str:
    return ",".join(f"{u}-{v}" for u, v in g.edges) or "-"


def _cmd_glue(a, out: list[str]) -> int:
    spec = make_spec(
        _graph(a.left), _graph(a.right), _graph(a.pattern),
        _ints(a.lmap), _ints(a.rmap), _ints(a.lemap), _ints(a.remap),
    )
    g = glue(spec)
    bad = first_rejection(parse_guards(a.guard), spec, g)
    if bad is not None:
        raise GuardRejected(0, bad.tag)
    out.append(to_gfmt(g))
    return EXIT_OK


def _cmd_script(a, out: list[str]) -> int:
    path = Path(a.file)
    script = parse_script(path.read_text(), path.parent)
    basis = [_graph(b) for b in a.basis]
    g, log = run_script(script, basis, parse_guards(a.guard), trace=True, canonical=a.canonical)
    if a.trace:
        for entry in log:
            out.append(f"# step {entry.step} n={entry.graph.n} m={entry.graph.m} edges={_edges_text(entry.graph)}\n")
    out.append(to_gfmt(g))
    return EXIT_OK


def _cmd_check(a, out: list[str]) -> int:
    ok = holds(PropertyKind.parse(a.property), _graph(a.graph))
    out.append("true\n" if ok else "false\n")
    return EXIT_OK if ok else EXIT_FALSE


def _adhoc_descriptor(a) -> ClassDescriptor:
    be = Basis(tuple(_graph(x) for x in a.be))
    bo = Basis(tuple(_graph(x) for x in a.bo))
    return ClassDescriptor("adhoc", be, bo, tuple(a.guard), Pred("unknown", lambda g: True), induced=a.induced)


def _cmd_closure(a, out: list[str]) -> int:
    if (a.cls is None) == (not a.be):
        raise UsageError("give exactly one of --class or --be/--bo")
    if a.cls is not None:
        d = get_descriptor(a.cls)
    else:
        if not a.bo:
            raise UsageError("--be needs at least one --bo")
        d = _adhoc_descriptor(a)
    rep = closure_fixpoint(d, a.max_n, a.max_m, canonical_only=a.canonical, jobs=a.jobs)
    out.append(rep.serialize())
    return EXIT_OK


def _cmd_verify(a, out: list[str]) -> int:
    rep = verify_class(a.cls, a.max_n, a.max_m, jobs=a.jobs)
    out.append(f"mismatches={rep.mismatches}\n")
    for label, codes in (
        ("in_closure_not_predicate", rep.in_closure_not_predicate),
        ("predicate_not_in_closure", rep.predicate_not_in_closure),
    ):
        for c in codes:
            out.append(f"{label} {code_hex(c)} edges={_edges_text(graph_from_code(c))}\n")
    return EXIT_OK if rep.mismatches == 0 else EXIT_FALSE


def _cmd_find_basis(a, out: list[str]) -> int:
    res = find_basis_for(a.cls, a.max_n, a.max_m)
    out.append(f"basis n<={a.max_n} m<={a.max_m} count={len(res.codes)}\n")
    for c in res.codes:
        g = graph_from_code(c)
        out.append(f"{code_hex(c)} n={g.n} edges={_edges_text(g)}\n")
    if res.warning:
        out.append(f"# warning: {res.warning}\n")
    return EXIT_OK


def _cmd_diagram(a, out: list[str]) -> int:
    if a.diff:
        d = diagram_diff()
        out.extend(line + "\n" for line in d.lines())
        out.append(f"unannotated={len(d.unannotated)} stale={len(d.stale)}\n")
        return EXIT_OK if d.clean else EXIT_FALSE
    out.append(to_dot(diagram_edges("derived" if a.derived else "listed")))
    return EXIT_OK


def _cmd_dbsearch(a, out: list[str]) -> int:
    try:
        order = db_search(_graph(a.graph), a.start)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.append(" ".join(map(str, order)) + "\n")
    return EXIT_OK


def _cmd_catalog(a, out: list[str]) -> int:
    for d in all_descriptors():
        out.append(d.catalog_line() + "\n")
    for name in SPECIAL:
        d = get_descriptor(name)
        out.append(d.catalog_line() + f" guards {','.join(d.guards) or '-'}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gluegraph", description="Gluing of multigraphs and closed graph classes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("glue", help="glue two graphs along a shared pattern")
    g.add_argument("left")
    g.add_argument("right")
    g.add_argument("--pattern", required=True)
    g.add_argument("--lmap", required=True)
    g.add_argument("--rmap", required=True)
    g.add_argument("--lemap")
    g.add_argument("--remap")
    g.add_argument("--guard", action="append", default=[])
    g.set_defaults(func=_cmd_glue)

    s = sub.add_parser("script", help="assembly scripts")
    ssub = s.add_subparsers(dest="script_command", required=True, parser_class=_Parser)
    r = ssub.add_parser("run", help="run a script")
    r.add_argument("file")
    r.add_argument("--basis", nargs="+", action="extend", default=[])
    r.add_argument("--guard", action="append", default=[])
    r.add_argument("--canonical", action="store_true")
    r.add_argument("--trace", action="store_true")
    r.set_defaults(func=_cmd_script)

    c = sub.add_parser("check", help="test a characteristic property")
    c.add_argument("--property", required=True, help=", ".join(TAGS))
    c.add_argument("graph")
    c.set_defaults(func=_cmd_check)

    cl = sub.add_parser("closure", help="bounded closure of a class")
    cl.add_argument("--class", dest="cls")
    cl.add_argument("--be", nargs="+", action="extend", default=[])
    cl.add_argument("--bo", nargs="+", action="extend", default=[])
    cl.add_argument("--guard", action="append", default=[])
    cl.add_argument("--induced", action="store_true")
    cl.add_argument("--max-n", type=int, required=True)
    cl.add_argument("--max-m", type=int, required=True)
    cl.add_argument("--canonical", action="store_true")
    cl.add_argument("--jobs", type=int, default=1)
    cl.set_defaults(func=_cmd_closure)

    v = sub.add_parser("verify-class", help="compare a closure with its predicate")
    v.add_argument("--class", dest="cls", required=True)
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--max-m", type=int, required=True)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=_cmd_verify)

    f = sub.add_parser("find-basis", help="elemental-basis candidates within a bound")
    f.add_argument("--class", dest="cls", required=True)
    f.add_argument("--max-n", type=int, required=True)
    f.add_argument("--max-m", type=int, required=True)
    f.set_defaults(func=_cmd_find_basis)

    d = sub.add_parser("diagram", help="inclusion diagram as DOT, or the diff report")
    grp = d.add_mutually_exclusive_group(required=True)
    grp.add_argument("--listed", action="store_true")
    grp.add_argument("--derived", action="store_true")
    grp.add_argument("--diff", action="store_true")
    d.set_defaults(func=_cmd_diagram)

    db = sub.add_parser("dbsearch", help="bridge-deferring DFS order")
    db.add_argument("graph")
    db.add_argument("--start", type=int, required=True)
    db.set_defaults(func=_cmd_dbsearch)

    cat = sub.add_parser("catalog", help="list class descriptors")
    cat.set_defaults(func=_cmd_catalog)
    return p


def run_command(argv: Sequence[str]) -> CommandOutcome:
    out: list[str] = []
    try:
        args = build_parser().parse_args(list(argv))
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        code = args.func(args, out)
        return CommandOutcome(code, "".join(out))
    except GuardRejected as exc:
        return CommandOutcome(EXIT_GUARD, "".join(out), f"error: {exc}\n")
    except InternalInconsistency as exc:
        return CommandOutcome(EXIT_FALSE, "".join(out), f"internal inconsistency: {exc}\n")
    except (UsageError, GlueGraphError, OSError, ValueError) as exc:
        return CommandOutcome(EXIT_USAGE, "".join(out), f"error: {exc}\n")
    except SystemExit as exc:  # --help
        return CommandOutcome(int(exc.code or 0), "".join(out))


def main(argv: Sequence[str] | None = None) -> int:
    res = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
