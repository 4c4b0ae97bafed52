"""Bounded fixpoint enumeration of closed classes and oracle comparison."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .canon import DEFAULT_CAP, CanonicalCode, canonical_form, code_hex, graph_from_code
from .embedding import Embedding, enumerate_embeddings
from .errors import GlueGraphError, SizeCapError
from .generate import enumerate_all_graphs
from .gluing import GluingSpec, glue_full
from .graph import MultiGraph
from .guards import GuardKind, first_rejection, parse_guards
from .registry import ClassDescriptor, get_descriptor


def _sort_key(code: CanonicalCode) -> tuple[int, int, CanonicalCode]:
    g = graph_from_code(code)
    return (g.n, g.m, code)


def sort_codes(codes: Iterable[CanonicalCode]) -> list[CanonicalCode]:
    return sorted(codes, key=_sort_key)


@dataclass
class ClosureReport:
    members: list[CanonicalCode]
    bound: tuple[int, int]
    iterations: int
    in_closure_not_predicate: list[CanonicalCode] = field(default_factory=list)
    predicate_not_in_closure: list[CanonicalCode] = field(default_factory=list)

    @property
    def mismatches(self) -> int:
        return len(self.in_closure_not_predicate) + len(self.predicate_not_in_closure)

    def graphs(self) -> list[MultiGraph]:
        return [graph_from_code(c) for c in self.members]

    def serialize(self) -> str:
        n, m = self.bound
        lines = [f"closure n<={n} m<={m} count={len(self.members)}"]
        lines += [code_hex(c) for c in self.members]
        lines.append(f"in_closure_not_predicate count={len(self.in_closure_not_predicate)}")
        lines += [code_hex(c) for c in self.in_closure_not_predicate]
        lines.append(f"predicate_not_in_closure count={len(self.predicate_not_in_closure)}")
        lines += [code_hex(c) for c in self.predicate_not_in_closure]
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=200_000)
def _embeddings(pattern: MultiGraph, host: MultiGraph, induced: bool) -> tuple[Embedding, ...]:
    return tuple(enumerate_embeddings(pattern, host, induced))


@lru_cache(maxsize=200_000)
def _left_embeddings(pattern: MultiGraph, host: MultiGraph, induced: bool) -> tuple[Embedding, ...]:
    # one embedding per image: the right side runs over all embeddings, so
    # pattern automorphisms are already covered there
    seen = set()
    out = []
    for e in _embeddings(pattern, host, induced):
        key = (frozenset(e.vertex_map), frozenset(e.edge_map))
        if key not in seen:
            seen.add(key)
            out.append(e)
    return tuple(out)


def iter_gluings(
    x: MultiGraph,
    y: MultiGraph,
    patterns: Sequence[MultiGraph],
    bound: tuple[int, int] | None = None,
    induced: bool = False,
    reduce_left: bool = True,
):
    """Nontrivial specs gluing ``x`` (left) with ``y`` (right) over ``patterns``."""
    for p in patterns:
        if p.n > x.n or p.n > y.n or p.m > x.m or p.m > y.m:
            continue
        if bound is not None and (x.n + y.n - p.n > bound[0] or x.m + y.m - p.m > bound[1]):
            continue
        lefts = _left_embeddings(p, x, induced) if reduce_left else _embeddings(p, x, induced)
        rights = _embeddings(p, y, induced)
        if not lefts or not rights:
            continue
        for le in lefts:
            for re_ in rights:
                spec = GluingSpec(x, y, p, le, re_)
                if not spec.is_trivial():
                    yield spec


def _expand(
    pairs: Sequence[tuple[MultiGraph, MultiGraph]],
    patterns: Sequence[MultiGraph],
    guard_tags: Sequence[str],
    induced: bool,
    bound: tuple[int, int],
) -> set[CanonicalCode]:
    guards = [GuardKind(t) for t in guard_tags]
    out: set[CanonicalCode] = set()
    for x, y in pairs:
        for spec in iter_gluings(x, y, patterns, bound, induced):
            g = glue_full(spec, check=False).graph
            if guards and first_rejection(guards, spec, g) is not None:
                continue
            out.add(canonical_form(g))
    return out


def _expand_task(args) -> set[CanonicalCode]:
    pairs, patterns, guard_tags, induced, bound = args
    return _expand(pairs, patterns, guard_tags, induced, bound)


def closure_fixpoint(
    descriptor: ClassDescriptor,
    max_n: int,
    max_m: int,
    canonical_only: bool = False,
    jobs: int = 1,
    operational_basis=None,
) -> ClosureReport:
    """Least set containing the elemental basis and closed under guarded,
    nontrivial gluings whose results fit ``n <= max_n, m <= max_m``.

    Rule-generated bases are instantiated up to the bound first. With
    ``canonical_only`` one operand of every gluing is a basis graph.
    ``jobs > 1`` spreads each round over worker processes; the member list is
    identical for any worker count.
    """
    if max_n > DEFAULT_CAP or max_n < 0 or max_m < 0:
        raise SizeCapError(f"bound ({max_n}, {max_m}) outside the supported range")
    bo = operational_basis if operational_basis is not None else descriptor.operational_basis
    basis = descriptor.elemental_basis.instantiate(max_n, max_m)
    if not basis:
        raise GlueGraphError("elemental basis is empty within the bound")
    patterns = bo.instantiate(max_n, max_m)
    guard_tags = tuple(g.tag for g in parse_guards(descriptor.guards))
    bound = (max_n, max_m)
    induced = descriptor.induced

    members: dict[CanonicalCode, MultiGraph] = {}
    frontier_codes = sort_codes({canonical_form(g) for g in basis})
    basis_graphs = [graph_from_code(c) for c in frontier_codes]
    rounds = 0
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier_codes:
            rounds += 1
            old = list(members.values())
            frontier = [graph_from_code(c) for c in frontier_codes]
            for c, g in zip(frontier_codes, frontier):
                members[c] = g
            pairs: list[tuple[MultiGraph, MultiGraph]] = []
            for i, x in enumerate(frontier):
                if canonical_only:
                    pairs.extend((x, b) for b in basis_graphs)
                else:
                    pairs.extend((x, y) for y in old)
                    pairs.extend((x, y) for y in frontier[: i + 1])
            if pool is None:
                found = _expand(pairs, patterns, guard_tags, induced, bound)
            else:
                chunks = [pairs[k::jobs * 4] for k in range(jobs * 4)]
                found = set()
                tasks = [(c, patterns, guard_tags, induced, bound) for c in chunks if c]
                for part in pool.map(_expand_task, tasks):
                    found |= part
            frontier_codes = sort_codes(c for c in found if c not in members)
    finally:
        if pool is not None:
            pool.shutdown()
    return ClosureReport(sort_codes(members), bound, rounds)


def oracle_members(
    predicate: Callable[[MultiGraph], bool], max_n: int, max_m: int
) -> list[CanonicalCode]:
    return [canonical_form(g) for g in enumerate_all_graphs(max_n, max_m) if predicate(g)]


def verify_class(cid, max_n: int, max_m: int, jobs: int = 1, canonical_only: bool = False) -> ClosureReport:
    """Closure of class ``cid`` compared with its characteristic predicate
    over every graph in the bound."""
    d = get_descriptor(cid)
    rep = closure_fixpoint(d, max_n, max_m, canonical_only=canonical_only, jobs=jobs)
    got = set(rep.members)
    want = set(oracle_members(d.membership, max_n, max_m))
    rep.in_closure_not_predicate = sort_codes(got - want)
    rep.predicate_not_in_closure = sort_codes(want - got)
    return rep


@dataclass
class BasisCandidates:
    codes: list[CanonicalCode]
    bound: tuple[int, int]
    at_boundary: list[CanonicalCode]

    @property
    def warning(self) -> str | None:
        """Candidates touching the bound suggest the basis continues beyond it."""
        if not self.at_boundary:
            return None
        return "basis may continue beyond the bound: candidates touch it"

    def graphs(self) -> list[MultiGraph]:
        return [graph_from_code(c) for c in self.codes]


def find_elemental_basis(
    predicate: Callable[[MultiGraph], bool],
    operational_basis,
    guards: Sequence[str] = (),
    max_n: int = 4,
    max_m: int = 4,
    induced: bool = False,
) -> BasisCandidates:
    """Members within the bound that no nontrivial guarded gluing of two
    members produces.

    Gluing never shrinks an operand, so both operands of any gluing that
    yields a graph inside the bound are inside it too; the candidate set is
    exact for the bounded part of the class.
    """
    if max_n > DEFAULT_CAP or max_n < 0 or max_m < 0:
        raise SizeCapError(f"bound ({max_n}, {max_m}) outside the supported range")
    members = [g for g in enumerate_all_graphs(max_n, max_m) if predicate(g)]
    codes = {canonical_form(g) for g in members}
    patterns = operational_basis.instantiate(max_n, max_m)
    guard_tags = tuple(g.tag for g in parse_guards(guards))
    pairs = [(x, y) for i, x in enumerate(members) for y in members[: i + 1]]
    produced = _expand(pairs, patterns, guard_tags, induced, (max_n, max_m)) & codes
    cands = sort_codes(codes - produced)
    edge = [c for c in cands if graph_from_code(c).n == max_n or graph_from_code(c).m == max_m]
    return BasisCandidates(cands, (max_n, max_m), edge)


def find_basis_for(cid, max_n: int, max_m: int) -> BasisCandidates:
    d = get_descriptor(cid)
    return find_elemental_basis(d.membership, d.operational_basis, d.guards, max_n, max_m, d.induced)
