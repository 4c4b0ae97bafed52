"""The binary gluing operation ``(G1 o G2) P`` and its classification."""

from __future__ import annotations

from dataclasses import dataclass

from .canon import CanonicalCode, canonical_form
from .embedding import Embedding, make_embedding
from .errors import MalformedGluingError
from .graph import MultiGraph


@dataclass(frozen=True)
class GluingSpec:
    left: MultiGraph
    right: MultiGraph
    pattern: MultiGraph
    left_emb: Embedding
    right_emb: Embedding

    def is_trivial(self) -> bool:
        """The identified subgraph is a whole operand on at least one side."""
        return self.left_emb.covers_host() or self.right_emb.covers_host()

    def swapped(self) -> "GluingSpec":
        return GluingSpec(self.right, self.left, self.pattern, self.right_emb, self.left_emb)

    def identified_pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.left_emb.vertex_map, self.right_emb.vertex_map))


def make_spec(left, right, pattern, lmap, rmap, lemap=None, remap=None) -> GluingSpec:
    """Build a validated spec from explicit vertex (and optional edge) maps."""
    return GluingSpec(
        left,
        right,
        pattern,
        make_embedding(pattern, left, lmap, lemap),
        make_embedding(pattern, right, rmap, remap),
    )


@dataclass(frozen=True)
class GlueResult:
    graph: MultiGraph
    left_into: Embedding
    right_into: Embedding


def _check(spec: GluingSpec) -> None:
    le, re_ = spec.left_emb, spec.right_emb
    if le.pattern != spec.pattern or re_.pattern != spec.pattern:
        raise MalformedGluingError("embeddings do not share the spec pattern")
    if le.host != spec.left or re_.host != spec.right:
        raise MalformedGluingError("embedding hosts do not match the operands")
    le.validate()
    re_.validate()


def glue_full(spec: GluingSpec, check: bool = True) -> GlueResult:
    """Glue and also return the embeddings of both operands into the result.

    Left vertices keep their indices; unmatched right vertices follow in
    ascending order. Left edges keep their indices; unpaired right edges are
    appended in order.
    """
    if check:
        _check(spec)
    left, right = spec.left, spec.right
    n1 = left.n
    rv = [-1] * right.n
    for lv, r in zip(spec.left_emb.vertex_map, spec.right_emb.vertex_map):
        rv[r] = lv
    nxt = n1
    for v in range(right.n):
        if rv[v] < 0:
            rv[v] = nxt
            nxt += 1
    re_map = [-1] * right.m
    for le, r in zip(spec.left_emb.edge_map, spec.right_emb.edge_map):
        re_map[r] = le
    edges = list(left.edges)
    for i, (u, v) in enumerate(right.edges):
        if re_map[i] < 0:
            re_map[i] = len(edges)
            edges.append((rv[u], rv[v]))
    g = MultiGraph(nxt, tuple(edges))
    left_into = Embedding(left, g, tuple(range(n1)), tuple(range(left.m)))
    right_into = Embedding(right, g, tuple(rv), tuple(re_map))
    return GlueResult(g, left_into, right_into)


def glue(spec: GluingSpec) -> MultiGraph:
    return glue_full(spec).graph


def classify_gluing(spec: GluingSpec) -> CanonicalCode:
    """The gluing type: canonical code of the pattern."""
    return canonical_form(spec.pattern)


def union(*graphs: MultiGraph) -> MultiGraph:
    """Iterated gluing on the null graph."""
    empty = MultiGraph(0)
    acc = empty
    for g in graphs:
        acc = glue(make_spec(acc, g, empty, (), ()))
    return acc
