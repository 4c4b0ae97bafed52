"""Occurrences of a pattern multigraph inside a host multigraph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import MalformedGluingError
from .graph import MultiGraph


@dataclass(frozen=True)
class Embedding:
    """Injective, multiplicity-respecting map of ``pattern`` into ``host``.

    ``vertex_map[i]`` is the host vertex of pattern vertex ``i`` and
    ``edge_map[k]`` the host edge instance of pattern edge ``k``.
    """

    pattern: MultiGraph
    host: MultiGraph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    induced: bool = False

    def validate(self) -> None:
        p, h = self.pattern, self.host
        vm, em = self.vertex_map, self.edge_map
        if len(vm) != p.n or len(em) != p.m:
            raise MalformedGluingError("map length does not match pattern")
        if len(set(vm)) != len(vm) or any(not 0 <= v < h.n for v in vm):
            raise MalformedGluingError("vertex map is not injective into the host")
        if len(set(em)) != len(em) or any(not 0 <= e < h.m for e in em):
            raise MalformedGluingError("edge map is not injective into the host")
        for k, (a, b) in enumerate(p.edges):
            x, y = h.edges[em[k]]
            if {x, y} != {vm[a], vm[b]} or (x == y) != (a == b):
                raise MalformedGluingError(f"pattern edge {k} is not incident-compatible")
        if self.induced and not is_induced(p, h, vm):
            raise MalformedGluingError("embedding flagged induced but is not")

    def covers_host(self) -> bool:
        return self.pattern.n == self.host.n and self.pattern.m == self.host.m

    def image_vertices(self) -> frozenset[int]:
        return frozenset(self.vertex_map)

    def image_edges(self) -> frozenset[int]:
        return frozenset(self.edge_map)

    def image(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.image_vertices(), self.image_edges()


def is_induced(pattern: MultiGraph, host: MultiGraph, vertex_map: tuple[int, ...]) -> bool:
    pa, ha = pattern.mult, host.mult
    k = pattern.n
    for i in range(k):
        for j in range(i, k):
            if ha[vertex_map[i]][vertex_map[j]] != pa[i][j]:
                return False
    return True


def default_edge_map(pattern: MultiGraph, host: MultiGraph, vertex_map: tuple[int, ...]) -> tuple[int, ...]:
    """Pair each pattern edge with the lowest unused compatible host instance."""
    slots: dict[tuple[int, int], list[int]] = {}
    for idx, (u, v) in enumerate(host.edges):
        slots.setdefault((u, v), []).append(idx)
    used: dict[tuple[int, int], int] = {}
    out = []
    for a, b in pattern.edges:
        x, y = vertex_map[a], vertex_map[b]
        key = (x, y) if x <= y else (y, x)
        k = used.get(key, 0)
        avail = slots.get(key, [])
        if k >= len(avail):
            raise MalformedGluingError(f"host lacks an edge {key} for pattern edge {(a, b)}")
        out.append(avail[k])
        used[key] = k + 1
    return tuple(out)


def make_embedding(
    pattern: MultiGraph,
    host: MultiGraph,
    vertex_map,
    edge_map=None,
    induced: bool = False,
) -> Embedding:
    """Build and validate an embedding; the edge map defaults to lowest instances."""
    vm = tuple(vertex_map)
    if len(vm) != pattern.n or len(set(vm)) != len(vm) or any(not 0 <= v < host.n for v in vm):
        raise MalformedGluingError("vertex map is not an injection into the host")
    em = default_edge_map(pattern, host, vm) if edge_map is None else tuple(edge_map)
    emb = Embedding(pattern, host, vm, em, induced)
    emb.validate()
    return emb


def iter_vertex_maps(pattern: MultiGraph, host: MultiGraph, induced: bool = False) -> Iterator[tuple[int, ...]]:
    """Injective vertex maps admitting a multiplicity-respecting edge map.

    Yielded in lexicographic order of the map tuple.
    """
    k = pattern.n
    if k > host.n:
        return
    pa, ha = pattern.mult, host.mult
    pdeg = [sum(r) for r in pa]
    hdeg = [sum(r) for r in ha]
    cur: list[int] = []
    used = [False] * host.n

    def ok(i: int, x: int) -> bool:
        if induced:
            if ha[x][x] != pa[i][i]:
                return False
        elif ha[x][x] < pa[i][i] or hdeg[x] < pdeg[i]:
            return False
        row = pa[i]
        hrow = ha[x]
        for j in range(i):
            need = row[j]
            have = hrow[cur[j]]
            if have < need or (induced and have != need):
                return False
        return True

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield tuple(cur)
            return
        for x in range(host.n):
            if not used[x] and ok(i, x):
                used[x] = True
                cur.append(x)
                yield from rec(i + 1)
                cur.pop()
                used[x] = False

    yield from rec(0)


def enumerate_embeddings(pattern: MultiGraph, host: MultiGraph, induced: bool = False) -> list[Embedding]:
    """All occurrences of ``pattern`` in ``host``, lexicographic on the vertex map.

    Parallel host edges between the same pair are interchangeable, so each
    vertex map carries one edge map (lowest available instances).
    """
    return [
        Embedding(pattern, host, vm, default_edge_map(pattern, host, vm), induced)
        for vm in iter_vertex_maps(pattern, host, induced)
    ]
