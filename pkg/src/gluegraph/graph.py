"""Finite multigraphs with loops and parallel edges, named families, GFMT text I/O."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GraphFormatError

Edge = tuple[int, int]


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph on vertices ``0..n-1``.

    ``edges`` is an ordered tuple of edge instances; the position of an edge in
    the tuple is its stable index. Repeated pairs are parallel edges and a pair
    ``(v, v)`` is a loop. Pairs are stored with ``u <= v``.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphFormatError(f"negative vertex count {self.n}")
        norm = []
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge {e} out of range for n={self.n}")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def mult(self) -> tuple[tuple[int, ...], ...]:
        """Symmetric multiplicity matrix; the diagonal counts loops."""
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] += 1
            if u != v:
                a[v][u] += 1
        return tuple(tuple(row) for row in a)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Distinct non-loop neighbours of each vertex, ascending."""
        a = self.mult
        return tuple(
            tuple(w for w in range(self.n) if w != v and a[v][w]) for v in range(self.n)
        )

    def degree(self, v: int) -> int:
        # loops count twice
        return sum(self.mult[v]) + self.mult[v][v]

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def loops(self, v: int) -> int:
        return self.mult[v][v]

    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def has_parallel(self) -> bool:
        return len(set(self.edges)) != len(self.edges)

    def is_simple(self) -> bool:
        return self.loop_count() == 0 and not self.has_parallel()

    def simple_edges(self) -> list[Edge]:
        """Underlying simple graph: distinct non-loop pairs, sorted."""
        return sorted({(u, v) for u, v in self.edges if u != v})

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as sorted vertex tuples, ordered by least vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.neighbors[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(tuple(sorted(comp)))
        return tuple(out)

    def is_connected(self) -> bool:
        return self.n >= 1 and len(self.components) == 1

    def induced(self, vertices: Sequence[int]) -> "MultiGraph":
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return MultiGraph(len(vertices), tuple(es))

    def edge_subgraph(self, edge_ids: Iterable[int]) -> tuple["MultiGraph", tuple[int, ...]]:
        """Subgraph generated by the given edge instances.

        Returns the graph (vertices relabelled ascending) and the host vertex of
        each new vertex.
        """
        ids = sorted(set(edge_ids))
        verts = sorted({x for i in ids for x in self.edges[i]})
        index = {v: k for k, v in enumerate(verts)}
        es = tuple((index[self.edges[i][0]], index[self.edges[i][1]]) for i in ids)
        return MultiGraph(len(verts), es), tuple(verts)

    def relabel(self, perm: Sequence[int]) -> "MultiGraph":
        """Apply ``v -> perm[v]``; edge order is kept."""
        return MultiGraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def add_edges(self, *pairs: Edge) -> "MultiGraph":
        return MultiGraph(self.n, self.edges + tuple(pairs))

    def remove_vertices(self, drop: Iterable[int]) -> "MultiGraph":
        dropset = set(drop)
        return self.induced([v for v in range(self.n) if v not in dropset])

    def sorted_key(self) -> tuple[int, tuple[Edge, ...]]:
        """Labelled identity that ignores edge order."""
        return self.n, tuple(sorted(self.edges))

    def __repr__(self) -> str:
        return f"MultiGraph({self.n}, {list(self.edges)})"


def disjoint_union(*graphs: MultiGraph) -> MultiGraph:
    n = 0
    es: list[Edge] = []
    for g in graphs:
        es.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return MultiGraph(n, tuple(es))


def make_named(family: str, n: int) -> MultiGraph:
    """Named graphs: ``K`` complete, ``C`` simple cycle, ``L`` chain, ``O`` empty.

    ``C1`` is a single loop and ``C2`` a pair of parallel edges. ``O0`` is the
    null graph; ``K``, ``C`` and ``L`` need at least one vertex.
    """
    if family not in ("K", "C", "L", "O"):
        raise ValueError(f"unknown family {family!r}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0 and family != "O":
        raise ValueError(f"{family}0 is undefined")
    if family == "O":
        return MultiGraph(n)
    if family == "K":
        return MultiGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))
    if family == "L":
        return MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)))
    if n == 1:
        return MultiGraph(1, ((0, 0),))
    return MultiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def named(tag: str) -> MultiGraph:
    """``named("K3")`` shorthand for :func:`make_named`."""
    return make_named(tag[0], int(tag[1:]))


# --- GFMT -----------------------------------------------------------------


def to_gfmt(g: MultiGraph) -> str:
    lines = [f"graph {g.n}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_gfmt(text: str) -> MultiGraph:
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "graph":
                raise GraphFormatError(f"line {lineno}: expected 'graph <n>'")
            n = _parse_int(parts[1], lineno)
            continue
        if len(parts) != 3 or parts[0] != "e":
            raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
        u, v = _parse_int(parts[1], lineno), _parse_int(parts[2], lineno)
        if u >= n or v >= n:
            raise GraphFormatError(f"line {lineno}: vertex index out of range for n={n}")
        edges.append((u, v))
    if n is None:
        raise GraphFormatError("missing 'graph <n>' header")
    return MultiGraph(n, tuple(edges))


def _parse_int(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise GraphFormatError(f"line {lineno}: bad integer {tok!r}")
    return int(tok)


def read_gfmt(path: str | Path) -> MultiGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    return parse_gfmt(text)
