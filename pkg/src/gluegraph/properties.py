"""Characteristic-property predicates on multigraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .canon import DEFAULT_CAP, CanonicalCode, canonical_form
from .errors import SizeCapError
from .graph import MultiGraph, named

TAGS = (
    "connected",
    "simple",
    "chordal",
    "euler",
    "bipartite",
    "hamiltonian",
    "planar",
    "maximal_planar",
    "forest",
    "perfect_edge_matching",
    "topological",
    "components_isomorphic_to",
)


@dataclass(frozen=True)
class PropertyKind:
    tag: str
    codes: frozenset[CanonicalCode] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise ValueError(f"unknown property {self.tag!r}")

    @classmethod
    def parse(cls, text: str) -> "PropertyKind":
        """``euler`` or ``components_isomorphic_to=K2,C1``."""
        tag, _, arg = text.partition("=")
        if tag == "components_isomorphic_to":
            if not arg:
                raise ValueError("components_isomorphic_to needs =G1,G2,...")
            return cls(tag, frozenset(canonical_form(named(t)) for t in arg.split(",")))
        if arg:
            raise ValueError(f"property {tag!r} takes no argument")
        return cls(tag)

    def __str__(self) -> str:
        return self.tag


def holds(p: PropertyKind | str, g: MultiGraph, cap: int = DEFAULT_CAP) -> bool:
    if isinstance(p, str):
        p = PropertyKind.parse(p)
    tag = p.tag
    if tag in ("hamiltonian", "planar", "maximal_planar") and g.n > cap:
        raise SizeCapError(f"{tag}: n={g.n} exceeds cap {cap}")
    if tag == "connected":
        return g.is_connected()
    if tag == "simple":
        return g.is_simple()
    if tag == "chordal":
        return is_chordal(g)
    if tag == "euler":
        return is_euler(g)
    if tag == "bipartite":
        return two_coloring(g) is not None
    if tag == "hamiltonian":
        return is_hamiltonian(g)
    if tag == "planar":
        from .planar import is_planar

        return is_planar(g)
    if tag == "maximal_planar":
        from .planar import is_maximal_planar

        return is_maximal_planar(g)
    if tag == "forest":
        return is_forest(g)
    if tag == "perfect_edge_matching":
        return has_perfect_matching(g)
    if tag == "topological":
        return all(d != 2 for d in g.degrees())
    # components_isomorphic_to
    return all(canonical_form(g.induced(c), cap) in p.codes for c in g.components)


def is_euler(g: MultiGraph) -> bool:
    return g.is_connected() and all(d % 2 == 0 for d in g.degrees())


def is_forest(g: MultiGraph) -> bool:
    return g.is_simple() and g.m == g.n - len(g.components)


def is_acyclic_ignoring_loops(g: MultiGraph) -> bool:
    """No cycle ``C_n`` with ``n >= 2``: loops allowed, parallel edges not."""
    plain = [e for e in g.edges if e[0] != e[1]]
    return len(set(plain)) == len(plain) and len(plain) == g.n - len(g.components)


def two_coloring(g: MultiGraph) -> list[int] | None:
    """A proper 2-colouring, or ``None`` (loops are odd cycles)."""
    if g.loop_count():
        return None
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_chordal(g: MultiGraph) -> bool:
    """Chordality of the underlying simple graph via maximum cardinality search."""
    n = g.n
    nb = [set(x) for x in g.neighbors]
    weight = [0] * n
    numbered = [False] * n
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True
        order.append(v)
        for w in nb[v]:
            if not numbered[w]:
                weight[w] += 1
    # reverse of an MCS order is a perfect elimination order iff chordal
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in nb[v] if pos[w] < pos[v]]
        if not earlier:
            continue
        parent = max(earlier, key=pos.__getitem__)
        if any(w != parent and w not in nb[parent] for w in earlier):
            return False
    return True


def hamiltonian_cycles(g: MultiGraph) -> Iterator[tuple[int, ...]]:
    """Hamiltonian cycles as vertex sequences, each undirected cycle once.

    ``(0,)`` stands for a loop cycle on one vertex and ``(0, 1)`` for a
    two-vertex cycle made of parallel edges.
    """
    n = g.n
    if n == 0:
        return
    if n == 1:
        if g.loops(0):
            yield (0,)
        return
    if n == 2:
        if g.mult[0][1] >= 2:
            yield (0, 1)
        return
    nb = g.neighbors
    path = [0]
    used = [False] * n
    used[0] = True

    def rec() -> Iterator[tuple[int, ...]]:
        u = path[-1]
        if len(path) == n:
            if 0 in nb[u] and path[1] < path[-1]:
                yield tuple(path)
            return
        for w in nb[u]:
            if not used[w]:
                used[w] = True
                path.append(w)
                yield from rec()
                path.pop()
                used[w] = False

    yield from rec()


def is_hamiltonian(g: MultiGraph) -> bool:
    return next(hamiltonian_cycles(g), None) is not None


def hamiltonian_adjacent_pairs(g: MultiGraph) -> set[frozenset[int]]:
    """Vertex pairs that are consecutive on at least one Hamiltonian cycle."""
    out: set[frozenset[int]] = set()
    for cyc in hamiltonian_cycles(g):
        k = len(cyc)
        if k == 1:
            continue
        for i in range(k):
            out.add(frozenset((cyc[i], cyc[(i + 1) % k])))
    return out


def has_perfect_matching(g: MultiGraph) -> bool:
    """Every vertex covered exactly once by a chosen non-loop edge or loop.

    On loopless graphs this is the ordinary perfect matching.
    """
    n = g.n
    a = g.mult
    covered = [False] * n

    def rec(start: int) -> bool:
        v = start
        while v < n and covered[v]:
            v += 1
        if v == n:
            return True
        covered[v] = True
        if a[v][v] and rec(v + 1):
            return True
        for w in range(v + 1, n):
            if a[v][w] and not covered[w]:
                covered[w] = True
                if rec(v + 1):
                    return True
                covered[w] = False
        covered[v] = False
        return False

    return rec(0)
