"""Canonical codes for multigraphs.

The code is the lexicographically least upper-triangular multiplicity matrix
(loops on the diagonal) over the leaves of an individualization-refinement
search tree. The tree is built only from label-invariant data, so the
minimum is an isomorphism invariant, and equal codes rebuild the same matrix.
Interchangeable twin vertices are expanded once per twin class.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import SizeCapError
from .graph import MultiGraph

DEFAULT_CAP = 12

CanonicalCode = bytes


def canonical_form(g: MultiGraph, cap: int = DEFAULT_CAP) -> CanonicalCode:
    if g.n > cap:
        raise SizeCapError(f"canonical_form: n={g.n} exceeds cap {cap}")
    return _canon(g.sorted_key())[0]


def canonical_order(g: MultiGraph, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Vertices of ``g`` listed in canonical position order."""
    if g.n > cap:
        raise SizeCapError(f"canonical_order: n={g.n} exceeds cap {cap}")
    return _canon(g.sorted_key())[1]


def canonical_graph(g: MultiGraph, cap: int = DEFAULT_CAP) -> MultiGraph:
    """Relabelled copy of ``g`` in canonical vertex order with sorted edges."""
    order = canonical_order(g, cap)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return MultiGraph(g.n, tuple(sorted(g.relabel(pos).edges)))


def is_isomorphic(g1: MultiGraph, g2: MultiGraph, cap: int = DEFAULT_CAP) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        if max(g1.n, g2.n) > cap:
            raise SizeCapError("is_isomorphic: size cap exceeded")
        return False
    return canonical_form(g1, cap) == canonical_form(g2, cap)


def code_hex(code: CanonicalCode) -> str:
    return code.hex()


def graph_from_code(code: CanonicalCode) -> MultiGraph:
    """Rebuild the canonical representative encoded by ``code``."""
    n = code[0]
    edges = []
    k = 1
    for i in range(n):
        for j in range(i, n):
            edges.extend([(i, j)] * code[k])
            k += 1
    return MultiGraph(n, tuple(edges))


@lru_cache(maxsize=1 << 18)
def _canon(key: tuple[int, tuple[tuple[int, int], ...]]) -> tuple[bytes, tuple[int, ...]]:
    n, edges = key
    if n == 0:
        return bytes([0]), ()
    a = [[0] * n for _ in range(n)]
    for u, v in edges:
        a[u][v] += 1
        if u != v:
            a[v][u] += 1
    if any(x > 255 for row in a for x in row):
        raise SizeCapError("multiplicity above 255 cannot be encoded")
    nbrs = [[(w, a[v][w]) for w in range(n) if w != v and a[v][w]] for v in range(n)]

    best: list = [None, None]

    def leaf(colors: list[int]) -> None:
        order = sorted(range(n), key=colors.__getitem__)
        out = bytearray([n])
        for i in range(n):
            row = a[order[i]]
            out.extend(row[order[j]] for j in range(i, n))
        code = bytes(out)
        if best[0] is None or code < best[0]:
            best[0] = code
            best[1] = tuple(order)

    def search(colors: list[int]) -> None:
        colors = _refine(colors, a, nbrs, n)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            leaf(colors)
            return
        target_color = min(c for c, cell in cells.items() if len(cell) > 1)
        cell = cells[target_color]
        reps: list[int] = []
        for v in cell:
            if any(_twins(a, v, r, n) for r in reps):
                continue
            reps.append(v)
            child = [2 * c for c in colors]
            for w in cell:
                if w != v:
                    child[w] += 1
            search(child)

    search([a[v][v] for v in range(n)])
    return best[0], best[1]


def _refine(colors: list[int], a, nbrs, n: int) -> list[int]:
    colors = _rank(colors)
    count = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[w], k) for w, k in nbrs[v])))
            for v in range(n)
        ]
        new = _rank(sigs)
        new_count = len(set(new))
        if new_count == count:
            return colors
        colors, count = new, new_count


def _rank(values: list) -> list[int]:
    index = {val: i for i, val in enumerate(sorted(set(values)))}
    return [index[v] for v in values]


def _twins(a, u: int, v: int, n: int) -> bool:
    if a[u][u] != a[v][v]:
        return False
    ru, rv = a[u], a[v]
    for w in range(n):
        if w != u and w != v and ru[w] != rv[w]:
            return False
    return True
