"""Planarity, db-search orderings, shells and maximal-face subgraphs.

Loops never affect planarity, so the face machinery works on the host with
loops removed. Parallel edges are kept: a doubled edge is a 2-cycle.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .embedding import Embedding, default_edge_map
from .errors import InternalInconsistency, MalformedGluingError, NotPlanarError
from .gluing import GluingSpec, glue
from .graph import MultiGraph


def is_planar(g: MultiGraph) -> bool:
    import networkx as nx

    if g.n < 5:
        return True
    simple = g.simple_edges()
    if len(simple) > 3 * g.n - 6:
        return False
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(simple)
    return nx.check_planarity(h)[0]


def is_maximal_planar(g: MultiGraph) -> bool:
    """Simple planar graph to which no edge can be added planarly."""
    if not g.is_simple() or not is_planar(g):
        return False
    a = g.mult
    for u, v in combinations(range(g.n), 2):
        if not a[u][v] and is_planar(g.add_edges((u, v))):
            return False
    return True


# --- bridges and db-search ----------------------------------------------


def bridges(g: MultiGraph, vertices: Iterable[int] | None = None) -> set[frozenset[int]]:
    """Bridges of the subgraph induced on ``vertices`` (lowlink method).

    Loops are ignored and a multiplicity of two or more is never a bridge.
    """
    vs = sorted(range(g.n) if vertices is None else set(vertices))
    inside = set(vs)
    a = g.mult
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: set[frozenset[int]] = set()
    counter = [0]

    def dfs(u: int, parent: int) -> None:
        disc[u] = low[u] = counter[0]
        counter[0] += 1
        for w in g.neighbors[u]:
            if w not in inside:
                continue
            if w not in disc:
                dfs(w, u)
                low[u] = min(low[u], low[w])
                if low[w] > disc[u] and a[u][w] == 1:
                    out.add(frozenset((u, w)))
            elif w != parent or a[u][w] > 1:
                low[u] = min(low[u], disc[w])

    for s in vs:
        if s not in disc:
            dfs(s, -1)
    return out


def db_search(
    g: MultiGraph,
    start: int,
    source_components: Sequence[Iterable[int]] | None = None,
) -> list[int]:
    """Depth-first vertex ordering that defers bridges.

    At the current vertex ``u`` the unfulfilled subgraph is the subgraph
    induced by ``u`` and the unvisited vertices. Edges from ``u`` that are not
    bridges there are preferred (restriction 1). Among bridges, those joining
    two different components of ``source_components`` are deferred
    (restriction 2). Remaining ties go to the smallest vertex.
    """
    if not 0 <= start < g.n:
        raise ValueError(f"start vertex {start} out of range")
    if not g.is_connected():
        raise ValueError("db_search needs a connected graph")
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(source_components or ()):
        for v in comp:
            comp_of[v] = i
    visited = [False] * g.n
    visited[start] = True
    order = [start]
    stack = [start]
    while stack:
        u = stack[-1]
        cand = [w for w in g.neighbors[u] if not visited[w]]
        if not cand:
            stack.pop()
            continue
        unfulfilled = [v for v in range(g.n) if not visited[v]] + [u]
        br = bridges(g, unfulfilled)
        pick = [w for w in cand if frozenset((u, w)) not in br]
        if not pick:
            pick = [
                w for w in cand
                if not (u in comp_of and w in comp_of and comp_of[u] != comp_of[w])
            ] or cand
        w = min(pick)
        visited[w] = True
        order.append(w)
        stack.append(w)
    return order


# --- shells and faces ----------------------------------------------------


def shell_edge_ids(sub: Embedding) -> list[int]:
    taken = set(sub.edge_map)
    return [i for i in range(sub.host.m) if i not in taken]


def shell(sub: Embedding) -> MultiGraph:
    """Subgraph of the host generated by the edges outside the image of ``sub``.

    Vertices are the endpoints of those edges, relabelled in ascending host order.
    """
    return sub.host.edge_subgraph(shell_edge_ids(sub))[0]


def _blocks(n: int, edges: list[tuple[int, int, int]]) -> list[list[int]]:
    """Biconnected blocks as lists of edge ids; ``edges`` are ``(id, u, v)``, no loops."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for eid, u, v in edges:
        adj.setdefault(u, []).append((v, eid))
        adj.setdefault(v, []).append((u, eid))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[int] = []
    out: list[list[int]] = []
    counter = [0]

    def dfs(u: int, via: int) -> None:
        disc[u] = low[u] = counter[0]
        counter[0] += 1
        for w, eid in adj.get(u, []):
            if eid == via:
                continue
            if w not in disc:
                stack.append(eid)
                dfs(w, eid)
                low[u] = min(low[u], low[w])
                if low[w] >= disc[u]:
                    block = []
                    while True:
                        e = stack.pop()
                        block.append(e)
                        if e == eid:
                            break
                    out.append(block)
            elif disc[w] < disc[u]:
                stack.append(eid)
                low[u] = min(low[u], disc[w])

    for s in sorted(adj):
        if s not in disc:
            dfs(s, -1)
    return out


def cactus_cycles(host: MultiGraph, edge_ids: Iterable[int]) -> list[list[int]] | None:
    """Cycles (as vertex sequences) of a cactus edge set, or ``None`` if some
    block is neither a single edge nor a cycle. Loops are skipped."""
    es = [(i, *host.edges[i]) for i in edge_ids if host.edges[i][0] != host.edges[i][1]]
    cycles = []
    for block in _blocks(host.n, es):
        if len(block) == 1:
            continue
        ends = [host.edges[i] for i in block]
        verts = {x for e in ends for x in e}
        if len(block) != len(verts):
            return None
        deg: dict[int, list[int]] = {}
        for u, v in ends:
            deg.setdefault(u, []).append(v)
            deg.setdefault(v, []).append(u)
        if any(len(x) != 2 for x in deg.values()):
            return None
        first = min(verts)
        seq = [first]
        prev, cur = None, first
        nxt = min(deg[first])
        while nxt != first:
            seq.append(nxt)
            prev, cur = cur, nxt
            opts = list(deg[cur])
            opts.remove(prev)
            nxt = opts[0]
            if len(seq) > len(verts):
                return None
        cycles.append(seq)
    return cycles


def chordal_chains(host: MultiGraph, cycle: list[int], shell_ids: list[int]):
    """Chains through shell edges joining two distinct cycle vertices whose
    interior avoids the cycle. Yields ``(a, b, interior, edge_ids)``, ``a < b``."""
    on_cycle = set(cycle)
    adj: dict[int, list[tuple[int, int]]] = {}
    for i in shell_ids:
        u, v = host.edges[i]
        if u == v:
            continue
        adj.setdefault(u, []).append((v, i))
        adj.setdefault(v, []).append((u, i))
    out = []
    for a in sorted(on_cycle):
        path_v = [a]
        path_e: list[int] = []

        def rec(u: int) -> None:
            for w, eid in adj.get(u, []):
                if w in on_cycle:
                    if w > a and len(path_v) >= 1 and w not in path_v:
                        out.append((a, w, tuple(path_v[1:]), tuple(path_e + [eid])))
                    continue
                if w in path_v:
                    continue
                path_v.append(w)
                path_e.append(eid)
                rec(w)
                path_v.pop()
                path_e.pop()

        rec(a)
    return out


def _alternate(cycle: list[int], a: int, b: int, c: int, d: int) -> bool:
    if len({a, b, c, d}) < 4:
        return False
    pos = {v: i for i, v in enumerate(cycle)}
    lo, hi = sorted((pos[a], pos[b]))
    inside_c = lo < pos[c] < hi
    inside_d = lo < pos[d] < hi
    return inside_c != inside_d


def _disjoint_k23(adj: dict[int, list[int]], left: tuple[int, ...], right: tuple[int, int]) -> bool:
    """Six internally disjoint paths joining each of ``left`` to each of ``right``."""
    terminals = set(left) | set(right)
    pairs = [(x, y) for x in left for y in right]
    blocked: set[int] = set()

    def paths(s: int, t: int):
        seen = [s]

        def rec(u: int):
            for w in adj.get(u, []):
                if w == t:
                    yield list(seen[1:])
                elif w not in terminals and w not in blocked and w not in seen:
                    seen.append(w)
                    yield from rec(w)
                    seen.pop()

        yield from rec(s)

    def place(k: int) -> bool:
        if k == len(pairs):
            return True
        s, t = pairs[k]
        for inner in paths(s, t):
            blocked.update(inner)
            if place(k + 1):
                return True
            blocked.difference_update(inner)
        return False

    return place(0)


def face_conditions(sub: Embedding) -> dict[str, bool]:
    """Evaluate each maximal-face condition separately (keys ``1``, ``2a``, ``2b``, ``2c``)."""
    host = sub.host
    if not is_planar(host):
        raise NotPlanarError("face conditions need a planar host")
    image_edges = [i for i in sub.edge_map if host.edges[i][0] != host.edges[i][1]]
    image_graph, _ = host.edge_subgraph(image_edges)
    connected = len(sub.vertex_map) <= 1 or (
        image_graph.n == len(sub.vertex_map) and image_graph.is_connected()
    )
    cycles = cactus_cycles(host, image_edges)
    res = {"1": connected and cycles is not None, "2a": False, "2b": False, "2c": False}
    if not res["1"]:
        return res
    sh = [i for i in shell_edge_ids(sub) if host.edges[i][0] != host.edges[i][1]]
    covered: set[int] = set()
    chains_by_cycle = []
    for cyc in cycles:
        chains = chordal_chains(host, cyc, sh)
        chains_by_cycle.append(chains)
        for ch in chains:
            covered.update(ch[3])
    res["2a"] = covered >= set(sh)
    res["2b"] = True
    for cyc, chains in zip(cycles, chains_by_cycle):
        for c1, c2 in combinations(chains, 2):
            if _alternate(cyc, c1[0], c1[1], c2[0], c2[1]) and not set(c1[2]) & set(c2[2]):
                res["2b"] = False
    adj: dict[int, list[int]] = {}
    for i in sh:
        u, v = host.edges[i]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    shell_vertices = sorted(adj)
    res["2c"] = True
    for cyc in cycles:
        for trio in combinations(cyc, 3):
            others = [x for x in shell_vertices if x not in trio]
            for pair in combinations(others, 2):
                if _disjoint_k23(adj, trio, pair):
                    res["2c"] = False
                    break
            if not res["2c"]:
                break
    return res


def is_face_subgraph(sub: Embedding) -> bool:
    """Whether the image of ``sub`` is the graph of a maximal face in some
    plane drawing of the host: a cactus whose shell is covered by chordal
    chains, with alternating chains meeting and no 3-to-2 disjoint linkage."""
    return all(face_conditions(sub).values())


# --- H_p gluing -----------------------------------------------------------


def face_order(face: Embedding, start: int | None = None) -> list[int]:
    """db-search order of the face image, in host vertex labels."""
    host = face.host
    loopless = [i for i in face.edge_map if host.edges[i][0] != host.edges[i][1]]
    verts = sorted(face.vertex_map)
    index = {v: k for k, v in enumerate(verts)}
    fg = MultiGraph(len(verts), tuple((index[host.edges[i][0]], index[host.edges[i][1]]) for i in loopless))
    s = verts[0] if start is None else start
    if s not in index:
        raise MalformedGluingError(f"start vertex {s} is not on the face")
    return [verts[k] for k in db_search(fg, index[s])]


def _face_mult(face: Embedding) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for i in sorted(face.edge_map):
        out.setdefault(face.host.edges[i], []).append(i)
    return out


def hp_spec(
    left: MultiGraph,
    right: MultiGraph,
    left_face: Embedding,
    right_face: Embedding,
    count: int | None = None,
    left_start: int | None = None,
    right_start: int | None = None,
) -> GluingSpec:
    """Gluing spec pairing face vertices in db-search order.

    The first ``count`` vertices of each face order are identified; edges of
    the faces that become parallel after the identification are merged
    pairwise.
    """
    if left_face.host != left or right_face.host != right:
        raise MalformedGluingError("faces must be embeddings into the operands")
    for name, g, f in (("left", left, left_face), ("right", right, right_face)):
        if not is_planar(g):
            raise NotPlanarError(f"{name} operand is not planar")
        if not is_face_subgraph(f):
            raise MalformedGluingError(f"{name} face is not a maximal face subgraph")
    o1 = face_order(left_face, left_start)
    o2 = face_order(right_face, right_start)
    k = min(len(o1), len(o2)) if count is None else count
    if not 0 <= k <= min(len(o1), len(o2)):
        raise MalformedGluingError(f"count {k} exceeds a face size")
    lmap, rmap = tuple(o1[:k]), tuple(o2[:k])
    f1, f2 = _face_mult(left_face), _face_mult(right_face)
    pedges: list[tuple[int, int]] = []
    lemap: list[int] = []
    remap: list[int] = []
    for i in range(k):
        for j in range(i, k):
            a = (min(lmap[i], lmap[j]), max(lmap[i], lmap[j]))
            b = (min(rmap[i], rmap[j]), max(rmap[i], rmap[j]))
            la, rb = f1.get(a, []), f2.get(b, [])
            for x, y in zip(la, rb):
                pedges.append((i, j))
                lemap.append(x)
                remap.append(y)
    pattern = MultiGraph(k, tuple(pedges))
    return GluingSpec(
        left,
        right,
        pattern,
        Embedding(pattern, left, lmap, tuple(lemap)),
        Embedding(pattern, right, rmap, tuple(remap)),
    )


def hp_glue(
    left: MultiGraph,
    right: MultiGraph,
    left_face: Embedding,
    right_face: Embedding,
    count: int | None = None,
    left_start: int | None = None,
    right_start: int | None = None,
) -> MultiGraph:
    """Planarity-preserving gluing along two maximal faces; the result is re-checked."""
    spec = hp_spec(left, right, left_face, right_face, count, left_start, right_start)
    g = glue(spec)
    if not is_planar(g):
        raise InternalInconsistency("H_p gluing produced a nonplanar graph")
    return g


def face_embedding(host: MultiGraph, cycle_or_edges: Sequence[tuple[int, int]]) -> Embedding:
    """Embedding of the subgraph formed by the given host vertex pairs.

    Pattern vertices are the touched host vertices in ascending order; one
    host instance is taken per listed pair.
    """
    verts = sorted({x for e in cycle_or_edges for x in e})
    index = {v: k for k, v in enumerate(verts)}
    pattern = MultiGraph(len(verts), tuple((index[u], index[v]) for u, v in cycle_or_edges))
    vm = tuple(verts)
    return Embedding(pattern, host, vm, default_edge_map(pattern, host, vm))
