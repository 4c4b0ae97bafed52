"""Restrictions on gluing operations that keep a characteristic property.

A guard is a decidable predicate on a :class:`GluingSpec`. Some guards
(``Hs``, ``Hpv_min_sep`` and ``Hp_face`` without face witnesses) inspect the
would-be result; it is computed on demand when not supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from .canon import DEFAULT_CAP
from .embedding import Embedding, is_induced
from .errors import GuardParameterError, GuardRejected
from .gluing import GluingSpec, glue
from .graph import MultiGraph
from .properties import hamiltonian_adjacent_pairs, two_coloring

GUARD_TAGS = (
    "Ht",
    "Hb",
    "Hg",
    "H_empty_euler",
    "simple_preserving",
    "Hs",
    "Hpv_min_sep",
    "Hp_face",
)

# composite restrictions expressed as conjunctions of primitive guards
COMPOSITES = {
    "Hp": ("Hp_face",),
    "Hps": ("Hp_face", "simple_preserving", "Hs"),
    "Hpv": ("Hp_face", "simple_preserving", "Hpv_min_sep"),
    "Hpve": ("Hp_face", "simple_preserving", "Hpv_min_sep"),
    "Hp_empty": ("Hp_face", "H_empty_euler"),
    "Hg_simple": ("Hg", "simple_preserving"),
    "Hp_simple": ("Hp_face", "simple_preserving"),
}

CHAIN_CAP = 10


@dataclass(frozen=True)
class GuardKind:
    tag: str
    params: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.tag not in GUARD_TAGS:
            raise GuardParameterError(f"unknown guard {self.tag!r}")

    def __str__(self) -> str:
        return self.tag


def parse_guards(names: Iterable[str]) -> list[GuardKind]:
    """Expand guard names, including composite names such as ``Hps``."""
    out: list[GuardKind] = []
    for name in names:
        for tag in COMPOSITES.get(name, (name,)):
            g = GuardKind(tag)
            if g not in out:
                out.append(g)
    return out


def check_guard(kind: GuardKind | str, spec: GluingSpec, result: MultiGraph | None = None) -> bool:
    if isinstance(kind, str):
        kind = GuardKind(kind)
    tag = kind.tag
    if tag == "Ht":
        return guard_ht(spec)
    if tag == "Hb":
        return guard_hb(spec)
    if tag == "Hg":
        return guard_hg(spec, kind.params.get("left_cycle"), kind.params.get("right_cycle"))
    if tag == "H_empty_euler":
        return spec.pattern.n >= 1 and spec.pattern.m == 0
    if tag == "simple_preserving":
        return guard_simple_preserving(spec)
    if result is None:
        result = glue(spec)
    if tag == "Hs":
        return separates(result, _pattern_vertices_in_result(spec))
    if tag == "Hpv_min_sep":
        if not (
            is_induced(spec.pattern, spec.left, spec.left_emb.vertex_map)
            and is_induced(spec.pattern, spec.right, spec.right_emb.vertex_map)
        ):
            return False
        return is_minimal_separator(result, _pattern_vertices_in_result(spec))
    # Hp_face
    return guard_hp_face(spec, kind.params.get("left_face"), kind.params.get("right_face"), result)


def first_rejection(
    guards: Sequence[GuardKind], spec: GluingSpec, result: MultiGraph | None = None
) -> GuardKind | None:
    """The first guard that rejects ``spec``, or ``None`` when all pass."""
    for g in guards:
        if not check_guard(g, spec, result):
            return g
    return None


def enforce(guards: Sequence[GuardKind], spec: GluingSpec, step: int = 0) -> None:
    bad = first_rejection(guards, spec)
    if bad is not None:
        raise GuardRejected(step, bad.tag, "")


# --- chordal ---------------------------------------------------------------


def guard_ht(spec: GluingSpec) -> bool:
    """The pattern is a simple complete graph (``O0`` and ``O1`` included)."""
    p = spec.pattern
    return p.is_simple() and p.m == p.n * (p.n - 1) // 2


# --- simplicity ------------------------------------------------------------


def guard_simple_preserving(spec: GluingSpec) -> bool:
    """Every pattern pair without an edge is non-adjacent in some operand."""
    p = spec.pattern
    lm, rm = spec.left.mult, spec.right.mult
    lv, rv = spec.left_emb.vertex_map, spec.right_emb.vertex_map
    pa = p.mult
    for i, j in combinations(range(p.n), 2):
        if pa[i][j] == 0 and lm[lv[i]][lv[j]] and rm[rv[i]][rv[j]]:
            return False
    return True


# --- Euler -----------------------------------------------------------------


def euler_degree_condition(spec: GluingSpec) -> bool:
    """Non-empty pattern whose vertices all have even degree in the pattern.

    For Euler operands this holds exactly when the glued graph is Euler.
    """
    p = spec.pattern
    return p.n >= 1 and all(d % 2 == 0 for d in p.degrees())


# --- Hamiltonian -----------------------------------------------------------


def _cycle_pairs(cycle: Sequence[int]) -> set[frozenset[int]]:
    k = len(cycle)
    if k < 2:
        return set()
    return {frozenset((cycle[i], cycle[(i + 1) % k])) for i in range(k)}


def is_hamiltonian_cycle(host: MultiGraph, cycle: Sequence[int]) -> bool:
    if sorted(cycle) != list(range(host.n)) or not cycle:
        return False
    a = host.mult
    if len(cycle) == 1:
        return a[cycle[0]][cycle[0]] >= 1
    if len(cycle) == 2:
        return a[cycle[0]][cycle[1]] >= 2
    return all(a[cycle[i]][cycle[(i + 1) % len(cycle)]] for i in range(len(cycle)))


def guard_hg(
    spec: GluingSpec,
    left_cycle: Sequence[int] | None = None,
    right_cycle: Sequence[int] | None = None,
) -> bool:
    """Either the pattern spans an operand, or it has two vertices that are
    consecutive on a Hamiltonian cycle of each operand.

    Witness cycles may be supplied; otherwise every Hamiltonian cycle is
    tried (brute force, ``n <= 12``).
    """
    p = spec.pattern
    if p.n in (spec.left.n, spec.right.n):
        return True
    if p.n != 2:
        return False
    sides = (
        (spec.left, spec.left_emb, left_cycle),
        (spec.right, spec.right_emb, right_cycle),
    )
    for host, emb, cyc in sides:
        pair = frozenset(emb.vertex_map)
        if cyc is not None:
            if not is_hamiltonian_cycle(host, cyc):
                raise GuardParameterError("witness is not a Hamiltonian cycle of its operand")
            ok = pair in _cycle_pairs(cyc)
        elif host.n <= DEFAULT_CAP:
            ok = pair in hamiltonian_adjacent_pairs(host)
        else:
            raise GuardParameterError("Hg needs Hamiltonian cycle witnesses for n > 12")
        if not ok:
            return False
    return True


# --- bipartite ---------------------------------------------------------------


def _without_image(spec_side: Embedding) -> MultiGraph:
    host = spec_side.host
    drop = set(spec_side.edge_map)
    return MultiGraph(host.n, tuple(e for i, e in enumerate(host.edges) if i not in drop))


def _side_constraints(emb: Embedding) -> list[tuple[int, int, int]] | None:
    """Parity constraints ``(i, j, parity)`` between pattern vertices that are
    joined by chains in the operand minus the identified edges.

    ``None`` when a component holding pattern vertices is not bipartite, so
    two chains of different parity exist.
    """
    host = emb.host
    drop = set(emb.edge_map)
    adj: list[list[int]] = [[] for _ in range(host.n)]
    for i, (u, v) in enumerate(host.edges):
        if i not in drop:
            adj[u].append(v)
            adj[v].append(u)
    vm = emb.vertex_map
    comp_of = [-1] * host.n
    color = [0] * host.n
    for s in vm:
        if comp_of[s] >= 0:
            continue
        comp_of[s] = s
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp_of[w] < 0:
                    comp_of[w] = s
                    color[w] = color[u] ^ 1
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    out = []
    for i, j in combinations(range(len(vm)), 2):
        if comp_of[vm[i]] == comp_of[vm[j]]:
            out.append((i, j, color[vm[i]] ^ color[vm[j]]))
    return out


def guard_hb(spec: GluingSpec) -> bool:
    """Chain parities between pattern vertices are jointly consistent.

    Constraints from both operands (chains avoiding identified edges) and
    from the pattern edges themselves are combined transitively, so a cycle
    that alternates between the operands through several pattern vertices is
    also caught.
    """
    p = spec.pattern
    if p.loop_count():
        return False
    parent = list(range(p.n))
    parity = [0] * p.n

    def find(x: int) -> tuple[int, int]:
        acc = 0
        while parent[x] != x:
            acc ^= parity[x]
            x = parent[x]
        return x, acc

    def link(a: int, b: int, d: int) -> bool:
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            return pa ^ pb == d
        parent[ra] = rb
        parity[ra] = pa ^ pb ^ d
        return True

    cons: list[tuple[int, int, int]] = [(a, b, 1) for a, b in p.edges]
    for emb in (spec.left_emb, spec.right_emb):
        side = _side_constraints(emb)
        if side is None:
            return False
        cons.extend(side)
    return all(link(a, b, d) for a, b, d in cons)


def chain_parities(g: MultiGraph, a: int, b: int) -> set[int]:
    """Parities of the lengths of simple chains from ``a`` to ``b`` (``n <= 10``)."""
    if g.n > CHAIN_CAP:
        raise GuardParameterError(f"chain enumeration capped at n={CHAIN_CAP}")
    found: set[int] = set()
    seen = [False] * g.n
    seen[a] = True

    def rec(u: int, length: int) -> None:
        if len(found) == 2:
            return
        for w in g.neighbors[u]:
            if w == b:
                found.add((length + 1) % 2)
            elif not seen[w]:
                seen[w] = True
                rec(w, length + 1)
                seen[w] = False

    rec(a, 0)
    return found


def guard_hb_pairwise(spec: GluingSpec) -> bool:
    """Pairwise chain-parity check, one pair of pattern vertices at a time.

    Weaker than :func:`guard_hb`: with four or more pattern vertices an odd
    cycle can pass through several pairs, each of which looks consistent.
    """
    l_rest, r_rest = _without_image(spec.left_emb), _without_image(spec.right_emb)
    lv, rv = spec.left_emb.vertex_map, spec.right_emb.vertex_map
    for i, j in combinations(range(spec.pattern.n), 2):
        lp = chain_parities(l_rest, lv[i], lv[j])
        rp = chain_parities(r_rest, rv[i], rv[j])
        if lp and rp and len(lp | rp) > 1:
            return False
    return True


# --- separation and planarity ------------------------------------------------


def _pattern_vertices_in_result(spec: GluingSpec) -> list[int]:
    # left indices survive gluing unchanged
    return list(spec.left_emb.vertex_map)


def separates(g: MultiGraph, vertices: Iterable[int]) -> bool:
    """Removing ``vertices`` leaves at least two components."""
    s = set(vertices)
    rest = [v for v in range(g.n) if v not in s]
    return len(g.induced(rest).components) >= 2


def is_minimal_separator(g: MultiGraph, vertices: Sequence[int]) -> bool:
    s = list(vertices)
    if not separates(g, s):
        return False
    return not any(separates(g, sub) for k in range(len(s)) for sub in combinations(s, k))


def guard_hp_face(
    spec: GluingSpec,
    left_face: Embedding | None,
    right_face: Embedding | None,
    result: MultiGraph | None = None,
) -> bool:
    """Face-based planarity restriction.

    With face witnesses: both faces are maximal face subgraphs, the
    identified subgraphs lie inside them, and the vertex pairing respects a
    db-search order of both faces. Without witnesses the restriction is
    judged on the result, which must be planar.
    """
    from .planar import face_order, is_face_subgraph, is_planar

    if left_face is None or right_face is None:
        if not (is_planar(spec.left) and is_planar(spec.right)):
            return False
        return is_planar(result if result is not None else glue(spec))
    for emb, face in ((spec.left_emb, left_face), (spec.right_emb, right_face)):
        if face.host != emb.host or not is_face_subgraph(face):
            return False
        if not set(emb.vertex_map) <= set(face.vertex_map):
            return False
        if not set(emb.edge_map) <= set(face.edge_map):
            return False
    lv, rv = spec.left_emb.vertex_map, spec.right_emb.vertex_map
    for s1 in sorted(left_face.vertex_map):
        p1 = {v: k for k, v in enumerate(face_order(left_face, s1))}
        for s2 in sorted(right_face.vertex_map):
            p2 = {v: k for k, v in enumerate(face_order(right_face, s2))}
            a = sorted(range(len(lv)), key=lambda i: p1[lv[i]])
            b = sorted(range(len(rv)), key=lambda i: p2[rv[i]])
            if a == b:
                return True
    return False


def reject(step: int, guard: GuardKind, detail: str = "") -> GuardRejected:
    return GuardRejected(step, guard.tag, detail)
