"""Catalog of the 40 basis-precomplete closed classes, the special bases of
the property-preserving classes, and the inclusion diagram."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Callable, Sequence

from .canon import CanonicalCode, canonical_form, code_hex
from .errors import GlueGraphError, UnknownClassError
from .generate import enumerate_all_graphs
from .gluing import union
from .graph import MultiGraph, make_named, named
from .properties import (
    has_perfect_matching,
    is_acyclic_ignoring_loops,
    is_chordal,
    is_euler,
    is_forest,
    is_hamiltonian,
    two_coloring,
)


# --- bases -------------------------------------------------------------------


@dataclass(frozen=True)
class Basis:
    """A finite list of graphs, optionally extended by a countable rule.

    Rules: ``K``, ``C``, ``L``, ``O`` (that family from index ``start``),
    ``path_unions`` (disjoint unions of two paths with at least 2 vertices
    each) and ``maximal_planar_no_sep_triangle``.
    """

    graphs: tuple[MultiGraph, ...] = ()
    rule: str | None = None
    start: int = 0

    def is_finite(self) -> bool:
        return self.rule is None

    def finite_graphs(self) -> list[MultiGraph]:
        if self.rule is not None:
            raise GlueGraphError(f"basis rule {self.rule!r} has no vertex-count bound")
        return list(self.graphs)

    def instantiate(self, max_n: int, max_m: int | None = None) -> list[MultiGraph]:
        """All basis graphs with ``n <= max_n`` (and ``m <= max_m``), deduplicated."""
        out = [g for g in self.graphs if g.n <= max_n]
        if self.rule in ("K", "C", "L", "O"):
            out += [make_named(self.rule, k) for k in range(self.start, max_n + 1)]
        elif self.rule == "path_unions":
            for a in range(2, max_n + 1):
                for b in range(a, max_n + 1 - a):
                    out.append(union(make_named("L", a), make_named("L", b)))
        elif self.rule == "maximal_planar_no_sep_triangle":
            out += _maximal_planar_no_sep_triangle(max_n)
        if max_m is not None:
            out = [g for g in out if g.m <= max_m]
        seen: set[CanonicalCode] = set()
        uniq = []
        for g in out:
            c = canonical_form(g)
            if c not in seen:
                seen.add(c)
                uniq.append(g)
        return uniq

    def codes(self, max_n: int, max_m: int | None = None) -> frozenset[CanonicalCode]:
        return frozenset(canonical_form(g) for g in self.instantiate(max_n, max_m))

    def describe(self) -> str:
        parts = [_label(g) for g in self.graphs]
        if self.rule in ("K", "C", "L", "O"):
            parts.append(f"{self.rule}{self.start}..")
        elif self.rule:
            parts.append(self.rule)
        return "{" + ",".join(parts) + "}"


def _label(g: MultiGraph) -> str:
    for fam in "OKCL":
        for k in range(0 if fam == "O" else 1, g.n + 1):
            if g.n == k and make_named(fam, k) == g:
                return f"{fam}{k}"
    return code_hex(canonical_form(g))


def B(*tags: str, rule: str | None = None, start: int = 0) -> Basis:
    return Basis(tuple(named(t) for t in tags), rule, start)


def _maximal_planar_no_sep_triangle(max_n: int) -> list[MultiGraph]:
    from .planar import is_maximal_planar

    out = []
    for n in range(3, max_n + 1):
        for g in enumerate_all_graphs(n, 3 * n - 6 if n >= 3 else 3, simple_only=True):
            if g.n != n or g.m != 3 * n - 6 or not is_maximal_planar(g):
                continue
            if not any(_separating_triangle(g, t) for t in combinations(range(n), 3)):
                out.append(g)
    return out


def _separating_triangle(g: MultiGraph, t: tuple[int, int, int]) -> bool:
    a = g.mult
    x, y, z = t
    if not (a[x][y] and a[y][z] and a[x][z]):
        return False
    rest = [v for v in range(g.n) if v not in t]
    return len(g.induced(rest).components) >= 2


# --- predicates --------------------------------------------------------------


@dataclass(frozen=True)
class Pred:
    name: str
    fn: Callable[[MultiGraph], bool] = field(compare=False)

    def __call__(self, g: MultiGraph) -> bool:
        return self.fn(g)

    def __and__(self, other: "Pred") -> "Pred":
        return Pred(f"{self.name}&{other.name}", lambda g: self(g) and other(g))


def _components_in(*tags: str) -> Callable[[MultiGraph], bool]:
    codes = frozenset(canonical_form(named(t)) for t in tags)
    return lambda g: all(canonical_form(g.induced(c)) in codes for c in g.components)


def _loopless(g: MultiGraph) -> bool:
    return g.loop_count() == 0


def _no_isolated(g: MultiGraph) -> bool:
    return all(g.degree(v) > 0 for v in range(g.n))


def _edge_free(g: MultiGraph) -> bool:
    return all(u == v for u, v in g.edges)


def _single_loops_even(g: MultiGraph) -> bool:
    return _edge_free(g) and all(g.loops(v) >= 1 for v in range(g.n)) and (g.m - g.n) % 2 == 0


def footnote_parity(g: MultiGraph) -> bool:
    """Loops in components with two or more vertices have the same parity as
    the sum of ``loops - 1`` over single-vertex components."""
    big = 0
    small = 0
    for comp in g.components:
        if len(comp) >= 2:
            big += sum(g.loops(v) for v in comp)
        else:
            small += g.loops(comp[0]) - 1
    return big % 2 == small % 2


def _p(name: str, fn: Callable[[MultiGraph], bool]) -> Pred:
    return Pred(name, fn)


_CONN = lambda g: g.is_connected()  # noqa: E731

PREDICATES: dict[int, Pred] = {
    1: _p("all_graphs", lambda g: True),
    2: _p("connected", _CONN),
    3: _p("no_isolated_vertex", _no_isolated),
    4: _p("no_cycles_n>=2", is_acyclic_ignoring_loops),
    5: _p("not(N=1&M>=2)", lambda g: not (g.n == 1 and g.m >= 2)),
    6: _p("connected_multigraph", lambda g: g.is_connected() and _loopless(g)),
    7: _p("connected&M>=1", lambda g: g.is_connected() and g.m >= 1),
    8: _p("connected&no_cycles_n>=2", lambda g: g.is_connected() and is_acyclic_ignoring_loops(g)),
    9: _p("C1|connected_multigraph_N<=2", lambda g: g.is_connected() and (g == named("C1") or (_loopless(g) and g.n <= 2))),
    10: _p("no_isolated&no_cycles_n>=2", lambda g: _no_isolated(g) and is_acyclic_ignoring_loops(g)),
    11: _p("perfect_matching&loop_parity", lambda g: has_perfect_matching(g) and footnote_parity(g)),
    12: _p("multigraph_no_isolated", lambda g: _loopless(g) and _no_isolated(g)),
    13: _p("forest", is_forest),
    14: _p("components_single_vertex", _edge_free),
    15: _p("components_single_vertex&(N=1=>M<=1)", lambda g: _edge_free(g) and not (g.n == 1 and g.m > 1)),
    16: _p("components_in{O1,C1,K2}", _components_in("O1", "C1", "K2")),
    17: _p("multigraph", _loopless),
    18: _p("connected_multigraph_N>=2", lambda g: g.is_connected() and _loopless(g) and g.n >= 2),
    19: _p("connected&M>=1&no_cycles_n>=2", lambda g: g.is_connected() and g.m >= 1 and is_acyclic_ignoring_loops(g)),
    20: _p("C1|connected_multigraph_N=2", lambda g: g.is_connected() and (g == named("C1") or (_loopless(g) and g.n == 2))),
    21: _p("N=1", lambda g: g.n == 1),
    22: _p("tree", lambda g: g.is_connected() and is_forest(g)),
    23: _p("connected_multigraph_N<=2", lambda g: g.is_connected() and _loopless(g) and g.n <= 2),
    24: _p("components_in{C1,K2}", _components_in("C1", "K2")),
    25: _p("forest_no_isolated", lambda g: is_forest(g) and _no_isolated(g)),
    26: _p("components_single_vertex&m>=1&M-N_even", _single_loops_even),
    27: _p("components_single_vertex&m>=1", lambda g: _edge_free(g) and all(g.loops(v) for v in range(g.n))),
    28: _p("multigraph_perfect_matching", lambda g: _loopless(g) and has_perfect_matching(g)),
    29: _p("components_in{O1,C1}", _components_in("O1", "C1")),
    30: _p("components_in{O1,K2}", _components_in("O1", "K2")),
    31: _p("tree_N>=2", lambda g: g.is_connected() and is_forest(g) and g.n >= 2),
    32: _p("connected_multigraph_N=2", lambda g: g.is_connected() and _loopless(g) and g.n == 2),
    33: _p("N=1&M>=1", lambda g: g.n == 1 and g.m >= 1),
    34: _p("components_in{C1}", _components_in("C1")),
    35: _p("components_in{K2}", _components_in("K2")),
    36: _p("edgeless", lambda g: g.m == 0),
    37: _p("is_K2", lambda g: g == named("K2")),
    38: _p("is_C1", lambda g: g == named("C1")),
    39: _p("is_O1", lambda g: g == named("O1")),
    40: _p("is_O0", lambda g: g.n == 0),
}

BASES: dict[int, tuple[Basis, Basis]] = {
    1: (B("O1", "C1", "K2"), B("O0", "O1", "O2")),
    2: (B("O1", "C1", "K2"), B("O1", "O2")),
    3: (B("C1", "K2"), B("O0", "O1", "O2")),
    4: (B("O1", "C1", "K2"), B("O0", "O1")),
    5: (B("O1", "C1", "K2"), B("O0", "O2")),
    6: (B("O1", "K2"), B("O1", "O2")),
    7: (B("C1", "K2"), B("O1", "O2")),
    8: (B("O1", "C1", "K2"), B("O1")),
    9: (B("O1", "C1", "K2"), B("O2")),
    10: (B("C1", "K2"), B("O0", "O1")),
    11: (B("C1", "K2"), B("O0", "O2")),
    12: (B("K2"), B("O0", "O1", "O2")),
    13: (B("O1", "K2"), B("O0", "O1")),
    14: (B("O1", "C1"), B("O0", "O1")),
    15: (B("O1", "C1"), B("O0", "O2")),
    16: (B("O1", "C1", "K2"), B("O0")),
    17: (B("O1", "K2"), B("O0", "O2")),
    18: (B("K2"), B("O1", "O2")),
    19: (B("C1", "K2"), B("O1")),
    20: (B("C1", "K2"), B("O2")),
    21: (B("O1", "C1"), B("O1")),
    22: (B("O1", "K2"), B("O1")),
    23: (B("O1", "K2"), B("O2")),
    24: (B("C1", "K2"), B("O0")),
    25: (B("K2"), B("O0", "O1")),
    26: (B("C1"), B("O0", "O2")),
    27: (B("C1"), B("O0", "O1")),
    28: (B("K2"), B("O0", "O2")),
    29: (B("O1", "C1"), B("O0")),
    30: (B("O1", "K2"), B("O0")),
    31: (B("K2"), B("O1")),
    32: (B("K2"), B("O2")),
    33: (B("C1"), B("O1")),
    34: (B("C1"), B("O0")),
    35: (B("K2"), B("O0")),
    36: (B("O1"), B("O0")),
    37: (B("K2"), B("K2")),
    38: (B("C1"), B("C1")),
    39: (B("O1"), B("O1")),
    40: (B("O0"), B("O0")),
}

TRIVIAL_CLASSES = (37, 38, 39, 40)


@dataclass(frozen=True)
class ClassDescriptor:
    id: int | str
    elemental_basis: Basis
    operational_basis: Basis
    guards: tuple[str, ...]
    predicate: Pred
    alternatives: tuple[Basis, ...] = ()
    induced: bool = False

    @property
    def is_trivial(self) -> bool:
        return self.id in TRIVIAL_CLASSES

    def membership(self, g: MultiGraph) -> bool:
        # the null graph only belongs to the class generated by itself
        if g.n == 0:
            return self.id == 40
        return self.predicate(g)

    def catalog_line(self) -> str:
        return (
            f"class {self.id} be {self.elemental_basis.describe()} "
            f"bo {self.operational_basis.describe()} pred {self.predicate.name}"
        )


def get_descriptor(cid) -> ClassDescriptor:
    """Descriptor for a numbered class (1..40) or a special basis name."""
    if isinstance(cid, str) and cid.isdigit():
        cid = int(cid)
    if isinstance(cid, int) and cid in BASES:
        be, bo = BASES[cid]
        return ClassDescriptor(cid, be, bo, (), PREDICATES[cid])
    if isinstance(cid, str) and cid in SPECIAL:
        return special_basis(cid)
    raise UnknownClassError(cid)


def all_descriptors() -> list[ClassDescriptor]:
    return [get_descriptor(i) for i in range(1, 41)]


def membership(cid, g: MultiGraph) -> bool:
    return get_descriptor(cid).membership(g)


# --- special bases ---------------------------------------------------------


def _planar(g: MultiGraph) -> bool:
    from .planar import is_planar

    return is_planar(g)


def _maximal_planar(g: MultiGraph) -> bool:
    from .planar import is_maximal_planar

    return g.n >= 3 and is_maximal_planar(g)


def _union_of(*parts: str) -> MultiGraph:
    return union(*(named(p) for p in parts))


def _types16() -> list[tuple[str, MultiGraph]]:
    return [
        ("O0", named("O0")),
        ("O1", named("O1")),
        ("O2", named("O2")),
        ("K2", named("K2")),
        ("O3", named("O3")),
        ("(O1oK2)O0", _union_of("O1", "K2")),
        ("L3", named("L3")),
        ("K3", named("K3")),
        ("O4", named("O4")),
        ("(O2oK2)O0", _union_of("O2", "K2")),
        ("(K2oK2)O0", _union_of("K2", "K2")),
        ("(O1oL3)O0", _union_of("O1", "L3")),
        ("L4", named("L4")),
        ("C4", named("C4")),
        ("L5", named("L5")),
        ("C5", named("C5")),
    ]


def _types22() -> list[tuple[str, MultiGraph]]:
    base = [t for t in _types16() if t[0] not in ("L5", "C5")]
    return base + [
        ("O5", named("O5")),
        ("(O3oK2)O0", _union_of("O3", "K2")),
        ("((K2oK2)O0oO1)O0", _union_of("K2", "K2", "O1")),
        ("(O2oL3)O0", _union_of("O2", "L3")),
        ("(O1oL4)O0", _union_of("O1", "L4")),
        ("(K2oL3)O0", _union_of("K2", "L3")),
        ("L5", named("L5")),
        ("C5", named("C5")),
    ]


TYPES_16 = _types16()
TYPES_22 = _types22()


def _sd(name, be, bo, guards, pred, alternatives=(), induced=False) -> ClassDescriptor:
    return ClassDescriptor(name, be, bo, guards, pred, alternatives, induced)


def _simple_planar(g: MultiGraph) -> bool:
    return g.is_simple() and _planar(g)


def _special() -> dict[str, ClassDescriptor]:
    k1 = B("O1", "K2", "K3", "K4")
    return {
        "chordal_Ht": _sd(
            "chordal_Ht", Basis(rule="K", start=1), Basis(rule="K", start=1), ("Ht",),
            _p("connected_simple_chordal", lambda g: g.is_connected() and g.is_simple() and is_chordal(g)),
        ),
        "planar_Hp": _sd("planar_Hp", B("O1", "C1", "K2"), B("O0", "O1", "O2"), ("Hp",), _p("planar", _planar)),
        "planar_simple_Hp": _sd(
            "planar_simple_Hp", B("O1", "K2"), B("O0", "O2"), ("Hp_simple",), _p("simple_planar", _simple_planar)
        ),
        "planar_simple_Hps": _sd(
            "planar_simple_Hps", k1, B("O0", "O1", "O2", "O3", "O4", "O5"), ("Hps",), _p("simple_planar", _simple_planar)
        ),
        "planar_simple_Hpv": _sd(
            "planar_simple_Hpv", k1, Basis(tuple(g for _, g in TYPES_16)), ("Hpv",),
            _p("simple_planar", _simple_planar), induced=True,
        ),
        "planar_simple_Hpve": _sd(
            "planar_simple_Hpve", k1, Basis(tuple(g for _, g in TYPES_22)), ("Hpve",),
            _p("simple_planar", _simple_planar), induced=True,
        ),
        "chordal_planar_Hp": _sd(
            "chordal_planar_Hp", k1, B("O0", "O1", "K2", "K3"), ("Hp", "Ht"),
            _p("simple_planar_chordal", lambda g: _simple_planar(g) and is_chordal(g)), induced=True,
        ),
        "maximal_planar_Hp": _sd(
            "maximal_planar_Hp", Basis(rule="maximal_planar_no_sep_triangle"), B("K3"), ("Hp",),
            _p("maximal_planar", _maximal_planar), induced=True,
        ),
        "euler_Hempty": _sd(
            "euler_Hempty", Basis(rule="C", start=1), Basis(rule="O", start=1), ("H_empty_euler",),
            _p("euler&M>=1", lambda g: g.m >= 1 and is_euler(g)),
        ),
        "euler_planar_Hp": _sd(
            "euler_planar_Hp", Basis(rule="C", start=1), B("O1", "O2", "O3"), ("Hp_empty",),
            _p("euler_planar&M>=1", lambda g: g.m >= 1 and is_euler(g) and _planar(g)),
            alternatives=(B("O1", "O2", "O4"), B("O1", "O2", "O5")),
        ),
        "hamiltonian_Hg": _sd(
            "hamiltonian_Hg", Basis(rule="C", start=1), Basis((named("O1"), named("K2")), rule="C", start=4),
            ("Hg_simple",), _p("hamiltonian", is_hamiltonian),
            alternatives=(Basis(rule="L", start=1), Basis((named("O1"), named("K2")), rule="path_unions")),
        ),
        "bipartite_Hb": _sd(
            "bipartite_Hb", B("O1", "K2"), B("O0", "O2"), ("Hb",),
            _p("bipartite", lambda g: two_coloring(g) is not None),
        ),
    }


SPECIAL = _special()


def special_basis(name: str) -> ClassDescriptor:
    try:
        return SPECIAL[name]
    except KeyError:
        raise UnknownClassError(name) from None


# --- inclusion diagram -------------------------------------------------------


@dataclass(frozen=True, order=True)
class DiagramEdge:
    upper: int
    lower: int

    def __str__(self) -> str:
        return f"{self.upper},{self.lower}"


def _data(name: str) -> str:
    return resources.files("gluegraph").joinpath("data").joinpath(name).read_text()


@lru_cache(maxsize=None)
def _diagram_data() -> tuple[dict[int, float], tuple[tuple[int, int], ...]]:
    levels: dict[int, float] = {}
    links: list[tuple[int, int]] = []
    for line in _data("inclusion_edges.txt").splitlines():
        tok = line.split()
        if not tok or tok[0].startswith("#"):
            continue
        if tok[0] == "node":
            levels[int(tok[1])] = float(tok[3])
        elif tok[0] == "link":
            links.append((int(tok[1]), int(tok[2])))
    return levels, tuple(links)


def _basis_key(b: Basis) -> frozenset[CanonicalCode]:
    return frozenset(canonical_form(g) for g in b.finite_graphs())


def _precomplete(sup: ClassDescriptor, sub: ClassDescriptor) -> bool:
    se, so = _basis_key(sup.elemental_basis), _basis_key(sup.operational_basis)
    be, bo = _basis_key(sub.elemental_basis), _basis_key(sub.operational_basis)
    if se == be and bo < so and len(so - bo) == 1:
        return True
    return so == bo and be < se and len(se - be) == 1


def diagram_edges(source: str = "listed") -> list[DiagramEdge]:
    """Inclusion-diagram edges, upper class first, sorted and deduplicated.

    ``listed`` reads the transcription; ``derived`` recomputes every pair
    where one basis is equal and the other loses exactly one element.
    """
    if source == "listed":
        levels, links = _diagram_data()
        out = {
            DiagramEdge(a, b) if levels[a] > levels[b] else DiagramEdge(b, a) for a, b in links
        }
        return sorted(out)
    if source == "derived":
        ds = all_descriptors()
        return sorted(
            DiagramEdge(p.id, q.id) for p in ds for q in ds if p.id != q.id and _precomplete(p, q)
        )
    raise ValueError(f"unknown diagram source {source!r}")


@dataclass(frozen=True)
class KnownDiff:
    edge: DiagramEdge
    side: str  # "listed" or "derived": where the edge appears
    note: str


def known_diffs() -> list[KnownDiff]:
    out = []
    for line in _data("inclusion_known_diffs.txt").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, note = line.partition("#")
        side, pair = head.split()
        a, b = (int(x) for x in pair.split(","))
        out.append(KnownDiff(DiagramEdge(a, b), side, note.strip()))
    return out


@dataclass
class DiagramDiff:
    only_listed: list[DiagramEdge]
    only_derived: list[DiagramEdge]
    unannotated: list[tuple[str, DiagramEdge]]
    stale: list[KnownDiff]

    @property
    def clean(self) -> bool:
        return not self.unannotated and not self.stale

    def lines(self) -> list[str]:
        notes = {(k.side, k.edge): k.note for k in known_diffs()}
        out = []
        for side, edges in (("listed", self.only_listed), ("derived", self.only_derived)):
            for e in edges:
                note = notes.get((side, e))
                out.append(f"{side}-only {e}" + (f"  # {note}" if note else "  # UNANNOTATED"))
        for k in self.stale:
            out.append(f"stale {k.side} {k.edge}  # {k.note}")
        return out


def diagram_diff() -> DiagramDiff:
    listed = set(diagram_edges("listed"))
    derived = set(diagram_edges("derived"))
    kd = known_diffs()
    annotated = {(k.side, k.edge) for k in kd}
    only_l = sorted(listed - derived)
    only_d = sorted(derived - listed)
    actual = {("listed", e) for e in only_l} | {("derived", e) for e in only_d}
    return DiagramDiff(
        only_l,
        only_d,
        sorted(actual - annotated),
        [k for k in kd if (k.side, k.edge) not in actual],
    )


def to_dot(edges: Sequence[DiagramEdge]) -> str:
    lines = ["graph inclusions {"]
    for i in range(1, 41):
        lines.append(f"  {i};")
    for e in edges:
        lines.append(f"  {e.upper} -- {e.lower};")
    lines.append("}")
    return "\n".join(lines) + "\n"
