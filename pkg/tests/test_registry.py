import pytest

from gluegraph import MultiGraph, canonical_form, get_descriptor, make_named, membership, special_basis
from gluegraph.errors import GlueGraphError, UnknownClassError
from gluegraph.graph import named
from gluegraph.registry import (
    BASES,
    SPECIAL,
    TYPES_16,
    TYPES_22,
    Basis,
    diagram_diff,
    diagram_edges,
    known_diffs,
    to_dot,
)

from oracles import brute_isomorphic


def codes_of(basis, n=8, m=30):
    return {canonical_form(g) for g in basis.instantiate(n, m)}


def tags(*names):
    return {canonical_form(named(t)) for t in names}


def test_forest_descriptor():
    d = get_descriptor(13)
    assert codes_of(d.elemental_basis) == tags("O1", "K2")
    assert codes_of(d.operational_basis) == tags("O0", "O1")
    assert d.predicate.name == "forest"


def test_edgeless_descriptor():
    d = get_descriptor(36)
    assert codes_of(d.elemental_basis) == tags("O1")
    assert codes_of(d.operational_basis) == tags("O0")
    assert d.predicate(make_named("O", 3)) and not d.predicate(make_named("K", 2))


def test_null_class():
    d = get_descriptor(40)
    assert codes_of(d.elemental_basis) == codes_of(d.operational_basis) == tags("O0")
    assert d.is_trivial
    assert membership(40, MultiGraph(0))
    assert not any(membership(i, MultiGraph(0)) for i in range(1, 40))


def test_lookup():
    assert get_descriptor("13").id == 13
    assert get_descriptor("chordal_Ht").id == "chordal_Ht"
    for bad in (0, 41, "nope"):
        with pytest.raises(UnknownClassError):
            get_descriptor(bad)


def test_membership_examples():
    tree_with_loop = MultiGraph(3, ((0, 1), (1, 2), (2, 2)))
    assert membership(8, tree_with_loop)
    assert not membership(8, make_named("C", 3))
    assert membership(28, MultiGraph(4, ((0, 1), (2, 3))))
    assert not membership(12, MultiGraph(3, ((0, 1),)))


def test_special_bases():
    ch = special_basis("chordal_Ht")
    assert codes_of(ch.elemental_basis, 5) == tags("O1", "K2", "K3", "K4", "K5")
    assert codes_of(ch.operational_basis, 5) == tags("O1", "K2", "K3", "K4", "K5")
    hps = special_basis("planar_simple_Hps")
    assert codes_of(hps.elemental_basis) == tags("O1", "K2", "K3", "K4")
    assert codes_of(hps.operational_basis) == tags("O0", "O1", "O2", "O3", "O4", "O5")
    hg = special_basis("hamiltonian_Hg")
    assert codes_of(hg.elemental_basis, 4) == tags("C1", "C2", "C3", "C4")
    assert len(hg.alternatives) == 2
    paths = hg.alternatives[0]
    assert codes_of(paths, 4) == tags("O1", "K2", "L3", "L4")
    with pytest.raises(UnknownClassError):
        special_basis("nope")


def test_rule_basis_has_no_finite_listing():
    with pytest.raises(GlueGraphError):
        Basis(rule="K", start=1).finite_graphs()


def test_basis_instantiate_dedupes():
    b = Basis((named("K2"), named("L2")), rule="K", start=1)
    assert len(b.instantiate(3)) == 3  # K1, K2, K3


def test_maximal_planar_rule_matches_oracle():
    from itertools import combinations

    import networkx as nx

    from gluegraph import enumerate_all_graphs, holds

    # maximal planar simple graphs without a separating triangle, n <= 7
    want = set()
    for g in enumerate_all_graphs(7, 15, simple_only=True):
        if g.n < 3 or not holds("maximal_planar", g):
            continue
        h = nx.Graph(list(g.edges))
        sep = False
        for t in combinations(range(g.n), 3):
            if all(h.has_edge(a, b) for a, b in combinations(t, 2)):
                rest = h.copy()
                rest.remove_nodes_from(t)
                if rest.number_of_nodes() and not nx.is_connected(rest):
                    sep = True
        if not sep:
            want.add(canonical_form(g))
    got = codes_of(special_basis("maximal_planar_Hp").elemental_basis, 7)
    assert got == want
    assert sorted(g.n for g in special_basis("maximal_planar_Hp").elemental_basis.instantiate(7)) == [3, 4, 6, 7]


# --- pattern sets ---------------------------------------------------------------


def test_sixteen_types_within_twenty_two():
    c16 = [canonical_form(g) for _, g in TYPES_16]
    c22 = [canonical_form(g) for _, g in TYPES_22]
    assert len(set(c16)) == 16 and len(set(c22)) == 22
    assert set(c16) < set(c22)


def test_type_labels_denote_their_graphs():
    # each label is either a named graph or a disjoint union written (AoB)O0
    for label, g in TYPES_22:
        parts = label.replace("(", " ").replace(")O0", " ").replace("o", " ").split()
        pieces = [named(p) for p in parts]
        expect = pieces[0]
        for p in pieces[1:]:
            expect = MultiGraph(expect.n + p.n, expect.edges + tuple((u + expect.n, v + expect.n) for u, v in p.edges))
        assert brute_isomorphic(g, expect), label
    assert all(g.is_simple() for _, g in TYPES_22)


# --- diagram -----------------------------------------------------------------------


def test_listed_edges():
    listed = {(e.upper, e.lower) for e in diagram_edges("listed")}
    assert (39, 40) in listed
    # the transcription keeps the figure's link from the trivial class {K2}
    assert (37, 40) in listed
    assert len(listed) == 87  # 89 links, two of them repeated


def test_listed_edge_endpoints():
    for e in diagram_edges("listed"):
        assert 1 <= e.lower <= 40 and 1 <= e.upper <= 40 and e.lower != e.upper


def test_derived_edges_match_set_oracle():
    # one basis equal, the other a subset missing exactly one element
    def key(b):
        return frozenset(canonical_form(g) for g in b.graphs)

    want = set()
    for i, (be_i, bo_i) in BASES.items():
        for j, (be_j, bo_j) in BASES.items():
            a, b, c, d = key(be_i), key(bo_i), key(be_j), key(bo_j)
            if (a == c and d < b and len(b - d) == 1) or (b == d and c < a and len(a - c) == 1):
                want.add((i, j))
    assert {(e.upper, e.lower) for e in diagram_edges("derived")} == want


def test_diagram_diff_is_clean_and_annotated():
    d = diagram_diff()
    assert d.clean
    assert all("UNANNOTATED" not in line for line in d.lines())
    assert len(known_diffs()) == len(d.only_listed) + len(d.only_derived)


def test_bad_diagram_source():
    with pytest.raises(ValueError):
        diagram_edges("other")


def test_dot_uses_class_ids_only():
    dot = to_dot(diagram_edges("listed"))
    assert dot.startswith("graph inclusions {\n") and dot.endswith("}\n")
    assert "  39 -- 40;" in dot
    assert "label" not in dot
