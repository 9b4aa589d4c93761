import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import isomorphic_structures, mono_triangle_free_coloring, nae_colorable
from ordpat.girth import girth
from ordpat.patterns import colored_occurs, ordered_occurs, solve_coloring, solve_ordering
from ordpat.reductions import (
    ColoredStructure,
    GirthTooSmall,
    Hypergraph3,
    build_gadgets,
    cliques,
    family_size,
    forbidden_family,
    graph_to_structure,
    graph_to_temporal_instance,
    minimal_clique,
    nae_to_triangles,
    ordering_family_parts,
    order_to_ranks,
    patterns_to_temporal,
    ranks_to_order,
    reproducing_orders,
    star,
    structure_to_graph,
    triangles_to_nae,
    unstar,
)
from ordpat.relcore import (
    ColoredGraph,
    Graph,
    OrderedGraph,
    RelStructure,
    Signature,
    Verdict,
    disjoint_union,
    is_temporal_witness,
    temporal_hom_exists,
)

PAL = ("r", "b")
MONO = [ColoredGraph(Graph.complete(3), (c,) * 3, PAL) for c in PAL]
DIAMOND = OrderedGraph(Graph(4, frozenset({(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)})))
R2 = Signature((("R", 2),))


def graphs(max_n=7):
    return st.integers(0, max_n).flatmap(
        lambda n: st.builds(
            lambda e: Graph(n, frozenset(e)),
            st.sets(st.sampled_from(list(itertools.combinations(range(n), 2)))) if n >= 2 else st.just(set()),
        )
    )


# --- triangles and NAE --------------------------------------------------------


def test_triangles_to_nae_examples():
    assert len(triangles_to_nae(Graph.complete(4)).hyperedges) == 4
    assert len(triangles_to_nae(Graph.complete(3)).hyperedges) == 1
    assert len(triangles_to_nae(Graph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))).hyperedges) == 0


def test_nae_to_triangles_examples():
    assert nae_to_triangles(Hypergraph3(3, frozenset({(0, 1, 2)}))) == Graph.complete(3)
    two = nae_to_triangles(Hypergraph3(6, frozenset({(0, 1, 2), (3, 4, 5)})))
    assert two == disjoint_union(Graph.complete(3), Graph.complete(3))
    with pytest.raises(GirthTooSmall):
        nae_to_triangles(Hypergraph3(4, frozenset({(0, 1, 2), (0, 1, 3)})))


@settings(max_examples=150, deadline=None)
@given(graphs(7))
def test_triangles_nae_equivalence(g):
    h = triangles_to_nae(g)
    coloring = solve_coloring(g, PAL, MONO) is not None
    assert coloring == nae_colorable(h.size, h.hyperedges)
    assert coloring == mono_triangle_free_coloring(g.size, g.sorted_edges())


hypergraphs = st.integers(3, 7).flatmap(
    lambda n: st.builds(
        lambda es: Hypergraph3(n, frozenset(es)),
        st.sets(st.sampled_from(list(itertools.combinations(range(n), 3))), max_size=5),
    )
)


@settings(max_examples=200, deadline=None)
@given(hypergraphs)
def test_nae_triangles_reverse(h):
    gi = girth(h.as_structure())
    if gi is not None and gi < 4:
        with pytest.raises(GirthTooSmall):
            nae_to_triangles(h)
        return
    g = nae_to_triangles(h)
    assert set(g.triangles()) == set(h.hyperedges)
    assert nae_colorable(h.size, h.hyperedges) == (solve_coloring(g, PAL, MONO) is not None)


# --- ordering to temporal ------------------------------------------------------


def test_diamond_template():
    t = patterns_to_temporal([DIAMOND])
    (name,) = t.signature.names
    # the four tie-free orders listed for the example, as rank tuples
    assert set(reproducing_orders(DIAMOND)) == {(1, 2, 3, 4), (3, 2, 1, 4), (1, 4, 3, 2), (3, 4, 1, 2)}
    assert len(t.allowed[name]) == 24 - 4
    assert t.repeat_free()


def test_small_templates():
    edge = OrderedGraph(Graph.complete(2))
    assert patterns_to_temporal([edge]).allowed["F0"] == frozenset()
    p3 = patterns_to_temporal([OrderedGraph(Graph.path(3))])
    assert p3.allowed["F0"] == {(1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2)}


def test_temporal_instance_examples():
    assert graph_to_temporal_instance(DIAMOND.graph, [DIAMOND]).tuple_count == 4
    assert graph_to_temporal_instance(Graph(5), [DIAMOND]).tuple_count == 0
    assert graph_to_temporal_instance(Graph.complete(3), [OrderedGraph(Graph.path(3))]).tuple_count == 6


@settings(max_examples=100, deadline=None)
@given(graphs(6), st.sampled_from([[DIAMOND], [OrderedGraph(Graph.path(3))], [OrderedGraph(Graph.path(3)), DIAMOND]]))
def test_diamond_equivalence(g, fam):
    order = solve_ordering(g, fam)
    s = graph_to_temporal_instance(g, fam)
    t = patterns_to_temporal(fam)
    w = temporal_hom_exists(s, t)
    assert (order is None) == (w is None)
    if order is not None:
        assert is_temporal_witness(s, t, order_to_ranks(order))
    if w is not None:
        from ordpat.relcore import linearize_witness

        lw = linearize_witness(s, t, w)
        assert lw is not None
        o = ranks_to_order(lw)
        assert not any(ordered_occurs(OrderedGraph(g, o), f) for f in fam)


# --- gadgets -----------------------------------------------------------------


def test_gadget_sizes():
    spec = build_gadgets(R2)
    assert spec.K == 6 and spec.gadgets["R"].graph.size == 16
    spec3 = build_gadgets(Signature((("T", 3),)))
    assert spec3.K == 7 and spec3.gadgets["T"].graph.size == 25
    both = build_gadgets(Signature((("R", 2), ("T", 3))))
    for gad in both.gadgets.values():
        k = both.K
        assert gad.graph.size == k + len(gad.roots) * (k - 1)
        assert all(gad.graph.degree(r) == 1 for r in gad.roots)


def test_structure_to_graph_examples():
    enc = structure_to_graph(RelStructure(R2, 2, {"R": [(0, 1)]}))
    assert enc.graph.size == 16
    empty = structure_to_graph(RelStructure(R2, 3))
    assert empty.graph.size == 3 and not empty.graph.edges
    shared = structure_to_graph(RelStructure(R2, 3, {"R": [(0, 1), (1, 2)]}))
    a, b = (set(vm.values()) for _, _, vm in shared.copies)
    assert a & b == {1}


def test_forbidden_family_shapes():
    pats = [ColoredStructure(RelStructure(R2, 2, {"R": [(0, 1)]}), ("r", "r"))]
    fam = forbidden_family(R2, PAL, pats)
    gad = build_gadgets(R2).gadgets["R"].graph
    extra = len(gad.complement_pairs())
    one, two, three = fam[:extra], fam[extra : extra + 14], fam[extra + 14 :]
    assert family_size(one) == extra * 2**16
    assert {f.size for f in two} == {17}
    assert len(three) == 1 and three[0].size == 16 and three[0].wildcards == 14


def test_graph_to_structure_examples():
    gad = build_gadgets(R2).gadgets["R"]
    g = gad.graph
    inner = [v for v in gad.non_roots if v >= build_gadgets(R2).K]
    u, v = next((a, b) for a, b in itertools.combinations(inner, 2) if not g.has_edge(a, b))
    assert graph_to_structure(Graph(g.size, g.edges | {(u, v)}), R2) is Verdict.NO
    pendant = Graph(g.size + 1, g.edges | {(inner[0], g.size)})
    assert graph_to_structure(pendant, R2) is Verdict.NO
    out = graph_to_structure(Graph(4), R2)
    assert out.structure.size == 4 and out.structure.tuple_count == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gadget_round_trip(n):
    pairs = [(a, b) for a in range(n) for b in range(n)]
    for k in range(3):
        for ts in itertools.combinations(pairs, k):
            t = RelStructure(R2, n, {"R": ts})
            back = graph_to_structure(structure_to_graph(t).graph, R2)
            assert isomorphic_structures(back.structure, t)


# --- coloring to ordering -----------------------------------------------------


def test_minimal_clique():
    assert minimal_clique(PAL, MONO) == 5
    with pytest.raises(ValueError):
        minimal_clique(PAL, [ColoredGraph(Graph.complete(3), ("r", "b", "b"), PAL)], cap=4)


def test_ordering_family_shapes():
    parts = ordering_family_parts(PAL, MONO, 5)
    assert all(f.size == 6 for f in parts[1] + parts[2])
    for f in parts[2]:
        # the isolated vertex is neither first nor last
        iso = next(v for v in range(6) if f.graph.degree(v) == 0)
        assert 0 < iso < 5
    (three,) = parts[3]
    assert three.size == 10 and len(cliques(three.graph, 5)) == 2
    assert all(f.size == 8 for f in parts[4])


def test_star_unstar():
    h = Graph.path(5)
    assert star(h, 2, 4).size == 9
    assert star(h, 1, 4) == h
    assert unstar(star(h, 2, 4), 2, 4) == h
    bad = star(h, 2, 4)
    assert unstar(Graph(bad.size, bad.edges | {(0, 5)}), 2, 4) is Verdict.NO
    assert unstar(disjoint_union(h, Graph.complete(4), Graph.complete(4)), 2, 4) is Verdict.NO
    assert unstar(h, 3, 4) is Verdict.YES


@settings(max_examples=40, deadline=None)
@given(graphs(5))
def test_unstar_inverts_star(h):
    if not cliques(h, 5):
        assert unstar(star(h, 2, 5), 2, 5) == h


def test_coloring_ordering_small():
    fam = [f for part in ordering_family_parts(PAL, MONO, 5).values() for f in part]
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(0, 5)
        h = Graph(n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6))
        assert (solve_coloring(h, PAL, MONO) is not None) == (solve_ordering(star(h, 2, 5), fam) is not None)
