import numpy as np
import pytest

from holotree import (
    DuplicateIdError,
    NotUnicyclicError,
    UnknownEdgeError,
    UnknownEndpointError,
    build_graph,
    circuit_of_unicyclic,
    components,
    euler_characteristic,
    full_subcomplex,
    spanning_subcomplex,
    subdivide_edge,
)
from holotree.graphs import Subcomplex


def triangle():
    return build_graph(
        ["v0", "v1", "v2"],
        [("e0", "v0", "v1"), ("e1", "v1", "v2"), ("e2", "v0", "v2")],
    )


def test_build_graph_preserves_declaration_order():
    g = triangle()
    assert g.vertices == ("v0", "v1", "v2")
    assert tuple(e.id for e in g.edges) == ("e0", "e1", "e2")
    assert g.endpoints("e2") == ("v0", "v2")
    assert not g.edge("e0").is_loop


def test_loops_and_parallel_edges_are_allowed():
    g = build_graph(["u", "v"], [("a", "u", "v"), ("b", "u", "v"), ("l", "u", "u")])
    assert g.edge("l").is_loop
    assert g.endpoints("a") == g.endpoints("b")


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateIdError):
        build_graph(["v", "v"], [])
    with pytest.raises(DuplicateIdError):
        build_graph(["u", "v"], [("a", "u", "v"), ("a", "v", "u")])


def test_unknown_endpoint_rejected():
    with pytest.raises(UnknownEndpointError):
        build_graph(["u"], [("a", "u", "w")])


def test_unknown_lookups_raise():
    g = triangle()
    with pytest.raises(UnknownEdgeError):
        g.edge("nope")
    with pytest.raises(UnknownEndpointError):
        g.vertex_index("nope")
    assert g.has_edge("e0") and not g.has_edge("zz")
    assert g.has_vertex("v1") and not g.has_vertex("zz")


def test_subcomplex_closure_is_enforced():
    g = triangle()
    with pytest.raises(ValueError):
        Subcomplex(g, ("v0",), ("e0",))  # e0 needs v1 too


def test_subcomplex_normalisation_and_equality():
    g = triangle()
    s1 = Subcomplex(g, ("v1", "v0"), ("e0",))
    s2 = Subcomplex(g, ("v0", "v1", "v1"), ("e0", "e0"))
    assert s1 == s2
    assert hash(s1) == hash(s2)
    assert s1.vertices == ("v0", "v1")


def test_components_ordering_and_counts():
    g = build_graph(
        ["a", "b", "c", "d"],
        [("e0", "a", "b"), ("e1", "c", "d")],
    )
    comps = components(full_subcomplex(g))
    assert len(comps) == 2
    assert comps[0].vertices == ("a", "b")
    assert comps[1].vertices == ("c", "d")
    # vertex-only subcomplex: one component per vertex
    bare = spanning_subcomplex(g, ())
    assert len(components(bare)) == 4


def test_euler_characteristic():
    g = triangle()
    assert euler_characteristic(full_subcomplex(g)) == 0
    assert euler_characteristic(Subcomplex(g, ("v0", "v1"), ("e0",))) == 1


def test_circuit_canonical_orientation_on_triangle():
    g = triangle()
    c = circuit_of_unicyclic(full_subcomplex(g))
    assert c.edges == (("e0", 1), ("e1", 1), ("e2", -1))
    assert c.edge_ids() == ("e0", "e1", "e2")
    assert len(c) == 3


def test_circuit_reversal_flips_order_and_signs():
    g = triangle()
    c = circuit_of_unicyclic(full_subcomplex(g))
    rev = c.reversed()
    assert rev.edges == (("e2", 1), ("e1", -1), ("e0", -1))
    assert rev.reversed() == c


def test_circuit_of_parallel_pair_and_loop():
    g = build_graph(["u", "v"], [("a", "u", "v"), ("b", "u", "v")])
    c = circuit_of_unicyclic(full_subcomplex(g))
    assert c.edges == (("a", 1), ("b", -1))

    g2 = build_graph(["v"], [("l", "v", "v")])
    c2 = circuit_of_unicyclic(full_subcomplex(g2))
    assert c2.edges == (("l", 1),)


def test_circuit_found_behind_a_tail():
    # unicyclic with a pendant path: the circuit ignores the tree part
    g = build_graph(
        ["v0", "v1", "v2"],
        [("t", "v2", "v1"), ("l", "v1", "v1"), ("s", "v2", "v0")],
    )
    c = circuit_of_unicyclic(full_subcomplex(g))
    assert c.edges == (("l", 1),)


def test_circuit_rejects_trees_and_disconnected_inputs():
    g = build_graph(["u", "v"], [("a", "u", "v")])
    with pytest.raises(NotUnicyclicError):
        circuit_of_unicyclic(full_subcomplex(g))  # chi = 1

    g2 = build_graph(
        ["u", "v"],
        [("l1", "u", "u"), ("l2", "v", "v")],
    )
    with pytest.raises(NotUnicyclicError):
        circuit_of_unicyclic(full_subcomplex(g2))  # chi = 0 but two components


def test_figure_eight_is_not_unicyclic():
    g = build_graph(["v"], [("l1", "v", "v"), ("l2", "v", "v")])
    with pytest.raises(NotUnicyclicError):
        circuit_of_unicyclic(full_subcomplex(g))


def test_subdivide_edge_counts_and_positions():
    g = triangle()
    g2, rec = subdivide_edge(g, "e1")
    assert len(g2.vertices) == len(g.vertices) + 1
    assert len(g2.edges) == len(g.edges) + 1
    assert rec.old_graph is g and rec.new_graph is g2
    assert rec.edge == "e1"
    assert rec.midpoint == "e1__mid"
    assert rec.new_edges == ("e1__0", "e1__1")
    # first half keeps the slot, second half appended
    assert tuple(e.id for e in g2.edges) == ("e0", "e1__0", "e2", "e1__1")
    assert g2.endpoints("e1__0") == ("v1", "e1__mid")
    assert g2.endpoints("e1__1") == ("e1__mid", "v2")
    # component count preserved
    assert len(components(full_subcomplex(g2))) == 1
    # the original graph is untouched
    assert not g.has_vertex("e1__mid")


def test_subdivide_loop():
    g = build_graph(["v"], [("l", "v", "v")])
    g2, rec = subdivide_edge(g, "l")
    assert g2.endpoints("l__0") == ("v", "l__mid")
    assert g2.endpoints("l__1") == ("l__mid", "v")
    assert not g2.edge("l__0").is_loop


def test_subdivide_fresh_names_avoid_collisions():
    g = build_graph(
        ["u", "v", "a__mid"],
        [("a", "u", "v"), ("a__0", "u", "a__mid")],
    )
    g2, rec = subdivide_edge(g, "a")
    assert rec.midpoint == "a__mid_"
    assert rec.new_edges[0] == "a__0_"
    assert g2.has_edge("a__0")  # the preexisting edge is untouched


def test_subdivision_is_repeatable():
    g = build_graph(["v"], [("l", "v", "v")])
    rng = np.random.default_rng(5)
    for _ in range(3):
        pick = g.edges[int(rng.integers(0, len(g.edges)))].id
        g, rec = subdivide_edge(g, pick)
    assert len(g.vertices) == 4
    assert len(g.edges) == 4
    assert len(components(full_subcomplex(g))) == 1
