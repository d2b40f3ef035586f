import numpy as np
import pytest

from holotree import (
    AssumptionViolatedError,
    ConditioningWarning,
    ResistanceMap,
    UnknownEdgeError,
    attach_phases,
    boundary_operator,
    build_graph,
    edge_basis,
    enumerate_forests,
    exchange,
    forest_record,
    h0_trivial,
    is_tree_combinatorial,
    is_tree_homological,
    kernel_basis,
    modified_ip,
    standard_ip,
    tbar_chain,
    tbar_operator,
    unit_chain,
)

from conftest import random_triple


def test_two_loop_census(two_loops):
    forests = two_loops.forests
    assert [T.edges for T in forests] == [("b1",), ("b2",)]
    assert forests[0].rho_hat == pytest.approx(2.0)
    assert forests[1].rho_hat == pytest.approx(4.0)
    assert forests[0].weight == pytest.approx(2.0)
    assert forests[1].weight == pytest.approx(2.0)
    comp = forests[0].components[0]
    assert comp.vertices == ("v",)
    assert comp.edges == ("b1",)
    assert comp.circuit.edges == (("b1", 1),)
    assert comp.holonomy == pytest.approx(1j)


def test_theta_census(theta):
    forests = theta.forests
    assert [T.edges for T in forests] == [("a", "b"), ("a", "c"), ("b", "c")]
    for T in forests:
        assert T.rho_hat == pytest.approx(3.0)
        assert T.weight == pytest.approx(3.0)


def test_census_is_lexicographic():
    rng = np.random.default_rng(31)
    t = random_triple(rng)
    got = [T.edges for T in t.forests]
    assert got == sorted(got)


def test_enumerate_defaults_to_unit_resistance(theta):
    forests = enumerate_forests(theta.graph, theta.bundle)
    assert all(T.weight == pytest.approx(T.rho_hat) for T in forests)


def test_enumerate_requires_vanishing_h0():
    g = build_graph(["v"], [("b", "v", "v")])
    with pytest.raises(AssumptionViolatedError):
        enumerate_forests(g, attach_phases(g, {"b": 0.0}))


def test_enumeration_nonempty_whenever_h0_vanishes():
    rng = np.random.default_rng(32)
    for _ in range(5):
        t = random_triple(rng)
        if h0_trivial(t.graph, t.bundle):
            assert t.forests


def test_high_threshold_empties_the_census_with_warning(theta):
    with pytest.warns(ConditioningWarning, match="excluded"):
        forests = enumerate_forests(theta.graph, theta.bundle, eps_hol=2.0)
    assert forests == []


def test_tree_predicates_on_examples(two_loops, theta):
    g, L = two_loops.graph, two_loops.bundle
    assert is_tree_combinatorial(g, L, ("b1",))
    assert is_tree_homological(g, L, ("b1",))
    gt, Lt = theta.graph, theta.bundle
    assert is_tree_combinatorial(gt, Lt, ("a", "b"))
    assert not is_tree_combinatorial(gt, Lt, ("a",))  # wrong size
    assert not is_tree_homological(gt, Lt, ("a",))
    assert not is_tree_combinatorial(gt, Lt, ("a", "b", "c"))


def test_trivial_holonomy_fails_combinatorial_predicate():
    g = build_graph(["v"], [("b1", "v", "v"), ("b2", "v", "v")])
    L = attach_phases(g, {"b1": 0.0, "b2": np.pi})
    assert not is_tree_combinatorial(g, L, ("b1",))
    assert is_tree_combinatorial(g, L, ("b2",))


def test_homological_predicate_needs_the_standing_assumption():
    g = build_graph(["v"], [("b", "v", "v")])
    with pytest.raises(AssumptionViolatedError):
        is_tree_homological(g, attach_phases(g, {"b": 0.0}), ("b",))


def test_forest_record_validation(theta):
    g, L, R = theta.graph, theta.bundle, theta.resist
    T = forest_record(g, L, R, ("b", "a"))  # order does not matter
    assert T.edges == ("a", "b")
    assert T.rho_hat == pytest.approx(3.0)
    with pytest.raises(ValueError):
        forest_record(g, L, R, ("a",))
    with pytest.raises(UnknownEdgeError):
        forest_record(g, L, R, ("a", "zz"))
    L0 = attach_phases(g, {"a": 0.0, "b": 0.0, "c": 2.0})
    with pytest.raises(ValueError, match="holonomy"):
        forest_record(g, L0, R, ("a", "b"))


def test_tbar_chain_two_loops(two_loops):
    g, L = two_loops.graph, two_loops.bundle
    T = two_loops.forests[0]
    c = tbar_chain(g, L, T, "b2")
    assert np.allclose(c.coeffs, [-(1.0 + 1.0j), 1.0])
    zero = tbar_chain(g, L, T, "b1")
    assert zero.norm() == 0.0


def test_tbar_chain_theta_coefficient(theta):
    g, L = theta.graph, theta.bundle
    T = theta.forests[0]  # ('a', 'b')
    c = tbar_chain(g, L, T, "c")
    rho_b, rho_c = L.phase("b"), L.phase("c")
    assert c.coeff("c") == pytest.approx(1.0)
    assert c.coeff("b") == pytest.approx(-(rho_c - 1.0) / (rho_b - 1.0))
    D = boundary_operator(g, L)
    assert D(c).norm() <= 1e-12


def test_tbar_images_are_cycles_and_span_h1():
    rng = np.random.default_rng(33)
    t = random_triple(rng)
    g, L = t.graph, t.bundle
    D = boundary_operator(g, L)
    dim_h1 = len(g.edges) - len(g.vertices)
    T = t.forests[0]
    M = tbar_operator(g, L, T).matrix
    assert np.linalg.matrix_rank(M) == dim_h1
    smax = float(np.linalg.svd(D.matrix, compute_uv=False)[0])
    assert np.abs(D.matrix @ M).max(initial=0.0) <= 1e-10 * smax * max(1.0, np.abs(M).max())


def test_tbar_fixes_cycles():
    rng = np.random.default_rng(34)
    t = random_triple(rng)
    g, L = t.graph, t.bundle
    T = t.forests[0]
    M = tbar_operator(g, L, T).matrix
    for z in kernel_basis(boundary_operator(g, L)):
        assert np.linalg.norm(M @ z.coeffs - z.coeffs) <= 1e-10 * z.norm()


def test_tbar_operator_is_cached(two_loops):
    g, L = two_loops.graph, two_loops.bundle
    T = two_loops.forests[0]
    assert tbar_operator(g, L, T) is tbar_operator(g, L, T)


def test_tbar_operator_rejects_foreign_records(two_loops, theta):
    T = two_loops.forests[0]
    with pytest.raises(ValueError):
        tbar_operator(theta.graph, theta.bundle, T)


def test_exchange_on_theta(theta):
    T = theta.forests[0]  # ('a', 'b')
    U = exchange(T, "c", "b")
    assert U is not None
    assert U.edges == ("a", "c")
    with pytest.raises(ValueError):
        exchange(T, "a", "b")  # already in the forest
    with pytest.raises(ValueError):
        exchange(T, "c", "c")  # not a tree edge


def test_exchange_consistency_two_loops(two_loops):
    g, L = two_loops.graph, two_loops.bundle
    T = two_loops.forests[0]
    alpha = tbar_chain(g, L, T, "b2").coeff("b1")
    U = exchange(T, "b2", "b1")
    assert U is not None
    assert U.edges == ("b2",)
    assert U.rho_hat == pytest.approx(T.rho_hat * abs(alpha) ** 2)


def test_exchange_returns_none_for_zero_overlap():
    g = build_graph(
        ["x", "y"],
        [("t", "x", "y"), ("p", "x", "x"), ("q", "y", "y"), ("s", "y", "y")],
    )
    L = attach_phases(g, {"t": 0.4, "p": np.pi / 2, "q": np.pi, "s": 2.0})
    R = ResistanceMap.unit(g)
    T = forest_record(g, L, R, ("p", "q"))
    # s attaches entirely inside q's component, so T_bar(s) avoids p
    assert tbar_chain(g, L, T, "s").coeff("p") == 0.0
    assert exchange(T, "s", "p") is None


def test_exchange_identity_two_loops(two_loops):
    # rho_hat_T <T_bar(b2), b1> = rho_hat_U <b2, U_bar(b1)>, both sides -2-2i
    g, L = two_loops.graph, two_loops.bundle
    basis = edge_basis(g)
    T, U = two_loops.forests
    lhs = T.rho_hat * standard_ip(tbar_chain(g, L, T, "b2"), unit_chain(1, basis, "b1"))
    rhs = U.rho_hat * standard_ip(unit_chain(1, basis, "b2"), tbar_chain(g, L, U, "b1"))
    assert lhs == pytest.approx(-2.0 - 2.0j)
    assert rhs == pytest.approx(lhs)


def _pair_sums(t, b_i, b_j):
    g, L, R = t.graph, t.bundle, t.resist
    basis = edge_basis(g)
    ei = unit_chain(1, basis, b_i)
    ej = unit_chain(1, basis, b_j)
    left = sum(
        T.weight * modified_ip(tbar_chain(g, L, T, b_i), ej, R)
        for T in t.forests
        if b_i not in T.edges and b_j in T.edges
    )
    right = sum(
        U.weight * modified_ip(ei, tbar_chain(g, L, U, b_j), R)
        for U in t.forests
        if b_j not in U.edges and b_i in U.edges
    )
    return complex(left), complex(right)


def test_weighted_pair_sums_agree(theta, two_loops):
    # same identity the acceptance suite checks in matrix form, but with the
    # two opposing tree families summed explicitly
    weighted = type(theta)(
        "theta_weighted",
        theta.graph,
        theta.bundle,
        ResistanceMap({"a": 1.0, "b": 2.0, "c": 5.0}),
    )
    for t in (weighted, two_loops):
        ids = [e.id for e in t.graph.edges]
        for b_i in ids:
            for b_j in ids:
                if b_i == b_j:
                    continue
                left, right = _pair_sums(t, b_i, b_j)
                assert left == pytest.approx(right, abs=1e-12)
