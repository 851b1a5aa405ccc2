import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from linkadmit.analysis import (
    beta_degree_extremal,
    beta_degree_lp,
    beta_mixed_extremal,
    beta_mixed_formula,
    beta_mixed_lp,
    beta_row_extremal,
    beta_row_lp,
    beta_row_strengthened_extremal,
    imperfection_extremal,
    imperfection_lower_bound,
    imperfection_ratio,
    induced_star_number,
    mixed_formula_applies,
    neighborhood_components,
    report,
    strengthened_row_factor,
)
from linkadmit.errors import CapacityError, PreconditionError
from linkadmit.graphs import (
    ConflictGraph,
    DemandVector,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)
from linkadmit.oracle import minimum_duration, t_clique
from linkadmit.primary import line_conflict_graph
from linkadmit.graphs import NetworkGraph

from conftest import (
    all_independent_sets,
    brute_sigma,
    conflict_graphs,
    scipy_functional_sup,
    to_nx,
)

F = Fraction


def test_sigma_examples():
    for d in (1, 3, 9):
        assert induced_star_number(star_graph(d)) == d
    assert induced_star_number(complete_graph(5)) == 1
    assert induced_star_number(cycle_graph(5)) == 2
    assert induced_star_number(empty_graph(3)) == 0


def test_beta_row_examples():
    for d in (3, 5, 9):
        assert beta_row_lp(star_graph(d)) == d
    assert beta_row_lp(complete_graph(4)) == 1
    assert beta_row_lp(cycle_graph(5)) == 2
    assert beta_row_lp(empty_graph(3)) == 1


def test_beta_row_witness_attains_value():
    g = star_graph(6)
    ext = beta_row_extremal(g)
    i = ext.vertex
    lhs = ext.witness[i] + sum(ext.witness[j] for j in g.neighbors(i))
    assert lhs == ext.value == 6
    assert minimum_duration(g, ext.witness).t_star == 1


def test_beta_degree_examples():
    assert beta_degree_lp(star_graph(9)) == 10
    assert beta_degree_lp(complete_graph(4)) == 4
    assert beta_degree_lp(empty_graph(2)) == 1
    ext = beta_degree_extremal(cycle_graph(6))
    assert ext.value == 3 and ext.witness[ext.vertex] == 1


def test_mixed_formula_examples():
    for d in (1, 2, 3, 9):
        assert beta_mixed_formula(star_graph(d)) == F(1 + d, 2)
        assert beta_mixed_lp(star_graph(d)) == F(1 + d, 2)
    assert beta_mixed_formula(complete_graph(4)) == 1
    assert beta_mixed_lp(complete_graph(4)) == 1
    assert beta_mixed_formula(cycle_graph(6)) == F(3, 2) == beta_mixed_lp(cycle_graph(6))
    assert beta_mixed_formula(empty_graph(3)) == 1


def test_mixed_formula_precondition():
    # the hub of a wheel sees a 5-cycle, which is not a union of cliques
    wheel = ConflictGraph(range(6), [(0, i) for i in range(1, 6)] +
                          [(i, i % 5 + 1) for i in range(1, 6)])
    ok, witness = mixed_formula_applies(wheel)
    assert not ok and witness == 0
    with pytest.raises(PreconditionError) as info:
        beta_mixed_formula(wheel)
    assert info.value.witness == 0


def test_mixed_witness_is_in_polytope():
    g = star_graph(5)
    ext = beta_mixed_extremal(g)
    i = ext.vertex
    row = ext.witness[i] + sum(ext.witness[j] for j in g.neighbors(i))
    deg = ext.witness[i] * (g.degree(i) + 1)
    assert min(row, deg) == ext.value == 3
    assert minimum_duration(g, ext.witness).t_star <= 1


def test_neighborhood_components():
    assert neighborhood_components(star_graph(3))[0] == 3
    assert neighborhood_components(cycle_graph(6))[0] == 2
    assert neighborhood_components(complete_graph(4))[0] == 1


def test_strengthened_factor_examples():
    assert strengthened_row_factor(star_graph(9)) == (8, "sigma-1")
    assert strengthened_row_factor(complete_graph(4)) == (1, "sigma")
    assert strengthened_row_factor(path_graph(2))[0] == 1
    # designating the star center restores the full row at that link
    assert beta_row_strengthened_extremal(star_graph(9), designated=0).value == 9


def test_imperfection_examples():
    assert imperfection_ratio(cycle_graph(5)) == F(5, 4)
    assert imperfection_ratio(cycle_graph(7)) == F(7, 6)
    assert imperfection_ratio(cycle_graph(6)) == 1
    assert imperfection_ratio(complete_graph(5)) == 1
    assert imperfection_ratio(cycle_graph(7).complement()) == F(7, 6)
    grid = NetworkGraph.from_pairs([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 2)])
    assert imperfection_ratio(line_conflict_graph(grid)) == 1


def test_imperfection_witness_attains_value():
    g = cycle_graph(5)
    ext = imperfection_extremal(g)
    assert minimum_duration(g, ext.witness).t_star / t_clique(g, ext.witness) == ext.value


def test_report_examples():
    r = report(star_graph(9))
    assert (r.sigma, r.delta_plus_one, r.beta_row, r.beta_mixed_exact) == (9, 10, 9, 5)
    assert r.imperfection_ratio == 1 and r.beta_mixed_bounds == (5, 9)
    r = report(complete_graph(4))
    assert (r.sigma, r.beta_row, r.beta_mixed_exact, r.delta_plus_one) == (1, 1, 1, 4)
    r = report(empty_graph(3))
    assert (r.sigma, r.delta_plus_one, r.beta_row) == (0, 1, 1)
    r = report(cycle_graph(5), witnesses=True)
    assert r.imperfection_ratio == F(5, 4)
    assert set(r.witnesses) >= {"beta_row", "beta_degree", "beta_mixed", "imperfection_ratio"}
    assert "induced star number" in r.table()


def test_cap():
    with pytest.raises(CapacityError):
        report(cycle_graph(8), cap=6)


@settings(max_examples=80, deadline=None)
@given(conflict_graphs(max_n=8))
def test_sigma_and_beta_row_independent_routes(g):
    sigma = induced_star_number(g)
    assert sigma == brute_sigma(g)
    beta = beta_row_lp(g)
    if g.edge_count:
        assert beta == sigma
    rows = [{v: 1 for v in g.neighbors(i) | {i}} for i in g.vertices]
    want = max((scipy_functional_sup(g, [r]) for r in rows), default=1.0)
    assert abs(float(beta) - max(want, 1.0)) < 1e-7


@settings(max_examples=60, deadline=None)
@given(conflict_graphs(max_n=8))
def test_beta_degree_is_delta_plus_one(g):
    delta = max((d for _, d in to_nx(g).degree()), default=0)
    assert beta_degree_lp(g) == delta + 1


@settings(max_examples=60, deadline=None)
@given(conflict_graphs(min_n=1, max_n=7))
def test_beta_mixed_against_float_lp_and_bounds(g):
    beta = beta_mixed_lp(g)
    best = 0.0
    for i in g.vertices:
        row = {v: 1 for v in g.neighbors(i) | {i}}
        deg = {i: g.degree(i) + 1}
        best = max(best, scipy_functional_sup(g, [row, deg]))
    assert abs(float(beta) - max(best, 1.0)) < 1e-7
    sigma = induced_star_number(g)
    if sigma >= 1:
        assert F(1 + sigma, 2) <= beta <= sigma
    ok, _ = mixed_formula_applies(g)
    if ok:
        assert beta_mixed_formula(g) == beta


@settings(max_examples=60, deadline=None)
@given(conflict_graphs(max_n=7))
def test_strengthened_factor_brute_force(g):
    best = 1
    for s in all_independent_sets(g):
        for i in g.vertices:
            nb = g.neighbors(i)
            val = len(s & (nb | {i}))
            if nb and nb <= s:
                val -= 1
            best = max(best, val)
    value, label = strengthened_row_factor(g)
    assert value == best
    assert label in ("sigma", "sigma-1", "other")


@settings(max_examples=40, deadline=None)
@given(conflict_graphs(max_n=7))
def test_imperfection_dominates_samples(g):
    imp = imperfection_ratio(g)
    assert imp >= 1
    assert imperfection_lower_bound(g, samples=12, seed=3).value <= imp
    if g.edge_count and nx.is_chordal(to_nx(g)):
        assert imp == 1


def test_random_imperfection_is_consistent():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(4, 9)
        g = ConflictGraph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)
                                     if rng.random() < 0.45])
        ext = imperfection_extremal(g, check_samples=24, seed=rng.randint(0, 99))
        tau = ext.witness
        if any(tau.values()):
            assert minimum_duration(g, tau).t_star / t_clique(g, tau) == ext.value
        for _ in range(5):
            tau = DemandVector({v: F(rng.randint(0, 6), 6) for v in g.vertices})
            tc = t_clique(g, tau)
            if tc:
                assert minimum_duration(g, tau).t_star / tc <= ext.value
