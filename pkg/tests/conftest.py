"""Shared helpers: independent brute-force oracles and hypothesis strategies.

The brute-force routines here deliberately avoid the package's bitmask
machinery and its exact simplex, so they can serve as a second route for
cross-checking results.
"""

import itertools
import json
import random
from fractions import Fraction
from importlib import resources

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st
from scipy.optimize import linprog

from linkadmit.graphs import ConflictGraph, DemandVector, NetworkGraph

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# ---------------------------------------------------------------- fixtures

def data_path(name):
    return resources.files("linkadmit") / "data" / name


def load_fixture(name):
    return json.loads(data_path(name).read_text())


@pytest.fixture
def fixture_file():
    return lambda name: str(data_path(name))


# ---------------------------------------------------------------- brute force

def edge_set(g):
    return {frozenset(e) for e in g.edges}


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def all_independent_sets(g, include_empty=False):
    es = edge_set(g)
    vs = list(g.vertices)
    out = []
    for r in range(0 if include_empty else 1, len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            if all(frozenset(p) not in es for p in itertools.combinations(sub, 2)):
                out.append(frozenset(sub))
    return out


def brute_maximal_independent_sets(g):
    ind = all_independent_sets(g)
    return {s for s in ind if not any(s < t for t in ind)}


def brute_alpha(g):
    return max((len(s) for s in all_independent_sets(g)), default=0)


def brute_sigma(g):
    h = to_nx(g)
    best = 0
    for v in h:
        sub = h.subgraph(list(h[v]))
        comp = nx.complement(sub)
        a = max((len(c) for c in nx.find_cliques(comp)), default=0) if len(sub) else 0
        best = max(best, a)
    return best


def scipy_t_star(g, tau):
    """Float LP over *all* independent sets (not only maximal ones)."""
    sets = all_independent_sets(g)
    vs = list(g.vertices)
    if not sets:
        return 0.0
    A = np.array([[1.0 if v in s else 0.0 for s in sets] for v in vs])
    b = np.array([float(tau[v]) for v in vs])
    res = linprog(np.ones(len(sets)), A_ub=-A, b_ub=-b, bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


def scipy_functional_sup(g, rows):
    """max over P_I of min_k (row_k . tau), via LP over independent-set weights."""
    sets = all_independent_sets(g, include_empty=True)
    vs = list(g.vertices)
    m = len(sets)
    # variables: lambda_1..m, z ; maximize z
    c = np.zeros(m + 1)
    c[-1] = -1.0
    A_ub, b_ub = [], []
    for row in rows:
        coeff = [-sum(float(row.get(v, 0)) for v in s) for s in sets]
        A_ub.append(coeff + [1.0])
        b_ub.append(0.0)
    A_eq = [[1.0] * m + [0.0]]
    res = linprog(c, A_ub=np.array(A_ub), b_ub=np.array(b_ub), A_eq=np.array(A_eq), b_eq=[1.0],
                  bounds=[(0, None)] * m + [(None, None)], method="highs")
    assert res.status == 0
    return -res.fun


def brute_t_clique(g, tau):
    return max((sum((tau[v] for v in c), Fraction(0)) for c in nx.find_cliques(to_nx(g))),
               default=Fraction(0))


# ---------------------------------------------------------------- generators

def random_conflict_graph(rng, n, p=None, connected=False):
    p = rng.uniform(0.15, 0.85) if p is None else p
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = ConflictGraph(range(n), edges)
        if not connected or n <= 1 or nx.is_connected(to_nx(g)):
            return g


def random_demands(rng, g, denom=12, zero_prob=0.1):
    return DemandVector({v: Fraction(0) if rng.random() < zero_prob else
                         Fraction(rng.randint(1, denom), denom) for v in g.vertices})


def random_network(rng, max_nodes=10, max_links=18, parallel=False):
    n = rng.randint(2, max_nodes)
    nodes = list(range(n))
    pairs = [(u, v) for u in nodes for v in nodes if u < v]
    rng.shuffle(pairs)
    chosen = pairs[: rng.randint(1, min(max_links, len(pairs)))]
    if parallel and chosen:
        chosen += [rng.choice(chosen) for _ in range(rng.randint(0, 2))]
    return NetworkGraph.from_pairs(chosen, nodes=nodes)


@st.composite
def conflict_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return ConflictGraph(range(n), [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_demands(draw, min_n=1, max_n=8, max_num=10, denom=10):
    g = draw(conflict_graphs(min_n, max_n))
    nums = draw(st.lists(st.integers(0, max_num), min_size=len(g), max_size=len(g)))
    return g, DemandVector({v: Fraction(k, denom) for v, k in zip(g.vertices, nums)})


@st.composite
def networks(draw, max_nodes=6, parallel=True):
    n = draw(st.integers(2, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=9, unique=not parallel))
    return NetworkGraph.from_pairs(chosen, nodes=range(n))


def rng_for(seed):
    return random.Random(seed)
