import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkadmit.errors import DomainError
from linkadmit.graphs import ConflictGraph, DemandVector, NetworkGraph, cycle_graph, path_graph, star_graph
from linkadmit.oracle import minimum_duration, verify_schedule
from linkadmit.primary import line_conflict_graph
from linkadmit.scheduling import to_activation
from linkadmit.simulation import (
    POLICIES,
    MessageModel,
    SimEvent,
    SimTrace,
    metrics,
    random_scenario,
    replay_schedule,
    simulate,
)

from conftest import conflict_graphs

F = Fraction


def star_scenario():
    ev = [SimEvent(i - 1, "arrival", i, F(9, 10)) for i in range(1, 10)]
    return ev + [SimEvent(9, "arrival", 0, F(1, 10))]


def test_isolated_arrival():
    tr = simulate(path_graph(1), [SimEvent(0, "arrival", 0, F(1, 2))], "row", 1)
    (rec,) = tr.records
    assert rec["decision"] == "admitted" and rec["messages_used"] == 0


def test_star_row_vs_mixed():
    row = simulate(star_graph(9), star_scenario(), "row", 1)
    mixed = simulate(star_graph(9), star_scenario(), "mixed", 1)
    assert row.records[-1]["decision"] == "rejected"
    assert {c["key"]: c["lhs"] for c in row.records[-1]["constraints"]}[0] == "41/5"
    assert mixed.records[-1]["decision"] == "admitted"
    assert mixed.records[-1]["intervals"] == [["9/10", "1"]]
    m_row, m_mixed = metrics(row), metrics(mixed)
    assert (m_row["admitted"], m_row["rejected"]) == (9, 1)
    assert (m_mixed["admitted"], m_mixed["rejected"]) == (10, 0)


def test_empty_trace_metrics():
    m = metrics(simulate(path_graph(2), [], "row", 1))
    assert m["admitted"] == m["rejected"] == m["messages"] == 0
    assert m["admitted_demand"] == 0


def test_offline_metrics():
    tr = simulate(star_graph(9), star_scenario(), "row", 1)
    m = metrics(tr, star_graph(9))
    assert m["offline_t_star"] == 1 and m["offline_feasible"]
    assert m["offline_gap"] == F(1, 10)


def test_message_model():
    g = star_graph(3)
    ev = [SimEvent(0, "arrival", 0, F(1, 10)), SimEvent(1, "arrival", 1, F(1, 10))]
    assert [r["messages_used"] for r in simulate(g, ev, "row", 1).records] == [3, 1]
    assert [r["messages_used"] for r in simulate(g, ev, "degree", 1).records] == [1, 1]
    tr = simulate(g, ev, "row", 1, message_model=MessageModel(per_neighbor=2))
    assert [r["messages_used"] for r in tr.records] == [6, 2]
    tri = NetworkGraph.from_pairs([("a", "b"), ("b", "c"), ("a", "c")])
    ev = [SimEvent(0, "arrival", "a-b", F(1, 10))]
    assert simulate(tri, ev, "clique-network", 1).records[0]["messages_used"] == 3
    assert simulate(tri, ev, "shannon-network", 1).records[0]["messages_used"] == 2


def test_departures_free_time():
    g = path_graph(2)
    ev = [SimEvent(0, "arrival", 0, F(3, 4)), SimEvent(1, "arrival", 1, F(1, 2)),
          SimEvent(2, "departure", 0), SimEvent(3, "arrival", 1, F(1, 2)),
          SimEvent(4, "departure", 0)]
    tr = simulate(g, ev, "row", 1)
    assert [r["decision"] for r in tr.records] == ["admitted", "rejected", "departed", "admitted",
                                                   "ignored"]
    assert tr.records[3]["intervals"] == [["0", "1/2"]]


def test_same_time_tie_break():
    g = path_graph(2)
    ev = [SimEvent(0, "arrival", 1, F(1, 2)), SimEvent(0, "arrival", 0, F(1, 2))]
    tr = simulate(g, ev, "row", 1)
    assert [r["link"] for r in tr.records] == [0, 1]


def test_errors():
    with pytest.raises(DomainError):
        simulate(path_graph(2), [], "bogus", 1)
    with pytest.raises(DomainError):
        simulate(path_graph(2), [SimEvent(0, "arrival", 9, 1)], "row", 1)
    with pytest.raises(DomainError):
        simulate(path_graph(2), [], "clique-network", 1)
    with pytest.raises(DomainError):
        SimEvent(0, "leave", 0)
    with pytest.raises(DomainError):
        simulate(path_graph(2), [], "row", 0)


def test_strengthened_designates_earliest():
    g = path_graph(3)
    ev = [SimEvent(0, "arrival", 0, F(1, 2)), SimEvent(1, "arrival", 1, F(1, 2)),
          SimEvent(2, "arrival", 2, F(1, 2))]
    tr = simulate(g, ev, "row-strengthened", 1)
    # link 0 keeps its full row; links 1 and 2 subtract their smallest active neighbor
    assert [r["decision"] for r in tr.records] == ["admitted"] * 3
    last = {c["key"]: c["lhs"] for c in tr.records[-1]["constraints"]}
    assert last[2] == "1/2" and last[1] == "1"
    assert [r["decision"] for r in simulate(g, ev, "row", 1).records] == ["admitted", "admitted",
                                                                           "rejected"]


def test_trace_round_trip_and_replay():
    tr = simulate(star_graph(9), star_scenario(), "mixed", 1, seed=4)
    text = tr.to_jsonl()
    back = SimTrace.from_jsonl(text, budget=1)
    assert back.records == tr.records and back.policy == "mixed"
    assert metrics(back) == metrics(tr)
    assert replay_schedule(tr) == tr.schedule


def test_random_scenario_is_seeded():
    g = cycle_graph(6)
    assert random_scenario(g, 20, seed=3) == random_scenario(g, 20, seed=3)
    assert random_scenario(g, 20, seed=3) != random_scenario(g, 20, seed=4)


def _check_run(graph, policy, events, T=1):
    tr = simulate(graph, events, policy, T, seed=1)
    g = line_conflict_graph(graph) if isinstance(graph, NetworkGraph) else graph
    assert tr.to_jsonl() == simulate(graph, events, policy, T, seed=1).to_jsonl()
    sched = replay_schedule(tr)
    assert not sched.problems(g)
    final = DemandVector({k: sched.measure(k) for k in sched.assignments})
    for snap in tr.snapshots:
        tau = DemandVector({v: snap.get(v, 0) for v in g.vertices})
        if policy != "clique-necessary":
            assert minimum_duration(g, tau).t_star <= T, policy
    act = to_activation(sched, g)
    assert verify_schedule(g.subgraph(list(sched.assignments)), final, act, T)
    for _, dur in act.entries:
        assert dur > 0
    cuts = sorted({x for ivs in sched.assignments.values() for iv in ivs for x in iv})
    for t in cuts:
        assert g.is_independent(sched.active_at(t))
    return tr


@settings(max_examples=40, deadline=None)
@given(conflict_graphs(min_n=2, max_n=8), st.integers(0, 10 ** 6))
def test_policies_keep_valid_sound_schedules(g, seed):
    events = random_scenario(g, 15, seed=seed, max_demand=F(3, 5))
    for policy in POLICIES:
        if policy.endswith("-network"):
            continue
        _check_run(g, policy, events)


def test_network_policies_keep_valid_sound_schedules():
    rng = random.Random(2)
    for _ in range(15):
        n = rng.randint(3, 6)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6] or [(0, 1)]
        net = NetworkGraph.from_pairs(pairs)
        g = line_conflict_graph(net)
        events = random_scenario(g, 15, seed=rng.randint(0, 999), max_demand=F(1, 2))
        for policy in POLICIES:
            _check_run(net, policy, events)
