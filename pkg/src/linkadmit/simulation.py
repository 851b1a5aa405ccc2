"""Deterministic event-driven simulation of online, distributed admission.

Links arrive with a demand and later depart.  On arrival the policy is
evaluated from the arriving link's local view, i.e. only the constraints of
the link itself and of its currently active neighbors, which are the only
constraints an arrival can change.  Admitted links are placed first-fit
around their neighbors' intervals; departures free intervals immediately and
nothing is ever moved.

Message accounting (see :class:`MessageModel`): one message per interfering
link queried, a single aggregate query for the degree policy, and one extra
message per network triangle through the link for the network clique policy.
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .conditions import CONDITIONS
from .errors import DomainError, RejectionError
from .analysis import imperfection_ratio
from .graphs import ConflictGraph, DemandVector, NetworkGraph, enumerate_maximal_cliques, order_key
from .oracle import minimum_duration
from .primary import (
    CLIQUE_THRESHOLD,
    NETWORK_CONDITIONS,
    SHANNON_THRESHOLD,
    line_conflict_graph,
    triangles_through,
)
from .rationals import format_fraction, to_fraction
from .scheduling import IntervalSchedule, first_fit_insert

__all__ = [
    "SimEvent",
    "SimTrace",
    "MessageModel",
    "POLICIES",
    "simulate",
    "metrics",
    "random_scenario",
    "replay_schedule",
]

POLICIES = tuple(CONDITIONS) + tuple(NETWORK_CONDITIONS)
_KIND_ORDER = {"departure": 0, "arrival": 1}


@dataclass(frozen=True)
class SimEvent:
    time: Fraction
    kind: str
    link: object
    demand: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise DomainError(f"event kind must be arrival or departure, got {self.kind!r}")
        object.__setattr__(self, "time", to_fraction(self.time, what="event time"))
        object.__setattr__(self, "demand", to_fraction(self.demand, nonnegative=True, what="demand"))

    def sort_key(self):
        return (self.time, order_key(self.link), _KIND_ORDER[self.kind])


@dataclass(frozen=True)
class MessageModel:
    per_neighbor: int = 1
    degree_query: int = 1
    per_triangle: int = 1

    def count(self, policy, g, net, link):
        if policy == "degree":
            return self.degree_query
        n = self.per_neighbor * g.degree(link)
        if policy == "clique-network":
            n += self.per_triangle * len(triangles_through(net, link))
        return n


@dataclass
class SimTrace:
    policy: str
    budget: Fraction
    seed: int
    records: list = field(default_factory=list)
    schedule: IntervalSchedule | None = None
    snapshots: list = field(default_factory=list)  # demand dicts after each admission

    def to_jsonl(self):
        return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n"
                       for r in self.records)

    @classmethod
    def from_jsonl(cls, text, budget=None, seed=0):
        records = [json.loads(line) for line in text.splitlines() if line.strip()]
        policy = records[0]["policy"] if records else ""
        return cls(policy, to_fraction(budget) if budget is not None else Fraction(0), seed, records)


def _local_row(g, demands, k):
    return demands[k] + sum((demands[j] for j in g.neighbors(k) if j in demands), Fraction(0))


def _local_min_subtracted(g, demands, k):
    nbrs = [j for j in g.neighbors(k) if j in demands]
    if not nbrs:
        return demands[k]
    return demands[k] + sum((demands[j] for j in nbrs), Fraction(0)) - min(demands[j] for j in nbrs)


def _component_of(g, members, start):
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in members and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class _Engine:
    def __init__(self, g, net, policy, T, scale, messages):
        self.g, self.net, self.policy, self.T = g, net, policy, T
        self.scale = scale
        self.messages = messages
        self.demands = {}
        self.arrived = {}
        self.designated = set()
        self.sched = IntervalSchedule(T)

    def evaluate(self, link, d):
        """Return ``{constraint key: (lhs, bound)}`` for the constraints this arrival touches."""
        g, T, policy = self.g, self.T, self.policy
        demands = dict(self.demands)
        demands[link] = d
        touched = [link] + sorted((j for j in g.neighbors(link) if j in self.demands), key=order_key)
        out = {}
        if policy in ("row", "row-network"):
            for k in touched:
                out[k] = (_local_row(g, demands, k), T)
        elif policy == "degree":
            out[link] = (d * (g.degree(link) + 1), T)
        elif policy == "mixed":
            for k in touched:
                out[k] = (min(_local_row(g, demands, k), demands[k] * (g.degree(k) + 1)), T)
        elif policy in ("row-strengthened", "row-designated"):
            merged = self._designated_after_arrival(link, demands)
            for k in touched:
                lhs = _local_row(g, demands, k) if k in merged else _local_min_subtracted(g, demands, k)
                out[k] = (lhs, T)
        elif policy in ("clique-necessary", "clique-scaled"):
            scale = Fraction(1) if policy == "clique-necessary" else self.scale
            nbrs = [j for j in g.neighbors(link) if j in self.demands]
            h = g.subgraph(nbrs)
            cliques = enumerate_maximal_cliques(h, cap=max(len(h), 1)) if nbrs else [frozenset()]
            for c in cliques:
                members = tuple(sorted(c | {link}, key=order_key))
                out[members] = (scale * sum((demands[j] for j in members), Fraction(0)), T)
        elif policy in ("clique-network", "shannon-network"):
            thr = (CLIQUE_THRESHOLD if policy == "clique-network" else SHANNON_THRESHOLD) * T
            for node in self.net.endpoints(link):
                load = sum((demands[j] for j in self.net.incident(node) if j in demands), Fraction(0))
                out[("node", node)] = (load, thr)
            if policy == "clique-network":
                for tri in triangles_through(self.net, link):
                    s = sum((demands[j] for j in self.net.links_among(tri) if j in demands), Fraction(0))
                    out[("triangle",) + tri] = (s, thr)
        else:
            raise DomainError(f"unknown policy {policy!r}")
        return out

    def _designated_after_arrival(self, link, demands):
        # merged component keeps its earliest-arrived designated link
        comp = _component_of(self.g, demands, link)
        existing = [x for x in self.designated if x in comp]
        if not existing:
            return self.designated | {link}
        keep = min(existing, key=self.arrived.__getitem__)
        return (self.designated - set(existing)) | {keep}

    def admit(self, link, d, seq):
        self.sched = first_fit_insert(self.g, self.sched, link, d)
        self.demands[link] = d
        self.arrived[link] = seq
        if self.policy in ("row-strengthened", "row-designated"):
            self.designated = self._designated_after_arrival(link, self.demands)

    def depart(self, link):
        self.sched = self.sched.without(link)
        self.demands.pop(link)
        self.arrived.pop(link)
        self.designated.discard(link)
        if self.policy not in ("row-strengthened", "row-designated"):
            return
        # each fragment without a designated link takes the earliest-arrived
        # former neighbor of the departed link; its full row cannot exceed the
        # min-subtracted value it had before
        nbrs = [j for j in self.g.neighbors(link) if j in self.demands]
        seen = set()
        for j in sorted(nbrs, key=self.arrived.__getitem__):
            if j in seen:
                continue
            comp = _component_of(self.g, self.demands, j)
            seen |= comp
            if not (comp & self.designated):
                self.designated.add(j)


def _fmt_key(k):
    if isinstance(k, tuple):
        return [str(x) if not isinstance(x, int) else x for x in k]
    return k


def simulate(graph, events, policy, T, seed=0, scale=None, message_model=None):
    """Run the scenario and return a :class:`SimTrace`.

    ``graph`` is a :class:`ConflictGraph`, or a :class:`NetworkGraph` under
    primary interference (its line graph is used for scheduling).  ``seed``
    only labels the run; the simulation itself draws no random numbers.
    """
    T = to_fraction(T, what="T")
    if T <= 0:
        raise DomainError("budget T must be positive")
    if isinstance(graph, NetworkGraph):
        net, g = graph, line_conflict_graph(graph)
    elif isinstance(graph, ConflictGraph):
        net, g = None, graph
    else:
        raise DomainError("graph must be a ConflictGraph or NetworkGraph")
    if policy not in POLICIES:
        raise DomainError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    if policy in NETWORK_CONDITIONS and net is None:
        raise DomainError(f"policy {policy!r} needs a network graph")
    if policy == "clique-scaled":
        if scale is None:
            scale = imperfection_ratio(g)
        scale = to_fraction(scale, what="scale")
    events = [e if isinstance(e, SimEvent) else SimEvent(**e) for e in events]
    for e in events:
        if e.link not in g:
            raise DomainError(f"scenario mentions unknown link {e.link!r}")
    events.sort(key=SimEvent.sort_key)

    model = message_model or MessageModel()
    eng = _Engine(g, net, policy, T, scale, model)
    trace = SimTrace(policy, T, seed)
    for seq, ev in enumerate(events):
        rec = {
            "seq": seq,
            "time": format_fraction(ev.time),
            "kind": ev.kind,
            "link": ev.link,
            "policy": policy,
        }
        if ev.kind == "departure":
            if ev.link in eng.demands:
                eng.depart(ev.link)
                rec["decision"] = "departed"
            else:
                rec["decision"] = "ignored"
            rec["messages_used"] = 0
            trace.records.append(rec)
            continue

        rec["demand"] = format_fraction(ev.demand)
        if ev.link in eng.demands:
            rec.update(decision="ignored", reason="already active", messages_used=0)
            trace.records.append(rec)
            continue
        values = eng.evaluate(ev.link, ev.demand)
        rec["messages_used"] = model.count(policy, g, net, ev.link)
        rec["constraints"] = [
            {"key": _fmt_key(k), "lhs": format_fraction(lhs), "bound": format_fraction(b)}
            for k, (lhs, b) in values.items()
        ]
        passed = all(lhs <= b for lhs, b in values.values())
        rec["verdict"] = passed
        if not passed:
            rec["decision"] = "rejected"
        else:
            try:
                eng.admit(ev.link, ev.demand, seq)
            except RejectionError as exc:
                rec["decision"] = "blocked"
                rec["reason"] = str(exc)
            else:
                rec["decision"] = "admitted"
                rec["intervals"] = [[format_fraction(a), format_fraction(b)]
                                    for a, b in eng.sched.assignments[ev.link]]
                trace.snapshots.append(dict(eng.demands))
        trace.records.append(rec)
    trace.schedule = eng.sched
    return trace


def replay_schedule(trace):
    """Rebuild the admitted intervals that were still held at the end of the trace."""
    held = {}
    for rec in trace.records:
        if rec.get("decision") == "admitted":
            held[rec["link"]] = tuple((Fraction(a), Fraction(b)) for a, b in rec["intervals"])
        elif rec.get("decision") == "departed":
            held.pop(rec["link"], None)
    return IntervalSchedule(trace.budget, held)


def metrics(trace, g=None, T=None, cap=None):
    """Summary counts, recomputed from the trace records alone.

    With ``g`` given, the demand vector of every link that ever arrived (its
    largest requested demand) is also priced by the oracle, so the online
    outcome can be compared against what a centralized scheduler could do.
    """
    T = to_fraction(T) if T is not None else trace.budget
    out = {
        "admitted": 0,
        "rejected": 0,
        "blocked": 0,
        "departures": 0,
        "messages": 0,
        "offered_demand": Fraction(0),
        "admitted_demand": Fraction(0),
    }
    offered = {}
    for rec in trace.records:
        out["messages"] += rec.get("messages_used", 0)
        decision = rec.get("decision")
        if rec["kind"] == "arrival" and decision != "ignored":
            d = Fraction(rec["demand"])
            out["offered_demand"] += d
            offered[rec["link"]] = max(d, offered.get(rec["link"], Fraction(0)))
            if decision == "admitted":
                out["admitted"] += 1
                out["admitted_demand"] += d
            else:
                out["rejected"] += 1
                if decision == "blocked":
                    out["blocked"] += 1
        elif decision == "departed":
            out["departures"] += 1
    out["offline_t_star"] = None
    out["offline_feasible"] = None
    out["offline_gap"] = None
    if g is not None and offered:
        if isinstance(g, NetworkGraph):
            g = line_conflict_graph(g)
        tau = DemandVector({v: offered.get(v, 0) for v in g.vertices})
        t_star = minimum_duration(g, tau, cap).t_star
        out["offline_t_star"] = t_star
        out["offline_feasible"] = t_star <= T
        if t_star <= T:
            out["offline_gap"] = sum(offered.values(), Fraction(0)) - out["admitted_demand"]
    return out


def random_scenario(g, arrivals, seed=0, T=1, max_demand=None, departure_prob=Fraction(1, 3)):
    """Seeded random arrival/departure sequence over the links of ``g``."""
    rng = random.Random(seed)
    T = to_fraction(T)
    max_demand = to_fraction(max_demand) if max_demand is not None else T / 2
    links = list(g.vertices)
    events, active, t = [], set(), 0
    for _ in range(arrivals):
        t += rng.randint(1, 4)
        idle = [x for x in links if x not in active]
        if active and (not idle or rng.random() < departure_prob):
            x = rng.choice(sorted(active, key=order_key))
            events.append(SimEvent(Fraction(t), "departure", x))
            active.discard(x)
            t += 1
            idle = [x for x in links if x not in active]
        if not idle:
            continue
        x = rng.choice(idle)
        d = max_demand * Fraction(rng.randint(1, 20), 20)
        events.append(SimEvent(Fraction(t), "arrival", x, d))
        active.add(x)
    return events
