"""JSON file formats.

Network graph::

    {"nodes": [ids], "links": [{"id": ..., "u": ..., "v": ...}]}

Conflict graph::

    {"vertices": [ids], "edges": [[id, id], ...]}

Demands (decimal or ratio strings; bare JSON numbers are tolerated)::

    {"demands": {"link-id": "1/3", ...}}

or raw rates, normalized on load::

    {"rates": {...}, "capacities": {...}, "bandwidth": "..."}

Scenario::

    {"T": "1", "policy": "mixed", "events": [{"t": "0", "kind": "arrival",
     "link": "e1", "demand": "1/2"}, ...]}

JSON object keys are always strings, so numeric link ids inside ``demands``
are matched back to integer ids of the graph they are paired with.  All
rationals are written as exact strings.
"""

import json

from .conditions import ConstraintValue, Verdict
from .errors import DomainError
from .graphs import (
    ConflictGraph,
    DemandVector,
    NetworkGraph,
    RawDemandSpec,
    normalize_demands,
    order_key,
)
from .oracle import ActivationSchedule, OracleResult
from .rationals import format_fraction, to_fraction
from .scheduling import IntervalSchedule
from .simulation import SimEvent

__all__ = [
    "FormatError",
    "load_json",
    "parse_json",
    "graph_from_json",
    "network_from_json",
    "network_to_json",
    "conflict_from_json",
    "conflict_to_json",
    "demands_from_json",
    "demands_to_json",
    "verdict_to_json",
    "verdict_from_json",
    "activation_to_json",
    "activation_from_json",
    "oracle_result_to_json",
    "oracle_result_from_json",
    "interval_schedule_to_json",
    "interval_schedule_from_json",
    "report_to_json",
    "scenario_from_json",
    "scenario_to_json",
    "dumps",
]


class FormatError(DomainError):
    pass


def parse_json(text, source="<string>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    return parse_json(text, str(path))


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _fr(x):
    return format_fraction(x)


def _require(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{what}: missing key {key!r}")
    return obj[key]


def network_from_json(obj):
    nodes = _require(obj, "nodes", "network graph")
    links = {}
    for i, item in enumerate(_require(obj, "links", "network graph")):
        try:
            lid, u, v = item["id"], item["u"], item["v"]
        except (KeyError, TypeError):
            raise FormatError(f"network graph: link #{i} needs id, u, v") from None
        if lid in links:
            raise FormatError(f"network graph: duplicate link id {lid!r}")
        links[lid] = (u, v)
    return NetworkGraph(frozenset(nodes), links)


def network_to_json(net):
    return {
        "nodes": list(net.sorted_nodes),
        "links": [{"id": lid, "u": u, "v": v} for lid, (u, v) in net.links.items()],
    }


def conflict_from_json(obj):
    verts = _require(obj, "vertices", "conflict graph")
    edges = obj.get("edges", [])
    if len(set(verts)) != len(verts):
        raise FormatError("conflict graph: duplicate vertex ids")
    return ConflictGraph(verts, [tuple(e) for e in edges])


def conflict_to_json(g):
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def graph_from_json(obj):
    """Return a ``NetworkGraph`` or ``ConflictGraph`` depending on the keys present."""
    if isinstance(obj, dict) and "links" in obj:
        return network_from_json(obj)
    if isinstance(obj, dict) and "vertices" in obj:
        return conflict_from_json(obj)
    raise FormatError("graph file needs either nodes/links or vertices/edges")


def _match_key(k, ids):
    if k in ids:
        return k
    for x in ids:
        if str(x) == k:
            return x
    return k


def demands_from_json(obj, links=None):
    """Parse a demand file; ``links`` (the graph's ids) restores non-string keys."""
    if isinstance(obj, dict) and "rates" in obj:
        spec = RawDemandSpec(obj["rates"], _require(obj, "capacities", "demand file"),
                             _require(obj, "bandwidth", "demand file"))
        tau = normalize_demands(spec)
    else:
        raw = _require(obj, "demands", "demand file")
        if not isinstance(raw, dict):
            raise FormatError("demand file: 'demands' must be an object")
        tau = DemandVector(raw)
    if links is None:
        return tau
    ids = list(links)
    return DemandVector({_match_key(k, ids): v for k, v in tau.items()})


def demands_to_json(tau):
    return {"demands": {str(k): _fr(v) for k, v in tau.items()}}


def _key_to_json(k):
    return list(k) if isinstance(k, tuple) else k


def _key_from_json(k):
    return tuple(k) if isinstance(k, list) else k


def verdict_to_json(v):
    return {
        "condition": v.condition,
        "T": _fr(v.budget),
        "admitted": v.admitted,
        "necessary": v.necessary,
        "guarantee_factor": None if v.guarantee_factor is None else _fr(v.guarantee_factor),
        "constraints": [
            {"key": _key_to_json(k), "lhs": _fr(c.lhs), "bound": _fr(c.bound),
             "slack": _fr(c.slack), "rule": c.rule}
            for k, c in v.per_link.items()
        ],
    }


def verdict_from_json(obj):
    per = {}
    for item in obj["constraints"]:
        per[_key_from_json(item["key"])] = ConstraintValue(
            to_fraction(item["lhs"]), to_fraction(item["bound"]), item["rule"])
    gf = obj.get("guarantee_factor")
    return Verdict(obj["condition"], to_fraction(obj["T"]), bool(obj["admitted"]), per,
                   None if gf is None else to_fraction(gf), bool(obj.get("necessary", False)))


def _sorted_ids(s):
    return sorted(s, key=order_key)


def activation_to_json(s):
    return {
        "entries": [{"links": _sorted_ids(links), "duration": _fr(d)} for links, d in s.entries],
        "total_duration": _fr(s.total_duration),
    }


def activation_from_json(obj):
    return ActivationSchedule(tuple((frozenset(e["links"]), to_fraction(e["duration"]))
                                    for e in obj["entries"]))


def oracle_result_to_json(r):
    return {"t_star": _fr(r.t_star), "basis_size": r.basis_size,
            "schedule": activation_to_json(r.schedule)}


def oracle_result_from_json(obj):
    return OracleResult(to_fraction(obj["t_star"]), activation_from_json(obj["schedule"]),
                        int(obj["basis_size"]))


def interval_schedule_to_json(s):
    return {
        "T": _fr(s.horizon),
        "assignments": [{"link": k, "intervals": [[_fr(a), _fr(b)] for a, b in ivs]}
                        for k, ivs in s.assignments.items()],
    }


def interval_schedule_from_json(obj):
    return IntervalSchedule(to_fraction(obj["T"]), {
        item["link"]: tuple((to_fraction(a), to_fraction(b)) for a, b in item["intervals"])
        for item in obj["assignments"]
    })


def report_to_json(r):
    def opt(x):
        return None if x is None else _fr(x)

    out = {
        "sigma": r.sigma,
        "delta_plus_one": r.delta_plus_one,
        "beta_row": _fr(r.beta_row),
        "beta_degree": _fr(r.beta_degree),
        "beta_mixed_bounds": [_fr(r.beta_mixed_bounds[0]), _fr(r.beta_mixed_bounds[1])],
        "beta_mixed_exact": opt(r.beta_mixed_exact),
        "beta_mixed_lp": opt(r.beta_mixed_lp),
        "beta_row_strengthened": opt(r.beta_row_strengthened),
        "strengthened_label": r.strengthened_label,
        "imperfection_ratio": opt(r.imperfection_ratio),
        "eta": [{"link": k, "eta": v} for k, v in r.eta.items()],
    }
    if r.witnesses:
        out["witnesses"] = {name: demands_to_json(tau)["demands"] for name, tau in r.witnesses.items()}
    return out


def scenario_from_json(obj, links=None):
    """Return ``(T, policy, events)``; ``policy`` may be ``None``."""
    ids = list(links) if links is not None else None
    events = []
    for i, e in enumerate(_require(obj, "events", "scenario")):
        try:
            link = e["link"]
            if ids is not None:
                link = _match_key(link, ids)
            events.append(SimEvent(e.get("t", e.get("time", 0)), e["kind"], link, e.get("demand", 0)))
        except (KeyError, TypeError):
            raise FormatError(f"scenario: event #{i} is malformed") from None
    T = to_fraction(obj.get("T", 1), what="T")
    return T, obj.get("policy"), events


def scenario_to_json(T, policy, events):
    return {
        "T": _fr(T),
        "policy": policy,
        "events": [{"t": _fr(e.time), "kind": e.kind, "link": e.link,
                    **({"demand": _fr(e.demand)} if e.kind == "arrival" else {})}
                   for e in events],
    }
