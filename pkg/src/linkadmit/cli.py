"""Command-line front end.

Exit status: 0 when the demand is admitted or the command succeeded, 1 when it
is rejected, refuted or infeasible, 2 on any error (bad input, unknown link,
capacity exceeded).
"""

import argparse
import csv
import io
import sys

from . import analysis, formats
from .conditions import CONDITIONS, key_text
from .errors import LinkAdmitError, PreconditionError
from .graphs import CAP_ENV_VAR, NetworkGraph, enumeration_cap
from .oracle import minimum_duration, verify_schedule
from .primary import NETWORK_CONDITIONS, line_conflict_graph
from .rationals import format_fraction, to_fraction
from .scheduling import build_schedule_row, to_activation
from .simulation import POLICIES, SimTrace, metrics, random_scenario, simulate

EXIT_OK, EXIT_REJECT, EXIT_ERROR = 0, 1, 2


class _Config:
    """Parsed inputs shared by the subcommands."""

    def __init__(self, args):
        self.args = args
        self.cap = enumeration_cap(args.cap)
        obj = formats.load_json(args.graph)
        graph = formats.graph_from_json(obj)
        mode = args.interference
        if mode == "primary" and not isinstance(graph, NetworkGraph):
            raise formats.FormatError(f"{args.graph}: primary interference needs a network graph "
                                      "(nodes/links)")
        if mode == "conflict" and isinstance(graph, NetworkGraph):
            raise formats.FormatError(f"{args.graph}: explicit conflict mode needs a conflict graph "
                                      "(vertices/edges); use `linegraph` to convert")
        self.net = graph if isinstance(graph, NetworkGraph) else None
        self.g = line_conflict_graph(graph) if self.net is not None else graph

    def demands(self):
        path = self.args.demands
        if path is None:
            raise formats.FormatError("--demands is required for this command")
        return formats.demands_from_json(formats.load_json(path), self.g.vertices)


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _T(args):
    if args.T is None:
        return None
    T = to_fraction(args.T, what="T")
    if T <= 0:
        raise formats.FormatError(f"T must be positive, got {T}")
    return T


def _designated(cfg):
    d = cfg.args.designated
    if d is None:
        return None
    for v in cfg.g.vertices:
        if str(v) == d:
            return v
    raise formats.FormatError(f"--designated {d!r} is not a link of the graph")


def cmd_check(args):
    cfg = _Config(args)
    tau = cfg.demands()
    T = _T(args)
    if T is None:
        raise formats.FormatError("--T is required for check")
    cond = args.condition
    if cond in NETWORK_CONDITIONS:
        if cfg.net is None:
            raise formats.FormatError(f"condition {cond!r} needs a network graph")
        verdict = NETWORK_CONDITIONS[cond](cfg.net, tau, T)
    elif cond == "clique-scaled":
        scale = args.scale if args.scale is not None else analysis.imperfection_ratio(cfg.g, cfg.cap)
        verdict = CONDITIONS[cond](cfg.g, tau, T, scale, cap=cfg.cap)
        verdict = verdict.with_guarantee(analysis.guarantee_factor(cfg.g, cond, scale, cfg.cap))
    elif cond == "clique-necessary":
        verdict = CONDITIONS[cond](cfg.g, tau, T, cap=cfg.cap)
    elif cond == "row-designated":
        d = _designated(cfg)
        if d is None:
            raise formats.FormatError("--designated is required for row-designated")
        verdict = CONDITIONS[cond](cfg.g, tau, T, d)
    elif cond == "row-strengthened":
        verdict = CONDITIONS[cond](cfg.g, tau, T, _designated(cfg))
    else:
        verdict = CONDITIONS[cond](cfg.g, tau, T)

    if args.format == "json":
        text = formats.dumps(formats.verdict_to_json(verdict))
    elif args.format == "csv":
        rows = [("constraint", "lhs", "bound", "slack", "rule")]
        rows += [(key_text(k), c.lhs, c.bound, c.slack, c.rule) for k, c in verdict.per_link.items()]
        text = _csv(rows)
    else:
        text = verdict.table() + "\n"
    _emit(args, text)
    return EXIT_OK if verdict.admitted else EXIT_REJECT


def cmd_oracle(args):
    cfg = _Config(args)
    tau = cfg.demands()
    res = minimum_duration(cfg.g, tau, cfg.cap)
    T = _T(args)
    if args.format == "json":
        obj = formats.oracle_result_to_json(res)
        if T is not None:
            obj["T"] = format_fraction(T)
            obj["feasible"] = res.t_star <= T
        text = formats.dumps(obj)
    elif args.format == "csv":
        rows = [("links", "duration")]
        rows += [(" ".join(str(x) for x in formats._sorted_ids(s)), d) for s, d in res.schedule.entries]
        text = _csv(rows)
    else:
        text = f"minimum duration T* = {res.t_star}\n" + res.schedule.table() + "\n"
        if T is not None:
            text += f"feasible within T = {T}: {'yes' if res.t_star <= T else 'no'}\n"
    _emit(args, text)
    return EXIT_REJECT if T is not None and res.t_star > T else EXIT_OK


def cmd_analyze(args):
    cfg = _Config(args)
    rep = analysis.report(cfg.g, cfg.cap, with_imperfection=not args.no_imperfection,
                          witnesses=args.witness)
    if args.format == "json":
        text = formats.dumps(formats.report_to_json(rep))
    elif args.format == "csv":
        obj = formats.report_to_json(rep)
        obj.pop("witnesses", None)
        obj.pop("eta", None)
        obj["beta_mixed_bounds"] = "..".join(obj["beta_mixed_bounds"])
        text = _csv([("quantity", "value")] + [(k, "" if v is None else v) for k, v in obj.items()])
    else:
        text = rep.table() + "\n"
        for name, tau in rep.witnesses.items():
            text += f"witness for {name}: " + \
                ", ".join(f"{k}={v}" for k, v in tau.items() if v) + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_schedule(args):
    cfg = _Config(args)
    tau = cfg.demands()
    T = _T(args)
    if T is None:
        raise formats.FormatError("--T is required for schedule")
    order = None
    if args.order:
        names = {str(v): v for v in cfg.g.vertices}
        try:
            order = [names[x] for x in args.order.split(",")]
        except KeyError as exc:
            raise formats.FormatError(f"--order names unknown link {exc.args[0]!r}") from None
    try:
        sched = build_schedule_row(cfg.g, tau, T, order)
    except PreconditionError as exc:
        sys.stderr.write(f"schedule: {exc}\n")
        return EXIT_REJECT
    act = to_activation(sched, cfg.g)
    ok = verify_schedule(cfg.g, tau, act, T)
    if args.format == "json":
        obj = formats.interval_schedule_to_json(sched)
        obj["activation"] = formats.activation_to_json(act)
        obj["verified"] = ok
        text = formats.dumps(obj)
    elif args.format == "csv":
        rows = [("link", "start", "end")]
        rows += [(k, a, b) for k, ivs in sched.assignments.items() for a, b in ivs]
        text = _csv(rows)
    else:
        text = sched.table() + "\n" + act.table() + f"\nverified: {'yes' if ok else 'NO'}\n"
    _emit(args, text)
    return EXIT_OK if ok else EXIT_ERROR


def _scenario(cfg, args, seed):
    T = _T(args)
    policy = args.policy
    if args.scenario:
        sT, sp, events = formats.scenario_from_json(formats.load_json(args.scenario), cfg.g.vertices)
        T = T if T is not None else sT
        policy = policy or sp
    else:
        T = T if T is not None else to_fraction(1)
        events = random_scenario(cfg.g, args.arrivals, seed=seed, T=T)
    if policy is None:
        raise formats.FormatError("no policy given (use --policy or set it in the scenario)")
    return T, policy, events


def cmd_simulate(args):
    cfg = _Config(args)
    graph = cfg.net if cfg.net is not None else cfg.g
    seeds = _seeds(args.seeds) if args.seeds else [args.seed]
    if args.scenario and len(seeds) > 1:
        raise formats.FormatError("--seeds batches need random scenarios; drop --scenario")
    runs = []
    for seed in seeds:
        T, policy, events = _scenario(cfg, args, seed)
        scale = to_fraction(args.scale) if args.scale is not None else None
        trace = simulate(graph, events, policy, T, seed=seed, scale=scale)
        runs.append((seed, trace, metrics(trace, cfg.g if args.offline else None, T, cfg.cap)))
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            for _, trace, _ in runs:
                fh.write(trace.to_jsonl())
    fields = ["admitted", "rejected", "blocked", "departures", "messages",
              "offered_demand", "admitted_demand", "offline_t_star", "offline_feasible", "offline_gap"]

    def cell(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return "true" if v else "false"
        return v if isinstance(v, int) else format_fraction(v)

    if args.format == "csv":
        rows = [["seed", "policy"] + fields]
        rows += [[seed, trace.policy] + [cell(m[f]) for f in fields] for seed, trace, m in runs]
        text = _csv(rows)
    elif args.format == "json":
        text = formats.dumps([{"seed": seed, "policy": trace.policy,
                               **{f: (m[f] if m[f] is None or isinstance(m[f], (bool, int))
                                      else format_fraction(m[f])) for f in fields}}
                              for seed, trace, m in runs])
    else:
        text = ""
        for seed, trace, m in runs:
            text += f"seed {seed}, policy {trace.policy}, T = {trace.budget}\n"
            text += "".join(f"  {f:<18} {cell(m[f])}\n" for f in fields)
    _emit(args, text)
    return EXIT_OK


def _seeds(text):
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def cmd_replay(args):
    with open(args.trace, encoding="utf-8") as fh:
        trace = SimTrace.from_jsonl(fh.read(), budget=args.T or 1)
    m = metrics(trace)
    text = "".join(f"{k} {'' if v is None else v}\n" for k, v in m.items())
    _emit(args, text)
    return EXIT_OK


def cmd_linegraph(args):
    obj = formats.load_json(args.graph)
    net = formats.graph_from_json(obj)
    if not isinstance(net, NetworkGraph):
        raise formats.FormatError(f"{args.graph}: linegraph needs a network graph (nodes/links)")
    g = line_conflict_graph(net)
    _emit(args, formats.dumps(formats.conflict_to_json(g)))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="linkadmit", description="Admission control checks for "
                                "link demands on a conflict graph.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, demands=True):
        sp.add_argument("--graph", required=True, help="conflict graph or network graph JSON")
        sp.add_argument("--interference", choices=("auto", "conflict", "primary"), default="auto",
                        help="how to read --graph (auto: by file content)")
        if demands:
            sp.add_argument("--demands", help="demand JSON")
        sp.add_argument("--cap", type=int, default=None,
                        help=f"enumeration cap (default: ${CAP_ENV_VAR} or 25)")
        sp.add_argument("--format", choices=("json", "table", "csv"), default="table")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    sp = sub.add_parser("check", help="evaluate an admission condition")
    common(sp)
    sp.add_argument("--condition", required=True, choices=tuple(CONDITIONS) + tuple(NETWORK_CONDITIONS))
    sp.add_argument("--T", required=True)
    sp.add_argument("--scale", help="clique-scaled factor (default: imperfection ratio)")
    sp.add_argument("--designated", help="designated link for the strengthened row test")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("oracle", help="exact minimum schedule duration")
    common(sp)
    sp.add_argument("--T", help="also report feasibility within T (exit 1 if infeasible)")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("analyze", help="worst-case factors of every condition")
    common(sp, demands=False)
    sp.add_argument("--witness", action="store_true", help="include extremal demand vectors")
    sp.add_argument("--no-imperfection", action="store_true", help="skip the imperfection ratio")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("schedule", help="first-fit interval schedule under the row condition")
    common(sp)
    sp.add_argument("--T", required=True)
    sp.add_argument("--order", help="comma-separated insertion order")
    sp.set_defaults(func=cmd_schedule)

    sp = sub.add_parser("simulate", help="online admission simulation")
    common(sp, demands=False)
    sp.add_argument("--scenario", help="scenario JSON (default: random scenario from --seed)")
    sp.add_argument("--policy", choices=POLICIES)
    sp.add_argument("--T")
    sp.add_argument("--scale")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--seeds", help="batch of random scenarios, e.g. 0-9 or 1,4,7")
    sp.add_argument("--arrivals", type=int, default=20, help="arrivals per random scenario")
    sp.add_argument("--offline", action="store_true", help="price offered demand with the oracle")
    sp.add_argument("--trace-out", help="write the JSONL decision trace here")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("replay", help="recompute metrics from a JSONL trace")
    sp.add_argument("trace")
    sp.add_argument("--T")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("linegraph", help="convert a network graph to its conflict graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_linegraph)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (LinkAdmitError, ValueError, OSError) as exc:
        sys.stderr.write(f"linkadmit {args.command}: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
