"""Batch command-line interface.

Exit codes: 0 success, 2 usage error, 3 data error. Identical inputs and
flags produce byte-identical outputs, and every output file embeds the run
manifest so a result can be regenerated from the file alone.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import HarmnetError
from .fixtures import FIXTURES, build_fixture, write_fixture
from .graph import Direction, HarmGraph, diameter
from .ingest import (
    build_harm_scores,
    build_trade_network,
    canonical_float,
    format_float,
    graph_to_doc,
    load_alias_map,
    load_graph,
    load_graph_json,
    load_indicator_specs,
    load_indicator_table,
    load_trade_flows,
    prune_trade_network,
    save_graph,
)
from .metrics import (
    HarmConfig,
    level_breakdown,
    network_harm,
    parse_aggregator,
    verify_reduction,
)
from .paths import PathScheme
from .whatif import (
    ReportKind,
    global_influence_all,
    influence,
    rank_report,
    vulnerability,
)

SCHEME_NAMES = [s.value for s in PathScheme]
DIRECTION_NAMES = [d.value for d in Direction]


class UsageError(Exception):
    pass


def _enum_type(name: str, choices: list[str]):
    def parse(text: str) -> str:
        if text in choices:
            return text
        hint = difflib.get_close_matches(text, choices, n=1)
        suggestion = f" (did you mean {hint[0]!r}?)" if hint else ""
        raise argparse.ArgumentTypeError(
            f"invalid {name} {text!r}{suggestion}; choose from: {', '.join(choices)}"
        )

    return parse


def _aggregator_type(text: str):
    try:
        return parse_aggregator(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


@dataclass
class RunManifest:
    """Reproducibility record serialized alongside every output."""

    command: str
    config: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    output: str | None = None
    seed: int | None = None
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "output": self.output,
            "seed": self.seed,
            "tool_version": self.tool_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nodes", help="node table (label,harm[,name])")
    p.add_argument("--edges", help="edge table (src,dst)")
    p.add_argument("--graph-json", help="JSON graph document")
    p.add_argument(
        "--fixture",
        type=_enum_type("fixture", sorted(FIXTURES)),
        help="bundled demo network",
    )
    p.add_argument("--aliases", help="label,code alias map applied at load")


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--inner", type=_aggregator_type, default=parse_aggregator("avg"),
                   help="within-level aggregator: max, avg, sum, top-K (default avg)")
    p.add_argument("--outer", type=_aggregator_type, default=parse_aggregator("max"),
                   help="across-level aggregator (default max)")
    p.add_argument("--alpha", type=float, default=0.85,
                   help="per-level damping factor in (0,1] (default 0.85)")
    p.add_argument("--mmax", type=int, default=None,
                   help="deepest level to consider (default: graph diameter)")
    p.add_argument("--scheme", type=_enum_type("scheme", SCHEME_NAMES),
                   default="shortest-all", help=f"path counting: {', '.join(SCHEME_NAMES)}")
    p.add_argument("--direction", type=_enum_type("direction", DIRECTION_NAMES),
                   default="upstream", help="upstream (suppliers) or downstream (customers)")


def _load_input_graph(args) -> tuple[HarmGraph, dict]:
    chosen = [
        name
        for name, val in (
            ("nodes/edges", args.nodes or args.edges),
            ("graph-json", args.graph_json),
            ("fixture", args.fixture),
        )
        if val
    ]
    if len(chosen) != 1:
        raise UsageError(
            "provide exactly one input: --nodes/--edges, --graph-json or --fixture"
        )
    aliases = load_alias_map(args.aliases) if getattr(args, "aliases", None) else None
    if args.fixture:
        return build_fixture(args.fixture), {"fixture": args.fixture}
    if args.graph_json:
        return load_graph_json(args.graph_json), {"graph_json": args.graph_json}
    if not (args.nodes and args.edges):
        raise UsageError("--nodes and --edges must be given together")
    inputs = {"nodes": args.nodes, "edges": args.edges}
    if args.aliases:
        inputs["aliases"] = args.aliases
    return load_graph(args.nodes, args.edges, aliases), inputs


def _config_from_args(args, g: HarmGraph) -> HarmConfig:
    m_max = args.mmax if args.mmax is not None else max(1, diameter(g))
    return HarmConfig(
        inner=args.inner,
        outer=args.outer,
        alpha=args.alpha,
        m_max=m_max,
        scheme=PathScheme(args.scheme),
        direction=Direction(args.direction),
    )


def _fmt(x) -> str:
    return "" if x is None else format_float(x)


def _fmt_data(x) -> str:
    return "" if x is None else canonical_float(x)


def _emit(text: str, args, manifest: RunManifest) -> None:
    if args.output:
        body = text
        if args.format == "json":
            pass  # manifest is already a key inside the JSON document
        else:
            body = f"# manifest: {manifest.to_json()}\n" + text
        Path(args.output).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- score -----------------------------------------------------------------


def _cmd_score(args) -> int:
    g, inputs = _load_input_graph(args)
    cfg = _config_from_args(args, g)
    manifest = RunManifest(
        command="score", config=cfg.to_dict(), inputs=inputs,
        output=args.output, seed=args.seed,
    )

    if args.verify_reduction:
        report = verify_reduction(g, args.alpha, args.mmax)
        status = "PASS" if report.passed else "FAIL"
        sys.stdout.write(
            f"reduction check: {status} "
            f"(max deviation {report.max_deviation:.3e} at node {report.worst_label}, "
            f"alpha={report.alpha:g}, m_max={report.m_max})\n"
        )
        return 0 if report.passed else 3

    targets = args.target or list(g.labels)
    results = []
    for label in targets:
        node = g.node_id(label)
        H, rows = level_breakdown(g, node, cfg)
        results.append({"target": label, "H": H, "levels": rows})

    if args.format == "json":
        doc = {"manifest": manifest.to_dict(), "results": results}
        _emit(json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n", args, manifest)
    elif args.format == "csv":
        lines = ["target,H,m,size,x_m,weighted"]
        for r in results:
            for lv in r["levels"]:
                lines.append(
                    f"{r['target']},{_fmt_data(r['H'])},{lv['m']},{lv['size']},"
                    f"{_fmt_data(lv['x_m'])},{_fmt_data(lv['weighted'])}"
                )
        _emit("\n".join(lines) + "\n", args, manifest)
    else:
        lines = []
        for r in results:
            lines.append(f"target={r['target']} H={_fmt(r['H'])}")
            lines.append("  m  size  x_m  weighted")
            for lv in r["levels"]:
                lines.append(
                    f"  {lv['m']}  {lv['size']}  {_fmt(lv['x_m'])}  {_fmt(lv['weighted'])}"
                )
        _emit("\n".join(lines) + "\n", args, manifest)
    return 0


def _json_default(x):
    raise TypeError(f"not JSON serializable: {x!r}")


# --- whatif ----------------------------------------------------------------


def _cmd_whatif(args) -> int:
    g, inputs = _load_input_graph(args)
    cfg = _config_from_args(args, g)
    manifest = RunManifest(
        command="whatif", config=cfg.to_dict(), inputs=inputs,
        output=args.output, seed=args.seed,
    )
    modes = [
        m
        for m in (
            "perturb" if args.perturb else None,
            "remove" if args.remove else None,
            "global" if args.global_ else None,
            "rank" if args.rank else None,
        )
        if m
    ]
    if len(modes) != 1:
        raise UsageError("choose exactly one of --perturb, --remove, --global or --rank")

    rows: list[dict]
    if args.global_:
        gi = global_influence_all(g, cfg)
        rows = [
            {"node": g.labels[b], "score": gi[b]}
            for b in sorted(gi, key=lambda b: (gi[b], g.labels[b]))
        ]
        kind = "global-influence"
    elif args.rank:
        if not args.target:
            raise UsageError("--rank needs --target")
        kind_enum = (
            ReportKind.VULNERABILITY if args.rank == "vulnerability" else ReportKind.INFLUENCE
        )
        report = rank_report(g, g.node_id(args.target), kind_enum, cfg, args.top)
        rows = [
            {"node": g.labels[b], "score": report.scores[b]} for b in report.ranking
        ]
        kind = args.rank
    else:
        if not args.target:
            raise UsageError("--perturb/--remove need --target")
        target = g.node_id(args.target)
        if args.perturb:
            value = vulnerability(g, target, g.node_id(args.perturb), cfg)
            rows = [{"node": args.perturb, "score": value}]
            kind = "vulnerability"
        else:
            value = influence(g, target, g.node_id(args.remove), cfg)
            rows = [{"node": args.remove, "score": value}]
            kind = "influence"

    if args.format == "json":
        doc = {"manifest": manifest.to_dict(), "kind": kind, "target": args.target, "rows": rows}
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args, manifest)
    elif args.format == "csv":
        lines = ["node,score"] + [f"{r['node']},{_fmt_data(r['score'])}" for r in rows]
        _emit("\n".join(lines) + "\n", args, manifest)
    else:
        lines = [f"{kind}" + (f" target={args.target}" if args.target else "")]
        lines += [f"  {r['node']}  {_fmt(r['score'])}" for r in rows]
        _emit("\n".join(lines) + "\n", args, manifest)
    return 0


# --- fixtures ----------------------------------------------------------------


def _cmd_fixtures(args) -> int:
    node_path, edge_path = write_fixture(args.name, args.outdir, __version__)
    sys.stdout.write(f"{node_path}\n{edge_path}\n")
    return 0


# --- trade -------------------------------------------------------------------


def _cmd_trade(args) -> int:
    aliases = load_alias_map(args.aliases) if args.aliases else None
    records = load_trade_flows(args.flows, aliases)
    skeleton = build_trade_network(records, args.year, args.threshold)

    table = load_indicator_table(args.indicators)
    specs = load_indicator_specs(args.indicator_spec)
    harms = build_harm_scores(
        table, specs, k=args.topk_worst, allow_partial=args.allow_partial
    )
    pruned = prune_trade_network(skeleton, harms, mode=args.prune_mode)

    cfg = _config_from_args(args, pruned)
    manifest = RunManifest(
        command="trade",
        config=cfg.to_dict(),
        inputs={
            "flows": args.flows,
            "indicators": args.indicators,
            "indicator_spec": args.indicator_spec,
            "aliases": args.aliases,
            "year": args.year,
            "threshold": args.threshold,
            "prune_mode": args.prune_mode,
            "topk_worst": args.topk_worst,
            "allow_partial": args.allow_partial,
        },
        output=args.outdir,
        seed=args.seed,
    )
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    mline = f"# manifest: {manifest.to_json()}"

    save_graph(
        pruned,
        outdir / "network_nodes.csv",
        outdir / "network_edges.csv",
        comments=[f"manifest: {manifest.to_json()}"],
    )

    net_harm = {i: network_harm(pruned, i, cfg) for i in range(pruned.num_nodes)}
    score_lines = [mline, "country,intrinsic_harm,network_harm"]
    for i in range(pruned.num_nodes):
        score_lines.append(
            f"{pruned.labels[i]},{canonical_float(pruned.harms[i])},{canonical_float(net_harm[i])}"
        )
    (outdir / "scores.csv").write_text("\n".join(score_lines) + "\n", encoding="utf-8")

    gi = global_influence_all(pruned, cfg)
    gi_lines = [mline, "country,global_influence"]
    for b in sorted(gi, key=lambda b: (gi[b], pruned.labels[b])):
        gi_lines.append(f"{pruned.labels[b]},{canonical_float(gi[b])}")
    (outdir / "global_influence.csv").write_text("\n".join(gi_lines) + "\n", encoding="utf-8")

    doc = {
        "manifest": manifest.to_dict(),
        "graph": graph_to_doc(pruned),
        "scores": [
            {
                "country": pruned.labels[i],
                "intrinsic_harm": pruned.harms[i],
                "network_harm": net_harm[i],
            }
            for i in range(pruned.num_nodes)
        ],
        "global_influence": [
            {"country": pruned.labels[b], "gi": gi[b]}
            for b in sorted(gi, key=lambda b: (gi[b], pruned.labels[b]))
        ],
        "pruning": {
            "countries_before": skeleton.num_nodes,
            "countries_after": pruned.num_nodes,
            "mode": args.prune_mode,
        },
    }
    (outdir / "trade_result.json").write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    (outdir / "manifest.json").write_text(manifest.to_json() + "\n", encoding="utf-8")

    sys.stdout.write(
        f"trade network: {skeleton.num_nodes} countries with flows, "
        f"{pruned.num_nodes} after {args.prune_mode} pruning "
        f"({pruned.num_edges} edges); outputs in {outdir}\n"
    )
    return 0


# --- serve -------------------------------------------------------------------


def _cmd_serve(args) -> int:
    from .service import create_app  # deferred: fastapi import is heavy

    g, _ = _load_input_graph(args)
    app = create_app(g, session_timeout=args.session_timeout, ui_dir=args.ui)
    import uvicorn

    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except OSError as e:
        sys.stderr.write(f"bind failure on {args.host}:{args.port}: {e}\n")
        return 3
    return 0


# --- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmnet",
        description="Score harm propagation on node-valued supply networks.",
    )
    parser.add_argument("--version", action="version", version=f"harmnet {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("score", help="network harm with per-level breakdown")
    _add_input_args(p)
    _add_config_args(p)
    p.add_argument("--target", action="append", help="node label (repeatable; default: all)")
    p.add_argument("--verify-reduction", action="store_true",
                   help="check sum/sum over all walks against the dense closed form")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--output", help="write to file instead of stdout")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_score)

    p = sub.add_parser("whatif", help="vulnerability / influence / global influence")
    _add_input_args(p)
    _add_config_args(p)
    p.add_argument("--target", help="node whose score is examined")
    p.add_argument("--perturb", metavar="B", help="vulnerability: set B's harm to 100")
    p.add_argument("--remove", metavar="B", help="influence: delete B from the network")
    p.add_argument("--global", dest="global_", action="store_true",
                   help="global influence ranking over all nodes")
    p.add_argument("--rank", choices=["vulnerability", "influence"],
                   help="ranked report over all partners of --target")
    p.add_argument("--top", type=int, default=10, help="rows in ranked reports")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--output", help="write to file instead of stdout")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_whatif)

    p = sub.add_parser("fixtures", help="write a bundled demo network to CSV")
    p.add_argument("name", type=_enum_type("fixture", sorted(FIXTURES)))
    p.add_argument("--outdir", default=".")
    p.set_defaults(fn=_cmd_fixtures)

    p = sub.add_parser("trade", help="flow file + indicators -> scored country network")
    p.add_argument("--flows", required=True, help="origin,dest,sector,year,value_usd")
    p.add_argument("--indicators", required=True, help="entity,indicator,value")
    p.add_argument("--indicator-spec", required=True, help="indicator,higher_is_better")
    p.add_argument("--aliases", help="label,code alias map for country names")
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--threshold", type=float, default=100e6,
                   help="edge kept when summed flow strictly exceeds this (default 1e8)")
    p.add_argument("--prune-mode", choices=["fixpoint", "once"], default="fixpoint")
    p.add_argument("--topk-worst", type=int, default=3,
                   help="intrinsic harm = mean of this many worst indicators")
    p.add_argument("--allow-partial", type=int, default=None,
                   help="keep entities with at least this many indicators present")
    _add_config_args(p)
    p.add_argument("--outdir", default="out")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_trade)

    p = sub.add_parser("serve", help="HTTP what-if service over a loaded graph")
    _add_input_args(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--session-timeout", type=float, default=3600.0)
    p.add_argument("--ui", help="static directory to serve at / (the built frontend)")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 2
    except HarmnetError as e:
        sys.stderr.write(f"error: {e}\n")
        return 3
    except FileNotFoundError as e:
        sys.stderr.write(f"error: {e}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
