"""Bundled demo networks used by the golden tests, the CLI and the docs.

Each builder returns a small HarmGraph with hand-picked harms. The fig5
family is a two-level supply tree that grows extra base suppliers, a direct
shortcut and finally a loop, so the three variants tease apart the
path-counting schemes; fig6 is a deeper toy network whose long winding path
makes influence analysis interesting. The names are stable public ids.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from .errors import UnknownFixture
from .graph import HarmGraph, build_graph


def fig3a() -> HarmGraph:
    # two targets with the same worst supplier: max aggregation cannot tell
    # them apart, no matter what the remaining suppliers do
    return build_graph(
        [("a", 0), ("b", 0), ("a1", 100), ("b1", 100), ("b2", 5), ("b3", 5)],
        [("a1", "a"), ("b1", "b"), ("b2", "b"), ("b3", "b")],
    )


def fig3b() -> HarmGraph:
    # two targets with the same supplier average: a bad association offset by
    # a good one looks neutral under avg aggregation
    return build_graph(
        [("a", 0), ("b", 0), ("a1", 50), ("a2", 50), ("b1", 100), ("b2", 0)],
        [("a1", "a"), ("a2", "a"), ("b1", "b"), ("b2", "b")],
    )


def fig5a() -> HarmGraph:
    # two-level tree above target a: level maxima (85, 75), averages (47.5, 61.25)
    return build_graph(
        [("a", 0), ("b", 85), ("c", 10), ("d", 75), ("e", 60), ("f", 50), ("g", 60)],
        [("b", "a"), ("c", "a"), ("d", "b"), ("e", "b"), ("f", "c"), ("g", "c")],
    )


def fig5b() -> HarmGraph:
    # fig5a plus two base suppliers (h=100 feeding two branches, i=50) and a
    # direct d -> a shortcut, so d sits at levels 1 and 2 for simple paths
    g = fig5a()
    nodes = g.node_rows() + [("h", 100, None), ("i", 50, None)]
    edges = g.edge_rows() + [("d", "a"), ("h", "f"), ("h", "g"), ("i", "e")]
    return build_graph(nodes, edges)


def fig5c() -> HarmGraph:
    # fig5b plus b -> d, closing a 2-loop with d -> b and creating exactly one
    # simple path of length 4: i -> e -> b -> d -> a (harms 50,60,85,75,0)
    g = fig5b()
    return build_graph(g.node_rows(), g.edge_rows() + [("b", "d")])


def fig6() -> HarmGraph:
    # depth-3 supply network for target a whose longest simple path has
    # length 7 (w -> g -> e -> f -> d -> c -> b -> a); the 90-rated supplier g
    # reaches a through the central first-layer node b
    return build_graph(
        [
            ("a", 0),
            ("b", 50),
            ("c", 30),
            ("d", 20),
            ("e", 40),
            ("f", 35),
            ("g", 90),
            ("w", 100),
        ],
        [
            ("b", "a"),
            ("c", "a"),
            ("d", "a"),
            ("g", "b"),
            ("e", "c"),
            ("f", "d"),
            ("w", "g"),
            ("g", "e"),
            ("e", "f"),
            ("d", "c"),
            ("c", "b"),
        ],
    )


def chain() -> HarmGraph:
    return build_graph(
        [("a", 0), ("b", 0), ("c", 100)],
        [("c", "b"), ("b", "a")],
    )


def cycle() -> HarmGraph:
    return build_graph(
        [("a", 10), ("g", 60), ("d", 90)],
        [("a", "g"), ("g", "d"), ("d", "a")],
    )


def star() -> HarmGraph:
    leaves = [f"leaf{i}" for i in range(1, 6)]
    return build_graph(
        [("hub", 0)] + [(leaf, 0) for leaf in leaves],
        [(leaf, "hub") for leaf in leaves],
    )


FIXTURES: dict[str, Callable[[], HarmGraph]] = {
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig5a": fig5a,
    "fig5b": fig5b,
    "fig5c": fig5c,
    "fig6": fig6,
    "chain": chain,
    "cycle": cycle,
    "star": star,
}

DESCRIPTIONS = {
    "fig3a": "max aggregation blind spot: equal worst supplier, different rest",
    "fig3b": "avg aggregation blind spot: bad association offset by a good one",
    "fig5a": "two-level supply tree (level maxima 85/75, averages 47.5/61.25)",
    "fig5b": "fig5a + two base suppliers and a direct shortcut from the 75 node",
    "fig5c": "fig5b + a supply loop; single length-4 path 50-60-85-75-target",
    "fig6": "depth-3 what-if demo network, longest simple path of length 7",
    "chain": "three-node chain c -> b -> a with all harm at the far end",
    "cycle": "directed 3-cycle, the smallest looping supply relation",
    "star": "five identical leaves supplying one hub",
}


def build_fixture(name: str) -> HarmGraph:
    try:
        builder = FIXTURES[name]
    except KeyError:
        known = ", ".join(sorted(FIXTURES))
        raise UnknownFixture(f"unknown fixture {name!r} (choose from: {known})") from None
    return builder()


def write_fixture(name: str, outdir: str | Path, tool_version: str) -> tuple[Path, Path]:
    """Write <name>_nodes.csv and <name>_edges.csv with provenance headers."""
    from . import ingest  # local import to avoid a cycle

    g = build_fixture(name)
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    node_path = outdir / f"{name}_nodes.csv"
    edge_path = outdir / f"{name}_edges.csv"
    comments = [
        f"fixture: {name} - {DESCRIPTIONS[name]}",
        f"generated by harmnet {tool_version} (harmnet fixtures {name})",
    ]
    ingest.save_graph(g, node_path, edge_path, comments=comments)
    return node_path, edge_path
