"""Counterfactual scoring: vulnerability, influence, global influence, rankings.

All scenario evaluation is non-destructive: an overlay of harm overrides and
node removals is applied by rebuilding a derived graph, and the base graph is
never touched. Removal deletes the node and every incident edge, which may
lengthen or sever paths; there is no rerouting.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import InvalidOverlay, SelfQuery
from .graph import HARM_MAX, HARM_MIN, HarmGraph, NodeId, build_graph
from .metrics import HarmConfig, network_harm


@dataclass(frozen=True)
class ScenarioOverlay:
    """Harm overrides plus node removals, validated against a base graph."""

    harm_overrides: dict[NodeId, float] = field(default_factory=dict)
    removed_nodes: frozenset[NodeId] = frozenset()

    def validate(self, g: HarmGraph) -> None:
        for node, harm in self.harm_overrides.items():
            g.check_node(node)
            if not (HARM_MIN <= harm <= HARM_MAX):
                raise InvalidOverlay(f"override {harm} for node {node} outside [0, 100]")
        for node in self.removed_nodes:
            g.check_node(node)
        both = set(self.harm_overrides) & set(self.removed_nodes)
        if both:
            raise InvalidOverlay(f"nodes both overridden and removed: {sorted(both)}")

    def is_empty(self) -> bool:
        return not self.harm_overrides and not self.removed_nodes


def apply_overlay(g: HarmGraph, overlay: ScenarioOverlay) -> HarmGraph:
    """Materialise the overlay as a fresh graph (base graph untouched)."""
    overlay.validate(g)
    removed = overlay.removed_nodes
    nodes = []
    for i in range(g.num_nodes):
        if i in removed:
            continue
        harm = overlay.harm_overrides.get(i, g.harms[i])
        nodes.append((g.labels[i], harm, g.names[i]))
    edges = [
        (g.labels[u], g.labels[v])
        for u, v in g.edges
        if u not in removed and v not in removed
    ]
    return build_graph(nodes, edges)


def scored_with(
    g: HarmGraph, overlay: ScenarioOverlay, target: NodeId, cfg: HarmConfig
) -> float:
    """network_harm of `target` on the overlaid graph."""
    g.check_node(target)
    if target in overlay.removed_nodes:
        raise InvalidOverlay("the scored target cannot be removed")
    if overlay.is_empty():
        return network_harm(g, target, cfg)
    derived = apply_overlay(g, overlay)
    return network_harm(derived, derived.node_id(g.labels[target]), cfg)


def vulnerability(g: HarmGraph, target: NodeId, b: NodeId, cfg: HarmConfig) -> float:
    """How much worse the target's score gets if b turns maximally harmful."""
    g.check_node(target)
    g.check_node(b)
    if b == target:
        raise SelfQuery("vulnerability of a node to itself is undefined")
    base = network_harm(g, target, cfg)
    worst = scored_with(g, ScenarioOverlay(harm_overrides={b: HARM_MAX}), target, cfg)
    return worst - base


def influence(g: HarmGraph, target: NodeId, b: NodeId, cfg: HarmConfig) -> float:
    """Change in the target's score when b disappears from the network.

    Negative influence means b's presence worsens the target's score.
    """
    g.check_node(target)
    g.check_node(b)
    if b == target:
        raise SelfQuery("influence of a node on itself is undefined")
    base = network_harm(g, target, cfg)
    without = scored_with(g, ScenarioOverlay(removed_nodes=frozenset([b])), target, cfg)
    return without - base


def global_influence(
    g: HarmGraph,
    b: NodeId,
    cfg: HarmConfig,
    base_scores: dict[NodeId, float] | None = None,
) -> float:
    """Sum of b's influence on every other node; one graph rebuild per b."""
    g.check_node(b)
    if base_scores is None:
        base_scores = baseline_scores(g, cfg)
    reduced = apply_overlay(g, ScenarioOverlay(removed_nodes=frozenset([b])))
    total = 0.0
    for n in range(g.num_nodes):
        if n == b:
            continue
        after = network_harm(reduced, reduced.node_id(g.labels[n]), cfg)
        total += after - base_scores[n]
    return total


def baseline_scores(g: HarmGraph, cfg: HarmConfig) -> dict[NodeId, float]:
    return {n: network_harm(g, n, cfg) for n in range(g.num_nodes)}


def influence_matrix(
    g: HarmGraph, cfg: HarmConfig, max_workers: int | None = None
) -> dict[NodeId, dict[NodeId, float]]:
    """matrix[b][n] = influence of b on n, for all ordered pairs.

    Rows are computed concurrently (the base graph is immutable) and merged
    in node-id order, so the result is deterministic regardless of worker
    scheduling.
    """
    base = baseline_scores(g, cfg)

    def row(b: NodeId) -> dict[NodeId, float]:
        reduced = apply_overlay(g, ScenarioOverlay(removed_nodes=frozenset([b])))
        return {
            n: network_harm(reduced, reduced.node_id(g.labels[n]), cfg) - base[n]
            for n in range(g.num_nodes)
            if n != b
        }

    ids = list(range(g.num_nodes))
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        rows = list(pool.map(row, ids))
    return {b: rows[b] for b in ids}


def global_influence_all(
    g: HarmGraph, cfg: HarmConfig, max_workers: int | None = None
) -> dict[NodeId, float]:
    matrix = influence_matrix(g, cfg, max_workers=max_workers)
    return {b: sum(row.values()) for b, row in matrix.items()}


class ReportKind(enum.Enum):
    VULNERABILITY = "vulnerability"
    INFLUENCE = "influence"


@dataclass(frozen=True)
class InfluenceReport:
    """Per-node what-if scores for one target, ranked by absolute size."""

    target: NodeId
    kind: ReportKind
    config: HarmConfig
    scores: dict[NodeId, float]
    ranking: tuple[NodeId, ...]

    def top(self, n: int) -> list[tuple[NodeId, float]]:
        return [(node, self.scores[node]) for node in self.ranking[:n]]


def rank_report(
    g: HarmGraph,
    target: NodeId,
    kind: ReportKind,
    cfg: HarmConfig,
    top_n: int,
) -> InfluenceReport:
    """Score every other node and rank by |score| descending, ties by label."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    g.check_node(target)
    fn = vulnerability if kind is ReportKind.VULNERABILITY else influence
    scores = {
        b: fn(g, target, b, cfg) for b in range(g.num_nodes) if b != target
    }
    ranking = tuple(
        sorted(scores, key=lambda b: (-abs(scores[b]), g.labels[b]))
    )
    return InfluenceReport(
        target=target, kind=kind, config=cfg, scores=scores, ranking=ranking[:top_n]
    )
