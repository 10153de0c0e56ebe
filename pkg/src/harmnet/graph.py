"""Directed node-valued graph: construction, neighborhood queries, preprocessing.

Nodes carry a harm score in [0, 100] (0 = best behaviour, 100 = worst).
Edges are unweighted and directed; (u, v) reads "u supplies v". Graphs are
immutable after construction, so they can be shared freely across analysis
workers; any mutation is expressed as a rebuild.
"""

from __future__ import annotations

import enum
import math
import warnings
from collections import deque
from typing import Iterable, Sequence

from .errors import (
    DuplicateNode,
    EmptyGraph,
    HarmOutOfRange,
    SelfLoop,
    UnknownEndpoint,
    UnknownNode,
)

NodeId = int

HARM_MIN = 0.0
HARM_MAX = 100.0


class Direction(enum.Enum):
    """Orientation of harm accumulation relative to a target node.

    UPSTREAM walks supply relations backwards (who feeds the target),
    DOWNSTREAM walks them forwards (who consumes the target's output).
    """

    UPSTREAM = "upstream"
    DOWNSTREAM = "downstream"


class HarmGraph:
    """Immutable directed graph with dense integer node ids.

    Ids are assigned in input order, which keeps every derived artifact
    (scores, rankings, exports) reproducible for a given input file.
    """

    __slots__ = ("labels", "harms", "names", "out_lists", "in_lists", "edges", "_index")

    def __init__(
        self,
        labels: tuple[str, ...],
        harms: tuple[float, ...],
        out_lists: tuple[tuple[int, ...], ...],
        in_lists: tuple[tuple[int, ...], ...],
        edges: tuple[tuple[int, int], ...],
        names: tuple[str | None, ...] | None = None,
    ):
        self.labels = labels
        self.harms = harms
        self.names = names if names is not None else tuple(None for _ in labels)
        self.out_lists = out_lists
        self.in_lists = in_lists
        self.edges = edges
        self._index = {lab: i for i, lab in enumerate(labels)}

    # -- basic queries ----------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def node_id(self, label: str) -> NodeId:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownNode(f"no node labelled {label!r}") from None

    def has_label(self, label: str) -> bool:
        return label in self._index

    def label(self, node: NodeId) -> str:
        self.check_node(node)
        return self.labels[node]

    def harm(self, node: NodeId) -> float:
        self.check_node(node)
        return self.harms[node]

    def check_node(self, node: NodeId) -> None:
        if not isinstance(node, int) or isinstance(node, bool) or not (0 <= node < len(self.labels)):
            raise UnknownNode(f"node id {node!r} not in graph with {len(self.labels)} nodes")

    def in_neighbors(self, node: NodeId) -> set[NodeId]:
        """Direct suppliers of `node` (no multiplicity)."""
        self.check_node(node)
        return set(self.in_lists[node])

    def out_neighbors(self, node: NodeId) -> set[NodeId]:
        """Direct customers of `node` (no multiplicity)."""
        self.check_node(node)
        return set(self.out_lists[node])

    # -- views ------------------------------------------------------------

    def node_rows(self) -> list[tuple[str, float, str | None]]:
        return [(self.labels[i], self.harms[i], self.names[i]) for i in range(self.num_nodes)]

    def edge_rows(self) -> list[tuple[str, str]]:
        return [(self.labels[u], self.labels[v]) for u, v in self.edges]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HarmGraph):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.harms == other.harms
            and self.names == other.names
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.harms, self.edges))

    def __repr__(self) -> str:
        return f"HarmGraph(n={self.num_nodes}, m={self.num_edges})"


def build_graph(
    nodes: Sequence[tuple],
    edges: Iterable[tuple[str, str]],
) -> HarmGraph:
    """Build a HarmGraph from (label, harm[, name]) rows and (src, dst) label pairs.

    Ids are dense 0..n-1 in input order. Duplicate edges collapse; self-loops
    are rejected because a node supplying itself carries no meaning here and
    would corrupt path levels.
    """
    labels: list[str] = []
    harms: list[float] = []
    names: list[str | None] = []
    for row in nodes:
        if len(row) == 2:
            label, harm = row
            name = None
        else:
            label, harm, name = row
        if label in set(labels):
            raise DuplicateNode(f"duplicate node label {label!r}")
        harm = float(harm)
        if math.isnan(harm) or not (HARM_MIN <= harm <= HARM_MAX):
            raise HarmOutOfRange(f"harm {harm!r} for {label!r} outside [0, 100]")
        labels.append(label)
        harms.append(harm)
        names.append(name)

    index = {lab: i for i, lab in enumerate(labels)}
    edge_ids: set[tuple[int, int]] = set()
    for src, dst in edges:
        if src not in index:
            raise UnknownEndpoint(f"edge source {src!r} is not a declared node")
        if dst not in index:
            raise UnknownEndpoint(f"edge destination {dst!r} is not a declared node")
        u, v = index[src], index[dst]
        if u == v:
            raise SelfLoop(f"self-loop on {src!r} rejected")
        edge_ids.add((u, v))

    n = len(labels)
    out_sets: list[list[int]] = [[] for _ in range(n)]
    in_sets: list[list[int]] = [[] for _ in range(n)]
    for u, v in sorted(edge_ids):
        out_sets[u].append(v)
        in_sets[v].append(u)
    return HarmGraph(
        labels=tuple(labels),
        harms=tuple(harms),
        names=tuple(names),
        out_lists=tuple(tuple(sorted(s)) for s in out_sets),
        in_lists=tuple(tuple(sorted(s)) for s in in_sets),
        edges=tuple(sorted(edge_ids)),
    )


def subgraph(g: HarmGraph, keep: Iterable[NodeId]) -> HarmGraph:
    """Induced subgraph on `keep`, with ids re-densified in original order."""
    keep_set = set(keep)
    for u in keep_set:
        g.check_node(u)
    nodes = [(g.labels[i], g.harms[i], g.names[i]) for i in range(g.num_nodes) if i in keep_set]
    edges = [
        (g.labels[u], g.labels[v])
        for u, v in g.edges
        if u in keep_set and v in keep_set
    ]
    return build_graph(nodes, edges)


def with_harms(g: HarmGraph, harms: dict[str, float]) -> HarmGraph:
    """Copy of `g` with the harm of each labelled node replaced."""
    nodes = []
    for i in range(g.num_nodes):
        lab = g.labels[i]
        nodes.append((lab, harms.get(lab, g.harms[i]), g.names[i]))
    return build_graph(nodes, g.edge_rows())


def k_core(g: HarmGraph, k: int) -> HarmGraph:
    """Maximal subgraph whose every node has projected degree >= k.

    Degrees are taken on the undirected projection and count distinct
    neighbors; the induced directed edges are retained. May be empty.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return g
    n = g.num_nodes
    nbrs: list[set[int]] = [set(g.out_lists[u]) | set(g.in_lists[u]) for u in range(n)]
    alive = [True] * n
    queue = deque(u for u in range(n) if len(nbrs[u]) < k)
    while queue:
        u = queue.popleft()
        if not alive[u]:
            continue
        alive[u] = False
        for v in nbrs[u]:
            if alive[v]:
                nbrs[v].discard(u)
                if len(nbrs[v]) < k:
                    queue.append(v)
    return subgraph(g, [u for u in range(n) if alive[u]])


def is_acyclic(g: HarmGraph) -> bool:
    """Kahn peeling; True when the graph has no directed cycle."""
    indeg = [len(g.in_lists[u]) for u in range(g.num_nodes)]
    queue = deque(u for u in range(g.num_nodes) if indeg[u] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in g.out_lists[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return seen == g.num_nodes


def spectral_radius_estimate(
    g: HarmGraph, rel_tol: float = 1e-8, max_iter: int = 10_000
) -> float:
    """Largest adjacency eigenvalue modulus, by power iteration.

    Acyclic graphs short-circuit to 0 (nilpotent adjacency). Otherwise the
    iteration runs on A + I, which is aperiodic for any 0/1 adjacency, so the
    norm ratio cannot oscillate the way it does on a bare cycle. Because the
    dominant eigenvalue of a digraph is often defective (coupled cycles), the
    raw ratio converges only like 1/k; two Richardson extrapolation levels
    over doubling checkpoints remove the 1/k and 1/k^2 terms, and convergence
    is declared when the extrapolated value is stable to rel_tol across a
    doubling. On non-convergence the max-degree upper bound is returned,
    flagged as approximate via a RuntimeWarning.
    """
    n = g.num_nodes
    if n == 0:
        raise EmptyGraph("spectral radius of an empty graph is undefined")
    if g.num_edges == 0 or is_acyclic(g):
        return 0.0
    x = [1.0] * n
    ratio_at: dict[int, float] = {}
    level1_at: dict[int, float] = {}
    level2_prev = None
    checkpoint = 8
    k = 0
    while k < max_iter:
        k += 1
        y = [math.fsum([x[u]] + [x[v] for v in g.out_lists[u]]) for u in range(n)]
        norm = max(abs(val) for val in y)
        x = [val / norm for val in y]
        if k == checkpoint:
            ratio_at[k] = norm
            half = k // 2
            if half in ratio_at:
                level1_at[k] = 2 * ratio_at[k] - ratio_at[half]
                if half in level1_at:
                    level2 = (4 * level1_at[k] - level1_at[half]) / 3
                    if level2_prev is not None and abs(level2 - level2_prev) <= rel_tol * max(
                        abs(level2), 1e-12
                    ):
                        return max(level2 - 1.0, 0.0)
                    level2_prev = level2
            checkpoint *= 2
    fallback = float(
        max(
            max((len(s) for s in g.in_lists), default=0),
            max((len(s) for s in g.out_lists), default=0),
        )
    )
    warnings.warn(
        "power iteration did not converge; returning max-degree upper bound "
        f"{fallback} (approximate)",
        RuntimeWarning,
        stacklevel=2,
    )
    return fallback


def bfs_distances(g: HarmGraph, source: NodeId, direction: Direction) -> dict[NodeId, int]:
    """Hop distances from `source`.

    UPSTREAM gives d(j -> source) along edge direction (following in-edges
    outward from the source); DOWNSTREAM gives d(source -> j).
    """
    g.check_node(source)
    step = g.in_lists if direction is Direction.UPSTREAM else g.out_lists
    dist = {source: 0}
    frontier = deque([source])
    while frontier:
        v = frontier.popleft()
        for u in step[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                frontier.append(u)
    return dist


def diameter(g: HarmGraph) -> int:
    """Largest finite directed hop distance; 0 when no edges exist."""
    best = 0
    for source in range(g.num_nodes):
        dist = bfs_distances(g, source, Direction.DOWNSTREAM)
        if dist:
            best = max(best, max(dist.values()))
    return best
