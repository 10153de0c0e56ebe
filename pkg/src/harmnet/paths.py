"""Per-level origin multisets for a target under four path-counting schemes.

A level m holds the nodes that originate (upstream) or terminate (downstream)
qualifying paths of length m relative to the target, with multiplicity equal
to the number of qualifying paths. The schemes differ in which paths qualify:

* ALL_PATHS        - every walk, revisits allowed; counts match adjacency
                     matrix powers, so truncation at m_max is mandatory on
                     cyclic graphs.
* SIMPLE_PATHS     - paths without repeated nodes (DFS with on-path marking;
                     exponential worst case, guarded by an explicit budget).
* ALL_SHORTEST     - shortest paths with path multiplicity (BFS + counting DP).
* SINGLE_SHORTEST  - each node once, at its shortest distance.

The target never appears inside a level: a node does not feed harm to itself,
so walks that would place the target at a level origin/endpoint are dropped.
Walks that merely pass through the target (possible only under ALL_PATHS)
still count, which is what keeps the matrix-power identity exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import BudgetExceeded, GraphTooLarge, InvalidMMax
from .graph import Direction, HarmGraph, NodeId, bfs_distances

DEFAULT_SIMPLE_PATH_BUDGET = 10_000_000
DEFAULT_ORACLE_NODE_CAP = 12


class PathScheme(enum.Enum):
    ALL_PATHS = "all"
    SIMPLE_PATHS = "simple"
    ALL_SHORTEST = "shortest-all"
    SINGLE_SHORTEST = "shortest-one"


@dataclass(frozen=True)
class LevelMultiset:
    """Origin (or endpoint) nodes of level `level`, with path multiplicities."""

    level: int
    counts: dict[NodeId, int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.counts.values())

    def is_empty(self) -> bool:
        return not self.counts


@dataclass(frozen=True)
class LevelDecomposition:
    """Levels 1..m_max for one target; empty levels stay as empty multisets."""

    target: NodeId
    direction: Direction
    scheme: PathScheme
    m_max: int
    levels: tuple[LevelMultiset, ...]

    def __post_init__(self):
        if len(self.levels) != self.m_max:
            raise ValueError("level list must have exactly m_max entries")

    def max_nonempty_level(self) -> int:
        """0 when the whole decomposition is empty."""
        best = 0
        for lm in self.levels:
            if not lm.is_empty():
                best = lm.level
        return best


def _check_m_max(m_max) -> None:
    if not isinstance(m_max, int) or isinstance(m_max, bool) or m_max < 1:
        raise InvalidMMax(f"m_max must be an integer >= 1, got {m_max!r}")


def _neighbor_maps(g: HarmGraph, direction: Direction):
    """(away, toward): adjacency read in expansion vs. summation order.

    `away[v]` steps away from the target (explored by BFS/DFS frontiers);
    `toward[u]` steps back toward it (used by counting recurrences).
    """
    if direction is Direction.UPSTREAM:
        return g.in_lists, g.out_lists
    return g.out_lists, g.in_lists


def decompose(
    g: HarmGraph,
    target: NodeId,
    direction: Direction,
    scheme: PathScheme,
    m_max: int,
    simple_path_budget: int = DEFAULT_SIMPLE_PATH_BUDGET,
) -> LevelDecomposition:
    """Level multisets for `target` under `scheme`, for m = 1..m_max.

    Multiplicities are exact path counts (Python ints, so walk counts under
    ALL_PATHS never overflow). SINGLE_SHORTEST multiplicities are all 1.
    """
    g.check_node(target)
    _check_m_max(m_max)
    n = g.num_nodes
    away, toward = _neighbor_maps(g, direction)
    levels: list[dict[NodeId, int]] = [dict() for _ in range(m_max)]

    if scheme is PathScheme.ALL_PATHS:
        _all_walk_levels(target, away, m_max, levels)
    elif scheme is PathScheme.SIMPLE_PATHS:
        _simple_path_levels(g, target, away, m_max, levels, simple_path_budget)
    else:
        dist = bfs_distances(g, target, direction)
        m_eff = min(m_max, n - 1)
        if scheme is PathScheme.SINGLE_SHORTEST:
            for u, d in dist.items():
                if u != target and 1 <= d <= m_eff:
                    levels[d - 1][u] = 1
        else:
            npaths = _shortest_path_counts(target, toward, dist)
            for u, d in dist.items():
                if u != target and 1 <= d <= m_eff:
                    levels[d - 1][u] = npaths[u]

    return LevelDecomposition(
        target=target,
        direction=direction,
        scheme=scheme,
        m_max=m_max,
        levels=tuple(LevelMultiset(m + 1, lv) for m, lv in enumerate(levels)),
    )


def _all_walk_levels(target, away, m_max, levels) -> None:
    # cur[v] = number of length-(m-1) walks between v and the target; the
    # target's own entry stays in cur so walks passing through it keep
    # counting, which the matrix-power identity requires.
    cur: dict[NodeId, int] = {target: 1}
    for m in range(1, m_max + 1):
        nxt: dict[NodeId, int] = {}
        for v, c in cur.items():
            for u in away[v]:
                nxt[u] = nxt.get(u, 0) + c
        levels[m - 1] = {u: c for u, c in nxt.items() if u != target}
        if not nxt:
            break
        cur = nxt


def _simple_path_levels(g, target, away, m_max, levels, budget_limit) -> None:
    m_eff = min(m_max, g.num_nodes - 1)
    budget = budget_limit
    on_path = bytearray(g.num_nodes)
    on_path[target] = 1
    # Iterative DFS; stack[k] holds the node at depth k and its hop iterator.
    stack = [(target, iter(away[target]))]
    while stack:
        v, it = stack[-1]
        u = next(it, None)
        if u is None:
            stack.pop()
            if v != target:
                on_path[v] = 0
            continue
        if on_path[u]:
            continue
        d = len(stack)
        lvl = levels[d - 1]
        lvl[u] = lvl.get(u, 0) + 1
        budget -= 1
        if budget < 0:
            raise BudgetExceeded(
                f"more than {budget_limit} simple paths for this query"
            )
        if d < m_eff:
            on_path[u] = 1
            stack.append((u, iter(away[u])))


def _shortest_path_counts(target, toward, dist) -> dict[NodeId, int]:
    npaths: dict[NodeId, int] = {target: 1}
    for d, u in sorted((d, u) for u, d in dist.items()):
        if u == target:
            continue
        npaths[u] = sum(npaths[w] for w in toward[u] if dist.get(w, -1) == d - 1)
    return npaths


def enumerate_paths_oracle(
    g: HarmGraph,
    target: NodeId,
    direction: Direction,
    scheme: PathScheme,
    m_max: int,
    node_cap: int = DEFAULT_ORACLE_NODE_CAP,
    path_budget: int = 1_000_000,
) -> list[tuple[NodeId, ...]]:
    """Exhaustive listing of every qualifying path, for verification.

    Upstream paths read (origin, ..., target); downstream (target, ...,
    endpoint). Collapsing origins/endpoints by length reproduces decompose.
    Guarded by a node cap because enumeration is exponential.
    """
    g.check_node(target)
    _check_m_max(m_max)
    n = g.num_nodes
    if n > node_cap:
        raise GraphTooLarge(f"oracle capped at {node_cap} nodes, graph has {n}")
    away, toward = _neighbor_maps(g, direction)
    upstream = direction is Direction.UPSTREAM
    out: list[tuple[NodeId, ...]] = []

    def emit(seq: list[NodeId]) -> None:
        # seq is built target-first; reorder so upstream paths read
        # origin -> target.
        if len(out) >= path_budget:
            raise BudgetExceeded(f"oracle path budget {path_budget} exceeded")
        out.append(tuple(reversed(seq)) if upstream else tuple(seq))

    if scheme is PathScheme.ALL_PATHS:

        def walk(seq: list[NodeId]) -> None:
            if len(seq) > m_max:
                return
            v = seq[-1]
            for u in away[v]:
                seq.append(u)
                if u != target:
                    emit(seq)
                walk(seq)
                seq.pop()

        walk([target])
    elif scheme is PathScheme.SIMPLE_PATHS:
        m_eff = min(m_max, n - 1)

        def simple(seq: list[NodeId], on_path: set[NodeId]) -> None:
            if len(seq) > m_eff:
                return
            v = seq[-1]
            for u in away[v]:
                if u in on_path:
                    continue
                seq.append(u)
                on_path.add(u)
                emit(seq)
                simple(seq, on_path)
                on_path.discard(u)
                seq.pop()

        simple([target], {target})
    elif scheme is PathScheme.ALL_SHORTEST:
        dist = bfs_distances(g, target, direction)
        m_eff = min(m_max, n - 1)

        def shortest(seq: list[NodeId]) -> None:
            d = len(seq) - 1
            if d >= m_eff:
                return
            for u in away[seq[-1]]:
                if dist.get(u, -1) == d + 1:
                    seq.append(u)
                    emit(seq)
                    shortest(seq)
                    seq.pop()

        shortest([target])
    else:  # SINGLE_SHORTEST: one deterministic shortest path per reachable node
        dist = bfs_distances(g, target, direction)
        m_eff = min(m_max, n - 1)
        for u in sorted(dist):
            if u == target or dist[u] > m_eff:
                continue
            seq = [u]
            cur = u
            while dist[cur] > 0:
                cur = min(w for w in toward[cur] if dist.get(w, -1) == dist[cur] - 1)
                seq.append(cur)
            if len(out) >= path_budget:
                raise BudgetExceeded(f"oracle path budget {path_budget} exceeded")
            # seq runs node -> target already
            out.append(tuple(seq) if upstream else tuple(reversed(seq)))

    out.sort()
    return out


def collapse_paths(
    paths: list[tuple[NodeId, ...]],
    direction: Direction,
    target: NodeId,
    m_max: int,
) -> list[dict[NodeId, int]]:
    """Fold explicit paths back into per-level multisets (oracle cross-check)."""
    levels: list[dict[NodeId, int]] = [dict() for _ in range(m_max)]
    for p in paths:
        m = len(p) - 1
        origin = p[0] if direction is Direction.UPSTREAM else p[-1]
        if origin == target or not (1 <= m <= m_max):
            raise ValueError(f"path {p!r} does not qualify")
        levels[m - 1][origin] = levels[m - 1].get(origin, 0) + 1
    return levels
