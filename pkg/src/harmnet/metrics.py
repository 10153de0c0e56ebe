"""Aggregators, per-level harms, network harm, and classic centrality oracles.

The network score of a target is assembled in two stages: an inner aggregator
folds each level's origin harms (with path multiplicities) into a level value
x^m, and an outer aggregator folds the damped level values alpha^(m-1) * x^m
into a single number. Sum/Sum over all walks recovers (a multiple of)
Alpha-Centrality, which `verify_reduction` checks against a dense solve.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AlphaOutOfRange,
    AlphaTooLarge,
    DivergentConfig,
    EmptyMultiset,
    InvalidMMax,
    NoConvergence,
)
from .graph import Direction, HarmGraph, NodeId, spectral_radius_estimate
from .paths import (
    DEFAULT_SIMPLE_PATH_BUDGET,
    LevelDecomposition,
    PathScheme,
    decompose,
)

DENSE_SOLVE_LIMIT = 2_000


@dataclass(frozen=True)
class Aggregator:
    """max | avg | sum | top-k (k a percentage in (0, 100]).

    top-k takes the mean of all values at or above the nearest-rank
    (100-k)th percentile of the multiplicity-expanded list; ties at the
    threshold are all included. top-100 therefore behaves exactly like avg,
    and k near 0 approaches max.
    """

    kind: str
    k: float | None = None

    def __post_init__(self):
        if self.kind not in ("max", "avg", "sum", "top"):
            raise ValueError(f"unknown aggregator kind {self.kind!r}")
        if self.kind == "top":
            if self.k is None or not (0 < self.k <= 100):
                raise ValueError("top-k needs k in (0, 100]")
        elif self.k is not None:
            raise ValueError(f"aggregator {self.kind!r} takes no k")

    def __str__(self) -> str:
        if self.kind == "top":
            k = self.k
            return f"top-{k:g}"
        return self.kind


MAX = Aggregator("max")
AVG = Aggregator("avg")
SUM = Aggregator("sum")


def top_k(k: float) -> Aggregator:
    return Aggregator("top", float(k))


def parse_aggregator(text: str) -> Aggregator:
    t = text.strip().lower()
    if t in ("max", "avg", "sum"):
        return Aggregator(t)
    if t.startswith("top-"):
        try:
            return top_k(float(t[4:]))
        except ValueError as e:
            raise ValueError(f"bad top-k spec {text!r}: {e}") from None
    raise ValueError(f"unknown aggregator {text!r} (expected max, avg, sum or top-K)")


def aggregate(agg: Aggregator, values: Iterable[tuple[float, int]]) -> float:
    """Fold a multiset of (value, multiplicity) pairs into a scalar.

    Multiplicities may be arbitrarily large Python ints (walk counts);
    nothing here expands the multiset. fsum keeps results independent of
    iteration order, so relabelling a graph cannot change any score.
    """
    vals = [(float(v), m) for v, m in values if m > 0]
    if not vals:
        raise EmptyMultiset("cannot aggregate an empty multiset")
    if agg.kind == "max":
        return max(v for v, _ in vals)
    if agg.kind == "sum":
        return math.fsum(v * float(m) for v, m in vals)
    if agg.kind == "avg":
        total = sum(m for _, m in vals)
        return math.fsum(v * float(m) for v, m in vals) / float(total)
    # top-k: nearest-rank threshold on the expanded, descending-sorted list
    total = sum(m for _, m in vals)
    pos = math.ceil(Fraction(agg.k) * total / 100)
    pos = min(max(pos, 1), total)
    threshold = None
    cum = 0
    for v, m in sorted(vals, key=lambda t: -t[0]):
        cum += m
        if cum >= pos:
            threshold = v
            break
    kept = [(v, m) for v, m in vals if v >= threshold]
    kept_total = sum(m for _, m in kept)
    return math.fsum(v * float(m) for v, m in kept) / float(kept_total)


@dataclass(frozen=True)
class LevelHarm:
    """Per-level inner aggregates; None marks a level with no paths."""

    values: tuple[float | None, ...]

    def nonempty(self) -> list[tuple[int, float]]:
        return [(m, x) for m, x in enumerate(self.values, start=1) if x is not None]


def level_harms(dec: LevelDecomposition, g: HarmGraph, inner: Aggregator) -> LevelHarm:
    """Aggregate origin harms level by level; empty levels stay absent."""
    out: list[float | None] = []
    for lm in dec.levels:
        if lm.is_empty():
            out.append(None)
        else:
            items = [(g.harms[u], c) for u, c in sorted(lm.counts.items())]
            out.append(aggregate(inner, items))
    return LevelHarm(tuple(out))


@dataclass(frozen=True)
class HarmConfig:
    """Everything that determines a network harm value.

    m_max is the deepest level considered; None means "no explicit bound",
    which is resolved to n-1 for the loop-free schemes and to an automatic
    truncation depth for ALL_PATHS (or rejected as divergent, see
    `effective_m_max`).
    """

    inner: Aggregator = AVG
    outer: Aggregator = MAX
    alpha: float = 0.85
    m_max: int | None = None
    scheme: PathScheme = PathScheme.ALL_SHORTEST
    direction: Direction = Direction.UPSTREAM

    def __post_init__(self):
        if not (0 < self.alpha <= 1):
            raise AlphaOutOfRange(f"alpha must be in (0, 1], got {self.alpha}")
        if self.m_max is not None and (
            not isinstance(self.m_max, int)
            or isinstance(self.m_max, bool)
            or self.m_max < 1
        ):
            raise InvalidMMax(f"m_max must be an integer >= 1 or None, got {self.m_max!r}")

    def to_dict(self) -> dict:
        return {
            "inner": str(self.inner),
            "outer": str(self.outer),
            "alpha": self.alpha,
            "m_max": self.m_max,
            "scheme": self.scheme.value,
            "direction": self.direction.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HarmConfig":
        return cls(
            inner=parse_aggregator(d["inner"]),
            outer=parse_aggregator(d["outer"]),
            alpha=float(d["alpha"]),
            m_max=None if d.get("m_max") is None else int(d["m_max"]),
            scheme=PathScheme(d["scheme"]),
            direction=Direction(d["direction"]),
        )


_AUTO_TAIL = 1e-12
_AUTO_CAP = 10_000


def effective_m_max(g: HarmGraph, cfg: HarmConfig) -> int:
    """Resolve cfg.m_max to a concrete truncation depth.

    Loop-free schemes are naturally bounded by n-1 paths. For ALL_PATHS an
    unbounded query is answered by truncating once the damped tail is below
    1e-12 — possible only when the damped level values decay, otherwise the
    configuration is divergent.
    """
    if cfg.m_max is not None:
        return cfg.m_max
    n = g.num_nodes
    if cfg.scheme is not PathScheme.ALL_PATHS:
        return max(1, n - 1)
    rho = spectral_radius_estimate(g)
    if rho == 0.0:
        return max(1, n - 1)
    if cfg.inner.kind == "sum":
        rate = cfg.alpha * rho
        if rate >= 1:
            raise DivergentConfig(
                f"sum over all walks diverges: alpha={cfg.alpha} >= 1/{rho:.6g}"
            )
    else:
        # bounded level values; only the alpha damping shrinks the tail
        rate = cfg.alpha
        if rate >= 1:
            raise DivergentConfig(
                "all-walks scoring with alpha = 1 on a cyclic graph has no "
                "finite truncation; pass an explicit m_max"
            )
    depth = max(n, math.ceil(math.log(_AUTO_TAIL) / math.log(rate)))
    return min(depth, _AUTO_CAP)


def network_harm(
    g: HarmGraph,
    target: NodeId,
    cfg: HarmConfig,
    simple_path_budget: int = DEFAULT_SIMPLE_PATH_BUDGET,
) -> float:
    """Outer aggregate of damped level harms for `target`; 0 for isolated targets.

    Outer avg normalises by the alpha weights of the non-empty levels
    (sum of alpha^(m-1) x^m over sum of alpha^(m-1)); outer max/top-k act on
    the damped level values directly; outer sum adds them up.
    """
    g.check_node(target)
    m_eff = effective_m_max(g, cfg)
    dec = decompose(g, target, cfg.direction, cfg.scheme, m_eff, simple_path_budget)
    lh = level_harms(dec, g, cfg.inner)
    return combine_levels(lh, cfg)


def combine_levels(lh: LevelHarm, cfg: HarmConfig) -> float:
    pairs = lh.nonempty()
    if not pairs:
        return 0.0
    alpha = cfg.alpha
    weighted = [(m, alpha ** (m - 1) * x) for m, x in pairs]
    outer = cfg.outer
    if outer.kind == "max":
        return max(w for _, w in weighted)
    if outer.kind == "sum":
        return math.fsum(w for _, w in weighted)
    if outer.kind == "avg":
        num = math.fsum(w for _, w in weighted)
        den = math.fsum(alpha ** (m - 1) for m, _ in weighted)
        return num / den
    return aggregate(outer, [(w, 1) for _, w in weighted])


def level_breakdown(
    g: HarmGraph, target: NodeId, cfg: HarmConfig
) -> tuple[float, list[dict]]:
    """(H, rows) where each row describes one level: m, size, x^m, damped value."""
    g.check_node(target)
    m_eff = effective_m_max(g, cfg)
    dec = decompose(g, target, cfg.direction, cfg.scheme, m_eff)
    lh = level_harms(dec, g, cfg.inner)
    rows = []
    for lm, x in zip(dec.levels, lh.values):
        rows.append(
            {
                "m": lm.level,
                "size": lm.total(),
                "x_m": x,
                "weighted": None if x is None else cfg.alpha ** (lm.level - 1) * x,
            }
        )
    return combine_levels(lh, cfg), rows


# --- classic centralities (oracles for the reduction check) ---------------


def _in_adjacency(g: HarmGraph) -> np.ndarray:
    """M[i, j] = 1 iff j -> i, so (M^m)[i, j] counts length-m walks j -> i."""
    M = np.zeros((g.num_nodes, g.num_nodes))
    for u, v in g.edges:
        M[v, u] = 1.0
    return M


def _beta_vector(g: HarmGraph, beta: Sequence[float]) -> np.ndarray:
    b = np.asarray(beta, dtype=float)
    if b.shape != (g.num_nodes,):
        raise ValueError(f"beta must have length {g.num_nodes}")
    return b


def _fixed_point(
    M: np.ndarray,
    alpha: float,
    beta: np.ndarray,
    tol: float,
    max_iter: int,
) -> np.ndarray:
    x = (1 - alpha) * beta.copy()
    for _ in range(max_iter):
        x_new = alpha * (M @ x) + (1 - alpha) * beta
        if np.max(np.abs(x_new - x)) <= tol:
            return x_new
        x = x_new
    n = M.shape[0]
    if n < DENSE_SOLVE_LIMIT:
        return np.linalg.solve(np.eye(n) - alpha * M, (1 - alpha) * beta)
    raise NoConvergence(f"no fixed point after {max_iter} iterations")


def alpha_centrality(
    g: HarmGraph,
    alpha: float,
    beta: Sequence[float],
    tol: float = 1e-10,
    max_iter: int = 100_000,
) -> np.ndarray:
    """Solve x = alpha*A*x + (1-alpha)*beta; needs alpha < 1/spectral radius."""
    if alpha < 0:
        raise AlphaOutOfRange(f"alpha must be >= 0, got {alpha}")
    rho = spectral_radius_estimate(g)
    if rho > 0 and alpha >= 1.0 / rho:
        raise AlphaTooLarge(f"alpha {alpha} >= 1/spectral radius {rho:.6g}")
    return _fixed_point(_in_adjacency(g), alpha, _beta_vector(g, beta), tol, max_iter)


def pagerank_personalized(
    g: HarmGraph,
    alpha: float,
    beta: Sequence[float],
    tol: float = 1e-10,
    max_iter: int = 100_000,
) -> np.ndarray:
    """Solve x = alpha*P*x + (1-alpha)*beta with P the out-degree-discounted walk matrix.

    Columns of dangling nodes are left all-zero (no teleport): this solver
    exists as a reduction oracle, not as a web-ranking implementation.
    """
    if not (0 <= alpha < 1):
        raise AlphaOutOfRange(f"pagerank needs 0 <= alpha < 1, got {alpha}")
    M = _in_adjacency(g)
    outdeg = M.sum(axis=0)
    P = np.divide(M, outdeg, out=np.zeros_like(M), where=outdeg > 0)
    return _fixed_point(P, alpha, _beta_vector(g, beta), tol, max_iter)


@dataclass(frozen=True)
class ReductionReport:
    """Entrywise comparison of Sum/Sum-over-all-walks against the dense closed form."""

    alpha: float
    m_max: int
    tolerance: float
    max_deviation: float
    worst_label: str
    deviations: tuple[float, ...]
    passed: bool


def verify_reduction(
    g: HarmGraph,
    alpha: float,
    m_max: int | None = None,
    tolerance: float = 1e-6,
) -> ReductionReport:
    """Check H_sum,sum(a; all walks) == closed-form Neumann value at every node.

    The closed form is ((I - alpha*A^T)^-1 h)_a with the target's own harm
    zeroed out of the solve, all divided by alpha. Zeroing mirrors the level
    semantics: a node never appears inside its own levels, so closed walks
    from a back to a must not contribute h(a). On acyclic graphs the diagonal
    correction vanishes and this is literally ((I - alpha*A^T)^-1 h - h)/alpha.
    """
    if alpha <= 0:
        raise AlphaOutOfRange(f"alpha must be > 0, got {alpha}")
    n = g.num_nodes
    rho = spectral_radius_estimate(g)
    if rho > 0 and alpha * rho >= 1:
        raise AlphaTooLarge(f"alpha {alpha} >= 1/spectral radius {rho:.6g}")
    if m_max is None:
        if rho == 0.0:
            m_max = max(1, n)
        else:
            m_max = max(n, math.ceil(math.log(_AUTO_TAIL) / math.log(alpha * rho)))
    else:
        if rho > 0 and (alpha * rho) ** m_max >= 1e-10:
            raise InvalidMMax(
                f"m_max {m_max} leaves a truncation tail above 1e-10 "
                f"for alpha*radius = {alpha * rho:.6g}"
            )

    cfg = HarmConfig(
        inner=SUM,
        outer=SUM,
        alpha=alpha,
        m_max=m_max,
        scheme=PathScheme.ALL_PATHS,
        direction=Direction.UPSTREAM,
    )
    M = _in_adjacency(g)
    h = np.asarray(g.harms, dtype=float)
    inv = np.linalg.inv(np.eye(n) - alpha * M)
    closed = (inv @ h - np.diag(inv) * h) / alpha

    deviations = []
    for a in range(n):
        H = network_harm(g, a, cfg)
        deviations.append(abs(H - closed[a]))
    worst = int(np.argmax(deviations)) if deviations else 0
    max_dev = max(deviations) if deviations else 0.0
    return ReductionReport(
        alpha=alpha,
        m_max=m_max,
        tolerance=tolerance,
        max_deviation=max_dev,
        worst_label=g.labels[worst] if n else "",
        deviations=tuple(deviations),
        passed=max_dev < tolerance,
    )
