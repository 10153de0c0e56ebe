"""Shared graph generators and strategies for the test suite."""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from harmnet import Direction, HarmConfig, PathScheme, build_graph
from harmnet.graph import HarmGraph
from harmnet.metrics import AVG, MAX, Aggregator, top_k


def random_graph(seed: int, n: int | None = None, p: float = 0.3, max_n: int = 8,
                 dag: bool = False) -> HarmGraph:
    rng = random.Random(seed)
    n = n if n is not None else rng.randint(2, max_n)
    nodes = [(f"n{i}", rng.uniform(0, 100)) for i in range(n)]
    edges = [
        (f"n{i}", f"n{j}")
        for i in range(n)
        for j in range(n)
        if i != j and (not dag or i < j) and rng.random() < p
    ]
    return build_graph(nodes, edges)


def random_tree(seed: int, max_n: int = 10, toward_root: bool = True) -> HarmGraph:
    """Random tree on node 0; edges oriented toward (or away from) the root."""
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    nodes = [(f"n{i}", rng.uniform(0, 100)) for i in range(n)]
    edges = []
    for i in range(1, n):
        parent = rng.randrange(i)
        edge = (f"n{i}", f"n{parent}") if toward_root else (f"n{parent}", f"n{i}")
        edges.append(edge)
    return build_graph(nodes, edges)


def fig2_graph() -> HarmGraph:
    """The small running example: good target fed and feeding badly rated nodes,
    a node linked both directly and via a 2-step path, and two loops."""
    return build_graph(
        [
            ("a", 5),
            ("b", 10),
            ("c", 50),
            ("d", 90),
            ("e", 85),
            ("f", 95),
            ("g", 30),
        ],
        [
            ("b", "a"),
            ("c", "a"),
            ("c", "d"),
            ("d", "a"),
            ("e", "a"),
            ("a", "d"),
            ("a", "f"),
            ("a", "g"),
            ("g", "d"),
        ],
    )


# --- hypothesis strategies -------------------------------------------------

harm_values = st.floats(min_value=0, max_value=100, allow_nan=False)


@st.composite
def graphs(draw, min_n: int = 2, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    harms = draw(st.lists(harm_values, min_size=n, max_size=n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=2 * n, unique=True))
    return build_graph(
        [(f"n{i}", harms[i]) for i in range(n)],
        [(f"n{i}", f"n{j}") for i, j in edges],
    )


@st.composite
def mono_aggregators(draw) -> Aggregator:
    # aggregators that are monotone in every input value (top-k is not:
    # raising a value into a tie at the threshold can drag the mean down)
    return draw(st.sampled_from([MAX, AVG, top_k(100)]))


@st.composite
def bounded_aggregators(draw) -> Aggregator:
    choice = draw(st.integers(0, 2))
    if choice == 0:
        return MAX
    if choice == 1:
        return AVG
    return top_k(draw(st.floats(min_value=1, max_value=100)))


@st.composite
def configs(draw, schemes=tuple(PathScheme), monotone_only: bool = False):
    agg = mono_aggregators() if monotone_only else bounded_aggregators()
    return HarmConfig(
        inner=draw(agg),
        outer=draw(agg),
        alpha=draw(st.floats(min_value=0.05, max_value=1.0)),
        m_max=draw(st.integers(1, 5)),
        scheme=draw(st.sampled_from(list(schemes))),
        direction=draw(st.sampled_from(list(Direction))),
    )


@pytest.fixture
def fig2():
    return fig2_graph()
