import random

import numpy as np
import pytest

from harmnet import build_graph, diameter, k_core, spectral_radius_estimate
from harmnet.errors import (
    DuplicateNode,
    EmptyGraph,
    HarmOutOfRange,
    SelfLoop,
    UnknownEndpoint,
    UnknownNode,
)
from harmnet.graph import Direction, bfs_distances, is_acyclic, subgraph

from conftest import fig2_graph, random_graph


def adjacency(g):
    M = np.zeros((g.num_nodes, g.num_nodes))
    for u, v in g.edges:
        M[u, v] = 1
    return M


class TestBuildGraph:
    def test_single_edge(self):
        g = build_graph([("a", 0), ("b", 50)], [("b", "a")])
        assert g.in_neighbors(g.node_id("a")) == {g.node_id("b")}
        assert g.out_neighbors(g.node_id("a")) == set()

    def test_fig2_neighborhoods(self):
        g = fig2_graph()
        a = g.node_id("a")
        assert {g.node_id("e"), g.node_id("d")} <= g.in_neighbors(a)
        assert {g.node_id("f"), g.node_id("d")} <= g.out_neighbors(a)

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoop):
            build_graph([("a", 0)], [("a", "a")])

    def test_duplicate_label_rejected(self):
        with pytest.raises(DuplicateNode):
            build_graph([("a", 0), ("a", 1)], [])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(UnknownEndpoint):
            build_graph([("a", 0)], [("a", "zz")])

    def test_harm_out_of_range(self):
        with pytest.raises(HarmOutOfRange):
            build_graph([("a", -3)], [])
        with pytest.raises(HarmOutOfRange):
            build_graph([("a", 100.5)], [])

    def test_dense_ids_in_input_order(self):
        g = build_graph([("x", 1), ("y", 2), ("z", 3)], [("z", "x")])
        assert g.labels == ("x", "y", "z")
        assert [g.node_id(l) for l in "xyz"] == [0, 1, 2]

    def test_duplicate_edges_collapse(self):
        g = build_graph([("a", 0), ("b", 1)], [("a", "b"), ("a", "b")])
        assert g.num_edges == 1

    def test_unknown_node_query(self):
        g = build_graph([("a", 0)], [])
        with pytest.raises(UnknownNode):
            g.in_neighbors(5)
        with pytest.raises(UnknownNode):
            g.node_id("nope")


class TestNeighborhoods:
    @pytest.mark.parametrize("seed", range(40))
    def test_matches_matrix_scan(self, seed):
        g = random_graph(seed)
        M = adjacency(g)
        for a in range(g.num_nodes):
            assert g.in_neighbors(a) == {j for j in range(g.num_nodes) if M[j, a]}
            assert g.out_neighbors(a) == {j for j in range(g.num_nodes) if M[a, j]}

    @pytest.mark.parametrize("seed", range(40))
    def test_in_out_mutually_consistent(self, seed):
        g = random_graph(seed)
        for a in range(g.num_nodes):
            for b in g.in_neighbors(a):
                assert a in g.out_neighbors(b)
            for b in g.out_neighbors(a):
                assert a in g.in_neighbors(b)

    def test_isolated_and_sink(self):
        g = build_graph([("a", 0), ("b", 0), ("c", 0)], [("a", "b")])
        assert g.in_neighbors(g.node_id("c")) == set()
        assert g.out_neighbors(g.node_id("b")) == set()


def peel_oracle(g, k):
    """Naive fixpoint deletion, independent of the production implementation."""
    alive = set(range(g.num_nodes))
    changed = True
    while changed:
        changed = False
        for u in sorted(alive):
            deg = len({v for v in (set(g.out_lists[u]) | set(g.in_lists[u])) if v in alive})
            if deg < k:
                alive.discard(u)
                changed = True
    return alive


class TestKCore:
    def test_cycle_survives(self):
        from harmnet.fixtures import cycle

        g = cycle()
        assert k_core(g, 2).num_nodes == 3

    def test_star_empties(self):
        from harmnet.fixtures import star

        g = star()
        assert k_core(g, 2).num_nodes == 0

    def test_k0_is_identity(self):
        g = random_graph(3)
        assert k_core(g, 0) == g

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_peeling_oracle(self, seed):
        g = random_graph(seed, n=random.Random(seed).randint(2, 12), p=0.35)
        for k in (1, 2, 3):
            got = {g.node_id(l) for l in k_core(g, k).labels}
            assert got == peel_oracle(g, k)

    @pytest.mark.parametrize("seed", range(20))
    def test_monotone_in_k(self, seed):
        g = random_graph(seed, n=10, p=0.4)
        cores = [set(k_core(g, k).labels) for k in range(5)]
        for small, big in zip(cores[1:], cores):
            assert small <= big


class TestSpectralRadius:
    def test_three_cycle(self):
        from harmnet.fixtures import cycle

        assert spectral_radius_estimate(cycle()) == pytest.approx(1.0, abs=1e-6)

    def test_complete_digraph(self):
        n = 4
        nodes = [(f"n{i}", 0) for i in range(n)]
        edges = [(f"n{i}", f"n{j}") for i in range(n) for j in range(n) if i != j]
        g = build_graph(nodes, edges)
        assert spectral_radius_estimate(g) == pytest.approx(3.0, abs=1e-6)

    def test_empty_graph_rejected(self):
        with pytest.raises(EmptyGraph):
            spectral_radius_estimate(build_graph([], []))

    def test_dag_is_zero(self):
        g = random_graph(11, dag=True)
        assert spectral_radius_estimate(g) == 0.0

    @pytest.mark.parametrize("seed", range(60))
    def test_matches_dense_eigensolver(self, seed):
        g = random_graph(seed)
        ref = max(abs(np.linalg.eigvals(adjacency(g)))) if g.num_edges else 0.0
        assert spectral_radius_estimate(g) == pytest.approx(ref, abs=1e-6)

    def test_fallback_is_flagged_and_bounds_from_above(self):
        from harmnet.fixtures import cycle

        g = cycle()
        with pytest.warns(RuntimeWarning, match="approximate"):
            est = spectral_radius_estimate(g, max_iter=5)
        assert est >= 1.0  # max-degree bound dominates the true radius


class TestStructure:
    def test_is_acyclic(self):
        from harmnet.fixtures import chain, cycle

        assert is_acyclic(chain())
        assert not is_acyclic(cycle())

    def test_bfs_distances_directions(self):
        from harmnet.fixtures import chain

        g = chain()
        a = g.node_id("a")
        up = bfs_distances(g, a, Direction.UPSTREAM)
        assert up == {a: 0, g.node_id("b"): 1, g.node_id("c"): 2}
        down = bfs_distances(g, g.node_id("c"), Direction.DOWNSTREAM)
        assert down[g.node_id("a")] == 2

    def test_diameter(self):
        from harmnet.fixtures import chain, cycle, fig5a

        assert diameter(chain()) == 2
        assert diameter(cycle()) == 2
        assert diameter(fig5a()) == 2
        assert diameter(build_graph([("a", 0)], [])) == 0

    def test_subgraph_induces_edges(self):
        g = fig2_graph()
        keep = [g.node_id(l) for l in ("a", "d", "g")]
        sub = subgraph(g, keep)
        assert set(sub.labels) == {"a", "d", "g"}
        assert set(sub.edge_rows()) == {("d", "a"), ("a", "d"), ("a", "g"), ("g", "d")}


class TestRelabelingInvariance:
    @pytest.mark.parametrize("seed", range(15))
    def test_metrics_stable_under_permutation(self, seed):
        from harmnet import HarmConfig, PathScheme, network_harm
        from harmnet.metrics import AVG, MAX

        g = random_graph(seed, p=0.35)
        rng = random.Random(seed + 1)
        order = list(range(g.num_nodes))
        rng.shuffle(order)
        permuted = build_graph(
            [(g.labels[i], g.harms[i]) for i in order], g.edge_rows()
        )
        cfg = HarmConfig(inner=AVG, outer=MAX, alpha=0.7, m_max=4,
                         scheme=PathScheme.SIMPLE_PATHS, direction=Direction.UPSTREAM)
        for label in g.labels:
            assert network_harm(g, g.node_id(label), cfg) == network_harm(
                permuted, permuted.node_id(label), cfg
            )
