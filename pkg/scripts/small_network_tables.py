#!/usr/bin/env python3
"""Print the harm tables for the bundled small demo networks.

Walks the fig5 family (tree, added base suppliers + shortcut, loops) and
fig6, showing per-level harms and how the inner/outer aggregator choice and
the path-counting scheme move the final score.
"""

from harmnet import AVG, MAX, Direction, HarmConfig, PathScheme, top_k
from harmnet import decompose, level_harms, network_harm
from harmnet.fixtures import build_fixture

SCHEMES = [
    ("simple", PathScheme.SIMPLE_PATHS),
    ("shortest-all", PathScheme.ALL_SHORTEST),
    ("shortest-one", PathScheme.SINGLE_SHORTEST),
]


def cfg(inner, outer, alpha=1.0, m_max=8, scheme=PathScheme.SIMPLE_PATHS):
    return HarmConfig(inner=inner, outer=outer, alpha=alpha, m_max=m_max,
                      scheme=scheme, direction=Direction.UPSTREAM)


def level_table(g, scheme, m_max=8):
    dec = decompose(g, 0, Direction.UPSTREAM, scheme, m_max)
    x_max = [v for v in level_harms(dec, g, MAX).values if v is not None]
    x_avg = [v for v in level_harms(dec, g, AVG).values if v is not None]
    return x_max, x_avg


def show(name, alphas=(1.0,)):
    g = build_fixture(name)
    print(f"== {name}: {g.num_nodes} nodes, {g.num_edges} edges, target 'a'")
    for label, scheme in SCHEMES:
        x_max, x_avg = level_table(g, scheme)
        print(f"  [{label}] x_max={[round(v, 2) for v in x_max]} "
              f"x_avg={[round(v, 2) for v in x_avg]}")
        for alpha in alphas:
            row = {
                "H(max,max)": network_harm(g, 0, cfg(MAX, MAX, alpha, scheme=scheme)),
                "H(max over avg levels)": network_harm(g, 0, cfg(AVG, MAX, alpha, scheme=scheme)),
                "H(avg of level maxima)": network_harm(g, 0, cfg(MAX, AVG, alpha, scheme=scheme)),
                "H(avg,avg)": network_harm(g, 0, cfg(AVG, AVG, alpha, scheme=scheme)),
                "H(top-50 of level maxima)": network_harm(g, 0, cfg(MAX, top_k(50), alpha, scheme=scheme)),
            }
            cells = "  ".join(f"{k}={v:.2f}" for k, v in row.items())
            print(f"    alpha={alpha}: {cells}")
    print()


def main():
    for name in ("fig5a", "fig5b", "fig5c"):
        show(name)
    show("fig6", alphas=(0.85, 0.15))


if __name__ == "__main__":
    main()
