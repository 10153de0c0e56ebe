"""Harm propagation analytics on node-valued directed supply networks."""

__version__ = "0.1.0"

from .graph import (  # noqa: F401
    Direction,
    HarmGraph,
    NodeId,
    build_graph,
    diameter,
    k_core,
    spectral_radius_estimate,
)
from .paths import (  # noqa: F401
    LevelDecomposition,
    LevelMultiset,
    PathScheme,
    decompose,
    enumerate_paths_oracle,
)
from .metrics import (  # noqa: F401
    AVG,
    MAX,
    SUM,
    Aggregator,
    HarmConfig,
    LevelHarm,
    aggregate,
    alpha_centrality,
    level_harms,
    network_harm,
    pagerank_personalized,
    parse_aggregator,
    top_k,
    verify_reduction,
)
from .whatif import (  # noqa: F401
    InfluenceReport,
    ReportKind,
    ScenarioOverlay,
    global_influence,
    global_influence_all,
    influence,
    influence_matrix,
    rank_report,
    scored_with,
    vulnerability,
)
from .fixtures import build_fixture  # noqa: F401
