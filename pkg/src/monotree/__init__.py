"""Monochromatic tree covers and partitions of edge-colored graphs."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .graph import (  # noqa: F401
    Block,
    ColoredGraph,
    CoverCertificate,
    Graph,
    PartitionCertificate,
    build_colored_graph,
    color_graph,
    common_neighborhood,
    independence_number,
    largest_mono_component,
    mono_components,
    verify_cover,
    verify_partition,
)
from .ecg import read_ecg, write_ecg, loads_ecg, dumps_ecg  # noqa: F401
from .oracles import (  # noqa: F401
    OracleLimits,
    distinct_color_cover_exists,
    tc_exact,
    tc_graph_exact,
    tm_graph_exact,
    tp_exact,
)
from .constructions import (  # noqa: F401
    build_affine_coloring,
    build_example35,
    build_example37,
    build_obs32_coloring,
    build_obs34_coloring,
)
from .partitioners import (  # noqa: F401
    aux_cover,
    complete_partition,
    double_star,
    gnp_two_color_partition,
    hk_partition,
    large_mono_structure,
    leaf_partition,
    leafy_spanning_tree,
    mindeg_absorbing_partition,
    two_color_cover,
)
from .random_lab import (  # noqa: F401
    SweepConfig,
    adversarial_tc_lower_bound,
    check_common_neighborhoods,
    check_leaf_degradation,
    check_local_connectivity,
    find_witness_set,
    random_coloring,
    sample_gnp,
    threshold_sweep,
    tm_experiment,
)
