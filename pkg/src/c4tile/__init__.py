"""Perfect C4^3-tilings of 3-uniform hypergraphs.

Exact degree threshold, tightness constructions, an exact tiling solver,
the extremal-case tiling pipeline and finite absorption/reachability oracles.
"""

__version__ = "0.1.0"

from .constructions import (  # noqa: E402
    build_H0,
    build_H1,
    steiner,
    threshold,
    two_cliques,
)
from .extremal import extremal_tiling, partition_ABC  # noqa: E402
from .hypergraph import (  # noqa: E402
    Hypergraph3,
    count_cherries,
    deg_set,
    is_C_free,
    link_graph,
    min_degree1,
    read_h3,
    spans_C,
    write_h3,
)
from .lemma3 import lemma3_tiling  # noqa: E402
from .solver import (  # noqa: E402
    Certificate,
    Tiling,
    enumerate_spanning_foursets,
    find_perfect_tiling,
    max_C_free_set,
    max_tiling,
    verify_tiling,
)

__all__ = [
    "Certificate", "Hypergraph3", "Tiling", "build_H0", "build_H1", "count_cherries",
    "deg_set", "enumerate_spanning_foursets", "extremal_tiling", "find_perfect_tiling",
    "is_C_free", "lemma3_tiling", "link_graph", "max_C_free_set", "max_tiling",
    "min_degree1", "partition_ABC", "read_h3", "spans_C", "steiner", "threshold",
    "two_cliques", "verify_tiling", "write_h3",
]
