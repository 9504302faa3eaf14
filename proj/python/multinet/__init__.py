"""Python face of the multilayer community benchmark toolkit."""

from ._multinet import (
    Network,
    Partition,
    Shape,
    __version__,
    format_network,
    format_partition,
    generate,
    genlouvain,
    mean_nmi,
    modularity,
    nmi,
    pairwise_layer_nmi,
    parse_network,
    parse_partition,
    sweep,
)

__all__ = [
    "Network",
    "Partition",
    "Shape",
    "__version__",
    "format_network",
    "format_partition",
    "generate",
    "genlouvain",
    "mean_nmi",
    "modularity",
    "nmi",
    "pairwise_layer_nmi",
    "parse_network",
    "parse_partition",
    "sweep",
]
