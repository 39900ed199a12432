"""Graph similarity from vectors of topological indices."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    BudgetExceededError,
    ConvergenceError,
    DegenerateScalingError,
    DisconnectedGraphError,
    GenerationError,
    GraphFormatError,
    TisimError,
)
from .graph import Graph, all_pairs_distances, degrees, encode_graph6, is_connected, parse_graph6  # noqa: E402
from .indices import IndexId, compute_vector  # noqa: E402
from .similarity import (  # noqa: E402
    IndexScaler,
    IndexVectorizer,
    PairTable,
    SimilarityConfig,
    TopologicalSimilarity,
    distance_p,
    pair_table,
    rescale_similarities,
    scale,
    similarity_p,
)

__all__ = [
    "BudgetExceededError", "ConvergenceError", "DegenerateScalingError", "DisconnectedGraphError",
    "GenerationError", "Graph", "GraphFormatError", "IndexId", "IndexScaler", "IndexVectorizer",
    "PairTable", "SimilarityConfig", "TisimError", "TopologicalSimilarity", "all_pairs_distances",
    "compute_vector", "degrees", "distance_p", "encode_graph6", "is_connected", "pair_table",
    "parse_graph6", "rescale_similarities", "scale", "similarity_p",
]
