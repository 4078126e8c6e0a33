import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, minimum_spanning_tree

from src.core.spaces import CostSpace, explicit_metric_space
from src.logger_config import setup_logger

logger = setup_logger(__name__)


def minimax_path_distances(dist: np.ndarray) -> np.ndarray:
    """
    Bottleneck distances: for each pair, the smallest possible largest edge
    over paths joining them. Equal to the largest edge on the MST path.
    """
    size = dist.shape[0]
    if size == 1:
        return np.zeros((1, 1))
    tree = minimum_spanning_tree(csr_matrix(dist))
    tree = (tree + tree.T).tocsr()
    weights = tree.toarray()
    bottleneck = np.zeros((size, size))
    for root in range(size):
        order, parents = breadth_first_order(tree, root, directed=False, return_predecessors=True)
        for node in order[1:]:
            parent = parents[node]
            bottleneck[root, node] = max(bottleneck[root, parent], weights[parent, node])
    return np.maximum(bottleneck, bottleneck.T)


def build_minimax_ultrametric(space: CostSpace) -> CostSpace:
    """
    Explicit ultrametric space on the same points whose cost is
    (minimax path bottleneck of d)^q. It satisfies
    d_tilde <= d^q <= (|X| - 1)^q d_tilde.
    """
    bottleneck = minimax_path_distances(np.asarray(space.distance_matrix(), dtype=np.float64))
    ultra = explicit_metric_space(bottleneck, q=space.q, coords=space.coords)
    logger.debug(f"Built minimax ultrametric over {space.size} points")
    return ultra
