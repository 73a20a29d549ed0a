"""Independent blocks of an extended cost matrix."""
import typing

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .matrix import CostMatrix


__all__ = ['Cluster', 'split_clusters']


class Cluster:
    """Detections and objects that only compete with each other.

    Parameters:
        rows: Indices of the detections, increasing.
        objects: Indices of the objects the detections can reach, increasing.

    """

    def __init__(self, rows, objects):
        self.rows = np.asarray(rows, dtype=int)
        self.objects = np.asarray(objects, dtype=int)

    def columns(self, matrix: CostMatrix) -> np.ndarray:
        """Columns of the full matrix kept by the cluster, in the order of its sub-matrix."""
        return np.concatenate([
            self.objects,
            matrix.n_obj + self.rows,
            matrix.n_obj + matrix.n_det + self.objects
        ])

    def sub_matrix(self, matrix: CostMatrix) -> CostMatrix:
        values = matrix.values[np.ix_(self.rows, self.columns(matrix))]
        return CostMatrix(values, len(self.objects), matrix.mitosis_cost[self.objects])

    def __repr__(self):
        return f'Cluster(rows={self.rows.tolist()}, objects={self.objects.tolist()})'


def split_clusters(matrix: CostMatrix) -> typing.List[Cluster]:
    """Splits the detections into groups that share no reachable object.

    Any assignment of the full matrix is the union of one assignment per cluster, and its cost
    is the sum of theirs. Objects that no detection can reach belong to no cluster: they are
    missed whatever happens.

    Example:

        >>> import numpy as np
        >>> from mitotrack import assign

        >>> inf = np.inf
        >>> left = np.array([[1., inf], [2., inf], [inf, inf]])
        >>> middle = np.where(np.eye(3) == 1, 3., inf)
        >>> m = assign.CostMatrix(np.hstack([left, middle, left]), n_obj=2)
        >>> for cluster in assign.split_clusters(m):
        ...     print(cluster)
        Cluster(rows=[0, 1], objects=[0])
        Cluster(rows=[2], objects=[])

    """

    n_det, n_obj = matrix.n_det, matrix.n_obj
    if n_det == 0:
        return []
    rows, objs = np.nonzero(np.isfinite(matrix.left) | np.isfinite(matrix.right))
    graph = sparse.coo_matrix(
        (np.ones(len(rows)), (rows, n_det + objs)),
        shape=(n_det + n_obj, n_det + n_obj)
    )
    _, labels = csgraph.connected_components(graph, directed=False)

    det_labels, obj_labels = labels[:n_det], labels[n_det:]
    clusters = []
    for label in dict.fromkeys(det_labels.tolist()):
        clusters.append(Cluster(
            np.flatnonzero(det_labels == label),
            np.flatnonzero(obj_labels == label)
        ))
    return clusters
