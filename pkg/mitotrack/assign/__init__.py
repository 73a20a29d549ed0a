"""Assignment of detections to objects, divisions included."""
from . import bench
from .assignment import Assignment
from .assignment import UNASSIGNED
from .clusters import Cluster
from .clusters import split_clusters
from .costs import association_cost
from .costs import association_costs
from .costs import mitosis_cost
from .costs import score_matrix
from .costs import spatial_score
from .gibbs import gibbs_sample
from .hungarian import hungarian
from .matrix import build_extended_matrix
from .matrix import build_standard_matrix
from .matrix import CostMatrix
from .munkres import kuhn_munkres
from .murty import murty_kbest


__all__ = [
    'Assignment',
    'association_cost',
    'association_costs',
    'bench',
    'build_extended_matrix',
    'build_standard_matrix',
    'Cluster',
    'CostMatrix',
    'gibbs_sample',
    'hungarian',
    'kuhn_munkres',
    'mitosis_cost',
    'murty_kbest',
    'score_matrix',
    'spatial_score',
    'split_clusters',
    'UNASSIGNED'
]
