"""Multi-hypothesis tracking with divisions."""
from . import kalman
from .recursion import predict
from .recursion import reduce
from .recursion import step
from .lineage import extract_lineage
from .motion import estimate_mean_motion_cov
from .store import HypothesisStore
from .tracker import group_by_frame
from .tracker import resolve_config
from .tracker import track
from .tracker import Tracker


__all__ = [
    'estimate_mean_motion_cov',
    'extract_lineage',
    'group_by_frame',
    'HypothesisStore',
    'kalman',
    'predict',
    'reduce',
    'resolve_config',
    'step',
    'track',
    'Tracker'
]
