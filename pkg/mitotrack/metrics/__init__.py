"""Biologically inspired evaluation of a lineage against a reference."""
from .base import Metric
from .base import Metrics
from .base import NOT_APPLICABLE
from .branching import branching_correctness
from .branching import BranchingCorrectness
from .branching import count_divisions
from .cycle import cell_cycle_accuracy
from .cycle import CellCycleAccuracy
from .match import TrackMatch
from .tracks import complete_tracks
from .tracks import CompleteTracks
from .tracks import track_fractions
from .tracks import TrackFractions


__all__ = [
    'branching_correctness',
    'BranchingCorrectness',
    'cell_cycle_accuracy',
    'CellCycleAccuracy',
    'complete_tracks',
    'CompleteTracks',
    'count_divisions',
    'Metric',
    'Metrics',
    'NOT_APPLICABLE',
    'TrackFractions',
    'track_fractions',
    'TrackMatch'
]
