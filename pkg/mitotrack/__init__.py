"""
mitotrack is a library for tracking dividing cells in microscopy sequences. Detections are turned
into Gaussian position densities, and a multi-hypothesis tracker explains every frame with
births, movements, divisions and clutter, keeping the most likely hypotheses. Divisions are
scored against an Erlang law of cell cycle durations so that implausibly short cycles are
penalized.
"""
from .__version__ import __version__

from . import assign
from . import base
from . import density
from . import metrics
from . import mht
from . import proba
from . import sim
from . import stream
from . import utils

__all__ = [
    'assign',
    'base',
    'density',
    'metrics',
    'mht',
    'proba',
    'sim',
    'stream',
    'utils'
]
