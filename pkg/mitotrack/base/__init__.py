"""Domain types and configuration shared by every other module."""
from . import errors
from .component import BernoulliComponent
from .component import extend_digest
from .component import MISSED
from .component import origin_digest
from .config import AUTO
from .config import Config
from .config import GIBBS
from .config import MURTY
from .config import TrackerConfig
from .detection import Detection
from .errors import *  # noqa: F401,F403
from .gaussian import SpatialGaussian
from .hypothesis import Hypothesis
from .lineage import INTERPOLATED
from .lineage import LineageTree
from .lineage import Point
from .lineage import Track


__all__ = [
    'AUTO',
    'BernoulliComponent',
    'Config',
    'Detection',
    'errors',
    'extend_digest',
    'GIBBS',
    'Hypothesis',
    'INTERPOLATED',
    'LineageTree',
    'MISSED',
    'MURTY',
    'origin_digest',
    'Point',
    'SpatialGaussian',
    'Track',
    'TrackerConfig',
    *errors.__all__
]
