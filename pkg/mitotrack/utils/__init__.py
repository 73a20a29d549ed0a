"""Utility classes and functions."""
from . import log
from . import math
from .rng import RandomStream
from .rng import seeded_rng


__all__ = [
    'log',
    'math',
    'RandomStream',
    'seeded_rng'
]
