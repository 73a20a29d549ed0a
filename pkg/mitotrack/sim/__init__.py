"""Synthetic colonies of dividing cells, with their ground truth."""
from .config import SimConfig
from .colony import sample_lifetime
from .colony import simulate


__all__ = ['sample_lifetime', 'SimConfig', 'simulate']
