"""Gaussian densities from pixel-wise predictions.

A regression network run under several test-time augmentations predicts, for every pixel, an
offset towards the centroid of its cell and an offset towards the position of that cell in the
previous frame. The spread of these predictions across augmentations is turned into one 2D
Gaussian per cell and per head.

"""
from . import gen
from . import nft
from .augment import ShiftTransform
from .augment import shift_transform_set
from .detect import average_cell_radius
from .detect import detection_from_pixels
from .detect import detections_from_stack
from .detect import radius_from_areas
from .merge import merge_gaussian_mixture
from .moments import PixelMoments
from .moments import pixel_moments
from .nft import load_manifest
from .stack import PredictionStack


__all__ = [
    'average_cell_radius',
    'detection_from_pixels',
    'detections_from_stack',
    'gen',
    'load_manifest',
    'merge_gaussian_mixture',
    'nft',
    'pixel_moments',
    'PixelMoments',
    'PredictionStack',
    'radius_from_areas',
    'shift_transform_set',
    'ShiftTransform'
]
