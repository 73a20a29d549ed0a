import math
import typing

import numpy as np

from .. import base
from .. import utils
from .merge import merge_arrays
from .moments import PixelMoments
from .moments import pixel_moments
from .stack import PredictionStack


__all__ = [
    'average_cell_radius',
    'detection_from_pixels',
    'detections_from_stack',
    'radius_from_areas'
]


def detection_from_pixels(stack: PredictionStack, j: int, centroid_moments: PixelMoments,
                          motion_moments: PixelMoments, frame: int = 0,
                          clamp_eps: float = 1e-12) -> base.Detection:
    """Builds the detection of one instance.

    Every pixel of the instance votes for a centroid, and for a position in the previous frame,
    with a Gaussian weighted by its foreground probability. Each set of votes is merged into a
    single Gaussian. The clutter probability is the background probability at the pixel the
    merged centroid falls onto.

    Parameters:
        stack: Predictions of the frame.
        j: Instance label.
        centroid_moments: Moments of the centroid offsets.
        motion_moments: Moments of the motion offsets.
        frame: Frame index given to the detection.
        clamp_eps: The clutter probability is kept below ``1 - clamp_eps``.

    Example:

        >>> import numpy as np
        >>> from mitotrack import density

        >>> labels = np.zeros((3, 3), dtype=int)
        >>> labels[1, 1] = 4
        >>> seg = np.where(labels > 0, .9, 0.)
        >>> zeros = np.zeros((2, 3, 3, 2))
        >>> stack = density.PredictionStack(seg, zeros, zeros, labels)
        >>> m = density.pixel_moments(zeros)

        >>> det = density.detection_from_pixels(stack, 4, m, m, frame=2)
        >>> det.frame, det.det_id, det.centroid.mean, round(det.clutter_prob, 6), det.area
        (2, 4, (1.0, 1.0), 0.1, 1.0)

    """

    rows, cols = np.nonzero(stack.labels == j)
    if rows.size == 0:
        raise base.UnknownLabel(f'label {j} does not occur in the label map')

    weights = stack.seg[rows, cols]
    pixels = np.stack([cols, rows], axis=1).astype(float)

    def merge(moments):
        return merge_arrays(
            weights,
            pixels + moments.offset_mean[rows, cols],
            moments.offset_cov[rows, cols]
        )

    centroid = merge(centroid_moments)
    motion_warped = merge(motion_moments)

    x, y = centroid.mean
    col = int(np.clip(utils.math.round_half_away(x), 0, stack.width - 1))
    row = int(np.clip(utils.math.round_half_away(y), 0, stack.height - 1))
    clutter = utils.math.clamp(1. - stack.seg[row, col], 0., 1. - clamp_eps)

    return base.Detection(
        frame=frame,
        det_id=int(j),
        centroid=centroid,
        motion_warped=motion_warped,
        clutter_prob=clutter,
        area=float(rows.size)
    )


def detections_from_stack(stack: PredictionStack, frame: int,
                          clamp_eps: float = 1e-12) -> typing.List[base.Detection]:
    """All the detections of a frame, ordered by label."""
    centroid_moments = pixel_moments(stack.centroid_offsets)
    motion_moments = pixel_moments(stack.motion_offsets)
    return [
        detection_from_pixels(stack, j, centroid_moments, motion_moments, frame, clamp_eps)
        for j in stack.label_ids()
    ]


def radius_from_areas(areas: typing.Iterable[float]) -> float:
    """Mean radius of circles with the given areas.

    Example:

        >>> import math
        >>> from mitotrack import density

        >>> density.radius_from_areas([math.pi * 4, math.pi * 16])
        3.0

    """
    areas = np.asarray(list(areas), dtype=float)
    areas = areas[areas > 0]
    if areas.size == 0:
        raise base.EmptyGroundTruth('no cell to measure')
    return float(np.sqrt(areas / math.pi).mean())


def average_cell_radius(masks: typing.Iterable) -> float:
    """Average radius of the cells of a sequence, each cell being seen as a disk.

    Every instance of every frame counts once. The result is the shift magnitude used by
    test-time augmentation.

    Parameters:
        masks: Label maps, one per frame, 0 being the background.

    Example:

        >>> import numpy as np
        >>> from mitotrack import density

        >>> mask = np.zeros((20, 20), dtype=int)
        >>> mask[:2, :2] = 1
        >>> mask[5:, 5:] = 3
        >>> round(density.average_cell_radius([mask]), 4)
        4.7956

    """
    areas: typing.List[int] = []
    for mask in masks:
        ids, counts = np.unique(np.asarray(mask), return_counts=True)
        areas.extend(int(c) for i, c in zip(ids, counts) if i > 0)
    return radius_from_areas(areas)
