"""Synthetic prediction stacks."""
import typing

import numpy as np

from .augment import ShiftTransform
from .augment import shift_transform_set
from .stack import PredictionStack


__all__ = ['blob_stack']


def blob_stack(centers, previous, shape: typing.Tuple[int, int], radius: float = 3.,
               transforms: typing.Optional[typing.List[ShiftTransform]] = None,
               noise: float = .5, foreground: float = .9, seed: int = 0) -> PredictionStack:
    """Draws round cells and simulates the predictions of a regression network.

    Each cell is a disk labeled with its index plus one. Every augmentation predicts the true
    offsets plus isotropic Gaussian noise. Under a shifted augmentation the previous frame is
    translated, hence the raw motion offsets point to translated positions and carry more noise,
    growing with the shift length; they are aligned back before being stacked.

    Parameters:
        centers: ``(n, 2)`` cell centers ``(x, y)`` in the current frame.
        previous: ``(n, 2)`` cell centers in the previous frame.
        shape: ``(height, width)`` of the maps.
        radius: Disk radius in pixels.
        transforms: Augmentations, defaults to `shift_transform_set(1, radius)`.
        noise: Standard deviation of the offset noise of an unshifted augmentation.
        foreground: Foreground probability inside the disks.
        seed: Seed of the noise.

    Example:

        >>> from mitotrack import density

        >>> stack = density.gen.blob_stack([(10, 10), (20, 12)], [(9, 10), (21, 12)], (32, 32))
        >>> stack
        PredictionStack(height=32, width=32, n_aug=5, n_labels=2)

    """

    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    previous = np.asarray(previous, dtype=float).reshape(-1, 2)
    if transforms is None:
        transforms = shift_transform_set(1, radius)

    height, width = shape
    rng = np.random.default_rng(seed)
    rows, cols = np.mgrid[:height, :width]
    pixels = np.stack([cols, rows], axis=-1).astype(float)

    labels = np.zeros(shape, dtype=int)
    for i, (x, y) in enumerate(centers):
        labels[(cols - x) ** 2 + (rows - y) ** 2 <= radius ** 2] = i + 1
    seg = np.where(labels > 0, foreground, 1. - foreground)

    inside = labels > 0
    target_now = np.zeros((height, width, 2))
    target_before = np.zeros((height, width, 2))
    target_now[inside] = centers[labels[inside] - 1]
    target_before[inside] = previous[labels[inside] - 1]

    n_aug = len(transforms)
    centroid_offsets = np.zeros((n_aug, height, width, 2))
    motion_offsets = np.zeros((n_aug, height, width, 2))
    for a, t in enumerate(transforms):
        centroid_offsets[a] = target_now - pixels + rng.normal(0, noise, size=(height, width, 2))
        spread = noise * (1. + np.hypot(t.dx, t.dy) / max(radius, 1e-9))
        raw = t.apply(target_before - pixels) + rng.normal(0, spread, size=(height, width, 2))
        motion_offsets[a] = t.align(raw)

    centroid_offsets[:, ~inside] = 0.
    motion_offsets[:, ~inside] = 0.
    return PredictionStack(seg, centroid_offsets, motion_offsets, labels)
