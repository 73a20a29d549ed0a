import collections

import numpy as np

from .. import base


__all__ = ['PixelMoments', 'pixel_moments']


PixelMoments = collections.namedtuple('PixelMoments', 'offset_mean offset_cov')
PixelMoments.__doc__ = """Per-pixel mean (H x W x 2) and covariance (H x W x 2 x 2) of offsets."""


def pixel_moments(layer) -> PixelMoments:
    """Sample moments of an offset map over augmentations.

    The covariance is the unbiased estimator, i.e. the divisor is the number of augmentations
    minus one.

    Parameters:
        layer: Array of shape ``(n_aug, H, W, 2)``.

    Example:

        >>> import numpy as np
        >>> from mitotrack import density

        >>> layer = np.zeros((2, 1, 1, 2))
        >>> layer[1, 0, 0] = (2, 0)
        >>> m = density.pixel_moments(layer)
        >>> m.offset_mean[0, 0]
        array([1., 0.])
        >>> m.offset_cov[0, 0]
        array([[2., 0.],
               [0., 0.]])

    """

    layer = np.asarray(layer, dtype=float)
    if layer.ndim != 4 or layer.shape[-1] != 2:
        raise base.DomainError(f'expected an (n_aug, H, W, 2) array, got shape {layer.shape}')

    n_aug = layer.shape[0]
    if n_aug < 2:
        raise base.InsufficientAugmentations(
            f'sample covariances need at least 2 augmentations, got {n_aug}'
        )

    mean = layer.mean(axis=0)
    centered = layer - mean
    cov = np.einsum('ahwi,ahwj->hwij', centered, centered) / (n_aug - 1)
    return PixelMoments(mean, cov)
