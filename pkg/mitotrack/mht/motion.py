import logging
import math
import typing

import numpy as np

from .. import base


__all__ = ['estimate_mean_motion_cov']


logger = logging.getLogger(__name__)


def estimate_mean_motion_cov(detections: typing.Iterable[base.Detection],
                             floor: float = 1e-12) -> np.ndarray:
    """Isotropic covariance of the displacement of a cell between two frames.

    The displacement of each detection is the distance between its centroid and its
    motion-warped position. The per-axis deviation is the mean displacement divided by √2.

    Parameters:
        detections: Detections of the whole sequence.
        floor: Variance used when no detection moves at all.

    Example:

        >>> from mitotrack import base, mht

        >>> g = base.SpatialGaussian.isotropic((1, 1), 1.)
        >>> warped = base.SpatialGaussian.isotropic((0, 0), 1.)
        >>> mht.estimate_mean_motion_cov([base.Detection(1, 0, g, warped, 0.)])
        array([[1., 0.],
               [0., 1.]])

    """

    lengths = [math.hypot(*det.motion) for det in detections]
    if not lengths:
        logger.warning('no detection to estimate the mean motion from, using the identity')
        return np.eye(2)

    sigma = float(np.mean(lengths)) / math.sqrt(2)
    var = sigma ** 2
    if var <= 0:
        var = floor
    return np.eye(2) * var
