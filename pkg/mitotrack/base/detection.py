import collections

from . import errors
from .gaussian import SpatialGaussian


__all__ = ['Detection']


class Detection(collections.namedtuple(
        'Detection', 'frame det_id centroid motion_warped clutter_prob area')):
    """One measurement of the detection set of a frame.

    Parameters:
        frame: Index of the frame the detection belongs to, starting at 0.
        det_id: Identifier, unique within the frame. Negative values are reserved.
        centroid: Position density of the cell in its own frame.
        motion_warped: Position density of the same cell in the previous frame, as estimated by
            the motion regression.
        clutter_prob: Probability that the detection is a false positive.
        area: Mask area in squared pixels, 0 when unknown.

    Example:

        >>> from mitotrack import base

        >>> det = base.Detection(
        ...     frame=3,
        ...     det_id=7,
        ...     centroid=base.SpatialGaussian.isotropic((10, 12), 1.),
        ...     motion_warped=base.SpatialGaussian.isotropic((9, 12), 2.),
        ...     clutter_prob=.1
        ... )
        >>> det.area
        0.0
        >>> det.motion
        (1.0, 0.0)

    """

    def __new__(cls, frame: int, det_id: int, centroid: SpatialGaussian,
                motion_warped: SpatialGaussian, clutter_prob: float, area: float = 0.):

        if frame < 0:
            raise errors.DomainError(f'frame must be non-negative, got {frame}')
        if det_id < 0:
            raise errors.DomainError(f'det_id must be non-negative, got {det_id}')
        if not 0. <= clutter_prob < 1.:
            raise errors.DomainError(f'clutter_prob must lie in [0, 1), got {clutter_prob}')
        if area < 0:
            raise errors.DomainError(f'area must be non-negative, got {area}')

        return super().__new__(
            cls,
            int(frame),
            int(det_id),
            SpatialGaussian(*centroid),
            SpatialGaussian(*motion_warped),
            float(clutter_prob),
            float(area)
        )

    @property
    def motion(self):
        """Displacement from the previous frame to this one."""
        (x0, y0), (x1, y1) = self.motion_warped.mean, self.centroid.mean
        return (x1 - x0, y1 - y0)
