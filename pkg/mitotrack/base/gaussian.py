import collections
import typing

import numpy as np

from . import errors


__all__ = ['SpatialGaussian']


# Slack tolerated on the smallest eigenvalue before a covariance is deemed indefinite
PSD_TOL = 1e-9


class SpatialGaussian(collections.namedtuple('SpatialGaussian', 'mean cov')):
    """A 2D Gaussian density in pixel coordinates.

    The mean is stored as a tuple ``(x, y)`` and the covariance as a nested tuple, which makes
    instances immutable, hashable and safe to share between threads. The covariance is
    symmetrized on construction and checked for positive semi-definiteness.

    Parameters:
        mean: Position in pixels.
        cov: 2x2 covariance in squared pixels.

    Example:

        >>> from mitotrack import base

        >>> g = base.SpatialGaussian((3, 4), [[2, 0.5], [0.4, 1]])
        >>> g
        𝒩(μ=(3.000, 4.000), Σ=[[2.000, 0.450], [0.450, 1.000]])

        >>> g.cov[0][1] == g.cov[1][0]
        True

        >>> base.SpatialGaussian((0, 0), [[1, 0], [0, -1]])
        Traceback (most recent call last):
            ...
        mitotrack.base.errors.DegenerateCovariance: covariance is not positive semi-definite

    """

    def __new__(cls, mean: typing.Sequence[float], cov: typing.Sequence[typing.Sequence[float]]):

        mu = np.asarray(mean, dtype=float).reshape(2)
        sigma = np.asarray(cov, dtype=float).reshape(2, 2)
        off = .5 * (sigma[0, 1] + sigma[1, 0])

        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(sigma))):
            raise errors.DegenerateCovariance('mean and covariance must be finite')

        # The smallest eigenvalue of a symmetric 2x2 matrix
        half_trace = .5 * (sigma[0, 0] + sigma[1, 1])
        half_gap = np.hypot(.5 * (sigma[0, 0] - sigma[1, 1]), off)
        scale = max(1., abs(half_trace))
        if half_trace - half_gap < -PSD_TOL * scale:
            raise errors.DegenerateCovariance('covariance is not positive semi-definite')

        return super().__new__(
            cls,
            (float(mu[0]), float(mu[1])),
            ((float(sigma[0, 0]), float(off)), (float(off), float(sigma[1, 1])))
        )

    @classmethod
    def isotropic(cls, mean, var: float) -> 'SpatialGaussian':
        """Builds a Gaussian with covariance ``var * I``."""
        return cls(mean, ((var, 0.), (0., var)))

    @property
    def mu(self) -> np.ndarray:
        return np.array(self.mean)

    @property
    def sigma(self) -> np.ndarray:
        return np.array(self.cov)

    def inflate(self, extra) -> 'SpatialGaussian':
        """Returns a copy with ``extra`` added to the covariance."""
        return SpatialGaussian(self.mean, self.sigma + np.asarray(extra, dtype=float))

    def __str__(self):
        (a, b), (_, c) = self.cov
        x, y = self.mean
        return f'𝒩(μ=({x:.3f}, {y:.3f}), Σ=[[{a:.3f}, {b:.3f}], [{b:.3f}, {c:.3f}]])'

    def __repr__(self):
        return str(self)
