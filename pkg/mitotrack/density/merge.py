import typing

import numpy as np

from .. import base


__all__ = ['merge_gaussian_mixture', 'merge_arrays']


def merge_arrays(weights, means, covs) -> base.SpatialGaussian:
    """Moment matching of a mixture given as arrays.

    Parameters:
        weights: Shape ``(n,)``, non-negative.
        means: Shape ``(n, 2)``.
        covs: Shape ``(n, 2, 2)``.

    """

    weights = np.asarray(weights, dtype=float)
    if weights.size == 0:
        raise base.EmptyMixture('cannot merge a mixture without components')
    if (weights < 0).any() or not np.isfinite(weights).all():
        raise base.DegenerateWeights('mixture weights must be finite and non-negative')

    total = weights.sum()
    if total <= 0:
        raise base.DegenerateWeights('the mixture weights sum to zero')

    p = weights / total
    means = np.asarray(means, dtype=float).reshape(-1, 2)
    covs = np.asarray(covs, dtype=float).reshape(-1, 2, 2)

    mean = p @ means
    diff = means - mean
    cov = np.einsum('p,pij->ij', p, covs) + np.einsum('p,pi,pj->ij', p, diff, diff)
    return base.SpatialGaussian(mean, cov)


def merge_gaussian_mixture(
    components: typing.Iterable[typing.Tuple[float, typing.Sequence, typing.Sequence]]
) -> base.SpatialGaussian:
    """Merges a Gaussian mixture into a single Gaussian with the same first two moments.

    Parameters:
        components: ``(weight, mean, cov)`` triplets.

    Example:

        >>> from mitotrack import density

        >>> density.merge_gaussian_mixture([
        ...     (.5, (0, 0), [[0, 0], [0, 0]]),
        ...     (.5, (2, 0), [[0, 0], [0, 0]])
        ... ])
        𝒩(μ=(1.000, 0.000), Σ=[[1.000, 0.000], [0.000, 0.000]])

    """
    components = list(components)
    if not components:
        raise base.EmptyMixture('cannot merge a mixture without components')
    weights, means, covs = zip(*components)
    return merge_arrays(weights, means, covs)
