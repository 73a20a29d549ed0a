import math
import typing

import numpy as np

from .. import base
from .. import proba
from .. import utils


__all__ = [
    'association_cost',
    'association_costs',
    'mitosis_cost',
    'score_matrix',
    'spatial_score'
]


# Ridge added to near singular covariance sums
RIDGE = 1e-6
MAX_CONDITION = 1e12


def score_matrix(obj_means, obj_covs, det_means, det_covs,
                 gate: float = 25.) -> typing.Tuple[np.ndarray, np.ndarray]:
    """Gaussian overlap between every detection and every object.

    Parameters:
        obj_means: ``(n_obj, 2)``.
        obj_covs: ``(n_obj, 2, 2)``.
        det_means: ``(n_det, 2)``.
        det_covs: ``(n_det, 2, 2)``.
        gate: Pairs whose squared Mahalanobis distance exceeds this value score 0.

    Returns:
        The ``(n_det, n_obj)`` scores and squared Mahalanobis distances.

    """

    obj_means = np.asarray(obj_means, dtype=float).reshape(-1, 2)
    det_means = np.asarray(det_means, dtype=float).reshape(-1, 2)
    obj_covs = np.asarray(obj_covs, dtype=float).reshape(-1, 2, 2)
    det_covs = np.asarray(det_covs, dtype=float).reshape(-1, 2, 2)

    s = det_covs[:, None] + obj_covs[None, :]
    a = s[..., 0, 0]
    b = .5 * (s[..., 0, 1] + s[..., 1, 0])
    c = s[..., 1, 1]

    def eigenvalues(a, c):
        mid = .5 * (a + c)
        gap = np.hypot(.5 * (a - c), b)
        return mid - gap, mid + gap

    with np.errstate(divide='ignore', invalid='ignore'):
        low, high = eigenvalues(a, c)
        ill = (low <= 0) | (high > MAX_CONDITION * low)
        a = np.where(ill, a + RIDGE, a)
        c = np.where(ill, c + RIDGE, c)
        low, _ = eigenvalues(a, c)

    if (low <= 0).any():
        raise base.DegenerateCovariance('covariance sum is not positive definite')

    d = obj_means[None, :] - det_means[:, None]
    dx, dy = d[..., 0], d[..., 1]
    det = a * c - b * b
    mahalanobis_sq = (c * dx * dx - 2 * b * dx * dy + a * dy * dy) / det

    scores = np.exp(-.5 * mahalanobis_sq) / (2 * math.pi * np.sqrt(det))
    scores = np.where(mahalanobis_sq > gate, 0., scores)
    return scores, mahalanobis_sq


def spatial_score(object_pos: base.SpatialGaussian, det_motion_warped: base.SpatialGaussian,
                  gate: float = 25.) -> float:
    """Density of the object's mean under the detection's density, covariances being summed.

    Example:

        >>> from mitotrack import assign, base

        >>> g = base.SpatialGaussian.isotropic((0, 0), .5)
        >>> round(assign.spatial_score(g, g), 6)
        0.159155

        >>> far = base.SpatialGaussian.isotropic((10, 0), .5)
        >>> assign.spatial_score(g, far)
        0.0

    """
    scores, _ = score_matrix(
        [object_pos.mean], [object_pos.cov],
        [det_motion_warped.mean], [det_motion_warped.cov],
        gate=gate
    )
    return float(scores[0, 0])


def association_costs(existences, scores, clutter_probs, p_detect: float, p_birth: float,
                      clamp_eps: float) -> typing.Tuple[np.ndarray, np.ndarray]:
    """Costs of assigning every detection to every object, and of leaving it unassigned.

    Parameters:
        existences: ``(n_obj,)`` existence probabilities.
        scores: ``(n_det, n_obj)`` spatial scores, 0 for gated pairs.
        clutter_probs: ``(n_det,)`` clutter probabilities.
        p_detect: Detection probability.
        p_birth: Birth probability.
        clamp_eps: Lower bound of the probabilities fed to the logarithms.

    Returns:
        The ``(n_det, n_obj)`` assignment costs, infinite for gated pairs, and the ``(n_det,)``
        costs of leaving each detection unassigned.

    """

    existences = np.asarray(existences, dtype=float).reshape(-1)
    keep = 1. - np.asarray(clutter_probs, dtype=float).reshape(-1)
    scores = np.asarray(scores, dtype=float).reshape(keep.size, existences.size)

    if (scores < 0).any():
        raise base.DomainError('spatial scores must be non-negative')

    # Gated pairs have a zero score and hence do not contribute to the normalization
    mass = p_detect * existences[None, :] * scores
    q = keep[:, None] * mass / (p_birth + mass.sum(axis=1, keepdims=True))

    with np.errstate(divide='ignore'):
        left = np.where(scores > 0, -np.log(np.maximum(q, clamp_eps)), np.inf)

    explained = np.where(np.isfinite(left), np.exp(-left), 0.).sum(axis=1)
    unassigned = -np.log(np.maximum(keep - explained, clamp_eps))
    return left, unassigned


def association_cost(det: base.Detection, objects: typing.Sequence[typing.Tuple[float, float]],
                     p_detect: float = .9, p_birth: float = .1,
                     clamp_eps: float = 1e-12) -> typing.Tuple[typing.List[float], float]:
    """Costs of one detection.

    Parameters:
        det: The detection.
        objects: ``(existence, spatial score)`` of every object.

    Returns:
        The cost of assigning the detection to each object and the cost of leaving it unassigned.

    Example:

        >>> import math
        >>> from mitotrack import assign, base

        >>> g = base.SpatialGaussian.isotropic((0, 0), 1.)
        >>> det = base.Detection(0, 0, g, g, clutter_prob=0.)
        >>> costs, unassigned = assign.association_cost(det, [(1., 1 / (2 * math.pi))])
        >>> round(costs[0], 4), round(unassigned, 4)
        (0.5296, 0.8889)

        >>> det = base.Detection(0, 0, g, g, clutter_prob=.25)
        >>> costs, unassigned = assign.association_cost(det, [])
        >>> costs, round(unassigned, 4)
        ([], 0.2877)

    """
    existences = [r for r, _ in objects]
    scores = np.array([[n for _, n in objects]], dtype=float).reshape(1, len(existences))
    left, unassigned = association_costs(
        existences, scores, [det.clutter_prob], p_detect, p_birth, clamp_eps
    )
    return [float(c) for c in left[0]], float(unassigned[0])


def mitosis_cost(age: typing.Optional[int], alpha: int, rate: float,
                 clamp_eps: float = 1e-12) -> float:
    """Cost of an object dividing, given the time elapsed since its own birth by division.

    Objects whose age is unknown divide for free.

    Example:

        >>> from mitotrack import assign

        >>> assign.mitosis_cost(None, alpha=2, rate=1)
        0.0
        >>> round(assign.mitosis_cost(2, alpha=2, rate=1), 4)
        0.5209
        >>> round(assign.mitosis_cost(0, alpha=2, rate=1), 2)
        27.63

    """
    if age is None:
        return 0.
    return utils.math.neg_log(proba.erlang_cdf(age, alpha, rate), clamp_eps)
