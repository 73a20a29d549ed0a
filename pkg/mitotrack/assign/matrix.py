import typing

import numpy as np

from .. import base
from . import costs


__all__ = ['build_extended_matrix', 'build_standard_matrix', 'CostMatrix', 'mitosis_costs']


class CostMatrix:
    """Costs of every way of explaining the detections of a frame, for one hypothesis.

    Rows are detections. Columns come in three blocks: the objects, one column per detection to
    leave it unassigned, and the objects again, each cost being increased by the object's
    mitosis cost. Assigning two detections to the same object, one through each object block,
    is a division.

    Parameters:
        values: ``(n_det, n_obj + n_det + n_obj)`` costs in nats, infinite when forbidden.
        n_obj: Number of objects.
        mitosis_cost: ``(n_obj,)`` mitosis costs.

    """

    def __init__(self, values, n_obj: int, mitosis_cost=None):
        values = np.asarray(values, dtype=float)
        n_det = values.shape[0]
        if values.ndim != 2 or values.shape[1] != 2 * n_obj + n_det:
            raise base.DomainError(
                f'expected a {n_det} x {2 * n_obj + n_det} matrix, got {values.shape}'
            )
        self.values = values
        self.n_obj = int(n_obj)
        self.n_det = n_det
        self.mitosis_cost = (
            np.zeros(n_obj) if mitosis_cost is None else np.asarray(mitosis_cost, dtype=float)
        )

    @property
    def shape(self):
        return self.values.shape

    @property
    def left(self) -> np.ndarray:
        return self.values[:, :self.n_obj]

    @property
    def middle(self) -> np.ndarray:
        return self.values[:, self.n_obj:self.n_obj + self.n_det]

    @property
    def right(self) -> np.ndarray:
        return self.values[:, self.n_obj + self.n_det:]

    def standard(self) -> np.ndarray:
        """The matrix without the mitosis block."""
        return self.values[:, :self.n_obj + self.n_det]

    def __repr__(self):
        return f'CostMatrix(n_det={self.n_det}, n_obj={self.n_obj})'


def mitosis_costs(objects: typing.Sequence[base.BernoulliComponent],
                  cfg: base.TrackerConfig) -> np.ndarray:
    if cfg.mitosis == 'free':
        return np.zeros(len(objects))
    if cfg.mitosis == 'forbidden':
        return np.full(len(objects), np.inf)
    return np.array([
        costs.mitosis_cost(obj.age, cfg.erlang_alpha, cfg.erlang_rate, cfg.clamp_eps)
        for obj in objects
    ], dtype=float)


def _blocks(dets, objects, cfg):
    """Assignment costs and unassigned costs."""

    # The Kalman ablation predicts the objects forward, hence they are compared with the
    # detections in the current frame instead of the motion-warped ones
    if cfg.motion_model == 'kalman':
        densities = [d.centroid for d in dets]
    else:
        densities = [d.motion_warped for d in dets]

    scores, _ = costs.score_matrix(
        [o.position.mean for o in objects], [o.position.cov for o in objects],
        [g.mean for g in densities], [g.cov for g in densities],
        gate=cfg.gate_mahalanobis_sq
    )
    return costs.association_costs(
        [o.existence for o in objects],
        scores,
        [d.clutter_prob for d in dets],
        cfg.p_detect,
        cfg.p_birth,
        cfg.clamp_eps
    )


def _diag_inf(diagonal) -> np.ndarray:
    block = np.full((len(diagonal), len(diagonal)), np.inf)
    np.fill_diagonal(block, diagonal)
    return block


def build_standard_matrix(dets: typing.Sequence[base.Detection],
                          objects: typing.Sequence[base.BernoulliComponent],
                          cfg: base.TrackerConfig) -> np.ndarray:
    """One-to-one assignment costs: ``n_det x (n_obj + n_det)``."""
    left, unassigned = _blocks(dets, objects, cfg)
    return np.hstack([left.reshape(len(dets), len(objects)), _diag_inf(unassigned)])


def build_extended_matrix(dets: typing.Sequence[base.Detection],
                          objects: typing.Sequence[base.BernoulliComponent],
                          cfg: base.TrackerConfig) -> CostMatrix:
    """Assignment costs where any object may take two detections by dividing.

    Example:

        >>> from mitotrack import assign, base

        >>> g = base.SpatialGaussian.isotropic((0, 0), .5)
        >>> dets = [base.Detection(1, j, g, g, .1) for j in range(3)]
        >>> objects = [base.BernoulliComponent(i, 1., g) for i in (1, 2)]
        >>> cfg = base.TrackerConfig(mitosis='free', mean_motion_cov=[[1, 0], [0, 1]])

        >>> m = assign.build_extended_matrix(dets, objects, cfg)
        >>> m.shape
        (3, 7)
        >>> (m.right == m.left).all()
        True

    """
    left, unassigned = _blocks(dets, objects, cfg)
    left = left.reshape(len(dets), len(objects))
    c_m = mitosis_costs(objects, cfg)
    right = left + c_m[None, :]
    return CostMatrix(np.hstack([left, _diag_inf(unassigned), right]), len(objects), c_m)
