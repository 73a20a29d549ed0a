"""Constant velocity Kalman filter, used by the ablation that replaces the motion-warped matching.

The state is ``(x, y, vx, vy)``. It is stored on the components as a tuple ``(mean, cov)`` of
nested tuples so that components stay immutable.

"""
import numpy as np

from .. import base


__all__ = ['init', 'predict', 'update']


F = np.block([[np.eye(2), np.eye(2)], [np.zeros((2, 2)), np.eye(2)]])
H = np.hstack([np.eye(2), np.zeros((2, 2))])


def _pack(x, P):
    P = .5 * (P + P.T)
    return tuple(x.tolist()), tuple(map(tuple, P.tolist()))


def _unpack(kinematics):
    x, P = kinematics
    return np.array(x, dtype=float), np.array(P, dtype=float)


def position(kinematics) -> base.SpatialGaussian:
    x, P = _unpack(kinematics)
    return base.SpatialGaussian(x[:2], P[:2, :2])


def init(det: base.Detection, motion_cov):
    """State of an object first seen at a detection, its velocity being unknown."""
    x = np.array([*det.centroid.mean, 0., 0.])
    P = np.zeros((4, 4))
    P[:2, :2] = det.centroid.sigma
    P[2:, 2:] = motion_cov
    return _pack(x, P)


def predict(kinematics, motion_cov, process_scale: float = 1.):
    x, P = _unpack(kinematics)
    Q = np.zeros((4, 4))
    Q[:2, :2] = motion_cov
    Q[2:, 2:] = process_scale * np.asarray(motion_cov)
    return _pack(F @ x, F @ P @ F.T + Q)


def update(kinematics, det: base.Detection):
    """Corrects the state with the centroid of a detection."""
    x, P = _unpack(kinematics)
    S = H @ P @ H.T + det.centroid.sigma
    K = np.linalg.solve(S, H @ P).T
    x = x + K @ (det.centroid.mu - H @ x)
    P = (np.eye(4) - K @ H) @ P
    return _pack(x, P)
