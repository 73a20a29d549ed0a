import copy
import inspect
import math
import typing

import numpy as np

from . import errors


__all__ = ['AUTO', 'Config', 'GIBBS', 'MURTY', 'TrackerConfig']


AUTO = 'auto'
MURTY = 'murty'
GIBBS = 'gibbs'


class Config:
    """A bag of parameters.

    The constructor signature defines the accepted keys, in the same spirit as estimators whose
    parameters are exactly the arguments of their ``__init__``. Unknown keys are refused so that
    typos in configuration files fail fast.

    """

    def _get_params(self) -> typing.Dict[str, typing.Any]:
        return {
            name: getattr(self, name)
            for name in inspect.signature(self.__init__).parameters  # type: ignore
        }

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        """Returns a JSON friendly dictionary of the parameters."""
        return {name: _jsonify(val) for name, val in self._get_params().items()}

    @classmethod
    def from_dict(cls, params: typing.Dict[str, typing.Any]):
        """Builds a configuration, refusing keys the constructor does not know."""
        known = set(inspect.signature(cls.__init__).parameters) - {'self'}
        unknown = sorted(set(params) - known)
        if unknown:
            raise errors.InvalidConfig(f'unknown {cls.__name__} keys: {", ".join(unknown)}')
        return cls(**params)

    def clone(self, **changes):
        """Returns a new instance with some of the parameters replaced."""
        params = {**self._get_params(), **changes}
        return self.from_dict(copy.deepcopy(params))

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return _repr_obj(self, self._get_params())


class TrackerConfig(Config):
    """Parameters of the multi-hypothesis tracker.

    Parameters:
        p_detect: Probability that an existing cell is detected.
        p_birth: Probability that a detection is a newly appearing cell.
        a_max: Number of assignments sampled per hypothesis and frame.
        h_max: Number of hypotheses kept after each reduction.
        erlang_alpha: Shape of the Erlang cell-cycle law, or ``'auto'``.
        erlang_rate: Rate of the Erlang cell-cycle law, or ``'auto'``.
        mean_motion_cov: Mean motion covariance per frame as a 2x2 nested list, or ``'auto'``.
        gate_mahalanobis_sq: Squared Mahalanobis distance above which pairs cannot be assigned.
        clamp_eps: Lower bound of probabilities fed to logarithms.
        prune_weight_delta: Hypotheses whose weight exceeds the best one by more than this many
            nats are pruned.
        existence_floor: Objects whose existence probability drops below this are terminated.
        min_track_len: Tracks with fewer detections are removed after tracking, unless they
            divide.
        sampler: ``'murty'`` for the k-best assignments or ``'gibbs'`` for Gibbs sampling.
        gibbs_samples: Number of Gibbs sweeps per hypothesis.
        rng_seed: Seed of the random stream.
        mitosis: ``'erlang'`` for lifetime based division costs, ``'free'`` for zero division
            costs, ``'forbidden'`` for a standard one-to-one tracker.
        motion_model: ``'implicit'`` matches objects against the motion-warped densities of the
            detections, ``'kalman'`` uses a constant-velocity Kalman filter instead.
        kalman_process_scale: Velocity process noise, as a multiple of the mean motion
            covariance. Only used by the Kalman motion model.

    Example:

        >>> from mitotrack import base

        >>> cfg = base.TrackerConfig(a_max=3)
        >>> cfg.a_max, cfg.h_max
        (3, 150)

        >>> cfg = cfg.resolve(n_frames=10, mean_motion_cov=[[2, 0], [0, 2]])
        >>> cfg.erlang_alpha, cfg.erlang_rate
        (10, 0.1)

        >>> base.TrackerConfig.from_dict({'a_mx': 3})
        Traceback (most recent call last):
            ...
        mitotrack.base.errors.InvalidConfig: unknown TrackerConfig keys: a_mx

    """

    def __init__(self, p_detect=.9, p_birth=.1, a_max=7, h_max=150, erlang_alpha=AUTO,
                 erlang_rate=AUTO, mean_motion_cov=AUTO, gate_mahalanobis_sq=25.,
                 clamp_eps=1e-12, prune_weight_delta=20., existence_floor=1e-3, min_track_len=2,
                 sampler=MURTY, gibbs_samples=1000, rng_seed=0, mitosis='erlang',
                 motion_model='implicit', kalman_process_scale=1.):

        for name, p in (('p_detect', p_detect), ('p_birth', p_birth)):
            if not 0. < p < 1.:
                raise errors.InvalidConfig(f'{name} must lie in (0, 1), got {p}')
        if not 0. <= existence_floor < 1.:
            raise errors.InvalidConfig('existence_floor must lie in [0, 1)')
        for name, n in (('a_max', a_max), ('h_max', h_max), ('gibbs_samples', gibbs_samples)):
            if int(n) != n or n < 1:
                raise errors.InvalidConfig(f'{name} must be a positive integer, got {n}')
        for name, x in (('gate_mahalanobis_sq', gate_mahalanobis_sq), ('clamp_eps', clamp_eps),
                        ('prune_weight_delta', prune_weight_delta),
                        ('kalman_process_scale', kalman_process_scale)):
            if not x > 0:
                raise errors.InvalidConfig(f'{name} must be positive, got {x}')
        if min_track_len < 0:
            raise errors.InvalidConfig('min_track_len must be non-negative')
        if erlang_alpha != AUTO and (int(erlang_alpha) != erlang_alpha or erlang_alpha < 1):
            raise errors.InvalidConfig(f'erlang_alpha must be a positive integer or "{AUTO}"')
        if erlang_rate != AUTO and not erlang_rate > 0:
            raise errors.InvalidConfig(f'erlang_rate must be positive or "{AUTO}"')
        if sampler not in (MURTY, GIBBS):
            raise errors.InvalidConfig(f'sampler must be "{MURTY}" or "{GIBBS}", got {sampler}')
        if mitosis not in ('erlang', 'free', 'forbidden'):
            raise errors.InvalidConfig(f'unknown mitosis mode {mitosis}')
        if motion_model not in ('implicit', 'kalman'):
            raise errors.InvalidConfig(f'unknown motion model {motion_model}')

        if mean_motion_cov != AUTO:
            cov = np.asarray(mean_motion_cov, dtype=float)
            if cov.shape != (2, 2) or not np.allclose(cov, cov.T):
                raise errors.InvalidConfig('mean_motion_cov must be a symmetric 2x2 matrix')
            mean_motion_cov = cov.tolist()

        self.p_detect = p_detect
        self.p_birth = p_birth
        self.a_max = int(a_max)
        self.h_max = int(h_max)
        self.erlang_alpha = erlang_alpha if erlang_alpha == AUTO else int(erlang_alpha)
        self.erlang_rate = erlang_rate
        self.mean_motion_cov = mean_motion_cov
        self.gate_mahalanobis_sq = gate_mahalanobis_sq
        self.clamp_eps = clamp_eps
        self.prune_weight_delta = prune_weight_delta
        self.existence_floor = existence_floor
        self.min_track_len = int(min_track_len)
        self.sampler = sampler
        self.gibbs_samples = int(gibbs_samples)
        self.rng_seed = int(rng_seed)
        self.mitosis = mitosis
        self.motion_model = motion_model
        self.kalman_process_scale = kalman_process_scale

    @property
    def resolved(self) -> bool:
        return AUTO not in (self.erlang_alpha, self.erlang_rate, self.mean_motion_cov)

    @property
    def max_cost(self) -> float:
        """Largest finite cost a clamped logarithm can produce."""
        return -math.log(self.clamp_eps)

    @property
    def motion_cov(self) -> np.ndarray:
        if self.mean_motion_cov == AUTO:
            raise errors.InvalidConfig('mean_motion_cov has not been resolved')
        return np.asarray(self.mean_motion_cov, dtype=float)

    def resolve(self, n_frames: int, mean_motion_cov=None) -> 'TrackerConfig':
        """Replaces the ``'auto'`` values.

        The Erlang law defaults to a shape of ``n_frames`` and a rate of ``1 / n_frames``, which
        penalizes divisions strongly on short sequences.

        """
        changes: typing.Dict[str, typing.Any] = {}
        if self.erlang_alpha == AUTO:
            changes['erlang_alpha'] = max(1, int(n_frames))
        if self.erlang_rate == AUTO:
            changes['erlang_rate'] = 1. / max(1, int(n_frames))
        if self.mean_motion_cov == AUTO:
            if mean_motion_cov is None:
                raise errors.InvalidConfig('a mean motion covariance is needed to resolve "auto"')
            changes['mean_motion_cov'] = np.asarray(mean_motion_cov, dtype=float).tolist()
        return self.clone(**changes)


def _jsonify(val):
    if isinstance(val, np.ndarray):
        return val.tolist()
    if isinstance(val, np.generic):
        return val.item()
    return val


def _repr_obj(obj, params) -> str:
    """Returns a pretty representation of a configuration."""

    rep = f'{obj.__class__.__name__} ('

    for name, val in params.items():
        if isinstance(val, str):
            val = f'"{val}"'
        elif isinstance(val, float):
            val = (
                f'{val:.0e}'
                if (val > 1e5 or (val < 1e-4 and val > 0)) else
                f'{val:.6f}'.rstrip('0')
            )
        rep += f'\n  {name}={val}'

    if params:
        rep += '\n'
    return rep + ')'
