"""Runtime of the optimal assignment under the three matrix formulations."""
import collections
import math
import time
import typing

import numpy as np

from . import costs
from .munkres import kuhn_munkres


__all__ = ['FORMULATIONS', 'format_ns', 'random_instance', 'run']


FORMULATIONS = ('standard', 'mitosis_free', 'mitosis_forbidden')
Timing = collections.namedtuple('Timing', 'size formulation mean_ns')


def format_ns(d: int) -> str:
    """Human readable duration.

    Example:

        >>> format_ns(1_500_000)
        '1ms, 500μs'

    """

    units = collections.OrderedDict({'ns': 1})
    units['μs'] = 1000 * units['ns']
    units['ms'] = 1000 * units['μs']
    units['s'] = 1000 * units['ms']
    units['m'] = 60 * units['s']
    units['h'] = 60 * units['m']

    parts = []

    for unit in reversed(units):
        amount = units[unit]
        quotient, d = divmod(d, amount)
        if quotient > 0:
            parts.append(f'{quotient}{unit}')
        elif d == 0:
            break

    return ', '.join(parts)


def random_instance(n: int, rng: np.random.Generator, motion_sigma: float = 2.,
                    density: float = 1 / 100) -> typing.Dict[str, np.ndarray]:
    """Cost matrices of a random frame with `n` objects and `n` detections.

    Cells are scattered uniformly with the given number of cells per squared pixel and move by
    a Gaussian step. The default density crowds the cells enough for several detections to
    prefer the same object. The three formulations share the same association costs.

    """

    side = math.sqrt(n / density)
    before = rng.uniform(0, side, size=(n, 2))
    after = before + rng.normal(0, motion_sigma, size=(n, 2))
    warped = after + rng.normal(0, motion_sigma / 2, size=(n, 2))

    var = motion_sigma ** 2
    obj_covs = np.tile(np.eye(2) * var, (n, 1, 1))
    det_covs = np.tile(np.eye(2) * var / 4, (n, 1, 1))
    scores, _ = costs.score_matrix(before, obj_covs, warped, det_covs)
    left, unassigned = costs.association_costs(
        np.ones(n), scores, rng.uniform(0, .2, size=n), p_detect=.9, p_birth=.1,
        clamp_eps=1e-12
    )

    middle = np.full((n, n), np.inf)
    np.fill_diagonal(middle, unassigned)
    return {
        'standard': np.hstack([left, middle]),
        'mitosis_free': np.hstack([left, middle, left]),
        'mitosis_forbidden': np.hstack([left, middle, np.full((n, n), np.inf)])
    }


def run(sizes: typing.Iterable[int], trials: int, seed: int = 0) -> typing.List[Timing]:
    """Mean wall time of the optimal assignment per size and formulation.

    Every trial solves the three formulations of the same instance with `kuhn_munkres`, one
    after the other on the calling thread.

    """

    rng = np.random.default_rng(seed)
    timings = []

    for n in sizes:
        total = dict.fromkeys(FORMULATIONS, 0)
        for _ in range(trials):
            instance = random_instance(n, rng)
            for name in FORMULATIONS:
                tic = time.perf_counter_ns()
                kuhn_munkres(instance[name])
                total[name] += time.perf_counter_ns() - tic
        timings.extend(Timing(n, name, total[name] / trials) for name in FORMULATIONS)

    return timings
