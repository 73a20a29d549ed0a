import collections
import typing

import numpy as np

from .assignment import Assignment
from .hungarian import hungarian
from .matrix import CostMatrix


__all__ = ['gibbs_sample']


def _heat_bath(rng: np.random.Generator, costs: np.ndarray) -> int:
    """Draws an index with probability proportional to ``exp(-cost)``."""
    p = np.exp(-(costs - costs.min()))
    return int(rng.choice(len(costs), p=p / p.sum()))


def _plain_matches(key: tuple, n_obj: typing.Optional[int], n_det: int) -> tuple:
    """Moves lone rows matched through the mitosis block back to the object block."""
    if n_obj is None:
        return key
    first = n_obj + n_det
    objects = [c - first if c >= first else c for c in key if c < n_obj or c >= first]
    counts = collections.Counter(objects)
    return tuple(c - first if c >= first and counts[c - first] == 1 else c for c in key)


def gibbs_sample(matrix, n_samples: int, rng: np.random.Generator,
                 k: typing.Optional[int] = None) -> typing.List[Assignment]:
    """Samples assignments with probability proportional to ``exp(-cost)``.

    The chain starts from the optimal assignment, which counts as the first sample. Each sweep
    then lets every row draw its column among the columns the other rows leave free, followed
    by a joint draw of the row and of a random partner row, which may swap their columns. The
    second move keeps the chain irreducible on matrices without spare columns.

    Parameters:
        matrix: A `CostMatrix` or a rectangular array.
        n_samples: Number of states recorded, the initial one included.
        rng: Random generator.
        k: Maximum number of assignments returned.

    Returns:
        The distinct visited assignments, cheapest first, with their visit frequencies.

    Example:

        >>> import numpy as np
        >>> from mitotrack import assign

        >>> rng = np.random.default_rng(0)
        >>> samples = assign.gibbs_sample([[0., np.inf], [np.inf, 0.]], n_samples=10, rng=rng)
        >>> samples
        [Assignment(row_to_col=(0, 1), total_cost=0.000000, frequency=1.0000)]

    """

    n_obj = None
    if isinstance(matrix, CostMatrix):
        n_obj = matrix.n_obj
        matrix = matrix.values
    values = np.asarray(matrix, dtype=float)
    n_rows, n_cols = values.shape

    state = list(hungarian(values).row_to_col)
    visits: typing.Counter[tuple] = collections.Counter()

    def record():
        visits[tuple(state)] += 1

    record()
    for _ in range(n_samples - 1):
        for row in range(n_rows):

            # Resample the column of the row given the others
            taken = set(state) - {state[row]}
            candidates = np.array([
                c for c in range(n_cols)
                if c not in taken and np.isfinite(values[row, c])
            ])
            state[row] = int(candidates[_heat_bath(rng, values[row, candidates])])

            # Jointly resample the row and a partner: keep or swap their columns
            if n_rows > 1:
                partner = int(rng.integers(n_rows - 1))
                partner += partner >= row
                a, b = state[row], state[partner]
                swapped = values[row, b] + values[partner, a]
                if np.isfinite(swapped):
                    kept = values[row, a] + values[partner, b]
                    if _heat_bath(rng, np.array([kept, swapped])) == 1:
                        state[row], state[partner] = b, a

        record()

    # Physically identical events are pooled under their cheapest representative
    pooled: typing.Dict[tuple, Assignment] = {}
    for key, count in visits.items():
        key = _plain_matches(key, n_obj, n_rows)
        cost = float(sum(values[r, c] for r, c in enumerate(key)))
        a = Assignment(key, cost, n_obj=n_obj, frequency=count / n_samples)
        current = pooled.get(a.signature)
        if current is None:
            pooled[a.signature] = a
        elif a.total_cost < current.total_cost:
            a.frequency += current.frequency
            pooled[a.signature] = a
        else:
            current.frequency += a.frequency

    ranked = sorted(pooled.values(), key=lambda a: (a.total_cost, a.row_to_col))
    return ranked[:k] if k is not None else ranked
