import numpy as np
from scipy import optimize

from .. import base
from .assignment import Assignment
from .matrix import CostMatrix


__all__ = ['hungarian', 'solve']


def solve(values: np.ndarray):
    """Optimal row-complete assignment of a dense matrix.

    Returns the column of every row and the total cost, or `None` when no assignment has a
    finite cost.

    """

    n_rows, n_cols = values.shape
    if n_rows == 0:
        return (), 0.
    if n_rows > n_cols:
        return None

    try:
        rows, cols = optimize.linear_sum_assignment(values)
    except ValueError:
        return None

    cost = values[rows, cols].sum()
    if not np.isfinite(cost):
        return None

    row_to_col = np.empty(n_rows, dtype=int)
    row_to_col[rows] = cols
    return tuple(row_to_col.tolist()), float(cost)


def hungarian(matrix) -> Assignment:
    """Minimum cost assignment of every row to a distinct column.

    Parameters:
        matrix: A `CostMatrix` or a rectangular array with no more rows than columns. Infinite
            entries are forbidden pairs.

    Example:

        >>> from mitotrack import assign

        >>> a = assign.hungarian([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
        >>> a.row_to_col, a.total_cost
        ((1, 0, 2), 5.0)

    """

    n_obj = None
    if isinstance(matrix, CostMatrix):
        n_obj = matrix.n_obj
        matrix = matrix.values
    values = np.asarray(matrix, dtype=float)

    if values.ndim != 2:
        raise base.DomainError(f'expected a 2D matrix, got shape {values.shape}')
    if np.isnan(values).any() or np.isneginf(values).any():
        raise base.DomainError('costs must be finite or +inf')

    solution = solve(values)
    if solution is None:
        raise base.Infeasible(f'no finite assignment exists for a {values.shape} matrix')

    row_to_col, cost = solution
    return Assignment(row_to_col, cost, n_obj=n_obj)
