"""The Kuhn-Munkres algorithm on rectangular matrices."""
import typing

import numpy as np


__all__ = ['kuhn_munkres']


Solution = typing.Optional[typing.Tuple[typing.Tuple[int, ...], float]]


def kuhn_munkres(values, return_n_steps: bool = False):
    """Optimal row-complete assignment by the star and prime labelling of the Hungarian method.

    Every row is first reduced by its minimum, after which the rows star the first zero of a
    column no other row has starred yet. Each remaining row is then served by an augmenting
    path of primed and starred zeros, the dual being adjusted whenever no uncovered zero is
    left. Spare columns holding copies of cheap entries hence let more rows be starred before
    any path has to be searched.

    Parameters:
        values: ``(n_rows, n_cols)`` costs with ``n_rows <= n_cols``, infinite when forbidden.
        return_n_steps: Whether to also return the number of searches for an uncovered zero.

    Returns:
        The column of every row and the total cost, or `None` when no assignment has a finite
        cost.

    Example:

        >>> import numpy as np
        >>> from mitotrack import assign

        >>> assign.kuhn_munkres([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
        ((1, 0, 2), 5.0)

        >>> assign.kuhn_munkres([[1., 1.], [np.inf, np.inf]]) is None
        True

    """

    values = np.asarray(values, dtype=float)
    n, m = values.shape
    n_steps = 0

    def done(solution: Solution):
        return (solution, n_steps) if return_n_steps else solution

    if n == 0:
        return done(((), 0.))
    if n > m:
        return done(None)

    mins = values.min(axis=1)
    if not np.isfinite(mins).all():
        return done(None)
    c = values - mins[:, None]

    star_of_row = np.full(n, -1)
    row_of_star = np.full(m, -1)
    for i in range(n):
        for j in np.flatnonzero(c[i] == 0):
            if row_of_star[j] < 0:
                star_of_row[i] = j
                row_of_star[j] = i
                break

    prime_of_row = np.full(n, -1)
    row_covered = np.zeros(n, dtype=bool)
    col_covered = row_of_star >= 0
    n_stars = int(col_covered.sum())

    while n_stars < n:
        n_steps += 1
        zeros = np.flatnonzero((c == 0) & ~row_covered[:, None] & ~col_covered[None, :])

        if zeros.size == 0:
            d = c[np.ix_(~row_covered, ~col_covered)].min()
            if not np.isfinite(d):
                return done(None)
            c[row_covered] += d
            c[:, ~col_covered] -= d
            continue

        i, j = divmod(int(zeros[0]), m)
        prime_of_row[i] = j
        if star_of_row[i] >= 0:
            row_covered[i] = True
            col_covered[star_of_row[i]] = False
            continue

        # Swap the stars along the path alternating primes and stars
        while True:
            r = row_of_star[j]
            star_of_row[i] = j
            row_of_star[j] = i
            if r < 0:
                break
            i, j = r, prime_of_row[r]

        n_stars += 1
        prime_of_row[:] = -1
        row_covered[:] = False
        col_covered = row_of_star >= 0

    cost = float(values[np.arange(n), star_of_row].sum())
    return done((tuple(star_of_row.tolist()), cost))
