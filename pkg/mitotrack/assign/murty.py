import heapq
import itertools
import logging
import typing

import numpy as np

from .assignment import Assignment
from .clusters import split_clusters
from .hungarian import hungarian
from .hungarian import solve
from .matrix import CostMatrix


__all__ = ['murty_kbest']


logger = logging.getLogger(__name__)


def _solve_constrained(values, forced, excluded):
    """Optimal assignment with some pairs imposed and others forbidden."""

    n_rows, n_cols = values.shape
    sub = values.copy()
    for row, col in excluded:
        sub[row, col] = np.inf

    forced_rows = {row for row, _ in forced}
    forced_cols = {col for _, col in forced}
    free_rows = [r for r in range(n_rows) if r not in forced_rows]
    free_cols = [c for c in range(n_cols) if c not in forced_cols]

    solution = solve(sub[np.ix_(free_rows, free_cols)])
    if solution is None:
        return None
    sub_row_to_col, sub_cost = solution

    row_to_col = [0] * n_rows
    cost = sub_cost
    for row, col in forced:
        row_to_col[row] = col
        cost += values[row, col]
    for row, sub_col in zip(free_rows, sub_row_to_col):
        row_to_col[row] = free_cols[sub_col]
    return tuple(row_to_col), cost


def _ranked(values: np.ndarray, n_obj: typing.Optional[int], k: int) -> typing.List[Assignment]:
    """Murty's partitioning of a single matrix."""

    best = hungarian(values)
    counter = itertools.count()
    heap = [(best.total_cost, next(counter), best.row_to_col, (), frozenset())]

    ranked: typing.List[Assignment] = []
    seen: typing.Set[tuple] = set()
    n_rows = values.shape[0]

    while heap and len(ranked) < k:
        cost, _, row_to_col, forced, excluded = heapq.heappop(heap)

        assignment = Assignment(row_to_col, cost, n_obj=n_obj)
        if assignment.signature not in seen:
            seen.add(assignment.signature)
            ranked.append(assignment)
            if len(ranked) == k:
                break

        # Partition the remaining solutions of the node
        forced_rows = {row for row, _ in forced}
        free_rows = [r for r in range(n_rows) if r not in forced_rows]
        fixed = list(forced)
        for row in free_rows:
            child_excluded = excluded | {(row, row_to_col[row])}
            solution = _solve_constrained(values, fixed, child_excluded)
            if solution is not None:
                child_row_to_col, child_cost = solution
                heapq.heappush(heap, (
                    child_cost, next(counter), child_row_to_col, tuple(fixed), child_excluded
                ))
            fixed = fixed + [(row, row_to_col[row])]

    return ranked


def _cheapest_combinations(options: typing.List[typing.List[Assignment]],
                           k: int) -> typing.List[typing.Tuple[typing.Tuple[int, ...], float]]:
    """The `k` cheapest ways of picking one assignment per cluster.

    Every list is sorted by cost, hence the `k` cheapest combinations of the first clusters
    extend to the `k` cheapest combinations of all of them.

    """
    combos: typing.List[typing.Tuple[typing.Tuple[int, ...], float]] = [((), 0.)]
    for ranked in options:
        sums = np.add.outer([cost for _, cost in combos], [a.total_cost for a in ranked])
        order = np.argsort(sums, axis=None, kind='stable')[:k]
        combos = [
            (combos[i][0] + (j,), float(sums[i, j]))
            for i, j in zip(*np.unravel_index(order, sums.shape))
        ]
    return combos


def murty_kbest(matrix, k: int,
                cache: typing.Optional[typing.Dict[typing.Any, typing.List[Assignment]]] = None
                ) -> typing.List[Assignment]:
    """The `k` cheapest assignments, from the cheapest to the most expensive.

    The solution space is partitioned around each solution as it is ranked, so that every
    subproblem excludes the solutions already found. On an extended matrix, the two ways of
    spreading a division over the two blocks of an object describe the same events: only one
    of them is returned.

    An extended matrix is first split into clusters of detections that share no reachable
    object. Each cluster is ranked on its own and the rankings are then combined, which keeps
    the subproblems small on crowded frames.

    Parameters:
        matrix: A `CostMatrix` or a rectangular array.
        k: Number of assignments wanted. Fewer are returned when fewer exist.
        cache: Rankings of clusters already seen, keyed by their costs. The hypotheses of a
            frame mostly share their clusters, hence they can share one cache.

    Example:

        >>> from mitotrack import assign

        >>> for a in assign.murty_kbest([[1, 2], [3, 1]], k=3):
        ...     print(a.row_to_col, a.total_cost)
        (0, 1) 2.0
        (1, 0) 5.0

    """

    if not isinstance(matrix, CostMatrix):
        ranked = _ranked(np.asarray(matrix, dtype=float), None, k)
        logger.debug('ranked %d assignments out of %d requested', len(ranked), k)
        return ranked

    clusters = split_clusters(matrix)
    options = []
    for cluster in clusters:
        sub = cluster.sub_matrix(matrix)
        key = (sub.n_obj, sub.shape, k, sub.values.tobytes())
        ranked = cache.get(key) if cache is not None else None
        if ranked is None:
            ranked = _ranked(sub.values, sub.n_obj, k)
            if cache is not None:
                cache[key] = ranked
        options.append(ranked)

    combined = []
    for picks, cost in _cheapest_combinations(options, k):
        row_to_col = [0] * matrix.n_det
        for cluster, ranked, pick in zip(clusters, options, picks):
            columns = cluster.columns(matrix)
            for row, col in zip(cluster.rows, ranked[pick].row_to_col):
                row_to_col[row] = int(columns[col])
        combined.append(Assignment(row_to_col, cost, n_obj=matrix.n_obj))

    logger.debug('ranked %d assignments out of %d requested over %d clusters',
                 len(combined), k, len(clusters))
    return combined
