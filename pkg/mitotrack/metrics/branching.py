import typing

import numpy as np
from scipy import optimize

from .. import base
from . import base as metrics_base
from .match import TrackMatch


__all__ = ['branching_correctness', 'BranchingCorrectness', 'count_divisions']


Division = typing.Tuple[int, int, int]


def _frame(tree: base.LineageTree, division: Division) -> int:
    """First frame of the daughters."""
    return tree[division[1]].begin


def _paired(match: TrackMatch, gt_id: int, pred_id: int, frames: typing.Iterable[int]) -> bool:
    return any(match.pred_of(gt_id, k) == pred_id for k in frames)


def _agree(match: TrackMatch, pred: base.LineageTree, gt: base.LineageTree,
           p: Division, g: Division, tolerance: int) -> bool:
    fp, fg = _frame(pred, p), _frame(gt, g)
    if abs(fp - fg) > tolerance:
        return False

    first, last = min(fp, fg), max(fp, fg)
    before = range(first - 1 - tolerance, first)
    after = range(last, last + tolerance + 1)

    if not _paired(match, g[0], p[0], before):
        return False
    (a, b), (x, y) = g[1:], p[1:]
    return (
        (_paired(match, a, x, after) and _paired(match, b, y, after)) or
        (_paired(match, a, y, after) and _paired(match, b, x, after))
    )


def count_divisions(pred: base.LineageTree, gt: base.LineageTree, tolerance: int,
                    match_radius: float = 5.) -> typing.Tuple[int, int, int]:
    """Returns the number of true positive, computed and reference divisions.

    A computed division is true when both daughter frames are within ``tolerance`` frames, the
    mothers are paired just before the earlier one, and both daughters are paired, in either
    order, just after the later one. Each division counts at most once.

    """
    if int(tolerance) != tolerance or tolerance < 0:
        raise base.DomainError(f'tolerance must be a non-negative integer, got {tolerance}')

    pred_divs, gt_divs = pred.divisions(), gt.divisions()
    if not pred_divs or not gt_divs:
        return 0, len(pred_divs), len(gt_divs)

    match = TrackMatch(pred, gt, match_radius)
    agree = np.array([
        [_agree(match, pred, gt, p, g, int(tolerance)) for g in gt_divs]
        for p in pred_divs
    ], dtype=float)
    rows, cols = optimize.linear_sum_assignment(agree, maximize=True)
    return int(agree[rows, cols].sum()), len(pred_divs), len(gt_divs)


def _f1(tp, n_pred, n_gt):
    if not n_gt:
        return metrics_base.NOT_APPLICABLE
    return 2 * tp / (n_pred + n_gt)


def branching_correctness(pred: base.LineageTree, gt: base.LineageTree, i: int,
                          match_radius: float = 5.) -> typing.Optional[float]:
    """Branching correctness BC(i): F1 score of the detected divisions, with a tolerance of ``i``
    frames.

    Returns `NOT_APPLICABLE` when the reference has no division.

    Example:

        >>> from mitotrack import base
        >>> from mitotrack import metrics

        >>> def tree(split):
        ...     return base.LineageTree([
        ...         base.Track(1, 0, split - 1, 0, [(k, 0, 0., 0.) for k in range(split)]),
        ...         base.Track(2, split, 9, 1, [(k, 0, -2., 0.) for k in range(split, 10)]),
        ...         base.Track(3, split, 9, 1, [(k, 1, 2., 0.) for k in range(split, 10)])
        ...     ])

        >>> metrics.branching_correctness(tree(5), tree(5), 0)
        1.0
        >>> metrics.branching_correctness(tree(6), tree(5), 0)
        0.0
        >>> metrics.branching_correctness(tree(6), tree(5), 1)
        1.0

    """
    return _f1(*count_divisions(pred, gt, i, match_radius))


class BranchingCorrectness(metrics_base.Metric):
    """Branching correctness BC(i), accumulated over several sequences.

    Parameters:
        i: Frame tolerance.
        match_radius: Largest centroid distance of a matched pair, in pixels.

    """

    def __init__(self, i=1, match_radius=5.):
        self.i = i
        self.match_radius = match_radius
        self.tp = 0
        self.n_pred = 0
        self.n_gt = 0

    @property
    def name(self):
        return f'BC({self.i})'

    def update(self, pred, gt):
        tp, n_pred, n_gt = count_divisions(pred, gt, self.i, self.match_radius)
        self.tp += tp
        self.n_pred += n_pred
        self.n_gt += n_gt
        return self

    def get(self):
        return _f1(self.tp, self.n_pred, self.n_gt)
