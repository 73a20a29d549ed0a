import typing

from scipy import stats

from .. import base
from . import base as metrics_base


__all__ = ['cell_cycle_accuracy', 'CellCycleAccuracy']


def _accuracy(pred_cycles, gt_cycles):
    if not pred_cycles or not gt_cycles:
        return metrics_base.NOT_APPLICABLE
    return 1. - stats.ks_2samp(pred_cycles, gt_cycles).statistic


def cell_cycle_accuracy(pred: base.LineageTree,
                        gt: base.LineageTree) -> typing.Optional[float]:
    """Cell cycle accuracy (CCA): overlap of the computed and reference distributions of cell
    cycle lengths.

    It is one minus the largest gap between the two empirical cumulative distributions. A cycle
    is a track that begins and ends with a division. Returns `NOT_APPLICABLE` when either tree
    has no complete cycle.

    """
    return _accuracy(pred.cycle_lengths(), gt.cycle_lengths())


class CellCycleAccuracy(metrics_base.Metric):
    """Cell cycle accuracy (CCA), pooling the cycles of several sequences.

    Example:

        >>> from mitotrack import metrics

        >>> metric = metrics.CellCycleAccuracy()
        >>> metric
        CellCycleAccuracy: N/A
        >>> metric.pred_cycles = [10, 20]
        >>> metric.gt_cycles = [10, 30]
        >>> metric
        CellCycleAccuracy: 50.00%

    """

    def __init__(self):
        self.pred_cycles: typing.List[int] = []
        self.gt_cycles: typing.List[int] = []

    def update(self, pred, gt):
        self.pred_cycles.extend(pred.cycle_lengths())
        self.gt_cycles.extend(gt.cycle_lengths())
        return self

    def get(self):
        return _accuracy(self.pred_cycles, self.gt_cycles)
