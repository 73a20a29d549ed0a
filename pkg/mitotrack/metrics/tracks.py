import itertools
import typing

from .. import base
from . import base as metrics_base
from .match import TrackMatch


__all__ = ['complete_tracks', 'CompleteTracks', 'track_fractions', 'TrackFractions']


def _is_complete(run: typing.List[typing.Optional[int]]) -> bool:
    return run[0] is not None and all(r == run[0] for r in run)


def _longest_run(run: typing.List[typing.Optional[int]]) -> int:
    return max(
        (len(list(group)) for pred_id, group in itertools.groupby(run) if pred_id is not None),
        default=0
    )


def _check_gt(gt: base.LineageTree):
    if not len(gt):
        raise base.EmptyGroundTruth('the reference lineage has no tracks')


def complete_tracks(pred: base.LineageTree, gt: base.LineageTree,
                    match_radius: float = 5.) -> float:
    """Fraction of the reference tracks that a single computed track follows from end to end.

    Example:

        >>> from mitotrack import base
        >>> from mitotrack import metrics

        >>> gt = base.LineageTree([
        ...     base.Track(1, 0, 2, 0, [(k, 0, 0., 0.) for k in range(3)]),
        ...     base.Track(2, 0, 2, 0, [(k, 1, 20., 0.) for k in range(3)])
        ... ])
        >>> pred = base.LineageTree([
        ...     base.Track(1, 0, 2, 0, [(k, 0, 0., 0.) for k in range(3)]),
        ...     base.Track(2, 0, 1, 0, [(k, 1, 20., 0.) for k in range(2)])
        ... ])
        >>> metrics.complete_tracks(pred, gt)
        0.5

    """
    _check_gt(gt)
    match = TrackMatch(pred, gt, match_radius)
    return sum(_is_complete(match.run(t)) for t in gt) / len(gt)


def track_fractions(pred: base.LineageTree, gt: base.LineageTree,
                    match_radius: float = 5.) -> float:
    """Average over the reference tracks of the longest part followed by one computed track.

    Example:

        >>> from mitotrack import base
        >>> from mitotrack import metrics

        >>> gt = base.LineageTree([base.Track(1, 0, 9, 0, [(k, 0, k, 0.) for k in range(10)])])
        >>> pred = base.LineageTree([
        ...     base.Track(1, 0, 4, 0, [(k, 0, k, 0.) for k in range(5)]),
        ...     base.Track(2, 5, 7, 0, [(k, 0, k, 0.) for k in range(5, 8)]),
        ...     base.Track(3, 8, 9, 0, [(k, 0, k, 0.) for k in range(8, 10)])
        ... ])
        >>> metrics.track_fractions(pred, gt)
        0.5

    """
    _check_gt(gt)
    match = TrackMatch(pred, gt, match_radius)
    return sum(_longest_run(match.run(t)) / t.length for t in gt) / len(gt)


class CompleteTracks(metrics_base.Metric):
    """Complete tracks (CT), accumulated over several sequences.

    Parameters:
        match_radius: Largest centroid distance of a matched pair, in pixels.

    """

    def __init__(self, match_radius=5.):
        self.match_radius = match_radius
        self.n_complete = 0
        self.n_tracks = 0

    def update(self, pred, gt):
        _check_gt(gt)
        match = TrackMatch(pred, gt, self.match_radius)
        self.n_complete += sum(_is_complete(match.run(t)) for t in gt)
        self.n_tracks += len(gt)
        return self

    def get(self):
        if not self.n_tracks:
            return metrics_base.NOT_APPLICABLE
        return self.n_complete / self.n_tracks


class TrackFractions(metrics_base.Metric):
    """Track fractions (TF), accumulated over several sequences.

    Parameters:
        match_radius: Largest centroid distance of a matched pair, in pixels.

    """

    def __init__(self, match_radius=5.):
        self.match_radius = match_radius
        self.total = 0.
        self.n_tracks = 0

    def update(self, pred, gt):
        _check_gt(gt)
        match = TrackMatch(pred, gt, self.match_radius)
        self.total += sum(_longest_run(match.run(t)) / t.length for t in gt)
        self.n_tracks += len(gt)
        return self

    def get(self):
        if not self.n_tracks:
            return metrics_base.NOT_APPLICABLE
        return self.total / self.n_tracks
