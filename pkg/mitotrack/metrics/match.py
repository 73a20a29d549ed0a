import typing

import numpy as np
from scipy import optimize

from .. import base


__all__ = ['TrackMatch']


class TrackMatch:
    """Frame by frame pairing of reference tracks with computed tracks.

    At every frame, the positions of both trees are paired by a maximum cardinality matching
    restricted to pairs closer than ``match_radius``, ties being broken by the total distance.
    Each reference track is thus paired with at most one computed track per frame, and the
    other way round.

    Parameters:
        pred: Computed lineage.
        gt: Reference lineage.
        match_radius: Largest centroid distance of a matched pair, in pixels.

    Example:

        >>> from mitotrack import base
        >>> from mitotrack import metrics

        >>> gt = base.LineageTree([base.Track(1, 0, 1, 0, [(0, 0, 0., 0.), (1, 0, 1., 0.)])])
        >>> pred = base.LineageTree([
        ...     base.Track(4, 0, 0, 0, [(0, 0, .5, 0.)]),
        ...     base.Track(9, 1, 1, 0, [(1, 0, 9., 0.)])
        ... ])
        >>> match = metrics.TrackMatch(pred, gt, match_radius=2.)
        >>> match.pred_of(1, 0), match.pred_of(1, 1)
        (4, None)

    """

    def __init__(self, pred: base.LineageTree, gt: base.LineageTree, match_radius: float = 5.):
        if not match_radius > 0:
            raise base.DomainError(f'match_radius must be positive, got {match_radius}')
        self.match_radius = match_radius
        self.pairs: typing.Dict[int, typing.Dict[int, int]] = {}
        for frame in gt.frames:
            self.pairs[frame] = self._match_frame(pred.points_at(frame), gt.points_at(frame))

    def _match_frame(self, pred_points, gt_points) -> typing.Dict[int, int]:
        if not pred_points or not gt_points:
            return {}

        gt_ids, pred_ids = list(gt_points), list(pred_points)
        a = np.array([(gt_points[i].x, gt_points[i].y) for i in gt_ids])
        b = np.array([(pred_points[i].x, pred_points[i].y) for i in pred_ids])
        distances = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)

        # Matched pairs cost less than 1 in total, so the cardinality always comes first
        close = distances < self.match_radius
        n = min(len(gt_ids), len(pred_ids))
        costs = np.where(close, distances / (self.match_radius * (n + 1)), n + 1.)

        rows, cols = optimize.linear_sum_assignment(costs)
        return {gt_ids[r]: pred_ids[c] for r, c in zip(rows, cols) if close[r, c]}

    def pred_of(self, gt_id: int, frame: int) -> typing.Optional[int]:
        """The computed track paired with a reference track at a frame, if any."""
        return self.pairs.get(frame, {}).get(gt_id)

    def run(self, track: base.Track) -> typing.List[typing.Optional[int]]:
        """The computed track paired with a reference track at each of its frames."""
        return [self.pred_of(track.track_id, frame) for frame in range(track.begin, track.end + 1)]
