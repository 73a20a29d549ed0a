import logging
import typing

import numpy as np

from .. import base
from .store import HypothesisStore


__all__ = ['extract_lineage']


logger = logging.getLogger(__name__)


def _points(store: HypothesisStore, c: base.BernoulliComponent, begin: int, end: int):
    """One point per frame, gaps being filled by linear interpolation."""
    detected = [(f, d) for f, d in c.history if d != base.MISSED and begin <= f <= end]
    frames = np.array([f for f, _ in detected], dtype=float)
    xy = np.array([store.centroid(f, d) for f, d in detected], dtype=float)
    det_ids = dict(detected)

    span = np.arange(begin, end + 1, dtype=float)
    # np.interp holds the boundary values outside of the detected frames
    xs = np.interp(span, frames, xy[:, 0])
    ys = np.interp(span, frames, xy[:, 1])
    return [
        base.Point(f, det_ids.get(f, base.INTERPOLATED), x, y)
        for f, x, y in zip(range(begin, end + 1), xs, ys)
    ]


def extract_lineage(store: HypothesisStore, cfg: base.TrackerConfig) -> base.LineageTree:
    """Tracks of the most likely hypothesis.

    Tracks with fewer than ``min_track_len`` detections are removed, except mitosis parents.
    When a daughter is removed, the division is undone: its sister loses its parent link. Gaps
    are filled by linear interpolation and mitosis parents are extended up to the frame before
    their daughters appear.

    """

    if not store.hypotheses:
        raise base.DomainError('the store holds no hypothesis')

    best = store.best
    comps = {c.object_id: c for c in best.components + best.archive if c.n_detections > 0}
    parent_of = {
        i: c.parent_id for i, c in comps.items()
        if c.parent_id is not None and c.parent_id in comps
    }

    def children():
        kids: typing.Dict[int, typing.List[int]] = {}
        for kid, parent in parent_of.items():
            kids.setdefault(parent, []).append(kid)
        return kids

    # Drop short tracks until no division is left incomplete
    while True:
        kids = children()
        dividing = {p for p, k in kids.items() if len(k) == 2}
        short = [
            i for i, c in comps.items()
            if i not in dividing and c.n_detections < cfg.min_track_len
        ]
        incomplete = [p for p, k in kids.items() if len(k) != 2]
        if not short and not incomplete:
            break
        for i in short:
            del comps[i]
            parent_of.pop(i, None)
        for p in incomplete:
            for kid in kids[p]:
                parent_of.pop(kid, None)
        parent_of = {
            kid: p for kid, p in parent_of.items() if kid in comps and p in comps
        }

    kids = children()
    order = sorted(comps.values(), key=lambda c: (c.key, c.object_id))
    track_ids = {c.object_id: n for n, c in enumerate(order, start=1)}

    tracks = []
    for c in order:
        begin = c.birth_frame
        if c.object_id in kids:
            end = min(comps[k].birth_frame for k in kids[c.object_id]) - 1
        else:
            end = max(f for f, d in c.history if d != base.MISSED)
        parent = track_ids[parent_of[c.object_id]] if c.object_id in parent_of else 0
        tracks.append(base.Track(track_ids[c.object_id], begin, end, parent,
                                 _points(store, c, begin, end)))

    tree = base.LineageTree(tracks)
    tree.check(cfg.min_track_len)
    logger.info('extracted %d tracks and %d divisions', len(tree), len(tree.divisions()))
    return tree
