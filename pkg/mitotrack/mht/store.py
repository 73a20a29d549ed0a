import collections
import typing

from .. import base


__all__ = ['HypothesisStore']


class HypothesisStore(collections.namedtuple('HypothesisStore', 'frame hypotheses centroids')):
    """The hypotheses of the tracker after a frame.

    Parameters:
        frame: Index of the last processed frame, -1 before the first one.
        hypotheses: Hypotheses sorted by increasing weight.
        centroids: One mapping ``det_id -> (x, y)`` per processed frame, needed to draw the
            tracks once tracking is over.

    Example:

        >>> from mitotrack import mht

        >>> store = mht.HypothesisStore.initial()
        >>> store.frame, len(store.hypotheses), store.next_object_id
        (-1, 1, 1)

    """

    @classmethod
    def initial(cls) -> 'HypothesisStore':
        return cls(-1, (base.Hypothesis(),), ())

    @property
    def best(self) -> base.Hypothesis:
        return self.hypotheses[0]

    @property
    def next_object_id(self) -> int:
        return max(h.next_id for h in self.hypotheses)

    def centroid(self, frame: int, det_id: int) -> typing.Tuple[float, float]:
        return self.centroids[frame][det_id]

    def __repr__(self):
        return f'HypothesisStore(frame={self.frame}, hypotheses={len(self.hypotheses)})'
