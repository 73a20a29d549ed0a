import collections
import concurrent.futures
import logging
import typing

from .. import base
from .. import proba
from .. import utils
from . import recursion
from .lineage import extract_lineage
from .motion import estimate_mean_motion_cov
from .store import HypothesisStore


__all__ = ['group_by_frame', 'resolve_config', 'Tracker', 'track']


logger = logging.getLogger(__name__)


class Tracker:
    """Multi-hypothesis tracker of dividing cells.

    Frames are fed one after the other. Every hypothesis is confronted with the detections of
    the frame through a cost matrix in which objects may also take two detections, i.e. divide.
    The cheapest assignments of each hypothesis become the hypotheses of the next frame. The
    lineage is read from the most likely hypothesis once the sequence is over.

    Parameters:
        config: A resolved tracker configuration.
        threads: Number of threads that expand hypotheses concurrently.

    Example:

        >>> from mitotrack import base, mht

        >>> cfg = base.TrackerConfig(
        ...     erlang_alpha=10, erlang_rate=.1,
        ...     mean_motion_cov=[[1, 0], [0, 1]]
        ... )
        >>> tracker = mht.Tracker(cfg)

        >>> g = base.SpatialGaussian.isotropic((5, 5), .5)
        >>> for k in range(3):
        ...     tracker = tracker.update([base.Detection(k, 0, g, g, .05)])

        >>> [(t.track_id, t.begin, t.end, t.parent) for t in tracker.lineage()]
        [(1, 0, 2, 0)]

    """

    def __init__(self, config: base.TrackerConfig, threads: int = 1):
        if not config.resolved:
            raise base.InvalidConfig('the configuration has unresolved "auto" values')
        if threads < 1:
            raise base.InvalidConfig(f'threads must be positive, got {threads}')
        self.config = config
        self.threads = threads
        self.store = HypothesisStore.initial()
        self.rng = utils.seeded_rng(config.rng_seed)

    @property
    def frame(self) -> int:
        return self.store.frame

    def update(self, detections: typing.Sequence[base.Detection]) -> 'Tracker':
        """Processes the detections of the next frame."""
        if self.threads == 1:
            self.store = recursion.step(self.store, detections, self.config, self.rng)
        else:
            with concurrent.futures.ThreadPoolExecutor(self.threads) as executor:
                self.store = recursion.step(self.store, detections, self.config, self.rng,
                                         executor)
        return self

    def lineage(self) -> base.LineageTree:
        return extract_lineage(self.store, self.config)

    def __repr__(self):
        return f'Tracker(frame={self.frame}, hypotheses={len(self.store.hypotheses)})'


def group_by_frame(detections: typing.Iterable[base.Detection],
                   n_frames: typing.Optional[int] = None
                   ) -> typing.List[typing.List[base.Detection]]:
    """Lists the detections of every frame, frames without detections included."""
    by_frame = collections.defaultdict(list)
    for det in detections:
        by_frame[det.frame].append(det)
    if n_frames is None:
        n_frames = max(by_frame, default=-1) + 1
    return [sorted(by_frame.get(k, []), key=lambda d: d.det_id) for k in range(n_frames)]


def track(detections: typing.Iterable[base.Detection], config: base.TrackerConfig,
          threads: int = 1, n_frames: typing.Optional[int] = None) -> base.LineageTree:
    """Tracks a whole sequence.

    The ``'auto'`` values of the configuration are resolved with the number of frames and with
    the mean motion estimated from the detections.

    """

    frames = group_by_frame(detections, n_frames)
    config = resolve_config(config, frames)

    tracker = Tracker(config, threads=threads)
    for dets in frames:
        tracker.update(dets)
    logger.info('tracked %d frames, %d hypotheses left', len(frames),
                len(tracker.store.hypotheses))
    return tracker.lineage()


def resolve_config(config: base.TrackerConfig,
                   frames: typing.Sequence[typing.Sequence[base.Detection]],
                   cycle_lengths: typing.Optional[typing.Iterable[int]] = None
                   ) -> base.TrackerConfig:
    """Resolves the ``'auto'`` values of a configuration for a sequence of frames.

    Parameters:
        config: Configuration, possibly with ``'auto'`` values.
        frames: Detections of every frame.
        cycle_lengths: Cell cycle lengths observed on a reference sequence. When given, the
            ``'auto'`` parameters of the Erlang law are fitted to them instead of being derived
            from the number of frames.

    """
    if config.resolved:
        return config

    if cycle_lengths is not None and base.AUTO in (config.erlang_alpha, config.erlang_rate):
        law = proba.Erlang()
        for length in cycle_lengths:
            law.update(length)
        if law.is_fitted:
            changes: typing.Dict[str, typing.Any] = {}
            if config.erlang_alpha == base.AUTO:
                changes['erlang_alpha'] = law.alpha
            if config.erlang_rate == base.AUTO:
                changes['erlang_rate'] = law.rate
            config = config.clone(**changes)
            logger.info('fitted %s to %d cell cycles', law, law.n_samples)
        else:
            logger.warning('%d cell cycles cannot fit the Erlang law', law.n_samples)

    motion = None
    if config.mean_motion_cov == base.AUTO:
        flat = [det for dets in frames for det in dets]
        motion = estimate_mean_motion_cov(flat, config.clamp_eps)
    return config.resolve(n_frames=len(frames), mean_motion_cov=motion)
