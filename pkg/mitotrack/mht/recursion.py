"""The filter recursion: predict, sample, update and reduce."""
import concurrent.futures
import logging
import math
import typing

from .. import assign
from .. import base
from .. import utils
from . import kalman
from .store import HypothesisStore


__all__ = ['expand', 'miss_cost', 'predict', 'reduce', 'step']


logger = logging.getLogger(__name__)


def predict(store: HypothesisStore, cfg: base.TrackerConfig) -> HypothesisStore:
    """Widens the position densities by the mean motion of a frame.

    Cells are assumed to follow a random walk, hence means stay in place. The Kalman motion
    model moves the means along the estimated velocities instead.

    """

    motion_cov = cfg.motion_cov

    def predict_one(c: base.BernoulliComponent) -> base.BernoulliComponent:
        if cfg.motion_model == 'kalman' and c.kinematics is not None:
            kinematics = kalman.predict(c.kinematics, motion_cov, cfg.kalman_process_scale)
            return c._replace(kinematics=kinematics, position=kalman.position(kinematics))
        return c._replace(position=c.position.inflate(motion_cov))

    return store._replace(hypotheses=tuple(
        h._replace(components=tuple(predict_one(c) for c in h.components))
        for h in store.hypotheses
    ))


def miss_cost(existence: float, p_detect: float) -> float:
    """Cost of an object going undetected."""
    return -math.log(1. - existence * p_detect)


def sample(matrix: assign.CostMatrix, cfg: base.TrackerConfig, rng: utils.RandomStream,
           cache: typing.Optional[dict] = None) -> typing.List[assign.Assignment]:
    if matrix.n_det == 0:
        return [assign.Assignment((), 0., n_obj=matrix.n_obj)]
    if cfg.sampler == base.GIBBS:
        return assign.gibbs_sample(matrix, cfg.gibbs_samples, rng.generator, k=cfg.a_max)
    return assign.murty_kbest(matrix, cfg.a_max, cache=cache)


def apply(h: base.Hypothesis, a: assign.Assignment, dets: typing.Sequence[base.Detection],
          cfg: base.TrackerConfig, frame: int) -> base.Hypothesis:
    """Builds the child hypothesis of an assignment."""

    kalman_mode = cfg.motion_model == 'kalman'
    rows_of_object = a.rows_of_object
    alive: typing.List[base.BernoulliComponent] = []
    archive = list(h.archive)
    next_id = h.next_id
    weight = h.weight + a.total_cost

    def older(age):
        return None if age is None else age + 1

    def newborn(det, **kwargs):
        nonlocal next_id
        c = base.BernoulliComponent(
            object_id=next_id,
            position=det.centroid,
            birth_frame=frame,
            history=((frame, det.det_id),),
            kinematics=kalman.init(det, cfg.motion_cov) if kalman_mode else None,
            **kwargs
        )
        next_id += 1
        return c

    for i, obj in enumerate(h.components):
        rows = rows_of_object.get(i, ())

        if len(rows) == 1:
            det = dets[rows[0]]
            changes = dict(existence=1., position=det.centroid, age=older(obj.age))
            if kalman_mode and obj.kinematics is not None:
                changes['kinematics'] = kalman.update(obj.kinematics, det)
                changes['position'] = kalman.position(changes['kinematics'])
            alive.append(obj.extend(frame, det.det_id, **changes))

        elif len(rows) == 2:
            archive.append(obj)
            for row in rows:
                alive.append(newborn(dets[row], existence=1., age=0, parent_id=obj.object_id,
                                     parent_key=obj.key))

        else:
            weight += miss_cost(obj.existence, cfg.p_detect)
            r = obj.existence
            existence = r * (1. - cfg.p_detect) / (1. - r * cfg.p_detect)
            missed = obj.extend(frame, base.MISSED, existence=existence, age=older(obj.age))
            if existence < cfg.existence_floor:
                archive.append(missed)
            else:
                alive.append(missed)

    for row in a.unassigned_rows:
        det = dets[row]
        alive.append(newborn(det, existence=1. - det.clutter_prob))

    return base.Hypothesis(weight, alive, archive, next_id)


def expand(h: base.Hypothesis, dets: typing.Sequence[base.Detection], cfg: base.TrackerConfig,
           rng: utils.RandomStream, frame: int,
           cache: typing.Optional[dict] = None) -> typing.List[base.Hypothesis]:
    """Children of a predicted hypothesis, one per sampled assignment.

    The cache holds the rankings of the clusters met by the other hypotheses of the frame.

    """
    matrix = assign.build_extended_matrix(dets, h.components, cfg)
    children = []
    for a in sample(matrix, cfg, rng, cache):
        child = apply(h, a, dets, cfg, frame)
        logger.debug('frame %d: %.6f + %.6f + %.6f = %.6f', frame, h.weight, a.total_cost,
                     child.weight - h.weight - a.total_cost, child.weight)
        children.append(child)
    return children


def reduce(store: HypothesisStore, cfg: base.TrackerConfig) -> HypothesisStore:
    """Merges hypotheses describing the same state, then prunes and truncates.

    Among merged hypotheses the lightest one is kept. Ties are broken by order of appearance,
    which keeps the outcome independent of scheduling.

    """

    merged: typing.Dict[typing.Any, base.Hypothesis] = {}
    for h in store.hypotheses:
        key = h.signature_key()
        if key not in merged or h.weight < merged[key].weight:
            merged[key] = h

    survivors = sorted(merged.values(), key=lambda h: h.weight)
    if survivors:
        limit = survivors[0].weight + cfg.prune_weight_delta
        survivors = [h for h in survivors if h.weight <= limit]
    return store._replace(hypotheses=tuple(survivors[:cfg.h_max]))


def step(store: HypothesisStore, dets: typing.Sequence[base.Detection], cfg: base.TrackerConfig,
         rng: utils.RandomStream,
         executor: typing.Optional[concurrent.futures.Executor] = None) -> HypothesisStore:
    """Processes the detections of the frame following the store's frame.

    Parameters:
        store: Hypotheses after the previous frame.
        dets: Detections of the next frame, possibly none.
        cfg: Resolved configuration.
        rng: Random stream of the run. It is split per frame and per hypothesis.
        executor: Runs the expansion of the hypotheses concurrently when given.

    """

    frame = store.frame + 1
    for det in dets:
        if det.frame != frame:
            raise base.FrameOrder(f'expected detections of frame {frame}, got frame {det.frame}')
    if len({det.det_id for det in dets}) != len(dets):
        raise base.DomainError(f'detection ids of frame {frame} are not unique')

    predicted = predict(store, cfg)
    cache: dict = {}

    def work(index):
        return expand(predicted.hypotheses[index], dets, cfg, rng.split(frame, index), frame,
                      cache)

    indices = range(len(predicted.hypotheses))
    if executor is None:
        expansions = list(map(work, indices))
    else:
        expansions = list(executor.map(work, indices))

    children = tuple(child for family in expansions for child in family)
    centroids = {det.det_id: det.centroid.mean for det in dets}
    reduced = reduce(
        HypothesisStore(frame, children, store.centroids + (centroids,)),
        cfg
    )

    logger.debug('frame %d: %d detections, %d children, %d hypotheses kept, best weight %.6f',
                 frame, len(dets), len(children), len(reduced.hypotheses), reduced.best.weight)
    return reduced
