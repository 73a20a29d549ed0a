import logging
import math
import typing

import numpy as np

from .. import base
from .. import utils
from .config import SimConfig


__all__ = ['sample_lifetime', 'simulate']


logger = logging.getLogger(__name__)

TRUE_CLUTTER_PROB = .05
FALSE_CLUTTER_PROB = .5


def sample_lifetime(rng: np.random.Generator, cfg: SimConfig) -> int:
    """Number of frames between the birth of a cell and its division, at least 1."""
    return max(1, int(round(rng.gamma(cfg.lifetime_alpha, 1 / cfg.lifetime_rate))))


class _Cell:

    def __init__(self, track_id, begin, position, division, parent=0, previous=None):
        self.track_id = track_id
        self.begin = begin
        self.position = np.asarray(position, dtype=float)
        self.previous = self.position if previous is None else np.asarray(previous, dtype=float)
        self.division = division
        self.parent = parent
        self.points: typing.List[base.Point] = []


def simulate(cfg: SimConfig
             ) -> typing.Tuple[base.LineageTree, typing.List[typing.List[base.Detection]]]:
    """Simulates a dividing colony and its detections.

    Cells random walk and divide after an Erlang distributed number of frames. The daughters
    appear on both sides of their mother, along a random direction. Cells leaving the field are
    lost. Every cell is detected with probability ``p_detect_sim`` and false detections are
    scattered uniformly.

    Returns:
        The ground truth lineage and the detections of every frame.

    Example:

        >>> from mitotrack import sim

        >>> gt, frames = sim.simulate(sim.SimConfig(n_frames=20, n_init=3, seed=1))
        >>> len(frames)
        20
        >>> gt.check()

    """

    rng = utils.seeded_rng(cfg.seed).generator
    size = np.array([cfg.width, cfg.height], dtype=float)
    area = math.pi * cfg.cell_radius ** 2
    meas_cov = np.eye(2) * cfg.meas_sigma ** 2

    next_id = 1
    alive: typing.List[_Cell] = []
    finished: typing.List[_Cell] = []

    for _ in range(cfg.n_init):
        lifetime = sample_lifetime(rng, cfg)
        residual = int(rng.integers(1, lifetime + 1))
        alive.append(_Cell(next_id, 0, rng.uniform(0, size), residual))
        next_id += 1

    frames: typing.List[typing.List[base.Detection]] = []

    for k in range(cfg.n_frames):

        # Move, divide and lose cells
        survivors = []
        for cell in alive:
            if k == cell.begin:
                survivors.append(cell)
                continue

            if k == cell.division:
                finished.append(cell)
                angle = rng.uniform(0, 2 * math.pi)
                half = .5 * cfg.daughter_sep * np.array([math.cos(angle), math.sin(angle)])
                for sign in (1, -1):
                    position = np.clip(cell.position + sign * half, 0, size)
                    survivors.append(_Cell(next_id, k, position, k + sample_lifetime(rng, cfg),
                                           parent=cell.track_id, previous=cell.position))
                    next_id += 1
                continue

            cell.previous = cell.position
            cell.position = cell.position + rng.normal(0, cfg.motion_sigma, size=2)
            if ((cell.position < 0) | (cell.position > size)).any():
                finished.append(cell)
                continue
            survivors.append(cell)
        alive = survivors

        # Observe
        observations = []
        for cell in alive:
            if rng.random() < cfg.p_detect_sim:
                noise = rng.normal(0, cfg.meas_sigma, size=2)
                observations.append((cell, cell.position + noise, cell.previous + noise,
                                     TRUE_CLUTTER_PROB))
            else:
                cell.points.append(base.Point(k, base.INTERPOLATED, *cell.position))
        for _ in range(rng.poisson(cfg.clutter_rate)):
            position = rng.uniform(0, size)
            observations.append((None, position, position, FALSE_CLUTTER_PROB))

        det_ids = rng.permutation(len(observations))
        dets = []
        for det_id, (cell, centroid, warped, clutter) in zip(det_ids, observations):
            dets.append(base.Detection(
                frame=k,
                det_id=int(det_id),
                centroid=base.SpatialGaussian(centroid, meas_cov),
                motion_warped=base.SpatialGaussian(warped, meas_cov),
                clutter_prob=clutter,
                area=area
            ))
            if cell is not None:
                cell.points.append(base.Point(k, int(det_id), *cell.position))
        frames.append(sorted(dets, key=lambda d: d.det_id))

    tracks = []
    for cell in finished + alive:
        if not cell.points:
            continue
        points = sorted(cell.points)
        tracks.append(base.Track(cell.track_id, points[0].frame, points[-1].frame, cell.parent,
                                 points))

    gt = base.LineageTree(tracks)
    logger.info('simulated %d frames, %d tracks, %d divisions', cfg.n_frames, len(gt),
                len(gt.divisions()))
    return gt, frames
