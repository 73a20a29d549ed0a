"""Command line entry points.

Every subcommand first writes a ``run.json`` record into its output directory: the subcommand,
the resolved configuration, the seed, the SHA-256 of every input file, the version and a
timestamp. Two runs whose records only differ by their timestamps produce the same outputs.

"""
import argparse
import csv
import datetime as dt
import hashlib
import json
import logging
import os
import sys
import typing

from .__version__ import __version__
from . import assign
from . import base
from . import density
from . import metrics
from . import mht
from . import sim
from . import stream
from . import utils


__all__ = ['build_parser', 'main']


logger = logging.getLogger(__name__)

RUN_MANIFEST = 'run.json'
DETECTIONS = 'detections.csv'
DEFAULT_MATCH_RADIUS = 5.


def sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 20), b''):
            h.update(chunk)
    return h.hexdigest()


def write_run_manifest(directory: str, command: str, inputs: typing.Iterable[str],
                       config: typing.Optional[base.Config] = None,
                       seed: typing.Optional[int] = None) -> str:
    """Writes the reproducibility record of a run and returns its path."""
    os.makedirs(directory, exist_ok=True)
    record = {
        'command': command,
        'config': None if config is None else config.to_dict(),
        'seed': seed,
        'inputs': {path: sha256(path) for path in inputs},
        'version': __version__,
        'timestamp': dt.datetime.now(dt.timezone.utc).isoformat()
    }
    path = os.path.join(directory, RUN_MANIFEST)
    with open(path, 'w') as f:
        json.dump(record, f, indent=2, sort_keys=True)
        f.write('\n')
    return path


def _parent_dir(path: str) -> str:
    return os.path.dirname(os.path.abspath(path))


def cmd_track(args: argparse.Namespace):
    config = stream.load_config(args.config) if args.config else base.TrackerConfig()
    if args.seed is not None:
        config = config.clone(rng_seed=args.seed)

    dets = stream.read_detections(args.detections)
    frames = mht.group_by_frame(dets)
    inputs = [args.detections] + ([args.config] if args.config else [])
    cycles = None
    if args.cycles:
        cycles = stream.read_lineage(args.cycles).cycle_lengths()
        inputs += [os.path.join(args.cycles, name) for name in (stream.RES_TRACK, stream.TRACKS)]
    config = mht.resolve_config(config, frames, cycles)
    write_run_manifest(args.out, 'track', inputs, config, config.rng_seed)

    tree = mht.track(dets, config, threads=args.threads, n_frames=len(frames))
    stream.write_lineage(args.out, tree)
    logger.info('wrote %d tracks and %d divisions to %s', len(tree), len(tree.divisions()),
                args.out)


def cmd_densify(args: argparse.Namespace):
    config = stream.load_config(args.config) if args.config else base.TrackerConfig()
    write_run_manifest(_parent_dir(args.out), 'densify', [args.manifest], config)

    dets = []
    for frame, stack in density.load_manifest(args.manifest):
        dets.extend(density.detections_from_stack(stack, frame, config.clamp_eps))
    stream.write_detections(args.out, dets)
    logger.info('wrote %d detections to %s', len(dets), args.out)


def cmd_simulate(args: argparse.Namespace):
    config = stream.load_config(args.config, sim.SimConfig) if args.config else sim.SimConfig()
    if args.seed is not None:
        config = config.clone(seed=args.seed)
    write_run_manifest(args.out, 'simulate', [args.config] if args.config else [], config,
                       config.seed)

    gt, frames = sim.simulate(config)
    stream.write_detections(os.path.join(args.out, DETECTIONS), [d for f in frames for d in f])
    stream.write_lineage(os.path.join(args.out, 'gt'), gt)


def cmd_evaluate(args: argparse.Namespace):
    inputs = [
        os.path.join(directory, name)
        for directory in (args.pred, args.gt)
        for name in (stream.RES_TRACK, stream.TRACKS)
    ]
    if args.detections:
        inputs.append(args.detections)
    write_run_manifest(_parent_dir(args.out), 'evaluate', inputs)

    radius = args.match_radius
    if radius is None:
        radius = DEFAULT_MATCH_RADIUS
        if args.detections:
            try:
                radius = density.radius_from_areas(
                    d.area for d in stream.iter_detections(args.detections)
                )
            except base.EmptyGroundTruth:
                logger.warning('no detection has an area, matching within %s pixels', radius)

    pred, gt = stream.read_lineage(args.pred), stream.read_lineage(args.gt)
    bundle = metrics.Metrics([
        metrics.CompleteTracks(radius),
        metrics.TrackFractions(radius),
        metrics.BranchingCorrectness(1, radius),
        metrics.BranchingCorrectness(2, radius),
        metrics.CellCycleAccuracy()
    ]).update(pred, gt)

    with open(args.out, 'w') as f:
        json.dump({'match_radius': radius, **bundle.to_dict()}, f, indent=2)
        f.write('\n')
    logger.info('%s', bundle)


def cmd_bench_assign(args: argparse.Namespace):
    write_run_manifest(_parent_dir(args.out), 'bench-assign', [], seed=args.seed)

    timings = assign.bench.run(args.sizes, args.trials, seed=args.seed)
    with open(args.out, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(assign.bench.Timing._fields)
        for t in timings:
            writer.writerow([t.size, t.formulation, f'{t.mean_ns:.1f}'])
            logger.info('%d %s %s', t.size, t.formulation, assign.bench.format_ns(int(t.mean_ns)))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {text}')
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='mitotrack',
        description='Mitosis-aware multi-hypothesis cell tracking.'
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    trk = sub.add_parser('track', help='Track the cells of a detections.csv file')
    trk.add_argument('detections', help='Path to a detections.csv file')
    trk.add_argument('--config', help='Tracker configuration as JSON')
    trk.add_argument('--out', required=True, help='Output directory')
    trk.add_argument('--seed', type=int, help='Overrides the seed of the configuration')
    trk.add_argument('--threads', type=_positive_int, default=1,
                     help='Threads used to expand the hypotheses of a frame')
    trk.add_argument('--cycles',
                     help='Directory of a reference lineage whose cell cycles fit the Erlang law')
    trk.set_defaults(func=cmd_track)

    den = sub.add_parser('densify', help='Turn network prediction stacks into detections')
    den.add_argument('manifest', help='Path to the JSON manifest of the .nft stacks')
    den.add_argument('--config', help='Tracker configuration as JSON, for clamp_eps')
    den.add_argument('--out', required=True, help='Path of the detections.csv to write')
    den.set_defaults(func=cmd_densify)

    simu = sub.add_parser('simulate', help='Simulate a dividing colony and its detections')
    simu.add_argument('--config', help='Simulation configuration as JSON')
    simu.add_argument('--out', required=True, help='Output directory')
    simu.add_argument('--seed', type=int, help='Overrides the seed of the configuration')
    simu.set_defaults(func=cmd_simulate)

    ev = sub.add_parser('evaluate', help='Compare a lineage with a reference')
    ev.add_argument('pred', help='Directory of the computed lineage')
    ev.add_argument('gt', help='Directory of the reference lineage')
    ev.add_argument('--out', required=True, help='Path of the metrics.json to write')
    ev.add_argument('--detections',
                    help='detections.csv whose areas set the matching radius')
    ev.add_argument('--match-radius', type=float, help='Matching radius in pixels')
    ev.set_defaults(func=cmd_evaluate)

    bench = sub.add_parser('bench-assign', help='Time the assignment formulations')
    bench.add_argument('--sizes', type=_positive_int, nargs='+',
                       default=[8, 16, 32, 64, 128])
    bench.add_argument('--trials', type=_positive_int, default=200)
    bench.add_argument('--seed', type=int, default=0)
    bench.add_argument('--out', required=True, help='Path of the CSV to write')
    bench.set_defaults(func=cmd_bench_assign)

    return parser


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    utils.log.configure()
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except base.MitotrackError as e:
        print(f'mitotrack: error: {e}', file=sys.stderr)
        return 2
    return 0
