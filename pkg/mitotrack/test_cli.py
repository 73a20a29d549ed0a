import csv
import json
import os

import pytest

from mitotrack import base
from mitotrack import cli
from mitotrack import density
from mitotrack import proba
from mitotrack import sim
from mitotrack import stream


def write_json(path, obj):
    with open(path, 'w') as f:
        json.dump(obj, f)
    return str(path)


def read_json(path):
    with open(path) as f:
        return json.load(f)


def read_bytes(path):
    with open(path, 'rb') as f:
        return f.read()


@pytest.fixture
def colony(tmp_path):
    """A simulated sequence written to disk."""
    config = write_json(tmp_path / 'sim.json', {'n_frames': 12, 'n_init': 3, 'seed': 1})
    out = str(tmp_path / 'colony')
    assert cli.main(['simulate', '--config', config, '--out', out]) == 0
    return out


def test_simulate_writes_a_sequence(colony):
    assert sorted(os.listdir(colony)) == ['detections.csv', 'gt', 'run.json']
    gt = stream.read_lineage(os.path.join(colony, 'gt'))
    gt.check()
    dets = stream.read_detections(os.path.join(colony, 'detections.csv'))
    assert max(d.frame for d in dets) <= 11

    record = read_json(os.path.join(colony, 'run.json'))
    assert record['command'] == 'simulate'
    assert record['seed'] == 1
    assert sim.SimConfig.from_dict(record['config']) == sim.SimConfig(n_frames=12, n_init=3, seed=1)
    assert set(record) == {'command', 'config', 'seed', 'inputs', 'version', 'timestamp'}


def test_seed_flag_overrides_the_config(tmp_path):
    config = write_json(tmp_path / 'sim.json', {'n_frames': 5, 'seed': 1})
    assert cli.main(['simulate', '--config', config, '--seed', '7', '--out', str(tmp_path)]) == 0
    assert read_json(tmp_path / 'run.json')['config']['seed'] == 7


def test_simulate_track_evaluate(colony, tmp_path):
    detections = os.path.join(colony, 'detections.csv')
    out = str(tmp_path / 'tracked')
    assert cli.main(['track', detections, '--out', out, '--threads', '2']) == 0
    assert sorted(os.listdir(out)) == ['res_track.txt', 'run.json', 'tracks.csv']

    record = read_json(os.path.join(out, 'run.json'))
    config = base.TrackerConfig.from_dict(record['config'])
    assert config.resolved
    assert config.erlang_alpha * config.erlang_rate == pytest.approx(1.)
    assert list(record['inputs']) == [detections]
    assert len(record['inputs'][detections]) == 64

    scores = str(tmp_path / 'eval' / 'metrics.json')
    os.makedirs(os.path.dirname(scores))
    assert cli.main([
        'evaluate', out, os.path.join(colony, 'gt'), '--out', scores, '--detections', detections
    ]) == 0
    result = read_json(scores)
    assert set(result) == {'match_radius', 'CompleteTracks', 'TrackFractions', 'BC(1)', 'BC(2)',
                           'CellCycleAccuracy'}
    assert result['match_radius'] == pytest.approx(5.)
    assert 0 <= result['CompleteTracks'] <= result['TrackFractions'] <= 1
    assert os.path.exists(tmp_path / 'eval' / 'run.json')


def test_evaluate_identity(colony, tmp_path):
    gt = os.path.join(colony, 'gt')
    scores = str(tmp_path / 'metrics.json')
    assert cli.main(['evaluate', gt, gt, '--out', scores]) == 0
    result = read_json(scores)
    assert result['CompleteTracks'] == result['TrackFractions'] == 1.
    for name in ('BC(1)', 'BC(2)', 'CellCycleAccuracy'):
        assert result[name] in (1., None)


def test_track_is_deterministic(colony, tmp_path):
    detections = os.path.join(colony, 'detections.csv')
    config = write_json(tmp_path / 'tracker.json', {'a_max': 3, 'h_max': 20})
    runs = []
    for name in ('a', 'b'):
        out = str(tmp_path / name)
        assert cli.main(['track', detections, '--config', config, '--out', out]) == 0
        runs.append(out)

    for name in ('tracks.csv', 'res_track.txt'):
        assert read_bytes(os.path.join(runs[0], name)) == read_bytes(os.path.join(runs[1], name))
    a, b = (read_json(os.path.join(out, 'run.json')) for out in runs)
    a.pop('timestamp')
    b.pop('timestamp')
    assert a == b


def test_track_output_does_not_depend_on_threads(colony, tmp_path):
    detections = os.path.join(colony, 'detections.csv')
    runs = []
    for threads in ('1', '8'):
        out = str(tmp_path / f'threads-{threads}')
        assert cli.main(['track', detections, '--out', out, '--threads', threads]) == 0
        runs.append(out)

    for name in (stream.TRACKS, stream.RES_TRACK):
        assert read_bytes(os.path.join(runs[0], name)) == read_bytes(os.path.join(runs[1], name))


def test_track_fits_the_erlang_law_to_reference_cycles(tmp_path):
    config = write_json(tmp_path / 'sim.json', {
        'n_frames': 24, 'n_init': 1, 'lifetime_alpha': 4, 'lifetime_rate': 1., 'seed': 2
    })
    reference = str(tmp_path / 'reference')
    assert cli.main(['simulate', '--config', config, '--out', reference]) == 0
    gt = os.path.join(reference, 'gt')
    cycles = stream.read_lineage(gt).cycle_lengths()

    out = str(tmp_path / 'tracked')
    detections = os.path.join(reference, 'detections.csv')
    assert cli.main(['track', detections, '--cycles', gt, '--out', out]) == 0

    law = proba.Erlang()
    for length in cycles:
        law.update(length)
    record = read_json(os.path.join(out, 'run.json'))
    assert os.path.join(gt, stream.TRACKS) in record['inputs']
    if law.is_fitted:
        assert record['config']['erlang_alpha'] == law.alpha
        assert record['config']['erlang_rate'] == pytest.approx(law.rate)
    else:
        assert record['config']['erlang_alpha'] == 24


def test_noiseless_sequence_is_tracked_exactly(tmp_path):
    config = write_json(tmp_path / 'sim.json', {
        'n_frames': 10, 'n_init': 4, 'motion_sigma': 0., 'meas_sigma': 0., 'p_detect_sim': 1.,
        'clutter_rate': 0., 'lifetime_alpha': 1000, 'lifetime_rate': .01, 'seed': 3
    })
    tracker = write_json(tmp_path / 'tracker.json', {'mean_motion_cov': [[1, 0], [0, 1]]})
    colony = str(tmp_path / 'colony')
    out = str(tmp_path / 'tracked')
    assert cli.main(['simulate', '--config', config, '--out', colony]) == 0
    assert cli.main(['track', os.path.join(colony, 'detections.csv'), '--config', tracker,
                     '--out', out]) == 0

    pred = stream.read_lineage(out)
    gt = stream.read_lineage(os.path.join(colony, 'gt'))
    assert sorted(t.points for t in pred) == sorted(t.points for t in gt)


def test_densify(tmp_path):
    stack = density.gen.blob_stack([(5, 5), (12, 6)], [(5, 4), (12, 7)], (16, 16), radius=2.)
    entries = [density.nft.write_stack(str(tmp_path), k, stack) for k in range(3)]
    manifest = str(tmp_path / 'manifest.json')
    density.nft.write_manifest(manifest, entries)

    out = str(tmp_path / 'dets' / 'detections.csv')
    assert cli.main(['densify', manifest, '--out', out]) == 0
    dets = stream.read_detections(out)
    assert [(d.frame, d.det_id) for d in dets] == [(k, j) for k in range(3) for j in (1, 2)]
    assert os.path.exists(tmp_path / 'dets' / 'run.json')


def test_densify_bad_tensor(tmp_path, capsys):
    stack = density.gen.blob_stack([(5, 5)], [(5, 4)], (8, 8), radius=2.)
    entry = density.nft.write_stack(str(tmp_path), 0, stack)
    manifest = str(tmp_path / 'manifest.json')
    density.nft.write_manifest(manifest, [entry])
    seg = os.path.join(tmp_path, os.path.basename(entry['seg']))
    with open(seg, 'r+b') as f:
        f.write(b'JUNK')

    assert cli.main(['densify', manifest, '--out', str(tmp_path / 'd.csv')]) == 2
    assert 'magic' in capsys.readouterr().err


def test_malformed_detections(tmp_path, capsys):
    path = tmp_path / 'detections.csv'
    path.write_text(','.join(stream.DETECTION_FIELDS) + '\n0,0,1.0\n')
    assert cli.main(['track', str(path), '--out', str(tmp_path / 'out')]) == 2
    assert 'line 2' in capsys.readouterr().err


def test_unknown_config_key(colony, tmp_path, capsys):
    config = write_json(tmp_path / 'tracker.json', {'hmax': 3})
    detections = os.path.join(colony, 'detections.csv')
    assert cli.main(['track', detections, '--config', config, '--out', str(tmp_path)]) == 2
    assert 'hmax' in capsys.readouterr().err


def test_bench_assign(tmp_path):
    out = str(tmp_path / 'bench.csv')
    assert cli.main(['bench-assign', '--sizes', '4', '8', '--trials', '2', '--out', out]) == 0
    with open(out) as f:
        rows = list(csv.DictReader(f))
    assert [(int(r['size']), r['formulation']) for r in rows] == [
        (n, name) for n in (4, 8) for name in ('standard', 'mitosis_free', 'mitosis_forbidden')
    ]
    assert all(float(r['mean_ns']) > 0 for r in rows)


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        cli.main([])
