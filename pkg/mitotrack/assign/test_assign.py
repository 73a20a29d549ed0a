import itertools
import math
import os
import runpy

import numpy as np
import pytest
from scipy import stats

from mitotrack import assign
from mitotrack import base


def brute_force(values):
    """Every finite row-complete, column-injective assignment with its cost."""
    n_rows, n_cols = values.shape
    out = []

    def walk(row, used, cols, cost):
        if row == n_rows:
            out.append((tuple(cols), cost))
            return
        for col in range(n_cols):
            if col not in used and np.isfinite(values[row, col]):
                walk(row + 1, used | {col}, cols + [col], cost + values[row, col])

    walk(0, frozenset(), [], 0.)
    return out


def random_extended(rng, n_det, n_obj, p_gate=.3, mitosis=None):
    left = rng.uniform(0, 5, size=(n_det, n_obj))
    left[rng.random(size=left.shape) < p_gate] = np.inf
    middle = np.full((n_det, n_det), np.inf)
    np.fill_diagonal(middle, rng.uniform(0, 5, size=n_det))
    c_m = rng.uniform(0, 3, size=n_obj) if mitosis is None else np.full(n_obj, mitosis)
    return assign.CostMatrix(np.hstack([left, middle, left + c_m]), n_obj, c_m)


def gaussian(mean, var):
    return base.SpatialGaussian.isotropic(mean, var)


def test_spatial_score_at_mode():
    g = gaussian((3, 4), .5)
    assert math.isclose(assign.spatial_score(g, g), 1 / (2 * math.pi), rel_tol=1e-12)


def test_spatial_score_gated():
    assert assign.spatial_score(gaussian((0, 0), .5), gaussian((10, 0), .5), gate=25) == 0.


def test_spatial_score_matches_scipy():
    rng = np.random.default_rng(0)
    for _ in range(100):
        a, b = rng.normal(size=(2, 2, 2))
        obj = base.SpatialGaussian(rng.normal(size=2), a @ a.T + .1 * np.eye(2))
        det = base.SpatialGaussian(rng.normal(size=2), b @ b.T + .1 * np.eye(2))
        expected = stats.multivariate_normal(det.mu, det.sigma + obj.sigma).pdf(obj.mu)
        assert math.isclose(assign.spatial_score(obj, det, gate=np.inf), expected,
                            rel_tol=1e-10)


def test_spatial_score_regularizes_zero_covariances():
    g = base.SpatialGaussian((1, 1), np.zeros((2, 2)))
    score = assign.spatial_score(g, g)
    assert math.isclose(score, 1 / (2 * math.pi * 1e-6), rel_tol=1e-9)


def test_association_cost_worked_example():
    derived = runpy.run_path(
        os.path.join(os.path.dirname(assign.__file__), 'derive_worked_example.py')
    )['derive']()
    g = gaussian((0, 0), .5)
    det = base.Detection(0, 0, g, g, 0.)
    costs, unassigned = assign.association_cost(det, [(1., assign.spatial_score(g, g))])
    assert abs(costs[0] - derived['assignment_cost']) < 1e-9
    assert abs(unassigned - derived['unassigned_cost']) < 1e-9
    assert abs(costs[0] - .5296) < 1e-4
    assert abs(unassigned - .8889) < 1e-4


def test_association_cost_without_objects():
    g = gaussian((0, 0), 1.)
    _, unassigned = assign.association_cost(base.Detection(0, 0, g, g, .25), [])
    assert math.isclose(unassigned, -math.log(.75))


def test_association_cost_increases_with_clutter():
    g = gaussian((0, 0), 1.)
    previous = -np.inf
    for clutter in (0., .2, .5, .9):
        costs, _ = assign.association_cost(base.Detection(0, 0, g, g, clutter), [(.8, .1)])
        assert costs[0] > previous
        previous = costs[0]


def test_mitosis_cost():
    assert assign.mitosis_cost(None, 3, .1) == 0.
    assert math.isclose(assign.mitosis_cost(2, 2, 1.), -math.log(1 - 3 * math.exp(-2)))
    assert math.isclose(assign.mitosis_cost(0, 5, 2.), -math.log(1e-12))


def make_cfg(**params):
    return base.TrackerConfig(mean_motion_cov=np.eye(2).tolist(), erlang_alpha=4,
                              erlang_rate=.5, **params)


def test_extended_matrix_structure():
    dets = [base.Detection(1, j, gaussian((j, 0), .5), gaussian((j, 0), .5), .1)
            for j in range(3)]
    objects = [base.BernoulliComponent(i, .9, gaussian((i, 0), 1.), age=i + 1) for i in (0, 1)]
    m = assign.build_extended_matrix(dets, objects, make_cfg())

    assert m.shape == (3, 7)
    off = ~np.eye(3, dtype=bool)
    assert np.isinf(m.middle[off]).all()
    assert np.isfinite(np.diag(m.middle)).all()
    assert (m.right == m.left + m.mitosis_cost[None, :]).all()
    finite = m.standard()[np.isfinite(m.standard())]
    assert (finite <= -math.log(1e-12)).all()
    assert (finite >= 0).all()
    assert (assign.build_standard_matrix(dets, objects, make_cfg()) == m.standard()).all()


def test_extended_matrix_without_objects():
    g = gaussian((0, 0), 1.)
    dets = [base.Detection(1, j, g, g, .1) for j in range(2)]
    m = assign.build_extended_matrix(dets, [], make_cfg())
    assert m.shape == (2, 2)


def test_extended_matrix_gating():
    dets = [base.Detection(1, 0, gaussian((50, 0), .5), gaussian((50, 0), .5), .1)]
    objects = [base.BernoulliComponent(1, 1., gaussian((0, 0), .5))]
    m = assign.build_extended_matrix(dets, objects, make_cfg())
    assert np.isinf(m.left).all() and np.isinf(m.right).all()
    assert assign.hungarian(m).unassigned_rows == [0]


def test_extended_matrix_mitosis_modes():
    dets = [base.Detection(1, j, gaussian((0, 0), .5), gaussian((0, 0), .5), .1) for j in (0, 1)]
    objects = [base.BernoulliComponent(1, 1., gaussian((0, 0), .5), age=3)]
    free = assign.build_extended_matrix(dets, objects, make_cfg(mitosis='free'))
    assert (free.right == free.left).all()
    forbidden = assign.build_extended_matrix(dets, objects, make_cfg(mitosis='forbidden'))
    assert np.isinf(forbidden.right).all()


def test_hungarian_example():
    a = assign.hungarian([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
    assert a.row_to_col == (1, 0, 2)
    assert a.total_cost == 5


def test_hungarian_diagonal():
    values = np.ones((5, 5)) - np.eye(5)
    a = assign.hungarian(values)
    assert a.row_to_col == tuple(range(5))
    assert a.total_cost == 0


def test_hungarian_infeasible():
    with pytest.raises(base.Infeasible):
        assign.hungarian([[np.inf, np.inf], [0, 1]])
    with pytest.raises(base.Infeasible):
        assign.hungarian([[0.], [1.]])


def test_hungarian_dominates_random_assignments():
    rng = np.random.default_rng(1)
    values = rng.uniform(0, 10, size=(6, 10))
    best = assign.hungarian(values).total_cost
    for _ in range(1000):
        cols = rng.permutation(10)[:6]
        assert best <= values[np.arange(6), cols].sum() + 1e-12


def test_murty_example():
    ranked = assign.murty_kbest([[1, 2], [3, 1]], k=2)
    assert [a.total_cost for a in ranked] == [2, 5]
    assert ranked[0].row_to_col == (0, 1)


def test_murty_top1_is_hungarian():
    rng = np.random.default_rng(2)
    for _ in range(50):
        m = random_extended(rng, int(rng.integers(1, 6)), int(rng.integers(0, 4)))
        assert assign.murty_kbest(m, k=1)[0].total_cost == assign.hungarian(m).total_cost


def brute_force_top1(m):
    return min(cost for _, cost in brute_force(m.values))


def test_murty_top1_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(100):
        m = random_extended(rng, int(rng.integers(1, 7)), int(rng.integers(1, 5)))
        assert math.isclose(assign.murty_kbest(m, k=1)[0].total_cost, brute_force_top1(m),
                            rel_tol=1e-12, abs_tol=1e-12)


@pytest.mark.slow
def test_murty_top1_matches_brute_force_at_scale():
    rng = np.random.default_rng(4)
    for _ in range(500):
        m = random_extended(rng, int(rng.integers(1, 7)), int(rng.integers(1, 5)))
        assert math.isclose(assign.murty_kbest(m, k=1)[0].total_cost, brute_force_top1(m),
                            rel_tol=1e-12, abs_tol=1e-12)


def distinct_events(m):
    """Cheapest cost of every distinct set of events."""
    best = {}
    for cols, cost in brute_force(m.values):
        signature = assign.Assignment(cols, cost, n_obj=m.n_obj).signature
        best[signature] = min(cost, best.get(signature, np.inf))
    return best


def test_murty_is_complete():
    rng = np.random.default_rng(5)
    for _ in range(100):
        m = random_extended(rng, 4, 3)
        expected = distinct_events(m)
        ranked = assign.murty_kbest(m, k=len(expected))
        assert len(ranked) == len(expected)
        assert {a.signature for a in ranked} == set(expected)
        assert np.allclose([a.total_cost for a in ranked], sorted(expected.values()),
                           rtol=0, atol=1e-9)


def test_murty_kbest_matches_enumeration():
    rng = np.random.default_rng(6)
    m = random_extended(rng, 5, 3)
    expected = sorted(distinct_events(m).values())[:20]
    ranked = assign.murty_kbest(m, k=20)
    assert np.allclose([a.total_cost for a in ranked], expected, rtol=0, atol=1e-9)


def test_clusters_partition_the_rows():
    rng = np.random.default_rng(17)
    for _ in range(50):
        m = random_extended(rng, 6, 5, p_gate=.7)
        clusters = assign.split_clusters(m)
        assert sorted(r for c in clusters for r in c.rows.tolist()) == list(range(6))
        objects = [o for c in clusters for o in c.objects.tolist()]
        assert len(objects) == len(set(objects))
        for c in clusters:
            others = np.setdiff1d(np.arange(5), c.objects)
            assert np.isinf(m.left[np.ix_(c.rows, others)]).all()
            sub = c.sub_matrix(m)
            assert sub.shape == (len(c.rows), 2 * len(c.objects) + len(c.rows))


def test_murty_over_clusters_matches_enumeration():
    rng = np.random.default_rng(18)
    for _ in range(50):
        m = random_extended(rng, 6, 5, p_gate=.7)
        expected = sorted(distinct_events(m).values())[:10]
        cache: dict = {}
        for _ in range(2):
            ranked = assign.murty_kbest(m, k=10, cache=cache)
            assert np.allclose([a.total_cost for a in ranked], expected, rtol=0, atol=1e-9)
            assert len({a.signature for a in ranked}) == len(ranked)
        assert len(cache) == len(assign.split_clusters(m))


def test_murty_without_detections():
    m = assign.CostMatrix(np.zeros((0, 4)), n_obj=2)
    (a,) = assign.murty_kbest(m, k=3)
    assert a.row_to_col == ()
    assert a.total_cost == 0.
    assert a.missed_objects() == [0, 1]


def test_murty_returns_all_when_k_is_large():
    ranked = assign.murty_kbest(np.array([[0., np.inf], [np.inf, 0.]]), k=5)
    assert len(ranked) == 1


def test_murty_costs_sorted_and_distinct():
    rng = np.random.default_rng(7)
    for _ in range(30):
        m = random_extended(rng, 5, 4)
        ranked = assign.murty_kbest(m, k=15)
        costs = [a.total_cost for a in ranked]
        assert costs == sorted(costs)
        assert len({a.signature for a in ranked}) == len(ranked)
        for a in ranked:
            assert math.isclose(a.cost_in(m.values), a.total_cost, abs_tol=1e-9)


def test_murty_dedups_mirrored_divisions():
    # One object, two detections that both fit it: the division is reachable through the
    # two blocks in two mirrored ways
    m = assign.CostMatrix([
        [1., 5., np.inf, 1.],
        [1., np.inf, 5., 1.]
    ], n_obj=1, mitosis_cost=[0.])
    ranked = assign.murty_kbest(m, k=10)
    assert [a.signature for a in ranked].count((0, 0)) == 1
    assert ranked[0].mitoses == [(0, 0, 1)]


def test_no_mitosis_when_forbidden():
    rng = np.random.default_rng(8)
    for _ in range(30):
        m = random_extended(rng, 5, 3, mitosis=np.inf)
        for a in assign.murty_kbest(m, k=10):
            assert not a.mitoses


def test_gated_pairs_never_sampled():
    rng = np.random.default_rng(9)
    for _ in range(30):
        m = random_extended(rng, 5, 3, p_gate=.5)
        for a in assign.murty_kbest(m, k=10) + assign.gibbs_sample(m, 50, rng):
            for row, col in enumerate(a.row_to_col):
                assert np.isfinite(m.values[row, col])


def test_gibbs_single_feasible():
    rng = np.random.default_rng(10)
    values = np.array([[0., np.inf, np.inf], [np.inf, 1., np.inf]])
    samples = assign.gibbs_sample(values, 100, rng)
    assert len(samples) == 1
    assert samples[0].frequency == 1.


def test_gibbs_boltzmann_ratio():
    rng = np.random.default_rng(11)
    values = np.array([[0., 1.], [1., 0.]])
    n = 20_000
    samples = {a.row_to_col: a.frequency for a in assign.gibbs_sample(values, n, rng)}
    p = math.exp(-2) / (1 + math.exp(-2))
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(samples[(1, 0)] - p) < 4 * sigma


def test_gibbs_truncates_and_ranks():
    rng = np.random.default_rng(12)
    m = random_extended(rng, 4, 3)
    samples = assign.gibbs_sample(m, 300, rng, k=7)
    assert len(samples) <= 7
    costs = [a.total_cost for a in samples]
    assert costs == sorted(costs)
    assert math.isclose(samples[0].total_cost, assign.hungarian(m).total_cost)


def test_gibbs_charges_plain_matches_without_mitosis_cost():
    # One object, two detections: a single detection matched through the mitosis block
    # describes the same events as the plain match, which is cheaper
    m = assign.CostMatrix([
        [1., 2., np.inf, 1.3],
        [1., np.inf, 2., 1.3]
    ], n_obj=1, mitosis_cost=[.3])
    for seed in range(50):
        rng = np.random.default_rng(seed)
        samples = assign.gibbs_sample(m, 200, rng)
        assert len({a.signature for a in samples}) == len(samples)
        assert math.isclose(sum(a.frequency for a in samples), 1.)
        for a in samples:
            n_matched = sum(obj != assign.UNASSIGNED for obj in a.object_of_row)
            expected = {0: 4., 1: 3., 2: 2.3}[n_matched]
            assert math.isclose(a.total_cost, expected)


@pytest.mark.slow
def test_gibbs_finds_the_optimum():
    rng = np.random.default_rng(13)
    hits = 0
    for _ in range(100):
        m = random_extended(rng, 6, 4)
        best = assign.gibbs_sample(m, 1000, rng, k=7)[0].total_cost
        hits += math.isclose(best, assign.murty_kbest(m, 1)[0].total_cost)
    assert hits >= 95


def test_bench_instance_shapes():
    rng = np.random.default_rng(14)
    inst = assign.bench.random_instance(8, rng)
    assert inst['standard'].shape == (8, 16)
    assert inst['mitosis_free'].shape == (8, 24)
    assert np.isinf(inst['mitosis_forbidden'][:, 16:]).all()


def test_kuhn_munkres_matches_brute_force():
    rng = np.random.default_rng(15)
    for _ in range(200):
        n = int(rng.integers(1, 5))
        values = rng.uniform(0, 10, size=(n, n + int(rng.integers(0, 4))))
        values[rng.random(size=values.shape) < .4] = np.inf
        solutions = brute_force(values)
        found = assign.kuhn_munkres(values)
        if not solutions:
            assert found is None
            continue
        row_to_col, cost = found
        assert len(set(row_to_col)) == n
        assert math.isclose(cost, sum(values[r, c] for r, c in enumerate(row_to_col)))
        assert math.isclose(cost, min(c for _, c in solutions), abs_tol=1e-9)


def test_kuhn_munkres_edge_cases():
    assert assign.kuhn_munkres(np.zeros((0, 3))) == ((), 0.)
    assert assign.kuhn_munkres(np.zeros((3, 2))) is None
    assert assign.kuhn_munkres([[np.inf, 1.], [np.inf, 2.]]) is None


def test_mitosis_free_columns_save_searches():
    rng = np.random.default_rng(16)
    steps = dict.fromkeys(assign.bench.FORMULATIONS, 0)
    for _ in range(5):
        instance = assign.bench.random_instance(64, rng)
        costs = {}
        for name, values in instance.items():
            (_, costs[name]), n_steps = assign.kuhn_munkres(values, return_n_steps=True)
            steps[name] += n_steps
        assert costs['standard'] == pytest.approx(assign.hungarian(instance['standard']).total_cost)
        assert costs['mitosis_forbidden'] == pytest.approx(costs['standard'])
        assert costs['mitosis_free'] <= costs['standard'] + 1e-9
    assert steps['mitosis_free'] < steps['standard'] == steps['mitosis_forbidden']


@pytest.mark.slow
def test_runtime_trend():
    timings = {
        t.formulation: t.mean_ns
        for t in assign.bench.run(sizes=[128], trials=300, seed=0)
    }
    assert timings['mitosis_free'] < timings['standard'] < timings['mitosis_forbidden']


def test_assignment_events():
    a = assign.Assignment((2, 1, 0, 5), 0., n_obj=2)
    # n_obj=2, n_det=4: columns 2..5 leave rows unassigned, 6..7 mirror the objects
    assert a.object_of_row == (-1, 1, 0, -1)
    assert a.missed_objects() == []
    assert a.unassigned_rows == [0, 3]
    assert not a.mitoses


def test_enumeration_helper_size():
    values = np.zeros((2, 3))
    assert len(brute_force(values)) == len(list(itertools.permutations(range(3), 2)))
