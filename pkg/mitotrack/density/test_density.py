import math
import os

import numpy as np
import pytest

from mitotrack import base
from mitotrack import density


def random_mixture(rng, n):
    weights = rng.uniform(.01, 1, size=n)
    means = rng.normal(0, 10, size=(n, 2))
    a = rng.normal(size=(n, 2, 2))
    covs = a @ a.transpose(0, 2, 1)
    return weights, means, covs


def test_pixel_moments_identical_layers():
    layer = np.ones((4, 3, 3, 2)) * (2., -1.)
    m = density.pixel_moments(layer)
    assert (m.offset_cov == 0).all()
    assert np.allclose(m.offset_mean, (2, -1))


def test_pixel_moments_needs_two_augmentations():
    with pytest.raises(base.InsufficientAugmentations):
        density.pixel_moments(np.zeros((1, 2, 2, 2)))


def test_pixel_moments_monte_carlo():
    rng = np.random.default_rng(3)
    mean = np.array([1., -2.])
    cov = np.array([[2., .6], [.6, 1.]])
    layer = rng.multivariate_normal(mean, cov, size=(8, 100, 100))
    m = density.pixel_moments(layer)
    # Averaged over 10^4 pixels the unbiased estimates concentrate around the truth
    assert np.allclose(m.offset_mean.mean(axis=(0, 1)), mean, atol=.05)
    assert np.allclose(m.offset_cov.mean(axis=(0, 1)), cov, atol=.05)
    assert np.linalg.eigvalsh(m.offset_cov).min() >= -1e-12


def test_merge_single_component_is_identity():
    g = density.merge_gaussian_mixture([(.7, (3, 4), np.eye(2))])
    assert g.mean == (3., 4.)
    assert g.cov == ((1., 0.), (0., 1.))


def test_merge_errors():
    with pytest.raises(base.EmptyMixture):
        density.merge_gaussian_mixture([])
    with pytest.raises(base.DegenerateWeights):
        density.merge_gaussian_mixture([(0., (0, 0), np.eye(2))])


def test_merge_conserves_moments():
    rng = np.random.default_rng(4)
    for _ in range(1000):
        w, mus, covs = random_mixture(rng, int(rng.integers(1, 51)))
        g = density.merge_gaussian_mixture(zip(w, mus, covs))
        p = w / w.sum()
        mean = (p[:, None] * mus).sum(axis=0)
        second = sum(pi * (c + np.outer(m, m)) for pi, m, c in zip(p, mus, covs))
        assert np.allclose(g.mu, mean, rtol=0, atol=1e-12 * max(1, abs(mean).max()))
        expected = second - np.outer(mean, mean)
        assert np.allclose(g.sigma, expected, rtol=1e-9, atol=1e-9)


def test_merge_against_samples():
    rng = np.random.default_rng(5)
    w, mus, covs = random_mixture(rng, 50)
    g = density.merge_gaussian_mixture(zip(w, mus, covs))
    picks = rng.choice(50, size=10 ** 6, p=w / w.sum())
    noise = np.einsum('nij,nj->ni', np.linalg.cholesky(covs + 1e-12 * np.eye(2))[picks],
                      rng.normal(size=(10 ** 6, 2)))
    samples = mus[picks] + noise
    assert np.allclose(samples.mean(axis=0), g.mu, atol=.1)
    assert np.allclose(np.cov(samples.T), g.sigma, rtol=.02, atol=.5)


def test_merge_is_order_invariant():
    rng = np.random.default_rng(6)
    for _ in range(100):
        w, mus, covs = random_mixture(rng, 10)
        a = density.merge_gaussian_mixture(zip(w, mus, covs))
        perm = rng.permutation(10)
        b = density.merge_gaussian_mixture(zip(w[perm], mus[perm], covs[perm]))
        assert np.allclose(a.mu, b.mu, rtol=0, atol=1e-12 * 100)
        assert np.allclose(a.sigma, b.sigma, rtol=1e-12, atol=1e-10)


def test_merge_duplicated_components():
    rng = np.random.default_rng(7)
    w, mus, covs = random_mixture(rng, 6)
    a = density.merge_gaussian_mixture(zip(w, mus, covs))
    b = density.merge_gaussian_mixture(zip(
        np.concatenate([w / 2, w / 2]),
        np.concatenate([mus, mus]),
        np.concatenate([covs, covs])
    ))
    assert np.allclose(a.mu, b.mu, rtol=1e-12, atol=1e-12)
    assert np.allclose(a.sigma, b.sigma, rtol=1e-12, atol=1e-12)


def two_pixel_stack():
    labels = np.zeros((1, 3), dtype=int)
    labels[0, [0, 2]] = 1
    seg = np.where(labels > 0, .8, 0.)
    zeros = np.zeros((3, 1, 3, 2))
    return density.PredictionStack(seg, zeros, zeros, labels)


def test_detection_two_pixels():
    stack = two_pixel_stack()
    m = density.pixel_moments(stack.centroid_offsets)
    det = density.detection_from_pixels(stack, 1, m, m)
    assert det.centroid.mean == (1., 0.)
    assert det.centroid.cov == ((1., 0.), (0., 0.))
    # The merged centroid falls onto a background pixel
    assert det.clutter_prob == 1. - 1e-12


def test_detection_unknown_label():
    stack = two_pixel_stack()
    m = density.pixel_moments(stack.centroid_offsets)
    with pytest.raises(base.UnknownLabel):
        density.detection_from_pixels(stack, 5, m, m)


def test_detection_zero_weights():
    stack = two_pixel_stack()
    stack.seg[:] = 0.
    m = density.pixel_moments(stack.centroid_offsets)
    with pytest.raises(base.DegenerateWeights):
        density.detection_from_pixels(stack, 1, m, m)


def test_detection_matches_scripted_merge():
    stack = density.gen.blob_stack([(12.3, 9.7)], [(10.1, 9.2)], (24, 24), radius=4., seed=1)
    dets = density.detections_from_stack(stack, frame=5)
    assert len(dets) == 1
    det = dets[0]

    # Loop based re-implementation of the weighted merge
    c = stack.centroid_offsets
    n_aug = c.shape[0]
    total, acc_mean = 0., np.zeros(2)
    votes = []
    for row in range(24):
        for col in range(24):
            if stack.labels[row, col] != 1:
                continue
            w = stack.seg[row, col]
            mean = np.array([col, row]) + c[:, row, col].mean(axis=0)
            d = c[:, row, col] - c[:, row, col].mean(axis=0)
            cov = d.T @ d / (n_aug - 1)
            votes.append((w, mean, cov))
            total += w
            acc_mean += w * mean
    mu = acc_mean / total
    sigma = sum(w * (cov + np.outer(m - mu, m - mu)) for w, m, cov in votes) / total

    assert np.allclose(det.centroid.mu, mu, rtol=0, atol=1e-9)
    assert np.allclose(det.centroid.sigma, sigma, rtol=0, atol=1e-9)
    assert det.frame == 5
    assert 0 <= det.clutter_prob < 1
    assert abs(det.clutter_prob - .1) < 1e-9
    assert np.allclose(det.centroid.mu, (12.3, 9.7), atol=.5)
    assert np.allclose(det.motion_warped.mu, (10.1, 9.2), atol=.5)


def test_average_cell_radius():
    mask = np.zeros((20, 20), dtype=int)
    mask.flat[:314] = 1
    assert math.isclose(density.average_cell_radius([mask]), math.sqrt(314 / math.pi))
    assert abs(math.sqrt(314 / math.pi) - 9.9975) < 1e-4


def test_average_cell_radius_counts_instances_across_frames():
    a = np.zeros((10, 10), dtype=int)
    a[:2, :2] = 1
    b = np.zeros((10, 10), dtype=int)
    b[:4, :4] = 1
    expected = (math.sqrt(4 / math.pi) + math.sqrt(16 / math.pi)) / 2
    assert math.isclose(density.average_cell_radius([a, b]), expected)


def test_average_cell_radius_without_cells():
    with pytest.raises(base.EmptyGroundTruth):
        density.average_cell_radius([np.zeros((4, 4), dtype=int)])


@pytest.mark.parametrize('base_count', [1, 8])
def test_shift_transform_set(base_count):
    transforms = density.shift_transform_set(base_count, radius=3.)
    assert len(transforms) == 5 * base_count
    assert sum(t.is_identity for t in transforms) == base_count
    for t in transforms:
        assert t.compose(t.inverse()).is_identity
        assert math.hypot(t.dx, t.dy) in (0., 3.)


def test_nft_round_trip_through_manifest(tmp_path):
    stack = density.gen.blob_stack([(5, 5), (12, 6)], [(5, 4), (12, 7)], (16, 16), radius=2.)
    entries = [density.nft.write_stack(str(tmp_path), k, stack) for k in range(2)]
    density.nft.write_manifest(os.path.join(tmp_path, 'manifest.json'), entries)

    loaded = list(density.nft.load_manifest(os.path.join(tmp_path, 'manifest.json')))
    assert [k for k, _ in loaded] == [0, 1]
    _, again = loaded[0]
    assert (again.labels == stack.labels).all()
    assert np.allclose(again.centroid_offsets, stack.centroid_offsets, atol=1e-5)


def test_nft_normalized_units(tmp_path):
    labels = np.ones((2, 4), dtype=int)
    offsets = np.zeros((2, 2, 4, 2))
    offsets[..., 0] = .5
    offsets[..., 1] = .5
    stack = density.PredictionStack(np.full((2, 4), .5), offsets, offsets, labels)
    entry = density.nft.write_stack(str(tmp_path), 0, stack)
    density.nft.write_manifest(os.path.join(tmp_path, 'm.json'), [entry], 'normalized')
    (_, loaded), = density.nft.load_manifest(os.path.join(tmp_path, 'm.json'))
    assert np.allclose(loaded.centroid_offsets[..., 0], 2.)
    assert np.allclose(loaded.centroid_offsets[..., 1], 1.)


def test_nft_bad_header(tmp_path):
    path = os.path.join(tmp_path, 'x.nft')
    density.nft.write_tensor(path, np.zeros((3, 3)))
    with open(path, 'r+b') as f:
        f.seek(8)
        f.write(np.array([4], dtype='<u4').tobytes())
    with pytest.raises(base.BadTensorHeader):
        density.nft.read_tensor(path)


def test_nft_wrong_kind(tmp_path):
    path = os.path.join(tmp_path, 'x.nft')
    density.nft.write_tensor(path, np.zeros((3, 3)))
    with pytest.raises(base.BadTensorHeader):
        density.nft.read_tensor(path, integer=True)
