"""Accuracy recovery from correlation matrices.

The recovery map has an exact inverse on noiseless inputs: building the
correlation matrix from accuracies and recovering must return the same
vector to float precision.  That exactness is the main oracle; the rest
covers the degenerate branch, tie-breaking, equivariance, and stability.
"""

import numpy as np
import pytest

from driftvote import (
    correlation_from_accuracies,
    recover_accuracies,
    recover_accuracies_batch,
)


def test_correlation_from_accuracies_frozen_example():
    c = correlation_from_accuracies([0.8, 0.7, 0.6])
    want = np.array([
        [1.0, 0.24, 0.12],
        [0.24, 1.0, 0.08],
        [0.12, 0.08, 1.0],
    ])
    assert np.allclose(c, want, rtol=0.0, atol=1e-15)


def test_correlation_from_accuracies_validation():
    with pytest.raises(ValueError):
        correlation_from_accuracies([0.9])
    with pytest.raises(ValueError):
        correlation_from_accuracies([[0.9, 0.8]])
    with pytest.raises(ValueError):
        correlation_from_accuracies([0.9, 1.2, 0.8])


def test_exact_round_trip_small():
    p = np.array([0.8, 0.7, 0.6])
    est = recover_accuracies(correlation_from_accuracies(p))
    assert np.allclose(est.raw, p, rtol=0.0, atol=1e-12)


def test_exact_round_trip_many_widths():
    rng = np.random.default_rng(21)
    for n in range(3, 9):
        for _ in range(25):
            p = rng.uniform(0.55, 0.95, size=n)
            est = recover_accuracies(correlation_from_accuracies(p), clip_lo=0.01, clip_hi=0.99)
            assert np.allclose(est.raw, p, rtol=0.0, atol=1e-10)


def test_round_trip_below_half_reflects():
    # a labeler worse than chance is recovered at its mirror image above 1/2:
    # the root only fixes (2p-1)^2, and the sign is resolved optimistically
    p = np.array([0.9, 0.8, 0.3])
    est = recover_accuracies(correlation_from_accuracies(p))
    assert est.raw[2] == pytest.approx(0.7, abs=1e-12)


def test_identity_matrix_hits_degenerate_branch():
    est = recover_accuracies(np.eye(3))
    assert np.all(est.raw == 0.5)
    assert np.all(est.accuracies == 0.5)


def test_tie_break_prefers_lexicographic_witness_pair():
    # for h=0 the witness candidates (1,2) and (1,3) tie on |corr| = 0.5;
    # row-major argmax must take (1,2), whose recovered value differs from
    # the (1,3) alternative because corr[0,2] != corr[0,3]
    c = np.array([
        [1.0, 0.40, 0.20, 0.10],
        [0.40, 1.0, 0.50, 0.50],
        [0.20, 0.50, 1.0, 0.05],
        [0.10, 0.50, 0.05, 1.0],
    ])
    est = recover_accuracies(c, clip_lo=0.01, clip_hi=0.99)
    via_12 = 0.5 * (1.0 + np.sqrt(abs(c[0, 1] * c[0, 2] / c[1, 2])))
    via_13 = 0.5 * (1.0 + np.sqrt(abs(c[0, 1] * c[0, 3] / c[1, 3])))
    assert via_12 != pytest.approx(via_13, abs=1e-6)  # the tie is observable
    assert est.raw[0] == pytest.approx(via_12, abs=1e-12)


def test_permutation_equivariance():
    rng = np.random.default_rng(22)
    p = rng.uniform(0.55, 0.95, size=6)
    c = correlation_from_accuracies(p)
    perm = rng.permutation(6)
    permuted = recover_accuracies(c[np.ix_(perm, perm)], clip_lo=0.01, clip_hi=0.99)
    plain = recover_accuracies(c, clip_lo=0.01, clip_hi=0.99)
    assert np.allclose(permuted.raw, plain.raw[perm], rtol=0.0, atol=1e-10)


def test_clipping_band():
    p = np.array([0.98, 0.7, 0.3])
    est = recover_accuracies(correlation_from_accuracies(p), clip_lo=0.35, clip_hi=0.9)
    assert est.raw[0] == pytest.approx(0.98, abs=1e-12)  # raw untouched
    assert est.accuracies[0] == 0.9
    # the adversarial labeler reflects to 0.7, inside the band
    assert est.accuracies[2] == pytest.approx(0.7, abs=1e-12)
    assert est.window == 0
    est2 = recover_accuracies(correlation_from_accuracies(p), window=64)
    assert est2.window == 64


def test_stability_under_small_perturbation():
    # a perturbation eta of the correlations moves the recovered accuracies
    # by O(eta) when the true accuracies are bounded away from 1/2
    rng = np.random.default_rng(23)
    p = np.array([0.85, 0.8, 0.75, 0.7])
    c = correlation_from_accuracies(p)
    eta = 1e-4
    for _ in range(50):
        noise = rng.uniform(-eta, eta, size=c.shape)
        noise = np.triu(noise, k=1)
        noisy = c + noise + noise.T
        est = recover_accuracies(noisy, clip_lo=0.01, clip_hi=0.99)
        assert np.abs(est.raw - p).max() < 50 * eta


def test_batch_matches_single():
    rng = np.random.default_rng(24)
    mats = np.stack([
        correlation_from_accuracies(rng.uniform(0.55, 0.95, size=4)) for _ in range(16)
    ])
    batch = recover_accuracies_batch(mats, 0.1, 0.9)
    for b in range(16):
        single = recover_accuracies(mats[b], 0.1, 0.9)
        assert np.array_equal(batch[b], single.accuracies)


def test_input_validation():
    good = correlation_from_accuracies([0.8, 0.7, 0.6])
    with pytest.raises(ValueError):
        recover_accuracies(good[:2, :])
    with pytest.raises(ValueError):
        recover_accuracies(good[:2, :2])  # n=2
    bad = good.copy()
    bad[0, 1] += 1e-6
    with pytest.raises(ValueError):
        recover_accuracies(bad)  # asymmetric
    bad = good.copy()
    bad[1, 1] = 0.9
    with pytest.raises(ValueError):
        recover_accuracies(bad)  # diagonal
    with pytest.raises(ValueError):
        recover_accuracies(good, clip_lo=0.6)
    with pytest.raises(ValueError):
        recover_accuracies(good, clip_hi=0.4)
    with pytest.raises(ValueError):
        recover_accuracies_batch(good, 0.1, 0.9)  # not a stack
