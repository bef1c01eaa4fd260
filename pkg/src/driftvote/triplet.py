"""Labeler accuracy recovery from pairwise vote correlations.

When labeler errors are independent given the true label and the truth is
balanced, the pairwise vote correlations factor as

    corr_{ij} = (2 p_i - 1)(2 p_j - 1),

so for any triple (h, i, j) of distinct labelers the h-th factor can be
isolated without ever observing the truth:

    (2 p_h - 1)^2 = corr_{ih} * corr_{hj} / corr_{ij}.

Taking the root and mapping back gives ``p_h = (1 + sqrt(.)) / 2``, which
resolves the sign ambiguity by assuming labelers are better than chance.
For each h the implementation picks the witness pair (i, j) with the
largest ``|corr_{ij}|`` (ties broken toward the lexicographically first
unordered pair), since dividing by a near-zero correlation is the unstable
part of the map; an exactly-zero pick falls back to ``p_h = 1/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: below this magnitude a witness correlation is treated as exactly zero
ZERO_TOL = 1e-15

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class AccuracyEstimate:
    """Recovered accuracies: ``raw`` pre-clip, ``accuracies`` clipped into
    the configured band, and the window length the correlations came from."""

    raw: np.ndarray
    accuracies: np.ndarray
    window: int


@lru_cache(maxsize=32)
def _witness_masks(n: int) -> np.ndarray:
    """(n, n, n) bool; entry [h, i, j] marks i < j with both distinct from h."""
    masks = np.broadcast_to(np.triu(np.ones((n, n), dtype=bool), k=1), (n, n, n)).copy()
    idx = np.arange(n)
    masks[idx, idx, :] = False
    masks[idx, :, idx] = False
    masks.setflags(write=False)
    return masks


def correlation_from_accuracies(p) -> np.ndarray:
    """Exact correlation matrix implied by accuracies ``p`` (unit diagonal)."""
    acc = np.asarray(p, dtype=float)
    if acc.ndim != 1 or acc.size < 2:
        raise ValueError(f"need a vector of at least 2 accuracies, got shape {acc.shape}")
    if np.any(acc < 0.0) or np.any(acc > 1.0):
        raise ValueError("accuracies must lie in [0, 1]")
    bias = 2.0 * acc - 1.0
    corr = np.outer(bias, bias)
    np.fill_diagonal(corr, 1.0)
    return corr


def recover_accuracies_batch(mats: np.ndarray, clip_lo: float, clip_hi: float) -> np.ndarray:
    """Clipped accuracy estimates for a (B, n, n) stack of correlation
    matrices; returns a (B, n) array.  Fast path for sweeps: per-matrix
    validation is skipped.  See :func:`recover_accuracies`."""
    if not 0.0 < clip_lo < 0.5 < clip_hi < 1.0:
        raise ValueError(f"clip band must satisfy 0 < lo < 0.5 < hi < 1, got [{clip_lo}, {clip_hi}]")
    mats = np.asarray(mats, dtype=float)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2] or mats.shape[1] < 3:
        raise ValueError(f"expected a (B, n, n) stack with n >= 3, got shape {mats.shape}")
    raw = _recover_raw(mats)
    return np.clip(raw, clip_lo, clip_hi)


def _recover_raw(mats: np.ndarray) -> np.ndarray:
    batch, n = mats.shape[0], mats.shape[1]
    masks = _witness_masks(n)
    absm = np.abs(mats)
    rows = np.arange(batch)
    raw = np.empty((batch, n))
    for h in range(n):
        flat = np.where(masks[h], absm, -1.0).reshape(batch, -1)
        pick = np.argmax(flat, axis=1)  # first max in row-major order
        i, j = pick // n, pick % n
        c_ij = mats[rows, i, j]
        c_ih = mats[rows, i, h]
        c_hj = mats[rows, h, j]
        degenerate = np.abs(c_ij) <= ZERO_TOL
        ratio = np.abs(c_ih * c_hj / np.where(degenerate, 1.0, c_ij))
        raw[:, h] = np.where(degenerate, 0.5, 0.5 * (1.0 + np.sqrt(ratio)))
    return raw


def recover_accuracies(
    corr: np.ndarray,
    clip_lo: float = 0.1,
    clip_hi: float = 0.9,
    window: int = 0,
) -> AccuracyEstimate:
    """Recover one accuracy per labeler from a correlation matrix.

    Parameters
    ----------
    corr : (n, n) array
        Symmetric with unit diagonal, n >= 3 (each labeler needs a witness
        pair disjoint from itself).
    clip_lo, clip_hi : float
        Clipping band applied to the raw estimates.
    window : int
        Sample count behind ``corr``; carried through for reporting.
    """
    c = np.asarray(corr, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError(f"correlation matrix must be square, got shape {c.shape}")
    n = c.shape[0]
    if n < 3:
        raise ValueError(f"recovery needs at least 3 labelers, got {n}")
    if not np.allclose(c, c.T, rtol=0.0, atol=_SYM_TOL):
        raise ValueError("correlation matrix must be symmetric")
    if not np.allclose(np.diagonal(c), 1.0, rtol=0.0, atol=_SYM_TOL):
        raise ValueError("correlation matrix must have unit diagonal")
    if not 0.0 < clip_lo < 0.5 < clip_hi < 1.0:
        raise ValueError(f"clip band must satisfy 0 < lo < 0.5 < hi < 1, got [{clip_lo}, {clip_hi}]")
    raw = _recover_raw(c[None])[0]
    return AccuracyEstimate(raw=raw, accuracies=np.clip(raw, clip_lo, clip_hi), window=int(window))
