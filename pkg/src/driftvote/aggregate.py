"""Vote aggregation strategies over a stream.

Aggregation is a weighted majority: given per-labeler accuracies p the
weight of labeler i is its log odds ``ln(p_i / (1 - p_i))``, which is the
weighting that maximizes the probability of recovering the true label when
labeler errors are independent given the truth.  Exact ties go to +1.

Three strategies share one driver:

* ``adaptive``   - pick the window with :func:`.adaptive.select_window`,
  recover accuracies from it, weight, vote.
* ``fixed:R``    - same pipeline with a fixed window of min(t, R).
* ``majority``   - unweighted majority vote (equivalent to ``fixed:1``,
  where every recovered accuracy clips to the same constant).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adaptive import select_window
from .core import AdaptiveConfig
from .corrwin import CorrelationBank, as_vote_matrix
from .triplet import recover_accuracies, recover_accuracies_batch

STRATEGY_ADAPTIVE = "adaptive"
STRATEGY_MAJORITY = "majority"
STRATEGY_FIXED = "fixed"


@dataclass
class StepReport:
    """Everything the engine decided at one step.

    ``window`` is the sample count actually used (None for majority),
    ``p_hat`` the clipped accuracy estimates, ``truth``/``correct`` filled
    when the stream is labeled, ``stop_reason`` only for adaptive runs.
    """

    t: int
    prediction: int
    window: int | None = None
    p_hat: tuple[float, ...] | None = None
    weights: tuple[float, ...] | None = None
    truth: int | None = None
    correct: bool | None = None
    stop_reason: str | None = None


def log_odds_weights(p) -> np.ndarray:
    """Per-labeler weights ``ln(p / (1 - p))``; requires 0 < p < 1."""
    acc = np.asarray(p, dtype=float)
    if np.any(acc <= 0.0) or np.any(acc >= 1.0):
        raise ValueError("accuracies must lie strictly inside (0, 1); clip estimates first")
    return np.log(acc / (1.0 - acc))


def weighted_vote(votes, weights) -> int:
    """Sign of the weighted vote sum; an exact tie predicts +1."""
    v = np.asarray(votes, dtype=float)
    w = np.asarray(weights, dtype=float)
    if v.shape != w.shape:
        raise ValueError(f"votes {v.shape} and weights {w.shape} must align")
    return 1 if float(v @ w) >= 0.0 else -1


def majority_vote(votes) -> int:
    """Unweighted majority; an exact tie predicts +1."""
    return 1 if int(np.sum(votes)) >= 0 else -1


def parse_strategy(strategy: str) -> tuple[str, int | None]:
    """Split a strategy string into (kind, fixed window or None)."""
    if strategy == STRATEGY_ADAPTIVE:
        return STRATEGY_ADAPTIVE, None
    if strategy == STRATEGY_MAJORITY:
        return STRATEGY_MAJORITY, None
    if strategy.startswith(STRATEGY_FIXED + ":"):
        tail = strategy.split(":", 1)[1]
        try:
            r = int(tail)
        except ValueError:
            raise ValueError(f"bad fixed window {tail!r} in strategy {strategy!r}") from None
        if r < 1:
            raise ValueError(f"fixed window must be positive, got {r}")
        return STRATEGY_FIXED, r
    raise ValueError(
        f"unknown strategy {strategy!r}; expected 'adaptive', 'majority', or 'fixed:R'"
    )


def _check_truths(truths, steps: int) -> np.ndarray | None:
    if truths is None:
        return None
    arr = np.asarray(truths)
    if arr.shape != (steps,):
        raise ValueError(f"expected {steps} truth labels, got shape {arr.shape}")
    if not np.all(np.abs(arr) == 1):
        raise ValueError("truth labels must be +/-1")
    return arr.astype(np.int8)


def run_strategy(
    votes,
    strategy: str,
    config: AdaptiveConfig | None = None,
    truths=None,
) -> list[StepReport]:
    """Run one aggregation strategy over a resolved +/-1 vote stream.

    Parameters
    ----------
    votes : (T, n) array
        One row per step, entries +/-1 (resolve abstentions first).
    strategy : str
        ``adaptive``, ``majority``, or ``fixed:R`` with
        ``1 <= R <= config.schedule.max_size``.
    config : AdaptiveConfig, optional
        Defaults to ``AdaptiveConfig(n)`` for the stream's width.
    truths : (T,) array, optional
        True labels; fills ``truth``/``correct`` in the reports.
    """
    kind, fixed_r = parse_strategy(strategy)
    v = np.asarray(votes)
    if v.ndim != 2 or v.shape[0] < 1:
        raise ValueError(f"expected a nonempty (T, n) vote matrix, got shape {v.shape}")
    steps, n = v.shape
    if config is None:
        config = AdaptiveConfig(n=n)
    if config.n != n:
        raise ValueError(f"config expects {config.n} labelers, stream has {n}")
    v = as_vote_matrix(v, n)
    truth_arr = _check_truths(truths, steps)

    reports: list[StepReport] = []

    def finish(t: int, pred: int, **kw) -> None:
        truth = int(truth_arr[t]) if truth_arr is not None else None
        correct = (pred == truth) if truth is not None else None
        reports.append(StepReport(t=t + 1, prediction=pred, truth=truth, correct=correct, **kw))

    if kind == STRATEGY_MAJORITY:
        for t in range(steps):
            finish(t, majority_vote(v[t]))
        return reports

    if kind == STRATEGY_FIXED:
        if fixed_r > config.schedule.max_size:
            raise ValueError(
                f"fixed window {fixed_r} exceeds the schedule's largest size "
                f"{config.schedule.max_size}"
            )
        bank = CorrelationBank(n, [fixed_r])
    else:
        bank = CorrelationBank(n, config.schedule.sizes)

    for t in range(steps):
        bank.push(v[t])
        if kind == STRATEGY_ADAPTIVE:
            decision = select_window(bank, config)
            used, stop = decision.window, decision.stop_reason
            corr = bank.correlation(used)
        else:
            used, stop = bank.window_length(fixed_r), None
            corr = bank.correlation(fixed_r)
        est = recover_accuracies(corr, config.clip_lo, config.clip_hi, window=used)
        w = log_odds_weights(est.accuracies)
        finish(
            t,
            weighted_vote(v[t], w),
            window=used,
            p_hat=tuple(float(x) for x in est.accuracies),
            weights=tuple(float(x) for x in w),
            stop_reason=stop,
        )
    return reports


def run_fixed_sweep(votes, config: AdaptiveConfig | None = None, sizes=None) -> dict[int, np.ndarray]:
    """Predictions of every fixed-window strategy in one pass.

    Shares a single correlation bank across all window sizes, so a sweep
    over the whole ladder costs barely more than one fixed run.  Returns
    ``{r: (T,) array of +/-1 predictions}``; step-for-step identical to
    ``run_strategy(votes, f"fixed:{r}", config)``.
    """
    v = np.asarray(votes)
    if v.ndim != 2 or v.shape[0] < 1:
        raise ValueError(f"expected a nonempty (T, n) vote matrix, got shape {v.shape}")
    steps, n = v.shape
    if config is None:
        config = AdaptiveConfig(n=n)
    if config.n != n:
        raise ValueError(f"config expects {config.n} labelers, stream has {n}")
    v = as_vote_matrix(v, n)
    ladder = tuple(sorted(set(int(r) for r in sizes))) if sizes is not None else config.schedule.sizes
    if not ladder:
        raise ValueError("need at least one window size to sweep")
    if ladder[0] < 1:
        raise ValueError(f"window sizes must be positive, got {ladder[0]}")
    if ladder[-1] > config.schedule.max_size:
        raise ValueError(
            f"sweep window {ladder[-1]} exceeds the schedule's largest size "
            f"{config.schedule.max_size}"
        )

    bank = CorrelationBank(n, ladder)
    out = np.empty((len(ladder), steps), dtype=np.int8)
    for t in range(steps):
        bank.push(v[t])
        acc = recover_accuracies_batch(bank.all_correlations(), config.clip_lo, config.clip_hi)
        scores = np.log(acc / (1.0 - acc)) @ v[t].astype(float)
        out[:, t] = np.where(scores >= 0.0, 1, -1)
    return {r: out[k] for k, r in enumerate(ladder)}
