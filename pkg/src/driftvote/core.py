"""Shared types and theory constants for windowed vote aggregation.

The engine trades two error sources against each other when it estimates
labeler correlations from the last ``r`` votes of a stream:

* a statistical term that shrinks like ``const / sqrt(r)``, and
* a drift term that grows with how much the labelers' accuracies moved
  inside the window.

Everything in this module is deterministic bookkeeping for that tradeoff:
the window-size ladder searched at each step (:class:`WindowSchedule`), the
run configuration (:class:`AdaptiveConfig`), the union-bound constant that
calibrates per-window deviations, the multiplicative overhead the adaptive
search pays over the best fixed window in hindsight, and a small report
bundle (:class:`ErrorBudget`) for surfacing these numbers to users.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping


def union_bound_constant(n: int, m: int, delta: float) -> float:
    """Deviation constant ``sqrt(2 ln((2m - 1) n (n - 1) / delta))``.

    Calibrated so that, with probability at least ``1 - delta``, every
    entry of every windowed correlation estimate the selection rule may
    touch (all ``m`` windows plus the ``m - 1`` pairwise comparisons, for
    all ``n (n - 1)`` ordered labeler pairs) stays within its sub-Gaussian
    deviation band simultaneously.

    Parameters
    ----------
    n : int
        Number of labelers, at least 3.
    m : int
        Number of windows in the schedule, at least 2.
    delta : float
        Failure probability, in (0, 1).
    """
    if n < 3:
        raise ValueError(f"need at least 3 labelers, got n={n}")
    if m < 2:
        raise ValueError(f"need at least 2 windows, got m={m}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return math.sqrt(2.0 * math.log((2 * m - 1) * n * (n - 1) / delta))


def statistical_error(r: int, bound_const: float) -> float:
    """High-probability sup-norm deviation of an r-sample correlation
    estimate in the stationary case: ``bound_const / sqrt(r)``."""
    if r < 1:
        raise ValueError(f"window size must be positive, got {r}")
    return bound_const / math.sqrt(r)


@dataclass(frozen=True)
class WindowSchedule:
    """Strictly increasing ladder of candidate window sizes.

    The adaptive rule walks the ladder from the smallest size upward and
    stops when consecutive estimates disagree by more than a drift
    threshold, so the geometry of the ladder (how fast sizes grow) shows
    up in the guarantees through the consecutive-size ratios below.
    """

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sizes) < 2:
            raise ValueError("schedule needs at least 2 window sizes")
        for s in self.sizes:
            if not isinstance(s, int) or isinstance(s, bool) or s < 1:
                raise ValueError(f"window sizes must be positive ints, got {s!r}")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError(f"window sizes must be strictly increasing: {self.sizes}")

    @classmethod
    def doubling(cls, m: int) -> "WindowSchedule":
        """The default ladder ``1, 2, 4, ..., 2**(m-1)``."""
        if m < 2:
            raise ValueError(f"need at least 2 windows, got m={m}")
        return cls(tuple(2**k for k in range(m)))

    @property
    def m(self) -> int:
        return len(self.sizes)

    @property
    def max_size(self) -> int:
        return self.sizes[-1]

    @cached_property
    def min_ratio(self) -> float:
        """min over consecutive sizes of sqrt(r_k / r_{k+1}), in (0, 1)."""
        return min(math.sqrt(a / b) for a, b in zip(self.sizes, self.sizes[1:]))

    @cached_property
    def max_ratio(self) -> float:
        """max over consecutive sizes of sqrt(r_k / r_{k+1}), in (0, 1)."""
        return max(math.sqrt(a / b) for a, b in zip(self.sizes, self.sizes[1:]))

    def feasible_count(self, t: int) -> int:
        """How many ladder sizes fit in a stream of length ``t``."""
        return sum(1 for s in self.sizes if s <= t)


def selection_overhead(schedule: WindowSchedule, beta: float) -> float:
    """Multiplicative factor the adaptive window search pays over an oracle
    that knows the best window in hindsight.

    With ``g = min_ratio`` and ``G = max_ratio`` of the schedule,

        overhead = 1 + max( (2b + 2) / (g (1 - G)),
                            (2b + 2) / (b (1 - G)) )

    where ``b = beta`` is the drift-tolerance knob of the threshold rule.
    Small beta makes the stop rule touchy and the second argument blow up;
    large beta makes it lax and the first argument grow.  For a fixed
    power schedule the two arguments balance at ``beta = g``; optimizing
    the schedule ratio jointly with beta lands both at ``sqrt(2) - 1``.
    """
    if beta <= 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    g, big_g = schedule.min_ratio, schedule.max_ratio
    scale = 2.0 * beta + 2.0
    return 1.0 + max(scale / (g * (1.0 - big_g)), scale / (beta * (1.0 - big_g)))


@dataclass(frozen=True)
class AdaptiveConfig:
    """Run configuration shared by the estimation and aggregation layers.

    Parameters
    ----------
    n : int
        Number of labelers (at least 3; the accuracy recovery needs
        triples).
    schedule : WindowSchedule
        Candidate window ladder; defaults to 20 doubling sizes, 1..2**19.
    beta : float
        Drift tolerance of the window-comparison threshold.
    delta : float
        Failure probability budget for the deviation bands.
    clip_lo, clip_hi : float
        Recovered accuracies are clipped into [clip_lo, clip_hi] before
        weighting, keeping log-odds weights finite under estimation noise.
    """

    n: int
    schedule: WindowSchedule = field(default_factory=lambda: WindowSchedule.doubling(20))
    beta: float = 0.1
    delta: float = 0.1
    clip_lo: float = 0.1
    clip_hi: float = 0.9

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"need at least 3 labelers, got n={self.n}")
        if self.beta <= 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0.0 < self.clip_lo < 0.5:
            raise ValueError(f"clip_lo must lie in (0, 0.5), got {self.clip_lo}")
        if not 0.5 < self.clip_hi < 1.0:
            raise ValueError(f"clip_hi must lie in (0.5, 1), got {self.clip_hi}")

    @cached_property
    def bound_const(self) -> float:
        return union_bound_constant(self.n, self.schedule.m, self.delta)

    @cached_property
    def overhead(self) -> float:
        return selection_overhead(self.schedule, self.beta)


@dataclass(frozen=True)
class ErrorBudget:
    """Static theory numbers for a configuration, for reporting only.

    ``statistical`` maps each window size to its stationary deviation band
    ``bound_const / sqrt(r)``; ``margin`` is an optional user-supplied
    lower bound tau such that every true accuracy stays above
    ``1/2 + tau``.  Nothing here feeds back into estimation.
    """

    overhead: float
    bound_const: float
    margin: float | None
    statistical: Mapping[int, float]

    @property
    def recovery_prefactor(self) -> float | None:
        """Constant ``(5/2) overhead / margin**2`` that converts a
        correlation sup-norm error into an accuracy sup-norm error, when a
        margin is known."""
        if self.margin is None:
            return None
        return 2.5 * self.overhead / self.margin**2


def error_budget(config: AdaptiveConfig, margin: float | None = None) -> ErrorBudget:
    """Assemble the :class:`ErrorBudget` for ``config``."""
    if margin is not None and not 0.0 < margin <= 0.5:
        raise ValueError(f"margin must lie in (0, 0.5], got {margin}")
    stat = {r: statistical_error(r, config.bound_const) for r in config.schedule.sizes}
    return ErrorBudget(
        overhead=config.overhead,
        bound_const=config.bound_const,
        margin=margin,
        statistical=stat,
    )
