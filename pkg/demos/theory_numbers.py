"""Print the theory constants behind a configuration.

Shows how the pieces fit: the union-bound constant scales every deviation
band, each ladder rung gets a walk threshold, and the selection overhead
says how far the chosen window's error can sit above the best window's.
With a known accuracy margin the estimation error translates into a bound
on the accuracy estimates themselves.
"""

import math

from driftvote import (
    AdaptiveConfig,
    WindowSchedule,
    drift_threshold,
    error_budget,
    selection_overhead,
)


def main() -> None:
    config = AdaptiveConfig(n=3, schedule=WindowSchedule.doubling(10))
    budget = error_budget(config, margin=0.1)

    print(f"n={config.n}, windows {config.schedule.sizes}")
    print(f"union-bound constant: {budget.bound_const:.6f}")
    print(f"selection overhead:   {budget.overhead:.6f} (beta={config.beta})")
    print(f"accuracy-recovery prefactor at margin 0.1: {budget.recovery_prefactor:.2f}")

    print(f"\n{'window':>8}  {'stat err':>10}  {'walk threshold':>15}")
    sizes = config.schedule.sizes
    for i, r in enumerate(sizes):
        thr = (f"{drift_threshold(r, sizes[i + 1], config.beta, config.bound_const):.4f}"
               if i + 1 < len(sizes) else "-")
        print(f"{r:>8}  {budget.statistical[r]:>10.4f}  {thr:>15}")

    # the overhead is a function of beta and the ladder's ratios; the sweet
    # spot for matched powers sits at beta = sqrt(2) - 1
    print(f"\n{'beta':>6}  overhead")
    for beta in (0.01, 0.05, 0.1, math.sqrt(2) - 1, 0.7, 1.0):
        print(f"{beta:>6.3f}  {selection_overhead(config.schedule, beta):.3f}")


if __name__ == "__main__":
    main()
