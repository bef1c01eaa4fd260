"""Command-line front end.

Four subcommands cover the full loop:

* ``simulate`` — draw a synthetic drifting stream and write it to disk,
* ``run``      — aggregate a stream file with one strategy into reports,
* ``eval``     — summarize one or more report files (JSON + CSV series),
* ``bound``    — print the theory numbers for a configuration.

Every command is deterministic given its flags: identical invocations
produce byte-identical outputs.  Errors exit nonzero with a single
``error: ...`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io as dio
from .aggregate import parse_strategy, run_strategy
from .core import AdaptiveConfig, WindowSchedule, error_budget, selection_overhead
from .driftgen import (
    BlockSpec,
    SyntheticStreamConfig,
    apply_permute_drift,
    block_drift_preset,
    generate_synthetic,
    resolve_abstentions,
    role_rngs,
    true_drift_error,
)
from .metrics import ROLLING_LOOKAHEAD, comparison_rows, summarize

PRESETS = ("block-drift",)

#: multiplier converting a one-step accuracy jump into its worst-case
#: effect on a correlation entry (two factors, each moving two entries).
DRIFT_TO_CORR = 12.0


@dataclass
class ExperimentConfig:
    """Reproducible record of one CLI invocation."""

    command: str
    params: dict

    def to_json(self) -> str:
        return json.dumps(
            {"command": self.command, "params": self.params}, indent=2, sort_keys=True
        )

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        obj = json.loads(text)
        if not isinstance(obj, dict) or "command" not in obj or "params" not in obj:
            raise ValueError("experiment config needs 'command' and 'params'")
        return cls(command=obj["command"], params=dict(obj["params"]))


def _parse_blocks(text: str) -> tuple[BlockSpec, ...]:
    """Parse "LEN:p1,p2,...;LEN:p1,p2,..." into block specs."""
    blocks = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        length_text, _, acc_text = part.partition(":")
        if not acc_text:
            raise ValueError(f"bad block {part!r}; expected LEN:p1,p2,...")
        try:
            length = int(length_text)
            accuracies = tuple(float(x) for x in acc_text.split(","))
        except ValueError:
            raise ValueError(f"bad block {part!r}; expected LEN:p1,p2,...") from None
        blocks.append(BlockSpec(length=length, accuracies=accuracies))
    if not blocks:
        raise ValueError("no blocks given")
    return tuple(blocks)


def _parse_clip(text: str) -> tuple[float, float]:
    lo_text, _, hi_text = text.partition(":")
    try:
        return float(lo_text), float(hi_text)
    except ValueError:
        raise ValueError(f"bad clip band {text!r}; expected LO:HI") from None


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bad number list {text!r}") from None


def _schedule(args) -> WindowSchedule:
    if getattr(args, "sizes", None):
        try:
            sizes = tuple(int(x) for x in args.sizes.split(","))
        except ValueError:
            raise ValueError(f"bad window sizes {args.sizes!r}") from None
        return WindowSchedule(sizes)
    return WindowSchedule.doubling(args.m)


def _synthetic_config(args, seed: int) -> SyntheticStreamConfig:
    if (args.preset is None) == (args.blocks is None):
        raise ValueError("give exactly one of --preset or --blocks")
    if args.preset is not None:
        return block_drift_preset(seed, block_len=args.block_len)
    blocks = _parse_blocks(args.blocks)
    return SyntheticStreamConfig(blocks=blocks, seed=seed, n=len(blocks[0].accuracies))


def _save_config(args, command: str) -> None:
    if not getattr(args, "save_config", None):
        return
    skip = {"func", "save_config"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    cfg = ExperimentConfig(command=command, params=params)
    Path(args.save_config).write_text(cfg.to_json() + "\n", encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_simulate(args) -> int:
    cfg = _synthetic_config(args, args.seed)
    stream = generate_synthetic(cfg)
    if args.permute_prob > 0.0:
        stream = apply_permute_drift(stream, args.permute_prob, role_rngs(args.seed)["permute"])
    dio.write_stream(args.out, stream, fmt=args.format)
    _save_config(args, "simulate")
    return 0


def cmd_run(args) -> int:
    parse_strategy(args.strategy)  # fail fast, before any file work
    clip_lo, clip_hi = _parse_clip(args.clip)
    records = dio.read_stream(args.input)
    votes, labels = dio.records_to_arrays(records)
    votes = resolve_abstentions(votes, args.abstain_seed)
    config = AdaptiveConfig(
        n=votes.shape[1],
        schedule=_schedule(args),
        beta=args.beta,
        delta=args.delta,
        clip_lo=clip_lo,
        clip_hi=clip_hi,
    )
    reports = run_strategy(votes, args.strategy, config, truths=labels)
    dio.write_reports(args.out, reports)
    _save_config(args, "run")
    return 0


def cmd_eval(args) -> int:
    summaries = {}
    for path_text in args.reports:
        path = Path(path_text)
        name = path.stem if path.stem not in summaries else path_text
        summaries[name] = summarize(dio.read_reports(path), lookahead=args.lookahead)
    doc = {
        "runs": {name: s.to_json_dict() for name, s in summaries.items()},
        "comparison": comparison_rows(summaries),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    if args.series_dir is not None:
        series_dir = Path(args.series_dir)
        series_dir.mkdir(parents=True, exist_ok=True)
        for name, s in summaries.items():
            dio.write_series_csv(series_dir / f"{name}_rolling.csv", s.rolling)
    _save_config(args, "eval")
    return 0


def cmd_bound(args) -> int:
    clip_lo, clip_hi = _parse_clip(args.clip)
    config = AdaptiveConfig(
        n=args.n,
        schedule=_schedule(args),
        beta=args.beta,
        delta=args.delta,
        clip_lo=clip_lo,
        clip_hi=clip_hi,
    )
    budget = error_budget(config, margin=args.margin)
    doc: dict = {
        "n": config.n,
        "m": config.schedule.m,
        "beta": config.beta,
        "delta": config.delta,
        "sizes": list(config.schedule.sizes),
        "bound_const": budget.bound_const,
        "overhead": budget.overhead,
        "statistical": {str(r): v for r, v in budget.statistical.items()},
    }
    if budget.margin is not None:
        doc["margin"] = budget.margin
        doc["recovery_prefactor"] = budget.recovery_prefactor
    if args.preset is not None or args.blocks is not None:
        synth = _synthetic_config(args, seed=0)
        if synth.n != config.n:
            raise ValueError(f"stream layout has {synth.n} labelers, --n says {config.n}")
        at = args.at if args.at is not None else synth.length
        per_window = {}
        for r in config.schedule.sizes:
            drift = true_drift_error(synth, r, at)
            stat = budget.statistical[r]
            per_window[str(r)] = {
                "drift_sum": drift,
                "correlation_error": stat + DRIFT_TO_CORR * drift,
            }
        doc["drift"] = {"at": at, "per_window": per_window}
        doc["oracle_correlation_error"] = min(
            v["correlation_error"] for v in per_window.values()
        )
    if args.beta_sweep:
        doc["beta_sweep"] = [
            {"beta": b, "overhead": selection_overhead(config.schedule, b)}
            for b in _parse_float_list(args.beta_sweep)
        ]
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    _save_config(args, "bound")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftvote",
        description="Streaming weighted voting with adaptive history windows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_schedule_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--m", type=int, default=20, help="doubling schedule length (default 20)")
        p.add_argument("--sizes", help="explicit window sizes, comma-separated (overrides --m)")
        p.add_argument("--beta", type=float, default=0.1, help="drift tolerance (default 0.1)")
        p.add_argument("--delta", type=float, default=0.1, help="failure probability (default 0.1)")
        p.add_argument("--clip", default="0.1:0.9", help="accuracy clip band LO:HI (default 0.1:0.9)")

    def add_blocks_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--preset", choices=PRESETS, help="named synthetic stream layout")
        p.add_argument("--blocks", help='explicit layout "LEN:p1,p2,...;LEN:p1,p2,..."')
        p.add_argument("--block-len", type=int, default=5000, help="preset block unit (default 5000)")

    p = sub.add_parser("simulate", help="draw a synthetic stream and write it to a file")
    add_blocks_flags(p)
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--permute-prob", type=float, default=0.0,
                   help="per-step labeler shuffle probability (default 0)")
    p.add_argument("--format", choices=("jsonl", "csv"), help="default: by --out extension")
    p.add_argument("--out", required=True, help="output stream path")
    p.add_argument("--save-config", help="also write the invocation as JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("run", help="aggregate a stream file into per-step reports")
    p.add_argument("--input", required=True, help="stream path (JSONL or CSV)")
    p.add_argument("--strategy", default="adaptive", help="adaptive | majority | fixed:R")
    add_schedule_flags(p)
    p.add_argument("--abstain-seed", type=int, default=0,
                   help="seed for resolving abstentions (default 0)")
    p.add_argument("--out", required=True, help="output reports path (JSONL)")
    p.add_argument("--save-config", help="also write the invocation as JSON")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="summarize report files")
    p.add_argument("--reports", nargs="+", required=True, help="one or more report files")
    p.add_argument("--lookahead", type=int, default=ROLLING_LOOKAHEAD,
                   help=f"rolling accuracy lookahead (default {ROLLING_LOOKAHEAD})")
    p.add_argument("--out", default="-", help="summary JSON path, or - for stdout")
    p.add_argument("--series-dir", help="directory for per-run rolling-accuracy CSVs")
    p.add_argument("--save-config", help="also write the invocation as JSON")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bound", help="print theory constants and error budgets")
    p.add_argument("--n", type=int, required=True, help="number of labelers")
    add_schedule_flags(p)
    p.add_argument("--margin", type=float, help="known lower margin of accuracies above 1/2")
    add_blocks_flags(p)
    p.add_argument("--at", type=int, help="stream position for the drift terms (default: end)")
    p.add_argument("--beta-sweep", help="comma-separated betas to tabulate overhead for")
    p.add_argument("--out", default="-", help="JSON path, or - for stdout")
    p.add_argument("--save-config", help="also write the invocation as JSON")
    p.set_defaults(func=cmd_bound)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
