"""Reading and writing vote streams and per-step reports.

Two stream formats:

* JSONL (canonical): one object per line, ``{"votes": [...], "label": ...,
  "t": ...}`` with ``label``/``t`` optional.
* CSV: a header row; every column except ``label`` and ``t`` is a vote
  column, read in header order.  Written files use ``votes_1..votes_n``.

Votes are -1, 0 (abstain), or +1; labels are +/-1.  Reports are always
JSONL with fields ``t``, ``window``, ``p_hat``, ``weights``,
``prediction``, ``truth``, ``correct``, ``stop_reason`` (absent fields
were not produced by the strategy).  Floats round-trip exactly through
JSON's shortest-repr encoding.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .aggregate import StepReport
from .driftgen import Stream


class StreamFormatError(ValueError):
    """A stream or report file violates the format contract."""


@dataclass(frozen=True)
class StreamRecord:
    """One parsed stream line: raw votes, optional label, optional step."""

    votes: tuple[int, ...]
    label: int | None = None
    t: int | None = None


_VOTE_VALUES = (-1, 0, 1)
_LABEL_VALUES = (-1, 1)


def _bad(path, lineno: int, msg: str) -> StreamFormatError:
    return StreamFormatError(f"{path}:{lineno}: {msg}")


def _check_votes(votes, path, lineno: int) -> tuple[int, ...]:
    if not isinstance(votes, (list, tuple)) or not votes:
        raise _bad(path, lineno, "votes must be a nonempty list")
    out = []
    for x in votes:
        if isinstance(x, bool) or not isinstance(x, int) or x not in _VOTE_VALUES:
            raise _bad(path, lineno, f"vote values must be -1, 0, or 1, got {x!r}")
        out.append(x)
    return tuple(out)


def _check_label(label, path, lineno: int) -> int | None:
    if label is None:
        return None
    if isinstance(label, bool) or not isinstance(label, int) or label not in _LABEL_VALUES:
        raise _bad(path, lineno, f"label must be -1 or 1, got {label!r}")
    return label


def _read_stream_jsonl(path) -> list[StreamRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as err:
                raise _bad(path, lineno, f"bad JSON: {err}") from None
            if not isinstance(obj, dict) or "votes" not in obj:
                raise _bad(path, lineno, "expected an object with a 'votes' field")
            t = obj.get("t")
            if t is not None and (isinstance(t, bool) or not isinstance(t, int)):
                raise _bad(path, lineno, f"t must be an int, got {t!r}")
            records.append(
                StreamRecord(
                    votes=_check_votes(obj["votes"], path, lineno),
                    label=_check_label(obj.get("label"), path, lineno),
                    t=t,
                )
            )
    return records


def _read_stream_csv(path) -> list[StreamRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return []
        vote_cols = [i for i, name in enumerate(header) if name not in ("label", "t")]
        label_col = header.index("label") if "label" in header else None
        t_col = header.index("t") if "t" in header else None
        if not vote_cols:
            raise _bad(path, 1, "no vote columns in header")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise _bad(path, lineno, f"expected {len(header)} columns, got {len(row)}")

            def cell_int(i: int, what: str):
                text = row[i].strip()
                if text == "":
                    return None
                try:
                    return int(text)
                except ValueError:
                    raise _bad(path, lineno, f"{what} must be an int, got {row[i]!r}") from None

            raw_votes = [cell_int(i, f"vote column {header[i]!r}") for i in vote_cols]
            if any(x is None for x in raw_votes):
                raise _bad(path, lineno, "empty vote cell")
            label = cell_int(label_col, "label") if label_col is not None else None
            t = cell_int(t_col, "t") if t_col is not None else None
            records.append(
                StreamRecord(
                    votes=_check_votes(raw_votes, path, lineno),
                    label=_check_label(label, path, lineno),
                    t=t,
                )
            )
    return records


def read_stream(path) -> list[StreamRecord]:
    """Parse a stream file (JSONL or CSV, sniffed from the first line).

    All records must have the same number of votes; format violations
    raise :class:`StreamFormatError` naming the file and line.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        head = ""
        for line in fh:
            if line.strip():
                head = line.lstrip()
                break
    records = _read_stream_jsonl(path) if head.startswith("{") else _read_stream_csv(path)
    widths = {len(rec.votes) for rec in records}
    if len(widths) > 1:
        raise StreamFormatError(f"{path}: inconsistent labeler counts {sorted(widths)}")
    return records


def write_stream(path, records, fmt: str | None = None) -> None:
    """Write stream records (or a :class:`Stream`) as JSONL or CSV.

    ``fmt`` defaults to the file extension (".csv" means CSV, anything
    else JSONL).
    """
    path = Path(path)
    if isinstance(records, Stream):
        records = stream_records(records)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown stream format {fmt!r}")
    records = list(records)
    if fmt == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for rec in records:
                obj: dict = {"votes": list(rec.votes)}
                if rec.label is not None:
                    obj["label"] = rec.label
                if rec.t is not None:
                    obj["t"] = rec.t
                fh.write(json.dumps(obj) + "\n")
        return
    n = len(records[0].votes) if records else 0
    with_label = any(rec.label is not None for rec in records)
    with_t = any(rec.t is not None for rec in records)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        header = [f"votes_{i + 1}" for i in range(n)]
        header += ["label"] if with_label else []
        header += ["t"] if with_t else []
        writer.writerow(header)
        for rec in records:
            row = list(rec.votes)
            if with_label:
                row.append("" if rec.label is None else rec.label)
            if with_t:
                row.append("" if rec.t is None else rec.t)
            writer.writerow(row)


def stream_records(stream: Stream) -> list[StreamRecord]:
    """View a :class:`Stream` as records (block annotations are dropped)."""
    truth = stream.truth
    return [
        StreamRecord(
            votes=tuple(int(x) for x in stream.votes[i]),
            label=int(truth[i]) if truth is not None else None,
        )
        for i in range(len(stream))
    ]


def records_to_arrays(records) -> tuple[np.ndarray, np.ndarray | None]:
    """Stack records into a (T, n) vote matrix plus labels.

    Labels are returned only when every record carries one; otherwise the
    second element is None.
    """
    records = list(records)
    if not records:
        raise ValueError("empty stream")
    votes = np.array([rec.votes for rec in records], dtype=np.int8)
    if all(rec.label is not None for rec in records):
        labels = np.array([rec.label for rec in records], dtype=np.int8)
    else:
        labels = None
    return votes, labels


_REPORT_FIELDS = ("t", "window", "p_hat", "weights", "prediction", "truth", "correct", "stop_reason")


def write_reports(path, reports) -> None:
    """Write per-step reports as JSONL, omitting absent fields."""
    with open(path, "w", encoding="utf-8") as fh:
        for rep in reports:
            obj = {}
            for name in _REPORT_FIELDS:
                value = getattr(rep, name)
                if value is None:
                    continue
                obj[name] = list(value) if isinstance(value, tuple) else value
            fh.write(json.dumps(obj) + "\n")


def read_reports(path) -> list[StepReport]:
    """Read reports written by :func:`write_reports`; exact round-trip."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as err:
                raise _bad(path, lineno, f"bad JSON: {err}") from None
            if not isinstance(obj, dict) or "t" not in obj or "prediction" not in obj:
                raise _bad(path, lineno, "expected an object with 't' and 'prediction'")
            kw = {name: obj.get(name) for name in _REPORT_FIELDS}
            for name in ("p_hat", "weights"):
                if kw[name] is not None:
                    kw[name] = tuple(float(x) for x in kw[name])
            out.append(StepReport(**kw))
    return out


def write_series_csv(path, values, start: int = 1) -> None:
    """Write a per-step series as two-column CSV (step, value)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "value"])
        for i, value in enumerate(values):
            writer.writerow([start + i, repr(float(value))])
