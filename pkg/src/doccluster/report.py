"""Timed runs, per-cluster manifests and the side-by-side comparison table."""

from __future__ import annotations

import datetime as dt
import json
import os
import re
import shutil
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator

from .corpus_io import Corpus
from .errors import ReportError
from .kmeans import ClusterModel
from .similarity import MeasureKind

MANIFEST_NAME = "manifest.tsv"
_CLOCK_RE = re.compile(r"^\s*(\d{1,2})\s*:\s*(\d{1,2})\s*:\s*(\d{1,2})\s*([AaPp][Mm])?\s*$")


@dataclass
class TimedRun:
    measure: MeasureKind
    start_wall: dt.datetime
    end_wall: dt.datetime
    elapsed_seconds: int
    elapsed_ms: int
    model: ClusterModel | None = None
    purity: float | None = None

    @property
    def elapsed(self) -> float:
        return self.elapsed_ms / 1000.0


@dataclass
class RunReport:
    corpus_root: str
    n_docs: int
    k: int
    runs: list[TimedRun]
    empty_docs: list[str] = field(default_factory=list)
    vocab_size: int | None = None
    settings: dict[str, Any] = field(default_factory=dict)
    phase_ms: dict[str, int] = field(default_factory=dict)
    load_warnings: list[tuple[str, str]] = field(default_factory=list)
    threads: int = 1

    def comparison(self) -> dict[str, dict[str, Any]]:
        out = {}
        for run in self.runs:
            m = run.model
            out[run.measure.value] = {
                "total_seconds": run.elapsed_seconds,
                "iterations": m.iterations_run if m else None,
                "converged": m.converged if m else None,
                "objective": m.objective if m else None,
            }
        return out


class Stopwatch:
    """Wall-clock stamps for display, monotonic clock for the elapsed value."""

    def __init__(self):
        self.start_wall = self.end_wall = None
        self._t0 = self._t1 = None

    def __enter__(self) -> "Stopwatch":
        self.start_wall = dt.datetime.now().replace(microsecond=0)
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self._t1 = time.perf_counter()
        self.end_wall = dt.datetime.now().replace(microsecond=0)

    @property
    def elapsed_ms(self) -> int:
        return int(round((self._t1 - self._t0) * 1000))

    @property
    def elapsed_seconds(self) -> int:
        return int(self._t1 - self._t0)


@contextmanager
def timed(measure: MeasureKind) -> Iterator[TimedRun]:
    """Time the enclosed block; fill ``run.model`` inside it."""
    run = TimedRun(measure, dt.datetime.now(), dt.datetime.now(), 0, 0)
    with Stopwatch() as sw:
        yield run
    run.start_wall, run.end_wall = sw.start_wall, sw.end_wall
    run.elapsed_seconds, run.elapsed_ms = sw.elapsed_seconds, sw.elapsed_ms


def parse_clock(value: str | dt.time | dt.datetime) -> dt.time:
    """Parse ``H:MM:SS`` with optional AM/PM; tolerates '9: 25:59 PM' and '9:45:7 PM'."""
    if isinstance(value, dt.datetime):
        return value.time()
    if isinstance(value, dt.time):
        return value
    m = _CLOCK_RE.match(value)
    if not m:
        raise ReportError(f"unrecognised clock time {value!r}")
    h, mi, s = (int(g) for g in m.groups()[:3])
    ampm = (m.group(4) or "").upper()
    if ampm:
        if not 1 <= h <= 12:
            raise ReportError(f"hour {h} out of range for a 12-hour clock in {value!r}")
        h = h % 12 + (12 if ampm == "PM" else 0)
    try:
        return dt.time(h, mi, s)
    except ValueError as exc:
        raise ReportError(f"invalid clock time {value!r}: {exc}") from None


def elapsed_between(start, end) -> int:
    """Whole seconds from ``start`` to ``end`` on the same day."""
    a, b = parse_clock(start), parse_clock(end)
    secs = lambda t: t.hour * 3600 + t.minute * 60 + t.second
    if secs(b) < secs(a):
        raise ReportError(f"end time {b} precedes start time {a} (no midnight wraparound)")
    return secs(b) - secs(a)


def format_clock(t: dt.datetime | dt.time) -> str:
    hour = t.hour % 12 or 12
    return f"{hour}:{t.minute:02d}:{t.second:02d} {'PM' if t.hour >= 12 else 'AM'}"


def write_manifests(model: ClusterModel, corpus: Corpus | None, out_dir: str | os.PathLike,
                    mode: str = "file", *, link: bool = False, force: bool = False) -> dict[str, Any]:
    """Write the cluster membership of ``model`` under ``out_dir``.

    ``mode="file"`` writes a single ``manifest.tsv`` of ``cluster<TAB>doc_id``
    lines grouped under a ``# ClusterN<TAB>size`` header per cluster.
    ``mode="folders"`` creates ``Cluster0`` .. ``Cluster{k-1}`` and copies
    (or symlinks) each member document into its folder, keeping the
    document's relative path.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ReportError(f"cannot create output directory {str(out)!r}: {exc.strerror}") from None
    if not os.access(out, os.W_OK):
        raise ReportError(f"output directory {str(out)!r} is not writable")

    clusters = {j: sorted(model.members(j)) for j in range(model.k)}
    if mode == "file":
        path = out / MANIFEST_NAME
        if path.exists() and not force:
            raise ReportError(f"{path} already exists (use --force to overwrite)")
        lines = []
        for j in range(model.k):
            lines.append(f"# Cluster{j}\t{len(clusters[j])}")
            lines.extend(f"{j}\t{doc}" for doc in clusters[j])
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif mode == "folders":
        if corpus is None:
            raise ReportError("folders mode needs the corpus to copy documents from")
        clashes = sorted(p.name for p in out.glob("Cluster*") if re.fullmatch(r"Cluster\d+", p.name))
        if clashes and not force:
            raise ReportError(f"{out} already contains {', '.join(clashes)} (use --force to overwrite)")
        for name in clashes:
            target = out / name
            shutil.rmtree(target) if target.is_dir() and not target.is_symlink() else target.unlink()
        root = Path(corpus.root).resolve()
        for j in range(model.k):
            folder = out / f"Cluster{j}"
            folder.mkdir()
            for doc in clusters[j]:
                dest = folder / doc
                dest.parent.mkdir(parents=True, exist_ok=True)
                if link:
                    dest.symlink_to(root / doc)
                else:
                    shutil.copyfile(root / doc, dest)
    else:
        raise ReportError(f"unknown manifest mode {mode!r}")
    return {"mode": mode, "path": str(out), "clusters": {f"Cluster{j}": len(v) for j, v in clusters.items()}}


def _verdict(runs: list[TimedRun]) -> str:
    ordered = sorted(runs, key=lambda r: r.elapsed_ms)
    fast, slow = ordered[0], ordered[-1]
    if slow.elapsed_ms - fast.elapsed_ms < 1000:
        return "Verdict: tie (totals within 1 s)"
    margin = (slow.elapsed_ms - fast.elapsed_ms) / 1000.0
    return f"Verdict: {fast.measure.value} is faster by {margin:g} s"


def render_comparison(report: RunReport) -> str:
    if not report.runs:
        raise ReportError("nothing to render: report has no runs")

    def cell(run: TimedRun, row: str) -> str:
        m = run.model
        if row == "Start Time":
            return format_clock(run.start_wall)
        if row == "End Time":
            return format_clock(run.end_wall)
        if row == "Total Time (s)":
            return str(run.elapsed_seconds)
        if m is None:
            return "-"
        if row == "Iterations":
            return str(m.iterations_run)
        if row == "Converged":
            return "yes" if m.converged else "no"
        return f"{m.objective:.6f}"

    rows = ["Start Time", "End Time", "Total Time (s)", "Iterations", "Converged", "Objective"]
    if any(r.purity is not None for r in report.runs):
        rows.append("Purity")
    header = ["Time"] + [r.measure.label for r in report.runs]
    body = [[name] + [(f"{r.purity:.4f}" if r.purity is not None else "-") if name == "Purity"
                      else cell(r, name) for r in report.runs] for name in rows]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    fmt = lambda line: "  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip()
    lines = [fmt(header), "  ".join("-" * w for w in widths)] + [fmt(b) for b in body]
    if len(report.runs) > 1:
        lines.append(_verdict(report.runs))
    return "\n".join(lines) + "\n"


def report_to_dict(report: RunReport) -> dict[str, Any]:
    """JSON-ready form. Every wall-clock or elapsed value sits under a ``timing`` key."""
    runs = []
    for run in report.runs:
        m = run.model
        entry: dict[str, Any] = {
            "measure": run.measure.value,
            "timing": {
                "start_time": format_clock(run.start_wall),
                "end_time": format_clock(run.end_wall),
                "start_iso": run.start_wall.isoformat(),
                "end_iso": run.end_wall.isoformat(),
                "elapsed_seconds": run.elapsed_seconds,
                "elapsed_ms": run.elapsed_ms,
            },
        }
        if m is not None:
            entry.update({
                "iterations": m.iterations_run,
                "converged": m.converged,
                "objective": m.objective,
                "objective_trace": list(m.objective_trace),
                "cluster_sizes": m.sizes(),
                "clusters": {f"Cluster{j}": m.members(j) for j in range(m.k)},
            })
        if run.purity is not None:
            entry["purity"] = run.purity
        runs.append(entry)

    comparison = report.comparison()
    for name, row in comparison.items():
        row["timing"] = {"total_seconds": row.pop("total_seconds")}
    out: dict[str, Any] = {
        "corpus_root": report.corpus_root,
        "n_docs": report.n_docs,
        "k": report.k,
        "vocab_size": report.vocab_size,
        "settings": report.settings,
        "empty_docs": report.empty_docs,
        "load_warnings": [list(w) for w in report.load_warnings],
        "runs": runs,
        "comparison": comparison,
        "timing": {"phase_ms": report.phase_ms, "threads": report.threads},
    }
    if len(report.runs) > 1:
        out["timing"]["verdict"] = _verdict(report.runs)
    return out


def strip_timing(obj: Any) -> Any:
    """Drop every ``timing`` entry, leaving the fields that must be reproducible."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "timing"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def write_report_json(report: RunReport, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2, sort_keys=True)
        fh.write("\n")
