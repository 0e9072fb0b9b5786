"""Benchmark harness: every instance against every selected backend."""

from __future__ import annotations

import csv
import json
import logging
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from padded_logic.errors import InputError
from chc.backends import SAT, UNSAT, BackendConfig, BackendUnavailable
from chc.pipeline import SolveOptions, SoundnessViolation, solve_formula
from cli.instance import instance_files, load_instance
from listlang.oracle import OracleBounds
from telemetry.logger import log_event

try:
    import psutil  # type: ignore
except ImportError:  # pragma: no cover
    psutil = None

logger = logging.getLogger(__name__)

ORACLE_ONLY = "none"
SKIPPED = "SKIPPED"
ERROR = "ERROR"
DISAGREE = "DISAGREE"
CSV_COLUMNS = ("instance", "verdict", "expected", "source", "time_ms")


@dataclass
class BenchRow:
    instance: str
    backend: str
    verdict: str
    expected: str
    source: str
    time_ms: float
    note: str = ""

    @property
    def solved(self) -> bool:
        return self.verdict in (SAT, UNSAT)

    @property
    def wrong(self) -> bool:
        return self.solved and bool(self.expected) and self.verdict != self.expected


def run_instance(path: Path, backend: Optional[BackendConfig], bounds: OracleBounds) -> BenchRow:
    backend_name = backend.name if backend else ORACLE_ONLY
    start = time.monotonic()
    try:
        inst = load_instance(path)
    except InputError as exc:
        return BenchRow(path.stem, backend_name, ERROR, "", "none", 0.0, str(exc))
    expected = inst.spec.expected or ""
    try:
        outcome = solve_formula(inst.formula, SolveOptions(backend=backend, bounds=bounds), name=inst.name)
    except BackendUnavailable as exc:
        logger.warning("%s skipped: %s", inst.name, exc)
        return BenchRow(inst.name, backend_name, SKIPPED, expected, "none", 0.0, str(exc))
    except InputError as exc:
        logger.warning("%s failed: %s", inst.name, exc)
        return BenchRow(inst.name, backend_name, ERROR, expected, "none", 0.0, str(exc))
    except SoundnessViolation as exc:
        logger.error("%s: %s", inst.name, exc)
        return BenchRow(inst.name, backend_name, DISAGREE, expected, "backend", 0.0, str(exc))
    elapsed = (time.monotonic() - start) * 1000
    return BenchRow(inst.name, backend_name, outcome.verdict, expected, outcome.source, round(elapsed, 1), outcome.diagnostic)


def _worker(path: str, backend: Optional[Dict[str, Any]], bounds: OracleBounds) -> Dict[str, Any]:
    config = BackendConfig.model_validate(backend) if backend else None
    return asdict(run_instance(Path(path), config, bounds))


def default_jobs() -> int:
    if psutil is not None:
        return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
    return os.cpu_count() or 1


def run_bench(
    directory: Path,
    backends: Sequence[Optional[BackendConfig]],
    bounds: OracleBounds = OracleBounds(),
    jobs: int = 1,
) -> List[BenchRow]:
    paths = instance_files(directory)
    tasks = [(p, b) for b in backends for p in paths]
    if jobs <= 1 or len(tasks) <= 1:
        rows = [run_instance(p, b, bounds) for p, b in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, default_jobs())) as pool:
            futures = [pool.submit(_worker, str(p), b.model_dump() if b else None, bounds) for p, b in tasks]
            rows = [BenchRow(**f.result()) for f in futures]
    for row in rows:
        try:
            log_event({"event": "bench_row", **asdict(row)})
        except Exception:
            logger.debug("event log failed", exc_info=True)
    return rows


def summarize(rows: Sequence[BenchRow]) -> Dict[str, Dict[str, Any]]:
    summary: Dict[str, Dict[str, Any]] = {}
    for backend in dict.fromkeys(r.backend for r in rows):
        mine = [r for r in rows if r.backend == backend]
        solved = [r for r in mine if r.solved]
        summary[backend] = {
            "instances": len(mine),
            "solved": len(solved),
            "skipped": sum(1 for r in mine if r.verdict == SKIPPED),
            "wrong": sum(1 for r in mine if r.wrong),
            "errors": sum(1 for r in mine if r.verdict == ERROR),
            "disagreements": sum(1 for r in mine if r.verdict == DISAGREE),
            "mean_time_ms": round(statistics.mean(r.time_ms for r in solved), 1) if solved else None,
        }
    return summary


def write_reports(rows: Sequence[BenchRow], out: Path) -> Dict[str, Dict[str, Any]]:
    out.mkdir(parents=True, exist_ok=True)
    for backend in dict.fromkeys(r.backend for r in rows):
        with open(out / f"{backend}.csv", "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_COLUMNS)
            for r in rows:
                if r.backend == backend:
                    writer.writerow([r.instance, r.verdict, r.expected, r.source, r.time_ms])
    summary = summarize(rows)
    with open(out / "summary.json", "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
    return summary


def format_table(rows: Sequence[BenchRow]) -> str:
    if not rows:
        return "(no instances)\n"
    width = max(len(r.instance) for r in rows)
    lines = [f"{'instance':<{width}}  {'backend':<10} {'verdict':<8} {'expected':<8} {'source':<8} time_ms"]
    for r in rows:
        mark = "  !" if r.wrong else ""
        lines.append(
            f"{r.instance:<{width}}  {r.backend:<10} {r.verdict:<8} {r.expected or '-':<8} {r.source:<8} {r.time_ms:.1f}{mark}"
        )
    for backend, s in summarize(rows).items():
        mean = "-" if s["mean_time_ms"] is None else f"{s['mean_time_ms']:.1f}"
        lines.append(f"# {backend}: solved {s['solved']}/{s['instances']}, mean {mean} ms, wrong {s['wrong']}")
    return "\n".join(lines) + "\n"
