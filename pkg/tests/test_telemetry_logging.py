import json
import logging
from pathlib import Path

from chc import pipeline
from chc.model_check import check_files
from chc.pipeline import SolveOptions
from cli.bench import run_bench
from listlang.oracle import OracleBounds
from listlang.parse import parse_formula
from telemetry.logger import EVENTS_ENV, events_path, log_event


def test_events_path_follows_environment(tmp_path, monkeypatch):
    target = tmp_path / "nested" / "events.log"
    monkeypatch.setenv(EVENTS_ENV, str(target))
    assert events_path() == target
    log_event({"event": "ping", "value": 1})
    line = json.loads(target.read_text(encoding="utf-8"))
    assert line["event"] == "ping"
    assert line["timestamp"].endswith("Z")


def test_telemetry_logging_cycle(tmp_path, _events_log):
    repo_root = Path(__file__).resolve().parents[1]
    instances = tmp_path / "instances"
    instances.mkdir()
    (instances / "sat.json").write_text(
        json.dumps({"version": 1, "name": "sat", "formula": "member(0, X)", "expected": "SAT"}), encoding="utf-8"
    )
    bounds = OracleBounds(max_len=2, values=(0, 1))
    run_bench(instances, [None], bounds)
    chc = repo_root / "bench" / "chc"
    check_files(
        json.loads((chc / "sorted_clauses.json").read_text(encoding="utf-8")),
        json.loads((chc / "sorted_model_wrong.json").read_text(encoding="utf-8")),
        SolveOptions(bounds=bounds),
    )

    with open(_events_log, "r", encoding="utf-8") as f:
        events = [json.loads(line) for line in f]
    kinds = [e["event"] for e in events]
    assert kinds.count("bench_row") == 1
    assert kinds.count("model_check") == 5
    assert kinds.count("solve") == 6
    assert any(e["event"] == "model_check" and e["status"] == "INVALID" for e in events)


def test_failing_event_log_is_reported_at_debug_level(monkeypatch, caplog):
    def broken(event):
        raise OSError("disk full")

    monkeypatch.setattr(pipeline, "log_event", broken)
    caplog.set_level(logging.DEBUG, logger="chc.pipeline")
    outcome = pipeline.solve_formula(parse_formula("member(0, X)"), SolveOptions(bounds=OracleBounds(1, (0,))))
    assert outcome.verdict == "SAT"
    failures = [r for r in caplog.records if r.getMessage() == "event log failed"]
    assert failures and failures[0].exc_info[0] is OSError
