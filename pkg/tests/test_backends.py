import json
import sys

import pytest

from padded_logic.errors import InputError
from chc.backends import (
    BACKENDS_ENV,
    BackendConfig,
    BackendUnavailable,
    get_backend,
    interpret_backend_result,
    load_backends,
    parse_answer,
    parse_backends,
    run_backend,
)
from chc.pipeline import SolveOptions, compile_formula, solve_formula
from listlang.oracle import OracleBounds
from listlang.parse import parse_formula

try:
    import z3  # noqa: F401

    HAVE_Z3 = True
except ImportError:
    HAVE_Z3 = False


def _fake_solver(tmp_path, body: str) -> BackendConfig:
    script = tmp_path / "fake_solver.py"
    script.write_text(body, encoding="utf-8")
    return BackendConfig(name="fake", command=[sys.executable, str(script), "{file}"], timeout_s=10)


def _system():
    return compile_formula(parse_formula("sorted(X) && member(1, X)")).system


def test_parse_answer_reads_the_last_line():
    assert parse_answer("sat\n") == ("sat", "")
    assert parse_answer("(warning)\nunknown\n") == ("unknown", "")
    assert parse_answer("")[0] == "error"
    answer, note = parse_answer("segmentation fault")
    assert answer == "error" and "segmentation fault" in note


def test_backend_answers_map_to_formula_verdicts():
    assert interpret_backend_result("unsat") == "SAT"
    assert interpret_backend_result("sat") == "UNSAT"
    for answer in ("unknown", "timeout", "error", "garbage"):
        assert interpret_backend_result(answer) == "UNKNOWN"


def test_process_backend_gets_the_horn_script(tmp_path):
    config = _fake_solver(
        tmp_path,
        "import sys\n"
        "text = open(sys.argv[1]).read()\n"
        "print('unsat' if text.startswith('(set-logic HORN)') else 'sat')\n",
    )
    answer = run_backend(config, _system())
    assert answer.backend == "fake"
    assert answer.answer == "unsat"


def test_process_backend_timeout(tmp_path):
    config = _fake_solver(tmp_path, "import time\ntime.sleep(30)\n").model_copy(update={"timeout_s": 0.5})
    answer = run_backend(config, _system())
    assert answer.answer == "timeout"
    assert interpret_backend_result(answer.answer) == "UNKNOWN"


def test_crashing_backend_is_an_error(tmp_path):
    config = _fake_solver(tmp_path, "import sys\nsys.stderr.write('boom')\nsys.exit(3)\n")
    answer = run_backend(config, _system())
    assert answer.answer == "error"
    assert "boom" in answer.diagnostic


def test_missing_or_disabled_backend_is_unavailable():
    missing = BackendConfig(name="ghost", command=["sarsolve-no-such-solver", "{file}"])
    with pytest.raises(BackendUnavailable):
        run_backend(missing, _system())
    disabled = BackendConfig(name="off", command=["sarsolve-no-such-solver", "{file}"], enabled=False)
    with pytest.raises(BackendUnavailable):
        run_backend(disabled, _system())


def test_process_command_needs_a_file_placeholder():
    with pytest.raises(ValueError):
        BackendConfig(name="bad", command=["z3"])


def test_bundled_backend_config_loads():
    backends = load_backends()
    assert {"z3", "spacer", "eldarica", "hoice"} <= set(backends)
    assert backends["z3"].kind == "z3"
    with pytest.raises(InputError):
        get_backend("nonexistent")


def test_backend_config_override_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "backends.json"
    path.write_text(
        json.dumps({"version": 1, "backends": [{"name": "mine", "command": ["mine", "{file}"], "timeout_s": 5}]}),
        encoding="utf-8",
    )
    monkeypatch.setenv(BACKENDS_ENV, str(path))
    assert get_backend("mine").timeout_s == 5
    with pytest.raises(InputError):
        parse_backends({"version": 2, "backends": []})
    with pytest.raises(InputError):
        parse_backends({"version": 1, "backends": [{"name": "x", "command": ["x", "{file}"], "color": "red"}]})


def test_solve_uses_backend_answer_without_oracle(tmp_path):
    config = _fake_solver(tmp_path, "print('sat')\n")
    phi = parse_formula("sorted(cons(1, X)) && member(0, X)")
    outcome = solve_formula(phi, SolveOptions(backend=config, use_oracle=False))
    assert outcome.verdict == "UNSAT"
    assert outcome.source == "backend"


def test_solve_events_are_logged(tmp_path, _events_log):
    config = _fake_solver(tmp_path, "print('unsat')\n")
    solve_formula(parse_formula("sorted(X) && member(1, X)"), SolveOptions(backend=config, bounds=OracleBounds(2, (0, 1))))
    events = [json.loads(line) for line in _events_log.read_text(encoding="utf-8").splitlines()]
    assert [e["event"] for e in events] == ["backend_call", "solve"]
    assert events[-1]["verdict"] == "SAT"


@pytest.mark.skipif(not HAVE_Z3, reason="z3-solver not installed")
def test_z3_refutes_a_satisfiable_formula():
    config = BackendConfig(name="z3", kind="z3", timeout_s=30)
    answer = run_backend(config, _system())
    assert answer.answer == "unsat"
