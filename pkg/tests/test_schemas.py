import json
from pathlib import Path

import pytest

from padded_logic.errors import InputError
from chc.backends import load_backends
from chc.model_check import load_clause_file, load_model_file
from cli.instance import instance_files, load_instance, load_instance_payload
from listlang.oracle import OracleBounds, oracle_solve
from minsky.machine import load_program

ROOT = Path(__file__).resolve().parents[1]
INSTANCES = instance_files(ROOT / "bench" / "instances")


def _read(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_bundled_instances_exist():
    assert len(INSTANCES) >= 15


@pytest.mark.parametrize("path", INSTANCES, ids=lambda p: p.stem)
def test_bundled_instance_loads_and_agrees_with_small_search(path):
    inst = load_instance(path)
    assert inst.name == path.stem
    assert inst.spec.expected in ("SAT", "UNSAT")
    result = oracle_solve(inst.formula, OracleBounds(max_len=2, values=(-1, 0, 1)))
    assert result.exhausted or result.found
    assert result.found == (inst.spec.expected == "SAT")


def test_bundled_chc_files_validate():
    for name in ("sorted_model.json", "sorted_model_wrong.json"):
        load_model_file(_read(ROOT / "bench" / "chc" / name))
    clauses = load_clause_file(_read(ROOT / "bench" / "chc" / "sorted_clauses.json"))
    assert set(clauses.predicates) == {"P", "Q"}


def test_bundled_programs_and_backends_validate():
    for path in sorted((ROOT / "bench" / "minsky").glob("*.json")):
        load_program(_read(path))
    assert load_backends(ROOT / "config" / "backends.json")


@pytest.mark.parametrize(
    "payload",
    [
        {"name": "x", "formula": "sorted(X)"},
        {"version": 1, "name": "x", "formula": "sorted(X)", "expected": "MAYBE"},
        {"version": 1, "name": "x", "formula": "sorted(X)", "extra": True},
        {"version": 1, "name": "x", "formula": "sorted(x)"},
        {
            "version": 1,
            "name": "x",
            "formula": "sorted(X)",
            "predicates": {
                "sorted": {
                    "signature": ["list"],
                    "automaton": {"k": 1, "states": ["q"], "initial": ["q"], "final": ["q"], "transitions": []},
                }
            },
        },
    ],
)
def test_invalid_instances_are_input_errors(payload):
    with pytest.raises(InputError):
        load_instance_payload(payload)
