import json
from pathlib import Path

import pytest

from padded_logic.errors import InputError
from chc.sld import bounded_sld_refute, extract_run, run_to_assignment, sld_search
from chc.translate import to_chc
from listlang.formulas import Atom, eval_atom
from listlang.oracle import OracleBounds, oracle_solve
from listlang.terms import Assignment
from minsky.encode import START, encode_program, log_assignment
from minsky.machine import Halted, OutOfFuel, load_program, run_machine
from normalize.pipeline import normalize

MINSKY_DIR = Path(__file__).resolve().parents[1] / "bench" / "minsky"
HALTING = sorted(p.name for p in MINSKY_DIR.glob("*.json") if p.name != "zero_loop.json")


def _program(name):
    return load_program(json.loads((MINSKY_DIR / name).read_text(encoding="utf-8")))


def test_count_down_halts_with_register_logs():
    result = run_machine(_program("count_down.json"), fuel=20)
    assert isinstance(result, Halted)
    assert result.log0 == (0, 1, 2, 1, 0, 0)
    assert result.log1 == (0,) * 6
    assert result.steps == 5


def test_zero_loop_runs_out_of_fuel():
    assert isinstance(run_machine(_program("zero_loop.json"), fuel=50), OutOfFuel)


def test_encoding_accepts_exactly_the_run_log():
    program = _program("count_down.json")
    atom = encode_program(program)
    assert atom.automaton.initial == {START}
    halted = run_machine(program, fuel=20)
    assert eval_atom(atom, log_assignment(halted))
    wrong = Assignment({}, {"X0": (0, 1, 2, 1, 0), "X1": (0,) * 5})
    assert not eval_atom(atom, wrong)
    shifted = Assignment({}, {"X0": (0, 1, 2, 1, 0, 0), "X1": (0, 0, 0, 0, 0, 1)})
    assert not eval_atom(atom, shifted)


def test_enough_halting_programs_are_bundled():
    assert len(HALTING) >= 10
    for name in HALTING:
        assert isinstance(run_machine(_program(name), fuel=50), Halted)


@pytest.mark.timeout(300)
@pytest.mark.parametrize("name", [n for n in HALTING if n != "count_down.json"])
def test_oracle_witness_is_the_run_log(name):
    program = _program(name)
    halted = run_machine(program, fuel=50)
    top = max(halted.log0 + halted.log1)
    bounds = OracleBounds(max_len=len(halted.log0), values=tuple(range(max(top, 1) + 1)))
    result = oracle_solve(Atom(encode_program(program)), bounds)
    assert result.found
    assert result.assignment.lists == log_assignment(halted).lists


@pytest.mark.timeout(300)
def test_zero_loop_has_no_refutation_up_to_ten_letters():
    na = normalize(encode_program(_program("zero_loop.json")))
    result = sld_search(to_chc(na), max_depth=12, values=(0, 1))
    assert not result.found
    assert result.exhausted


@pytest.mark.slow
@pytest.mark.timeout(3600)
def test_zero_loop_has_no_witness_up_to_length_ten():
    atom = encode_program(_program("zero_loop.json"))
    result = oracle_solve(Atom(atom), OracleBounds(max_len=10, values=(0, 1), budget=5_000_000))
    assert not result.found and result.exhausted


@pytest.mark.timeout(300)
def test_refutation_of_the_encoding_replays_the_run():
    program = _program("count_down.json")
    na = normalize(encode_program(program))
    derivation = bounded_sld_refute(to_chc(na), max_depth=8, values=(0, 1, 2))
    assert derivation is not None
    word, params = extract_run(derivation)
    assert run_to_assignment(word, params, na).lists == log_assignment(run_machine(program, 20)).lists


def test_programs_must_be_closed():
    with pytest.raises(InputError):
        load_program({"lines": [0], "code": {"0": {"op": "inc", "reg": 0, "next": 1}}})
    with pytest.raises(InputError):
        load_program({"lines": [1], "code": {"1": {"op": "halt"}}})
    with pytest.raises(InputError):
        load_program({"lines": [0], "code": {"0": {"op": "inc", "reg": 2, "next": 0}}})
