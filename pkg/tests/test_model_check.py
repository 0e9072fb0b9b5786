import json
from pathlib import Path

import pytest

from padded_logic.errors import InputError
from chc.model_check import INVALID, UNKNOWN, check_files, interpret_model, load_model_file, parse_clause
from chc.pipeline import SolveOptions
from listlang.oracle import OracleBounds

CHC_DIR = Path(__file__).resolve().parents[1] / "bench" / "chc"
OPTIONS = SolveOptions(bounds=OracleBounds(max_len=3, values=(0, 1)))


def _load(name):
    return json.loads((CHC_DIR / name).read_text(encoding="utf-8"))


def test_sorted_model_has_no_counterexample():
    reports = check_files(_load("sorted_clauses.json"), _load("sorted_model.json"), OPTIONS)
    assert len(reports) == 5
    # without a backend valid clauses stay undecided
    assert all(r.status == UNKNOWN for r in reports)


def test_wrong_model_fails_on_the_query_clause():
    reports = check_files(_load("sorted_clauses.json"), _load("sorted_model_wrong.json"), OPTIONS)
    invalid = [r for r in reports if r.status == INVALID]
    assert [r.index for r in invalid] == [4]
    assert invalid[0].witness["lists"]["X"] == [0]
    assert invalid[0].source == "oracle"
    assert "INVALID" in invalid[0].show()


def test_model_must_map_every_predicate_variable():
    model = load_model_file({"version": 1, "model": {"P": {"library": "sorted"}}})
    with pytest.raises(InputError):
        interpret_model(model, {"P": ["list"], "Q": ["list"]})
    wrong_sort = load_model_file({"version": 1, "model": {"P": {"library": "member"}}})
    with pytest.raises(InputError):
        interpret_model(wrong_sort, {"P": ["list"]})


def test_model_entries_need_exactly_one_form():
    with pytest.raises(InputError):
        load_model_file({"version": 1, "model": {"P": {"library": "sorted", "formula": "true"}}})
    with pytest.raises(InputError):
        load_model_file({"version": 1, "model": {"P": {}}})


def test_clause_shape_is_checked():
    theta = interpret_model(load_model_file(_load("sorted_model.json")), {"P": ["list"], "Q": ["list"]})
    assert parse_clause("false <= P(X)", theta).head is None
    with pytest.raises(InputError):
        parse_clause("P(X)", theta)
    with pytest.raises(InputError):
        parse_clause("P(X) && Q(X) <= true", theta)
