import pytest

from padded_logic.codec import guard_from_json, guard_to_json
from padded_logic.errors import ContractViolation, InputError
from padded_logic.guards import (
    FALSE,
    TRUE,
    Add,
    Cmp,
    Const,
    Not,
    check_arity,
    cmp,
    conj,
    disj,
    eval_guard,
    ispad,
    neg,
    param,
    reindex,
    show_guard,
    substitute,
    substitute_tracks,
    track,
)
from padded_logic.parse import parse_guard
from padded_logic.probe import probe_satisfiable
from padded_logic.values import PAD, show_value


def test_comparison_with_pad_is_false_but_negation_is_classical():
    lt = Cmp("<", Const(1), track(0))
    ge = Cmp(">=", Const(1), track(0))
    assert eval_guard(lt, [PAD], []) is False
    assert eval_guard(ge, [PAD], []) is False
    assert eval_guard(Not(ge), [PAD], []) is True
    assert eval_guard(ispad(track(0)), [PAD], []) is True


def test_arithmetic_propagates_pad():
    phi = cmp("=", Add(track(0), Const(1)), track(1))
    assert eval_guard(phi, [2, 3], [])
    assert not eval_guard(phi, [PAD, 3], [])
    assert not eval_guard(phi, [2, PAD], [])


def test_params_are_read_by_index():
    phi = parse_guard("l0 = x1 and x0 < x1")
    assert eval_guard(phi, [5], [4, 5])
    assert not eval_guard(phi, [5], [6, 5])


def test_out_of_range_track_raises():
    with pytest.raises(ContractViolation):
        eval_guard(cmp("=", track(3), 0), [1, 2], [])
    with pytest.raises(ContractViolation):
        check_arity(parse_guard("x2 > 0"), 1, 2)


def test_smart_constructors_simplify_units_and_complements():
    a = cmp("<", track(0), 3)
    assert conj(TRUE, a) == a
    assert conj(a, FALSE) == FALSE
    assert conj(a, neg(a)) == FALSE
    assert disj(a, neg(a)) == TRUE
    assert disj(FALSE, a) == a
    assert neg(neg(a)) == a
    assert conj() == TRUE and disj() == FALSE


def test_substitute_tracks_and_params():
    phi = parse_guard("l0 < l1 + x0")
    out = substitute(phi, tracks={1: track(0)}, params={0: Const(2)})
    assert show_guard(out) == "l0 < l0 + 2"
    assert show_guard(reindex(phi, {0: 2, 1: 3}, {0: 1})) == "l2 < l3 + x1"
    with pytest.raises(ContractViolation):
        substitute_tracks(phi, {0: track(5)})


def test_parse_show_is_stable():
    for text in [
        "l0 <= l1",
        "not ispad(l0) and l0 = x0",
        "ispad(l1) or l1 > 0",
        "l2 = l0 + 1 and l3 = l1",
        "l0 != -3",
        "2 * l0 = l1 - 1",
        "not (l0 = 0 or l1 = 0)",
    ]:
        phi = parse_guard(text)
        assert parse_guard(show_guard(phi)) == phi


def test_parse_accepts_c_style_connectives():
    assert parse_guard("!(l0 == 1) && l1 >= 0 || true") == TRUE
    assert parse_guard("l0 = 1 && false") == FALSE


def test_parse_rejects_nonlinear_and_garbage():
    with pytest.raises(InputError):
        parse_guard("l0 * l1 = 2")
    with pytest.raises(InputError):
        parse_guard("l0 < ")
    with pytest.raises(InputError):
        parse_guard("y0 = 1")
    with pytest.raises(InputError):
        parse_guard("l0 = 1 $")


def test_json_codec_accepts_all_three_forms():
    phi = parse_guard("not ispad(l0) and l0 < x0 + 1")
    assert guard_from_json(guard_to_json(phi)) == phi
    assert guard_from_json("l0 < x0 + 1") == parse_guard("l0 < x0 + 1")
    assert guard_from_json(True) == TRUE
    with pytest.raises(InputError):
        guard_from_json({"xor": []})


def test_probe_finds_pad_witness_and_respects_arity():
    assert probe_satisfiable(parse_guard("ispad(l0) and l1 = x0"), 2, 1)
    assert not probe_satisfiable(parse_guard("l0 < l0"), 1, 0)
    with pytest.raises(ContractViolation):
        probe_satisfiable(parse_guard("l3 = 0"), 2, 0)


def test_show_value():
    assert show_value(PAD) == "#"
    assert show_value(-4) == "-4"
