import random
from pathlib import Path

import pytest

from padded_logic.errors import ContractViolation
from padded_logic.parse import parse_guard
from chc.constraints import CAnd, CFlag, COr, cand, cnot, cor, eval_constraint, show_constraint
from chc.emit import emit_smtlib_horn, pretty_chc
from chc.model import GOAL, INIT, STEP, letter_vars
from chc.pipeline import SoundnessViolation, combine, compile_formula
from chc.backends import BackendAnswer
from chc.sld import bounded_sld_refute, check_derivation, extract_run, run_to_assignment, sld_search
from cli.instance import load_instance
from chc.translate import compile_guard_flagged, to_chc, track_links
from listlang.oracle import OracleBounds, OracleResult, oracle_solve
from listlang.parse import parse_formula
from listlang.formulas import INT, SarAtom
from listlang.predicates import LIBRARY, NTH
from listlang.terms import Assignment, Cons, IConst, IVar, LVar, Tail
from normalize.atoms import NormalAtom, eval_normal_atom
from normalize.pipeline import normalize

ROOT = Path(__file__).resolve().parents[1]


def _nth_atom(param="x"):
    return NormalAtom(NTH, (LVar("L"), Tail(LVar("L")), LVar("X")), (param,))


def test_nth_translates_to_five_clauses():
    system = to_chc(_nth_atom())
    assert len(system.clauses) == 5
    assert len(system.clauses_of(INIT)) == 1
    assert len(system.clauses_of(STEP)) == 3
    assert len(system.clauses_of(GOAL)) == 1
    assert [p.name for p in system.predicates] == ["I_q0", "I_q1"]
    assert system.links == ((0, 1),)


def test_pretty_chc_lists_tracks_params_and_numbered_clauses():
    text = pretty_chc(to_chc(_nth_atom()))
    lines = text.splitlines()
    assert lines[0] == "% tracks: 0=L, 1=tail(L), 2=X"
    assert lines[1] == "% params: x"
    assert lines[2].startswith("(1) I_q0(")
    assert lines[-1].startswith("(5) false <= I_q1(")
    assert pretty_chc(to_chc(_nth_atom())) == text



def test_nth_example_dump_matches_the_golden_file():
    inst = load_instance(ROOT / "bench" / "instances" / "nth_example.json")
    system = compile_formula(inst.formula).system
    assert pretty_chc(system) == (Path(__file__).parent / "nth_example.chc").read_text(encoding="utf-8")
    assert [c.kind for c in system.clauses] == [INIT, STEP, STEP, STEP, GOAL]


def test_conjunctions_and_disjunctions_drop_repeated_operands():
    a, b = CFlag("v0f"), CFlag("v1f")
    assert cand(cnot(a), cand(cnot(a), b)) == CAnd((cnot(a), b))
    assert cor(a, cor(b, a)) == COr((a, b))
    assert cand(a, a) == a
    assert show_constraint(cand(cor(a, b), cand(a, cor(a, b)))) == "(pad(v0f) || pad(v1f)) && pad(v0f)"

def test_smtlib_output_is_a_horn_script():
    text = emit_smtlib_horn(to_chc(_nth_atom()))
    assert text.startswith("(set-logic HORN)\n")
    assert text.endswith("(check-sat)\n")
    assert "(declare-fun I_q0 (Bool Int Bool Int Bool Int Int) Bool)" in text
    assert text.count("(assert ") == 5
    assert emit_smtlib_horn(to_chc(_nth_atom())) == text


def test_integer_names_may_not_shadow_letter_variables():
    with pytest.raises(ContractViolation):
        to_chc(_nth_atom("u0f"))


def test_flagged_guards_follow_padded_semantics():
    letter = letter_vars("u", 1)
    padded = {"u0f": True, "u0v": 0}
    present = {"u0f": False, "u0v": 0}
    lt = compile_guard_flagged(parse_guard("l0 < 1"), letter, ())
    assert not eval_constraint(lt, padded)
    assert eval_constraint(lt, present)
    negated = compile_guard_flagged(parse_guard("not (l0 >= 1)"), letter, ())
    assert eval_constraint(negated, padded)
    assert eval_constraint(compile_guard_flagged(parse_guard("ispad(l0)"), letter, ()), padded)


def test_track_links_pair_lists_with_their_tails():
    links, nil = track_links(_nth_atom())
    assert links == [(0, 1)]
    assert nil == []


ORACLE_LEN = 2


def _library_call(name):
    ints = iter(["x", "y", "n"])
    lists = iter(["X", "Y", "Z"])
    args = [next(ints) if sort == INT else next(lists) for sort in LIBRARY[name].signature]
    return f"{name}({', '.join(args)})"


def _random_library_formulas(seed, count):
    rng = random.Random(seed)
    names = sorted(LIBRARY)
    found = []
    while len(found) < count:
        calls = []
        for _ in range(2):
            name = rng.choice(names)
            args = [rng.choice(["x", "n", "0", "1"]) if s == INT else rng.choice(["X", "Y"]) for s in LIBRARY[name].signature]
            call = f"{name}({', '.join(args)})"
            if LIBRARY[name].negative is not None and rng.random() < 0.3:
                call = "!" + call
            calls.append(call)
        text = " && ".join(calls)
        if text not in found:
            found.append(text)
    return found


def _check_agreement(text):
    phi = parse_formula(text)
    compiled = compile_formula(phi)
    oracle = oracle_solve(phi, OracleBounds(max_len=ORACLE_LEN, values=(0, 1)))
    # one more letter than the oracle's lists: seeded counters are one longer
    result = sld_search(compiled.system, max_depth=ORACLE_LEN + 3, values=(0, 1))
    assert result.exhausted
    if oracle.found:
        assert result.found
    if result.found:
        derivation = result.derivation
        assert check_derivation(derivation, compiled.system)
        word, params = extract_run(derivation)
        assert len(derivation) == len(word) + 2
        assert eval_normal_atom(compiled.normal, run_to_assignment(word, params, compiled.normal))
        if len(word) <= ORACLE_LEN:
            assert oracle.found
    return oracle


@pytest.mark.timeout(300)
@pytest.mark.parametrize(
    "text",
    [
        "sorted(X) && member(1, X)",
        "prefix(X, Y) && member(1, Y) && !member(1, X)",
        "all_eq(X, y) && member(y + 1, X)",
        "sorted(cons(1, X)) && member(0, X)",
    ],
)
def test_sld_refutations_agree_with_the_oracle(text):
    _check_agreement(text)


@pytest.mark.timeout(300)
@pytest.mark.parametrize("name", sorted(LIBRARY))
def test_every_library_predicate_has_a_short_refutation(name):
    assert _check_agreement(_library_call(name)).found


@pytest.mark.timeout(600)
@pytest.mark.parametrize("text", _random_library_formulas(23, 30))
def test_random_library_conjunctions_agree_with_the_oracle(text):
    _check_agreement(text)


def _shared_base_nth_system():
    y = LVar("Y")
    atom = SarAtom(NTH, (Cons(IConst(1), Cons(IVar("t"), y)), Cons(IConst(0), y), LVar("X")), (IVar("x"),), "nth")
    return to_chc(normalize(atom))


def test_sld_search_finds_the_shared_base_refutation():
    system = _shared_base_nth_system()
    result = sld_search(system, max_depth=6, values=(-1, 0))
    assert result.found
    assert len(result.derivation) == 4
    assert check_derivation(result.derivation, system)


def test_sld_budget_exhaustion_is_reported():
    system = _shared_base_nth_system()
    result = sld_search(system, max_depth=6, values=(-1, 0, 1, 2), budget=50)
    assert not result.found
    assert not result.exhausted
    assert bounded_sld_refute(system, max_depth=6, values=(-1, 0, 1, 2), budget=50) is None
    empty = sld_search(to_chc(_nth_atom()), max_depth=1, values=(0,))
    assert not empty.found and empty.exhausted


def test_combine_prefers_the_oracle_witness():
    witness = OracleResult(Assignment({}, {"X": (0,)}), 1)
    assert combine(witness, None) == ("SAT", "oracle", "")
    assert combine(None, BackendAnswer("z3", "sat", 1.0))[:2] == ("UNSAT", "backend")
    assert combine(None, BackendAnswer("z3", "unsat", 1.0))[:2] == ("SAT", "backend")
    verdict, source, note = combine(OracleResult(None, 7), BackendAnswer("z3", "timeout", 1.0))
    assert (verdict, source) == ("UNKNOWN", "none")
    assert "7 candidates" in note
    with pytest.raises(SoundnessViolation):
        combine(witness, BackendAnswer("z3", "sat", 1.0))
