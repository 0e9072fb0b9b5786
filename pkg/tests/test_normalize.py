import random

import pytest

from padded_logic.errors import ContractViolation, InputError
from padded_logic.guards import TRUE
from listlang.closure import to_atom
from listlang.formulas import SarAtom, eval_atom
from listlang.oracle import OracleBounds, oracle_search
from listlang.parse import parse_formula
from listlang.predicates import HAS_ZERO, NTH
from listlang.terms import Assignment, Cons, IConst, IVar, LVar, vars_of
from normalize.atoms import NormalAtom, eval_normal_atom, is_normal, normal_form_problems
from normalize.pipeline import make_gap_free, normalize, unroll

VALUES = (0, 1)


def _atom_sat(atom, max_len):
    ints, lists = vars_of(*atom.list_args, *atom.int_args)
    return oracle_search(ints, lists, lambda a: eval_atom(atom, a), OracleBounds(max_len, VALUES)).found


def _normal_sat(na, max_len):
    lists = na.list_vars()
    return oracle_search(na.int_args, lists, lambda a: eval_normal_atom(na, a), OracleBounds(max_len, VALUES)).found


@pytest.mark.parametrize(
    "text, expected",
    [
        ("sorted(cons(1, cons(0, X)))", False),
        ("sorted(cons(x, cons(y, X))) && x > y", False),
        ("prefix(cons(x, cons(y, X)), Y) && x < y && sorted(Y)", True),
        ("nth(i, x, X)", True),
        ("sorted(cons(1, X)) && member(0, X)", False),
        ("length(cons(x, X), n) && length(X, m) && n != m", True),
        ("head(X) > 0 && sorted(X) && member(0, X)", False),
    ],
)
def test_normalization_preserves_satisfiability(text, expected):
    atom = to_atom(parse_formula(text))
    na = normalize(atom)
    assert is_normal(na)
    assert _atom_sat(atom, 2) == expected
    assert _normal_sat(na, 4) == expected



def _shared_base_nth():
    y = LVar("Y")
    return SarAtom(NTH, (Cons(IConst(1), Cons(IVar("t"), y)), Cons(IConst(0), y), LVar("X")), (IVar("x"),), "nth")


def test_shared_cons_base_gets_its_own_tracks():
    atom = _shared_base_nth()
    na = normalize(atom)
    assert (na.k, na.n) == (6, 2)
    assert normal_form_problems(na.list_args, na.int_args) == []
    assert _atom_sat(atom, 2)
    assert _normal_sat(na, 2)


_CONS_TEMPLATES = [
    "sorted({0})",
    "has_zero({0})",
    "member({a}, {0})",
    "all_eq({0}, {a})",
    "le_all({a}, {0})",
    "prefix({0}, {1})",
    "eq_list({0}, {1})",
    "lt({0}, {1})",
]


def _random_cons_formulas(seed, count):
    rng = random.Random(seed)
    heads = ["x", "0", "1"]

    def term():
        text = rng.choice(["X", "Y"])
        for _ in range(rng.randint(0, 2)):
            text = f"cons({rng.choice(heads)}, {text})"
        return text

    found = []
    while len(found) < count:
        text = rng.choice(_CONS_TEMPLATES).format(term(), term(), a=rng.choice(heads))
        if "cons" in text and text not in found:
            found.append(text)
    return found


@pytest.mark.timeout(600)
@pytest.mark.parametrize("text", _random_cons_formulas(17, 16))
def test_random_cons_atoms_stay_equisatisfiable(text):
    atom = to_atom(parse_formula(text))
    na = normalize(atom)
    assert is_normal(na)
    # normal lists are never shorter than the original ones, and at most two letters longer
    if _normal_sat(na, 1):
        assert _atom_sat(atom, 1)
    if _atom_sat(atom, 1):
        assert _normal_sat(na, 3)

def test_unroll_copies_states_per_level():
    m, levels = unroll(HAS_ZERO, 2)
    assert len(m.states) == len(HAS_ZERO.states) * 3
    assert m.initial == {"q0@0"}
    assert m.final == {"q1@2"}
    assert sorted(set(levels.values())) == [0, 1, 2]


def test_unrolled_cons_reads_constants_on_first_levels():
    atom = SarAtom(HAS_ZERO, (Cons(IConst(1), Cons(IConst(2), LVar("X"))),), ())
    na = normalize(atom, "unroll")
    assert na.list_args == (LVar("X"),)
    assert na.int_args == ()
    assert len(na.automaton.states) == 2 * 3
    # the first two letters stand for the cons heads 1 and 2
    assert eval_normal_atom(na, Assignment({}, {"X": (7, 7, 0)}))
    assert not eval_normal_atom(na, Assignment({}, {"X": (0, 0)}))
    assert not eval_normal_atom(na, Assignment({}, {"X": (0,)}))


def test_seeding_puts_the_cons_head_on_the_first_letter():
    atom = SarAtom(HAS_ZERO, (Cons(IConst(0), LVar("X")),), ())
    na = normalize(atom, "seed")
    assert na.list_args == (LVar("L_1"),)
    assert na.seed != TRUE
    assert eval_normal_atom(na, Assignment({}, {"L_1": (0,)}))
    assert not eval_normal_atom(na, Assignment({}, {"L_1": (1, 0)}))


def test_strategy_errors():
    deep = SarAtom(HAS_ZERO, (Cons(IConst(1), Cons(IConst(2), LVar("X"))),), ())
    with pytest.raises(InputError):
        normalize(deep, "seed")
    with pytest.raises(InputError):
        normalize(deep, "bogus")


def test_gap_completion_adds_missing_tails():
    atom = to_atom(parse_formula("sorted(tail(X))"))
    filled = make_gap_free(atom)
    assert LVar("X") in filled.atom.list_args


def test_normal_atom_rejects_cons_arguments():
    with pytest.raises(ContractViolation):
        NormalAtom(HAS_ZERO, (Cons(IConst(0), LVar("X")),), ())
