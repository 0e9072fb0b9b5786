import itertools

import pytest

from padded_logic.errors import InputError
from listlang.closure import lift_arith, to_atom, to_sigma1
from listlang.formulas import Atom, ArithCmp, convolve, eval_atom, free_vars, holds, show_formula
from listlang.oracle import OracleBounds, oracle_solve
from listlang.parse import parse_formula, parse_term
from listlang.terms import NIL, Assignment, Cons, Head, IConst, IVar, LVar, Tail, eval_int_term, simplify
from padded_logic.values import PAD

LISTS = [tuple(v) for n in range(3) for v in itertools.product((-1, 0, 1), repeat=n)]
INTS = (-1, 0, 1)


def _assignments(phi):
    ints, lists = free_vars(phi)
    ints, lists = sorted(ints), sorted(lists)
    for list_values in itertools.product(LISTS, repeat=len(lists)):
        for int_values in itertools.product(INTS, repeat=len(ints)):
            yield Assignment(dict(zip(ints, int_values)), dict(zip(lists, list_values)))


def test_convolve_pads_shorter_words():
    assert convolve([(1, 2), (3,)]) == ((1, 3), (2, PAD))
    assert convolve([(), ()]) == ()


def test_head_of_nil_is_zero():
    alpha = Assignment({}, {"X": ()})
    assert eval_int_term(Head(LVar("X")), alpha) == 0
    assert simplify(Head(NIL)) == IConst(0)
    assert simplify(Tail(Cons(IVar("x"), LVar("X")))) == LVar("X")
    assert simplify(Tail(NIL)) == NIL


@pytest.mark.parametrize(
    "text",
    [
        "sorted(X) && !prefix(X, Y)",
        "member(x, X) || X == cons(1, Y)",
        "!(sorted(X) || all_eq(Y, x))",
        "head(X) > x && X != nil",
        "lt(X, Y) && !(X == Y)",
        "!le_all(x, tail(X)) || has_zero(Y)",
        "x + 1 <= head(Y) || !(x = 0)",
    ],
)
def test_delta0_compilation_agrees_with_standard_semantics(text):
    phi = parse_formula(text)
    atom = to_atom(phi)
    for alpha in _assignments(phi):
        assert eval_atom(atom, alpha) == holds(phi, alpha), (text, alpha.show())


def test_lift_arith_reads_heads_with_zero_default():
    phi = parse_formula("head(X) = 0")
    atom = lift_arith(phi)
    assert eval_atom(atom, Assignment({}, {"X": ()}))
    assert eval_atom(atom, Assignment({}, {"X": (0, 5)}))
    assert not eval_atom(atom, Assignment({}, {"X": (1,)}))
    with pytest.raises(InputError):
        lift_arith(parse_formula("sorted(X)"))


def test_to_sigma1_pulls_existentials_with_fresh_names():
    sigma = to_sigma1(parse_formula("exists Y. prefix(Y, X) && Y != nil"))
    assert sigma.bound == (("Y#1", "list"),)
    ints, lists = free_vars(sigma.matrix)
    assert lists == {"X", "Y#1"}


def test_existential_under_negation_is_rejected():
    with pytest.raises(InputError):
        to_sigma1(parse_formula("!(exists Y. prefix(Y, X))"))


def test_parse_and_show_are_stable():
    for text in [
        "sorted(X) && !prefix(X, Y)",
        "exists Y. prefix(Y, X) && Y != nil",
        "x + 1 <= head(Y) || x == 0",
    ]:
        phi = parse_formula(text)
        assert show_formula(phi) == text
        assert parse_formula(show_formula(phi)) == phi


def test_parse_errors():
    for text in ["sorted(x)", "X < Y", "x * y > 0", "foo(X)", "cons(X, Y) == nil", "x == X"]:
        with pytest.raises(InputError):
            parse_formula(text)
    assert parse_term("cons(1, tail(X))") == Cons(IConst(1), Tail(LVar("X")))
    assert isinstance(parse_formula("(x + 1) * 2 < 3"), ArithCmp)


def test_oracle_returns_a_shortest_witness():
    result = oracle_solve(parse_formula("member(1, X) && member(-1, X)"), OracleBounds(max_len=3))
    assert result.found
    assert sorted(result.assignment.lists["X"]) == [-1, 1]


def test_oracle_binds_counters_of_library_predicates():
    result = oracle_solve(parse_formula("length(X, 2)"), OracleBounds(max_len=3, values=(-1, 0, 1, 2)))
    assert result.found
    assert len(result.assignment.lists["X"]) == 2


def test_oracle_exhaustion_and_budget():
    unsat = parse_formula("X == cons(1, nil) && X == nil")
    result = oracle_solve(unsat, OracleBounds(max_len=2, values=(0, 1)))
    assert not result.found and result.exhausted
    capped = oracle_solve(parse_formula("sorted(X) && X == cons(1, cons(0, nil))"), OracleBounds(max_len=3, budget=5))
    assert not capped.found
    assert not capped.exhausted
    assert capped.checked == 5


def test_atom_formula_evaluates_directly():
    atom = to_atom(parse_formula("sorted(X)"))
    assert holds(Atom(atom), Assignment({}, {"X": (1, 2)}))
    assert not holds(Atom(atom), Assignment({}, {"X": (2, 1)}))
