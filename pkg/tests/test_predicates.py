import itertools

import pytest

from padded_logic.errors import InputError
from padded_logic.parse import parse_guard
from ssnfa.automaton import SsNfa, Transition
from listlang.formulas import INT, LIST, Domain, holds
from listlang.predicates import LIBRARY, custom_predicate, insert_sorted
from listlang.terms import Assignment, IVar, LVar

# predicates whose definition quantifies a counter list
COUNTERS = {"nth", "length", "count", "take"}

SHORT = [tuple(v) for n in range(4) for v in itertools.product((-1, 0, 1), repeat=n)]
TINY = [tuple(v) for n in range(3) for v in itertools.product((0, 1), repeat=n)]
COUNTER_DOMAIN = Domain(3, tuple(range(-3, 3)))


def _arguments(signature, ints, lists):
    pools = [ints if sort == INT else lists for sort in signature]
    for values in itertools.product(*pools):
        names = [f"a{p}" if sort == INT else f"A{p}" for p, sort in enumerate(signature)]
        terms = [IVar(n) if sort == INT else LVar(n) for n, sort in zip(names, signature)]
        alpha = Assignment(
            {n: v for n, v, s in zip(names, values, signature) if s == INT},
            {n: v for n, v, s in zip(names, values, signature) if s == LIST},
        )
        yield terms, values, alpha


def _check(name, ints, lists, domain=None):
    pred = LIBRARY[name]
    for terms, values, alpha in _arguments(pred.signature, ints, lists):
        expected = pred.reference(*values)
        assert holds(pred.positive(*terms), alpha, domain) == expected, (name, values)
        if pred.negative is not None:
            assert holds(pred.negative(*terms), alpha, domain) == (not expected), ("not", name, values)


@pytest.mark.parametrize(
    "name",
    sorted(n for n in LIBRARY if n not in COUNTERS | {"insert"}),
)
def test_plain_predicates_match_reference(name):
    _check(name, (-1, 0, 1), SHORT)


@pytest.mark.parametrize("name", sorted(COUNTERS))
def test_counter_predicates_match_reference(name):
    _check(name, (-1, 0, 1, 2), TINY, COUNTER_DOMAIN)


def test_insert_matches_reference():
    pred = LIBRARY["insert"]
    xs_pool = [xs for xs in SHORT if len(xs) <= 2]
    for x in range(-2, 3):
        for xs in xs_pool:
            for ys in SHORT + [insert_sorted(x, xs)]:
                alpha = Assignment({"x": x}, {"X": xs, "Y": ys})
                got = holds(pred.positive(IVar("x"), LVar("X"), LVar("Y")), alpha)
                assert got == (ys == insert_sorted(x, xs)), (x, xs, ys)


def test_insert_places_equal_element_first():
    assert insert_sorted(1, (0, 1, 2)) == (0, 1, 1, 2)
    assert insert_sorted(3, ()) == (3,)


def test_custom_predicate_checks_signature():
    m = SsNfa.build(1, 0, ["q"], ["q"], ["q"], [Transition("q", parse_guard("l0 >= 0"), "q")])
    nonneg = custom_predicate("nonneg", m, ["list"])
    assert holds(nonneg(LVar("X")), Assignment({}, {"X": (0, 3)}))
    assert not holds(nonneg(LVar("X")), Assignment({}, {"X": (0, -3)}))
    with pytest.raises(InputError):
        custom_predicate("bad", m, ["list", "int"])
    with pytest.raises(InputError):
        nonneg(IVar("x"))
