import random

import pytest

from padded_logic.errors import ContractViolation, InputError
from padded_logic.guards import TRUE, cmp, conj, ispad, neg, param, track
from padded_logic.parse import parse_guard
from padded_logic.values import PAD
from ssnfa.automaton import SsNfa, Transition, accepts
from ssnfa.codec import automaton_from_json, automaton_to_json
from ssnfa.constructions import (
    accept_all,
    accept_nothing,
    complement,
    convolution_automaton,
    determinize,
    extend_tracks,
    is_deterministic,
    product,
    union,
)
from ssnfa.dot import to_dot
from ssnfa.enumerate import enumerate_accepted, language_difference
from listlang.closure import delta0_and, delta0_not, delta0_or
from listlang.formulas import SarAtom
from listlang.terms import IVar, LVar

VALUES = (-2, -1, 0, 1, 2)


def _random_guard(rng: random.Random, k: int, n: int):
    i = rng.randrange(k)
    choices = [
        lambda: cmp(rng.choice(["<", "<=", "=", "!="]), track(i), rng.randint(-2, 2)),
        lambda: ispad(track(i)),
        lambda: TRUE,
    ]
    if k > 1:
        choices.append(lambda: cmp(rng.choice(["<", "="]), track(0), track(1)))
    if n > 0:
        choices.append(lambda: cmp("<=", track(i), param(0)))
    atom = rng.choice(choices)()
    if rng.random() < 0.3:
        atom = neg(atom)
    if rng.random() < 0.3:
        atom = conj(atom, neg(ispad(track(rng.randrange(k)))))
    return atom


def _random_automaton(rng: random.Random, k: int, n: int) -> SsNfa:
    states = [f"s{i}" for i in range(rng.randint(1, 3))]
    transitions = [
        Transition(rng.choice(states), _random_guard(rng, k, n), rng.choice(states))
        for _ in range(rng.randint(1, 5))
    ]
    final = [s for s in states if rng.random() < 0.5]
    return SsNfa.build(k, n, states, [states[0]], final, transitions)


def _pairs(seed: int, count: int):
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(1, 2)
        n = rng.randint(0, 1)
        yield _random_automaton(rng, k, n), _random_automaton(rng, k, n)


def _params(m: SsNfa):
    return [0] * m.n


def test_complement_partitions_all_words():
    for m, _ in _pairs(7, 100):
        c = complement(m)
        assert language_difference(product(m, c), accept_nothing(m.k, m.n), _params(m), 3, VALUES) is None
        assert language_difference(union(m, c), accept_all(m.k, m.n), _params(m), 3, VALUES) is None


def test_product_and_union_match_set_operations():
    for m1, m2 in _pairs(11, 100):
        p = _params(m1)
        l1 = enumerate_accepted(m1, p, 2, VALUES)
        l2 = enumerate_accepted(m2, p, 2, VALUES)
        assert enumerate_accepted(product(m1, m2), p, 2, VALUES) == l1 & l2
        assert enumerate_accepted(union(m1, m2), p, 2, VALUES) == l1 | l2


def test_delta0_closure_matches_language_operations():
    lists = (LVar("X"), LVar("Y"))
    for m1, m2 in _pairs(19, 100):
        a = SarAtom(m1, lists[: m1.k], (IVar("x"),) * m1.n)
        b = SarAtom(m2, lists[: m2.k], (IVar("x"),) * m2.n)
        p = _params(m1)
        l1 = enumerate_accepted(m1, p, 2, VALUES)
        l2 = enumerate_accepted(m2, p, 2, VALUES)
        conv = enumerate_accepted(convolution_automaton(m1.k, m1.n), p, 2, VALUES)
        assert enumerate_accepted(delta0_and(a, b).automaton, p, 2, VALUES) == l1 & l2
        assert enumerate_accepted(delta0_or(a, b).automaton, p, 2, VALUES) == l1 | l2
        assert enumerate_accepted(delta0_not(a).automaton, p, 2, VALUES) == conv - l1


def test_determinize_preserves_language():
    for m, _ in _pairs(3, 100):
        d = determinize(m)
        assert language_difference(m, d, _params(m), 3, VALUES) is None
        assert len(d.initial) == 1


def test_accepts_checks_arity():
    m = accept_all(2, 1)
    with pytest.raises(ContractViolation):
        accepts(m, [], [(0, 0)])
    with pytest.raises(ContractViolation):
        accepts(m, [0], [(0,)])


def test_build_rejects_unknown_states_and_wide_guards():
    with pytest.raises(ContractViolation):
        SsNfa.build(1, 0, ["a"], ["a"], ["b"], [])
    with pytest.raises(ContractViolation):
        SsNfa.build(1, 0, ["a"], ["a"], ["a"], [Transition("a", parse_guard("l1 = 0"), "a")])


def test_convolution_automaton_accepts_only_convolutions():
    conv = convolution_automaton(2, 0)
    assert accepts(conv, [], [])
    assert accepts(conv, [], [(1, 2), (3, PAD)])
    assert not accepts(conv, [], [(1, PAD), (3, 4)])
    assert not accepts(conv, [], [(PAD, PAD)])


def test_extend_tracks_lets_other_tracks_run_longer():
    nonneg = SsNfa.build(1, 0, ["q"], ["q"], ["q"], [Transition("q", parse_guard("l0 >= 0"), "q")])
    wide = extend_tracks(nonneg, 2, 0, [1], [])
    assert accepts(wide, [], [(5, 0), (6, PAD), (7, PAD)])
    assert not accepts(wide, [], [(5, -1)])
    # once track 1 is padded it may not resume
    assert not accepts(wide, [], [(5, PAD), (6, 1)])


def test_is_deterministic():
    m = SsNfa.build(
        1,
        0,
        ["a", "b"],
        ["a"],
        ["b"],
        [Transition("a", parse_guard("l0 < 0"), "a"), Transition("a", parse_guard("l0 >= 0"), "b")],
    )
    assert is_deterministic(m)
    overlap = SsNfa.build(1, 0, ["a", "b"], ["a"], ["b"], [Transition("a", TRUE, "a"), Transition("a", TRUE, "b")])
    assert not is_deterministic(overlap)


def test_json_codec_and_dot():
    m = SsNfa.build(
        2,
        1,
        ["q0", "q1"],
        ["q0"],
        ["q1"],
        [Transition("q0", parse_guard("l0 <= l1 and l0 = x0"), "q1"), Transition("q1", parse_guard("ispad(l0)"), "q1")],
    )
    assert automaton_from_json(automaton_to_json(m)) == m
    dot = to_dot(m, "demo")
    assert dot.startswith('digraph "demo" {')
    assert '"q1" [shape=doublecircle];' in dot
    assert 'label="l0 <= l1 and l0 = x0"' in dot
    assert to_dot(m, "demo") == dot
    with pytest.raises(InputError):
        automaton_from_json({"k": 1, "states": ["q"], "initial": ["q"]})
    with pytest.raises(InputError):
        automaton_from_json({"k": 1, "states": ["q"], "initial": ["x"], "final": [], "transitions": []})
