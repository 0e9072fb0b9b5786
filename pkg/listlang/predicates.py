"""Library of list predicates defined by symbolic automatic relations.

Each predicate has a positive definition, optionally a negative one (for
predicates whose negation would otherwise need a universal), and a direct
recursive reference implementation used by the tests and the oracle
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

from padded_logic.errors import InputError
from padded_logic.parse import parse_guard
from ssnfa.automaton import SsNfa, Transition
from listlang.formulas import INT, LIST, Atom, Exists, PredCall, SarAtom, SarFormula, fresh_name
from listlang.terms import NIL, Cons, IConst, LVar, Tail, Term, is_list_term, vars_of

Builder = Callable[..., SarFormula]


@dataclass(frozen=True)
class PredicateDef:
    name: str
    signature: Tuple[str, ...]
    positive: Builder
    negative: Optional[Builder] = None
    reference: Optional[Callable[..., bool]] = None

    def __call__(self, *args: Term) -> PredCall:
        self.check_args(args)
        return PredCall(self, tuple(args))

    def check_args(self, args: Sequence[Term]) -> None:
        if len(args) != len(self.signature):
            raise InputError(f"{self.name} expects {len(self.signature)} arguments, got {len(args)}")
        for position, (sort, arg) in enumerate(zip(self.signature, args)):
            if (sort == LIST) != is_list_term(arg):
                raise InputError(f"argument {position} of {self.name} must be of sort {sort}")


def automaton(k: int, n: int, initial: str, final: Sequence[str], edges: Sequence[Tuple[str, str, str]]) -> SsNfa:
    """Small automata written as (source, guard text, target) triples."""
    states = []
    for source, _, target in edges:
        for s in (source, target):
            if s not in states:
                states.append(s)
    for s in [initial, *final]:
        if s not in states:
            states.append(s)
    return SsNfa.build(
        k,
        n,
        states,
        [initial],
        final,
        [Transition(source, parse_guard(text), target) for source, text, target in edges],
    )


def _counter(*args: Term) -> str:
    ints, lists = vars_of(*args)
    return fresh_name("C", ints | lists)


def _atom(m: SsNfa, lists: Sequence[Term], ints: Sequence[Term], label: str) -> SarFormula:
    return Atom(SarAtom(m, tuple(lists), tuple(ints), label))


# -- automata ----------------------------------------------------------------------------

SORTED = automaton(2, 0, "q", ["q"], [("q", "not (l0 > l1)", "q")])

HAS_ZERO = automaton(1, 0, "q0", ["q1"], [("q0", "true", "q0"), ("q0", "l0 = 0", "q1"), ("q1", "true", "q1")])

MEMBER = automaton(1, 1, "q0", ["q1"], [("q0", "true", "q0"), ("q0", "l0 = x0", "q1"), ("q1", "true", "q1")])

ALL_EQ = automaton(1, 1, "q", ["q"], [("q", "l0 = x0", "q")])

LE_ALL = automaton(1, 1, "q", ["q"], [("q", "x0 <= l0", "q")])

NTH = automaton(
    3,
    1,
    "q0",
    ["q1"],
    [("q0", "l0 = l1 + 1", "q0"), ("q0", "l0 = 0 and l2 = x0", "q1"), ("q1", "true", "q1")],
)

# out of range (l2 padded at the hit) counts as "not the x-th element"
NTH_NEG = automaton(
    3,
    1,
    "q0",
    ["q1"],
    [
        ("q0", "l0 > 0 and l0 = l1 + 1", "q0"),
        ("q0", "(l0 = 0 and not (l2 = x0)) or l0 < 0", "q1"),
        ("q1", "true", "q1"),
    ],
)

LENGTH = automaton(
    3,
    0,
    "q0",
    ["q1"],
    [("q0", "not ispad(l2) and l0 = l1 + 1", "q0"), ("q0", "ispad(l2) and l0 = 0", "q1"), ("q1", "true", "q1")],
)

LENGTH_NEG = automaton(
    3,
    0,
    "q0",
    ["q1"],
    [("q0", "not ispad(l2) and l0 = l1 + 1", "q0"), ("q0", "ispad(l2) and l0 != 0", "q1"), ("q1", "true", "q1")],
)

_COUNT_STEP = [
    ("q0", "l2 = x0 and l0 = l1 + 1", "q0"),
    ("q0", "not ispad(l2) and not (l2 = x0) and l0 = l1", "q0"),
    ("q1", "true", "q1"),
]

COUNT = automaton(3, 1, "q0", ["q1"], _COUNT_STEP + [("q0", "ispad(l2) and l0 = 0", "q1")])

COUNT_NEG = automaton(3, 1, "q0", ["q1"], _COUNT_STEP + [("q0", "ispad(l2) and l0 != 0", "q1")])

PREFIX = automaton(
    2,
    0,
    "q0",
    ["q0", "q1"],
    [("q0", "l0 = l1", "q0"), ("q0", "ispad(l0)", "q1"), ("q1", "ispad(l0)", "q1")],
)

EQ_LIST = automaton(2, 0, "q", ["q"], [("q", "l0 = l1", "q")])

# tracks: cons(0, X), X, Y; the marker track is never inspected
INSERT = automaton(
    3,
    1,
    "q0",
    ["q1"],
    [
        ("q0", "l1 = l2 and x0 > l1", "q0"),
        ("q0", "l2 = x0 and (x0 <= l1 or ispad(l1))", "q1"),
        ("q1", "l0 = l2", "q1"),
    ],
)

TAKE = automaton(
    4,
    0,
    "q0",
    ["q1"],
    [
        ("q0", "l0 > 0 and l0 = l1 + 1 and l2 = l3", "q0"),
        ("q0", "(l0 <= 0 or ispad(l2)) and ispad(l3)", "q1"),
        ("q1", "ispad(l3)", "q1"),
    ],
)

# tracks: X, tail(X), a one-letter dummy so the empty list still reads a letter
LAST = automaton(
    3,
    1,
    "q0",
    ["qf"],
    [
        ("q0", "ispad(l0) and x0 = 0", "qf"),
        ("q0", "not ispad(l0) and ispad(l1) and l0 = x0", "qf"),
        ("q0", "not ispad(l1)", "q0"),
    ],
)

LT = automaton(2, 0, "q", ["q"], [("q", "l0 < l1", "q")])


# -- references ----------------------------------------------------------------------------


def insert_sorted(x: int, xs: Sequence[int]) -> Tuple[int, ...]:
    xs = tuple(xs)
    if not xs or x <= xs[0]:
        return (x,) + xs
    return (xs[0],) + insert_sorted(x, xs[1:])


def _is_sorted(xs: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(xs, xs[1:]))


# -- builders ------------------------------------------------------------------------------


def _sorted(xs: Term) -> SarFormula:
    return _atom(SORTED, [xs, Tail(xs)], [], "sorted")


def _nth(m: SsNfa, label: str) -> Builder:
    def build(i: Term, x: Term, xs: Term) -> SarFormula:
        c = _counter(i, x, xs)
        return Exists(c, LIST, _atom(m, [Cons(i, LVar(c)), LVar(c), xs], [x], label))

    return build


def _length(m: SsNfa, label: str) -> Builder:
    def build(xs: Term, i: Term) -> SarFormula:
        c = _counter(xs, i)
        return Exists(c, LIST, _atom(m, [Cons(i, LVar(c)), LVar(c), xs], [], label))

    return build


def _count(m: SsNfa, label: str) -> Builder:
    def build(x: Term, xs: Term, n: Term) -> SarFormula:
        c = _counter(x, xs, n)
        return Exists(c, LIST, _atom(m, [Cons(n, LVar(c)), LVar(c), xs], [x], label))

    return build


def _take(n: Term, xs: Term, ys: Term) -> SarFormula:
    c = _counter(n, xs, ys)
    return Exists(c, LIST, _atom(TAKE, [Cons(n, LVar(c)), LVar(c), xs, ys], [], "take"))


LIBRARY: Dict[str, PredicateDef] = {
    p.name: p
    for p in [
        PredicateDef("sorted", (LIST,), _sorted, reference=_is_sorted),
        PredicateDef(
            "has_zero",
            (LIST,),
            lambda xs: _atom(HAS_ZERO, [xs], [], "has_zero"),
            reference=lambda xs: 0 in xs,
        ),
        PredicateDef(
            "member",
            (INT, LIST),
            lambda x, xs: _atom(MEMBER, [xs], [x], "member"),
            reference=lambda x, xs: x in xs,
        ),
        PredicateDef(
            "all_eq",
            (LIST, INT),
            lambda xs, y: _atom(ALL_EQ, [xs], [y], "all_eq"),
            reference=lambda xs, y: all(v == y for v in xs),
        ),
        PredicateDef(
            "le_all",
            (INT, LIST),
            lambda x, xs: _atom(LE_ALL, [xs], [x], "le_all"),
            reference=lambda x, xs: all(x <= v for v in xs),
        ),
        PredicateDef(
            "nth",
            (INT, INT, LIST),
            _nth(NTH, "nth"),
            _nth(NTH_NEG, "not_nth"),
            reference=lambda i, x, xs: 0 <= i < len(xs) and xs[i] == x,
        ),
        PredicateDef(
            "length",
            (LIST, INT),
            _length(LENGTH, "length"),
            _length(LENGTH_NEG, "not_length"),
            reference=lambda xs, i: len(xs) == i,
        ),
        PredicateDef(
            "count",
            (INT, LIST, INT),
            _count(COUNT, "count"),
            _count(COUNT_NEG, "not_count"),
            reference=lambda x, xs, n: list(xs).count(x) == n,
        ),
        PredicateDef(
            "prefix",
            (LIST, LIST),
            lambda xs, ys: _atom(PREFIX, [xs, ys], [], "prefix"),
            reference=lambda xs, ys: tuple(ys[: len(xs)]) == tuple(xs),
        ),
        PredicateDef(
            "eq_list",
            (LIST, LIST),
            lambda xs, ys: _atom(EQ_LIST, [xs, ys], [], "eq_list"),
            reference=lambda xs, ys: tuple(xs) == tuple(ys),
        ),
        PredicateDef(
            "insert",
            (INT, LIST, LIST),
            lambda x, xs, ys: _atom(INSERT, [Cons(IConst(0), xs), xs, ys], [x], "insert"),
            reference=lambda x, xs, ys: tuple(ys) == insert_sorted(x, xs),
        ),
        PredicateDef(
            "take",
            (INT, LIST, LIST),
            _take,
            reference=lambda n, xs, ys: tuple(ys) == tuple(xs[: max(n, 0)]),
        ),
        PredicateDef(
            "last",
            (LIST, INT),
            lambda xs, x: _atom(LAST, [xs, Tail(xs), Cons(IConst(0), NIL)], [x], "last"),
            reference=lambda xs, x: x == (xs[-1] if xs else 0),
        ),
        PredicateDef(
            "lt",
            (LIST, LIST),
            lambda xs, ys: _atom(LT, [xs, ys], [], "lt"),
            reference=lambda xs, ys: len(xs) == len(ys) and all(a < b for a, b in zip(xs, ys)),
        ),
    ]
}


def custom_predicate(name: str, m: SsNfa, signature: Sequence[str], negative: Optional[SsNfa] = None) -> PredicateDef:
    """A predicate applying ``m`` directly to its arguments.

    List arguments fill the tracks and integer arguments the parameters, in
    order of appearance.
    """
    signature = tuple(signature)
    lists = sum(1 for s in signature if s == LIST)
    if lists != m.k or len(signature) - lists != m.n:
        raise InputError(f"predicate {name!r}: signature does not match {m.summary()}")
    if negative is not None and (negative.k, negative.n) != (m.k, m.n):
        raise InputError(f"predicate {name!r}: negative automaton has a different arity")

    def apply(automaton_: SsNfa, label: str) -> Builder:
        def build(*args: Term) -> SarFormula:
            list_args = [a for s, a in zip(signature, args) if s == LIST]
            int_args = [a for s, a in zip(signature, args) if s == INT]
            return _atom(automaton_, list_args, int_args, label)

        return build

    return PredicateDef(
        name,
        signature,
        apply(m, name),
        apply(negative, f"not_{name}") if negative is not None else None,
    )
