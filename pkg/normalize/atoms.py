"""Atoms with a first-letter constraint, and the normal form handed to toCHC."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Set, Tuple, Union

from padded_logic.errors import ContractViolation
from padded_logic.guards import TRUE, GuardFormula, check_arity, eval_guard, show_guard
from padded_logic.values import PAD
from ssnfa.automaton import SsNfa, accepts
from listlang.formulas import SarAtom, convolve, show_atom
from listlang.terms import Assignment, IVar, ListTerm, eval_int_term, eval_list_term, tail_shape, vars_of


@dataclass(frozen=True)
class SeededAtom:
    """A SAR atom whose first letter must also satisfy ``seed``.

    The seed is read on the first letter of the convolution, or on the
    all-padded letter when the convolution is empty.
    """

    atom: SarAtom
    seed: GuardFormula = TRUE

    def __post_init__(self) -> None:
        check_arity(self.seed, self.atom.automaton.k, self.atom.automaton.n)


AtomLike = Union[SarAtom, SeededAtom]


def seeded(a: AtomLike) -> SeededAtom:
    return a if isinstance(a, SeededAtom) else SeededAtom(a)


def _holds(m: SsNfa, seed: GuardFormula, lists, params) -> bool:
    word = convolve(lists)
    first = word[0] if word else (PAD,) * m.k
    return eval_guard(seed, first, params) and accepts(m, params, word)


def eval_seeded(a: AtomLike, alpha: Assignment) -> bool:
    sa = seeded(a)
    lists = [eval_list_term(t, alpha) for t in sa.atom.list_args]
    params = [eval_int_term(t, alpha) for t in sa.atom.int_args]
    return _holds(sa.atom.automaton, sa.seed, lists, params)


def normal_form_problems(list_args: Iterable[ListTerm], int_args: Iterable[object]) -> list:
    problems = []
    depths = {}
    for term in list_args:
        shape = tail_shape(term)
        if shape is None:
            problems.append(f"list argument is neither nil nor tail^m(X): {term!r}")
            continue
        name, depth = shape
        if name is not None:
            depths.setdefault(name, set()).add(depth)
    for name, present in depths.items():
        missing = set(range(max(present) + 1)) - present
        if missing:
            problems.append(f"gap in tails of {name}: missing depths {sorted(missing)}")
    names = []
    for term in int_args:
        if isinstance(term, str):
            names.append(term)
        elif isinstance(term, IVar):
            names.append(term.name)
        else:
            problems.append(f"integer argument is not a variable: {term!r}")
    if len(set(names)) != len(names):
        problems.append("integer arguments are not pairwise distinct")
    return problems


def is_normal(a: Union[AtomLike, "NormalAtom"]) -> bool:
    if isinstance(a, NormalAtom):
        return True
    atom = seeded(a).atom
    return not normal_form_problems(atom.list_args, atom.int_args)


@dataclass(frozen=True)
class NormalAtom:
    """Cons-free, gap-free list arguments and distinct integer variables."""

    automaton: SsNfa
    list_args: Tuple[ListTerm, ...]
    int_args: Tuple[str, ...]
    seed: GuardFormula = TRUE
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.list_args) != self.automaton.k or len(self.int_args) != self.automaton.n:
            raise ContractViolation("normal atom arity does not match its automaton")
        problems = normal_form_problems(self.list_args, self.int_args)
        if problems:
            raise ContractViolation("; ".join(problems))
        check_arity(self.seed, self.automaton.k, self.automaton.n)

    @property
    def k(self) -> int:
        return self.automaton.k

    @property
    def n(self) -> int:
        return self.automaton.n

    def as_atom(self) -> SarAtom:
        return SarAtom(self.automaton, self.list_args, tuple(IVar(v) for v in self.int_args), self.label)

    def list_vars(self) -> Set[str]:
        return vars_of(*self.list_args)[1]

    def show(self) -> str:
        text = show_atom(self.as_atom())
        if self.seed != TRUE:
            text += f" with first letter [{show_guard(self.seed)}]"
        return text


def eval_normal_atom(na: NormalAtom, alpha: Assignment) -> bool:
    lists = [eval_list_term(t, alpha) for t in na.list_args]
    params = [alpha.ints[v] for v in na.int_args]
    return _holds(na.automaton, na.seed, lists, params)


class FreshNames:
    """Deterministic fresh variable names, one counter per normalization."""

    def __init__(self, taken: Iterable[str] = ()):
        self.taken = set(taken)
        self.counter = 0

    def _next(self, prefix: str) -> str:
        while True:
            self.counter += 1
            name = f"{prefix}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name

    def list_var(self) -> str:
        return self._next("L_")

    def int_var(self) -> str:
        return self._next("i_")

    def head_var(self) -> str:
        return self._next("h_")

    @classmethod
    def for_atom(cls, a: AtomLike) -> "FreshNames":
        atom = seeded(a).atom
        ints, lists = vars_of(*atom.list_args, *atom.int_args)
        return cls(ints | lists)
