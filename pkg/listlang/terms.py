"""Integer and list terms over the list signature (nil, cons, head, tail).

head and tail are total: head(nil) = 0 and tail(nil) = nil.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Set, Tuple, Union

from padded_logic.errors import ContractViolation


@dataclass(frozen=True)
class IVar:
    name: str


@dataclass(frozen=True)
class IConst:
    value: int


@dataclass(frozen=True)
class IAdd:
    left: "IntTerm"
    right: "IntTerm"


@dataclass(frozen=True)
class ISub:
    left: "IntTerm"
    right: "IntTerm"


@dataclass(frozen=True)
class IMulConst:
    factor: int
    term: "IntTerm"


@dataclass(frozen=True)
class Head:
    arg: "ListTerm"


IntTerm = Union[IVar, IConst, IAdd, ISub, IMulConst, Head]


@dataclass(frozen=True)
class Nil:
    pass


NIL = Nil()


@dataclass(frozen=True)
class LVar:
    name: str


@dataclass(frozen=True)
class Cons:
    head: IntTerm
    tail: "ListTerm"


@dataclass(frozen=True)
class Tail:
    arg: "ListTerm"


ListTerm = Union[Nil, LVar, Cons, Tail]
Term = Union[IntTerm, ListTerm]

INT_TERMS = (IVar, IConst, IAdd, ISub, IMulConst, Head)
LIST_TERMS = (Nil, LVar, Cons, Tail)


def is_list_term(term: object) -> bool:
    return isinstance(term, LIST_TERMS)


@dataclass
class Assignment:
    ints: Dict[str, int] = field(default_factory=dict)
    lists: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    def show(self) -> str:
        parts = [f"{name}=[{','.join(map(str, value))}]" for name, value in sorted(self.lists.items())]
        parts += [f"{name}={value}" for name, value in sorted(self.ints.items())]
        return ", ".join(parts)

    def to_json(self) -> Dict[str, object]:
        return {
            "ints": dict(sorted(self.ints.items())),
            "lists": {name: list(value) for name, value in sorted(self.lists.items())},
        }


# -- construction helpers ------------------------------------------------------------


def tail_n(term: ListTerm, times: int) -> ListTerm:
    for _ in range(times):
        term = Tail(term)
    return term


def cons_list(values: List[IntTerm], base: ListTerm = NIL) -> ListTerm:
    for value in reversed(values):
        base = Cons(value, base)
    return base


def tail_shape(term: ListTerm) -> Optional[Tuple[Optional[str], int]]:
    """(X, m) for Tail^m(X), (None, 0) for nil, None for anything else."""
    if isinstance(term, Nil):
        return (None, 0)
    depth = 0
    while isinstance(term, Tail):
        term = term.arg
        depth += 1
    if isinstance(term, LVar):
        return (term.name, depth)
    return None


def cons_spine(term: ListTerm) -> Tuple[List[IntTerm], ListTerm]:
    heads: List[IntTerm] = []
    while isinstance(term, Cons):
        heads.append(term.head)
        term = term.tail
    return heads, term


# -- evaluation ------------------------------------------------------------------------


def eval_int_term(term: IntTerm, alpha: Assignment) -> int:
    if isinstance(term, IVar):
        if term.name not in alpha.ints:
            raise ContractViolation(f"integer variable {term.name!r} is unassigned")
        return alpha.ints[term.name]
    if isinstance(term, IConst):
        return term.value
    if isinstance(term, IAdd):
        return eval_int_term(term.left, alpha) + eval_int_term(term.right, alpha)
    if isinstance(term, ISub):
        return eval_int_term(term.left, alpha) - eval_int_term(term.right, alpha)
    if isinstance(term, IMulConst):
        return term.factor * eval_int_term(term.term, alpha)
    if isinstance(term, Head):
        value = eval_list_term(term.arg, alpha)
        return value[0] if value else 0
    raise ContractViolation(f"not an integer term: {term!r}")


def eval_list_term(term: ListTerm, alpha: Assignment) -> Tuple[int, ...]:
    if isinstance(term, Nil):
        return ()
    if isinstance(term, LVar):
        if term.name not in alpha.lists:
            raise ContractViolation(f"list variable {term.name!r} is unassigned")
        return tuple(alpha.lists[term.name])
    if isinstance(term, Cons):
        return (eval_int_term(term.head, alpha),) + eval_list_term(term.tail, alpha)
    if isinstance(term, Tail):
        return eval_list_term(term.arg, alpha)[1:]
    raise ContractViolation(f"not a list term: {term!r}")


# -- variables and substitution ------------------------------------------------------------


def term_vars(term: Term, ints: Set[str], lists: Set[str]) -> None:
    if isinstance(term, IVar):
        ints.add(term.name)
    elif isinstance(term, LVar):
        lists.add(term.name)
    elif isinstance(term, (IAdd, ISub)):
        term_vars(term.left, ints, lists)
        term_vars(term.right, ints, lists)
    elif isinstance(term, IMulConst):
        term_vars(term.term, ints, lists)
    elif isinstance(term, (Head, Tail)):
        term_vars(term.arg, ints, lists)
    elif isinstance(term, Cons):
        term_vars(term.head, ints, lists)
        term_vars(term.tail, ints, lists)


def vars_of(*terms: Term) -> Tuple[Set[str], Set[str]]:
    ints: Set[str] = set()
    lists: Set[str] = set()
    for term in terms:
        term_vars(term, ints, lists)
    return ints, lists


def subst_term(term: Term, ints: Mapping[str, IntTerm], lists: Mapping[str, ListTerm]) -> Term:
    if isinstance(term, IVar):
        return ints.get(term.name, term)
    if isinstance(term, LVar):
        return lists.get(term.name, term)
    if isinstance(term, (IConst, Nil)):
        return term
    if isinstance(term, IAdd):
        return IAdd(subst_term(term.left, ints, lists), subst_term(term.right, ints, lists))
    if isinstance(term, ISub):
        return ISub(subst_term(term.left, ints, lists), subst_term(term.right, ints, lists))
    if isinstance(term, IMulConst):
        return IMulConst(term.factor, subst_term(term.term, ints, lists))
    if isinstance(term, Head):
        return Head(subst_term(term.arg, ints, lists))
    if isinstance(term, Tail):
        return Tail(subst_term(term.arg, ints, lists))
    if isinstance(term, Cons):
        return Cons(subst_term(term.head, ints, lists), subst_term(term.tail, ints, lists))
    raise ContractViolation(f"not a term: {term!r}")


def heads_in(term: Term) -> Iterator[Head]:
    if isinstance(term, Head):
        yield from heads_in(term.arg)
        yield term
    elif isinstance(term, (IAdd, ISub)):
        yield from heads_in(term.left)
        yield from heads_in(term.right)
    elif isinstance(term, IMulConst):
        yield from heads_in(term.term)
    elif isinstance(term, Tail):
        yield from heads_in(term.arg)
    elif isinstance(term, Cons):
        yield from heads_in(term.head)
        yield from heads_in(term.tail)


# -- simplification ---------------------------------------------------------------------


def simplify(term: Term) -> Term:
    """tail(cons(t, T)) -> T, tail(nil) -> nil, head(cons(t, T)) -> t, head(nil) -> 0."""
    if isinstance(term, Tail):
        inner = simplify(term.arg)
        if isinstance(inner, Cons):
            return inner.tail
        if isinstance(inner, Nil):
            return NIL
        return Tail(inner)
    if isinstance(term, Head):
        inner = simplify(term.arg)
        if isinstance(inner, Cons):
            return inner.head
        if isinstance(inner, Nil):
            return IConst(0)
        return Head(inner)
    if isinstance(term, Cons):
        return Cons(simplify(term.head), simplify(term.tail))
    if isinstance(term, IAdd):
        return IAdd(simplify(term.left), simplify(term.right))
    if isinstance(term, ISub):
        return ISub(simplify(term.left), simplify(term.right))
    if isinstance(term, IMulConst):
        return IMulConst(term.factor, simplify(term.term))
    return term


def linearize(term: IntTerm) -> Tuple[Dict[str, int], int]:
    """Coefficients per variable and the constant part of a head-free term."""
    if isinstance(term, IVar):
        return {term.name: 1}, 0
    if isinstance(term, IConst):
        return {}, term.value
    if isinstance(term, (IAdd, ISub)):
        left, lc = linearize(term.left)
        right, rc = linearize(term.right)
        sign = 1 if isinstance(term, IAdd) else -1
        coeffs = dict(left)
        for name, c in right.items():
            coeffs[name] = coeffs.get(name, 0) + sign * c
        return {n: c for n, c in coeffs.items() if c}, lc + sign * rc
    if isinstance(term, IMulConst):
        inner, ic = linearize(term.term)
        return {n: term.factor * c for n, c in inner.items() if term.factor * c}, term.factor * ic
    raise ContractViolation(f"cannot linearize {show_term(term)}")


# -- printing ------------------------------------------------------------------------------


def show_term(term: Term) -> str:
    if isinstance(term, (IVar, LVar)):
        return term.name
    if isinstance(term, IConst):
        return str(term.value)
    if isinstance(term, Nil):
        return "nil"
    if isinstance(term, IAdd):
        return f"{show_term(term.left)} + {_operand(term.right)}"
    if isinstance(term, ISub):
        return f"{show_term(term.left)} - {_operand(term.right)}"
    if isinstance(term, IMulConst):
        return f"{term.factor} * {_operand(term.term)}"
    if isinstance(term, Head):
        return f"head({show_term(term.arg)})"
    if isinstance(term, Tail):
        return f"tail({show_term(term.arg)})"
    if isinstance(term, Cons):
        return f"cons({show_term(term.head)}, {show_term(term.tail)})"
    raise ContractViolation(f"not a term: {term!r}")


def _operand(term: Term) -> str:
    text = show_term(term)
    if isinstance(term, (IAdd, ISub, IMulConst)) or (isinstance(term, IConst) and term.value < 0):
        return f"({text})"
    return text
