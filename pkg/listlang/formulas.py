"""Formulas over list and integer terms, with SAR atoms as the only relations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Iterable, Mapping, Optional, Sequence, Set, Tuple, Union

from padded_logic.errors import ContractViolation
from padded_logic.guards import compare
from padded_logic.values import PAD
from ssnfa.automaton import SsNfa, SyncWord, accepts
from listlang.terms import (
    Assignment,
    IVar,
    LVar,
    IntTerm,
    ListTerm,
    Term,
    eval_int_term,
    eval_list_term,
    is_list_term,
    show_term,
    subst_term,
    term_vars,
)

if TYPE_CHECKING:  # pragma: no cover
    from listlang.predicates import PredicateDef

INT = "int"
LIST = "list"


def convolve(words: Sequence[Sequence[int]]) -> SyncWord:
    """Zip k words into one word of k-tuples, padding the shorter ones."""
    length = max((len(w) for w in words), default=0)
    return tuple(
        tuple(w[j] if j < len(w) else PAD for w in words)
        for j in range(length)
    )


@dataclass(frozen=True)
class SarAtom:
    automaton: SsNfa
    list_args: Tuple[ListTerm, ...]
    int_args: Tuple[IntTerm, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.list_args) != self.automaton.k or len(self.int_args) != self.automaton.n:
            raise ContractViolation(
                f"atom arity ({len(self.list_args)}, {len(self.int_args)}) does not match "
                f"{self.automaton.summary()}"
            )
        if any(not is_list_term(t) for t in self.list_args):
            raise ContractViolation("list arguments must be list terms")
        if any(is_list_term(t) for t in self.int_args):
            raise ContractViolation("integer arguments must be integer terms")


@dataclass(frozen=True)
class Atom:
    atom: SarAtom


@dataclass(frozen=True)
class ArithCmp:
    op: str
    left: IntTerm
    right: IntTerm


@dataclass(frozen=True)
class ListEq:
    left: ListTerm
    right: ListTerm


@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Neg:
    operand: "SarFormula"


@dataclass(frozen=True)
class Conj:
    operands: Tuple["SarFormula", ...]


@dataclass(frozen=True)
class Disj:
    operands: Tuple["SarFormula", ...]


@dataclass(frozen=True)
class Exists:
    var: str
    sort: str
    body: "SarFormula"

    def __post_init__(self) -> None:
        if self.sort not in (INT, LIST):
            raise ContractViolation(f"unknown sort {self.sort!r}")


@dataclass(frozen=True)
class PredCall:
    predicate: "PredicateDef"
    args: Tuple[Term, ...]


SarFormula = Union[Atom, ArithCmp, ListEq, Truth, Neg, Conj, Disj, Exists, PredCall]


def conjoin(parts: Iterable[SarFormula]) -> SarFormula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Conj(parts)


def disjoin(parts: Iterable[SarFormula]) -> SarFormula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Disj(parts)


def is_arith(phi: SarFormula) -> bool:
    """True for Boolean combinations of integer comparisons (and constants)."""
    if isinstance(phi, (ArithCmp, Truth)):
        return True
    if isinstance(phi, Neg):
        return is_arith(phi.operand)
    if isinstance(phi, (Conj, Disj)):
        return all(is_arith(p) for p in phi.operands)
    return False


# -- semantics ------------------------------------------------------------------------


def eval_atom(a: SarAtom, alpha: Assignment) -> bool:
    lists = [eval_list_term(t, alpha) for t in a.list_args]
    params = [eval_int_term(t, alpha) for t in a.int_args]
    return accepts(a.automaton, params, convolve(lists))


@dataclass(frozen=True)
class Domain:
    """Finite domain for evaluating existentials."""

    max_len: int
    values: Tuple[int, ...]

    def lists(self) -> Iterable[Tuple[int, ...]]:
        for length in range(self.max_len + 1):
            yield from itertools.product(self.values, repeat=length)


def holds(phi: SarFormula, alpha: Assignment, domain: Optional[Domain] = None) -> bool:
    """Standard-model truth. Existentials need a finite ``domain``."""
    if isinstance(phi, Atom):
        return eval_atom(phi.atom, alpha)
    if isinstance(phi, ArithCmp):
        return compare(phi.op, eval_int_term(phi.left, alpha), eval_int_term(phi.right, alpha))
    if isinstance(phi, ListEq):
        return eval_list_term(phi.left, alpha) == eval_list_term(phi.right, alpha)
    if isinstance(phi, Truth):
        return phi.value
    if isinstance(phi, Neg):
        return not holds(phi.operand, alpha, domain)
    if isinstance(phi, Conj):
        return all(holds(p, alpha, domain) for p in phi.operands)
    if isinstance(phi, Disj):
        return any(holds(p, alpha, domain) for p in phi.operands)
    if isinstance(phi, PredCall):
        return holds(phi.predicate.positive(*phi.args), alpha, domain)
    if isinstance(phi, Exists):
        if domain is None:
            raise ContractViolation("evaluating an existential needs a finite domain")
        candidates = domain.lists() if phi.sort == LIST else domain.values
        for value in candidates:
            inner = Assignment(dict(alpha.ints), dict(alpha.lists))
            if phi.sort == LIST:
                inner.lists[phi.var] = tuple(value)
            else:
                inner.ints[phi.var] = value
            if holds(phi.body, inner, domain):
                return True
        return False
    raise ContractViolation(f"not a formula: {phi!r}")


# -- variables and substitution -----------------------------------------------------------


def free_vars(phi: SarFormula) -> Tuple[Set[str], Set[str]]:
    ints: Set[str] = set()
    lists: Set[str] = set()
    _collect(phi, ints, lists, frozenset())
    return ints, lists


def _collect(phi: SarFormula, ints: Set[str], lists: Set[str], bound: frozenset) -> None:
    def terms(*ts: Term) -> None:
        i: Set[str] = set()
        l: Set[str] = set()
        for t in ts:
            term_vars(t, i, l)
        ints.update(i - bound)
        lists.update(l - bound)

    if isinstance(phi, Atom):
        terms(*phi.atom.list_args, *phi.atom.int_args)
    elif isinstance(phi, (ArithCmp, ListEq)):
        terms(phi.left, phi.right)
    elif isinstance(phi, PredCall):
        terms(*phi.args)
    elif isinstance(phi, Neg):
        _collect(phi.operand, ints, lists, bound)
    elif isinstance(phi, (Conj, Disj)):
        for p in phi.operands:
            _collect(p, ints, lists, bound)
    elif isinstance(phi, Exists):
        _collect(phi.body, ints, lists, bound | {phi.var})


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    suffix = 1
    while f"{base}'{suffix}" in taken:
        suffix += 1
    return f"{base}'{suffix}"


def substitute_formula(
    phi: SarFormula,
    ints: Mapping[str, IntTerm],
    lists: Mapping[str, ListTerm],
) -> SarFormula:
    """Capture-avoiding simultaneous substitution of free variables."""
    if not ints and not lists:
        return phi

    def sub(t: Term) -> Term:
        return subst_term(t, ints, lists)

    if isinstance(phi, Atom):
        a = phi.atom
        return Atom(
            SarAtom(a.automaton, tuple(sub(t) for t in a.list_args), tuple(sub(t) for t in a.int_args), a.label)
        )
    if isinstance(phi, ArithCmp):
        return ArithCmp(phi.op, sub(phi.left), sub(phi.right))
    if isinstance(phi, ListEq):
        return ListEq(sub(phi.left), sub(phi.right))
    if isinstance(phi, Truth):
        return phi
    if isinstance(phi, PredCall):
        return PredCall(phi.predicate, tuple(sub(t) for t in phi.args))
    if isinstance(phi, Neg):
        return Neg(substitute_formula(phi.operand, ints, lists))
    if isinstance(phi, Conj):
        return Conj(tuple(substitute_formula(p, ints, lists) for p in phi.operands))
    if isinstance(phi, Disj):
        return Disj(tuple(substitute_formula(p, ints, lists) for p in phi.operands))
    if isinstance(phi, Exists):
        inner_ints = {k: v for k, v in ints.items() if k != phi.var}
        inner_lists = {k: v for k, v in lists.items() if k != phi.var}
        incoming: Set[str] = set()
        for t in list(inner_ints.values()) + list(inner_lists.values()):
            i: Set[str] = set()
            l: Set[str] = set()
            term_vars(t, i, l)
            incoming |= i | l
        var, body = phi.var, phi.body
        if var in incoming:
            body_ints, body_lists = free_vars(body)
            renamed = fresh_name(var, incoming | body_ints | body_lists)
            body = rename_bound(body, var, renamed, phi.sort)
            var = renamed
        return Exists(var, phi.sort, substitute_formula(body, inner_ints, inner_lists))
    raise ContractViolation(f"not a formula: {phi!r}")


def rename_bound(body: SarFormula, old: str, new: str, sort: str) -> SarFormula:
    if sort == LIST:
        return substitute_formula(body, {}, {old: LVar(new)})
    return substitute_formula(body, {old: IVar(new)}, {})


# -- printing ----------------------------------------------------------------------------


def show_atom(a: SarAtom) -> str:
    name = a.label or "R"
    args = ", ".join(show_term(t) for t in a.list_args)
    if a.int_args:
        args += "; " + ", ".join(show_term(t) for t in a.int_args)
    return f"{name}({args})"


_PRECEDENCE: Dict[type, int] = {Disj: 1, Conj: 2}


def show_formula(phi: SarFormula) -> str:
    if isinstance(phi, Atom):
        return show_atom(phi.atom)
    if isinstance(phi, ArithCmp):
        op = "==" if phi.op == "=" else phi.op
        return f"{show_term(phi.left)} {op} {show_term(phi.right)}"
    if isinstance(phi, ListEq):
        return f"{show_term(phi.left)} == {show_term(phi.right)}"
    if isinstance(phi, Truth):
        return "true" if phi.value else "false"
    if isinstance(phi, PredCall):
        return f"{phi.predicate.name}({', '.join(show_term(t) for t in phi.args)})"
    if isinstance(phi, Neg):
        inner = phi.operand
        if isinstance(inner, ListEq):
            return f"{show_term(inner.left)} != {show_term(inner.right)}"
        text = show_formula(inner)
        if isinstance(inner, (Atom, PredCall, Truth)):
            return f"!{text}"
        return f"!({text})"
    if isinstance(phi, (Conj, Disj)):
        joiner = " && " if isinstance(phi, Conj) else " || "
        mine = _PRECEDENCE[type(phi)]
        parts = []
        for p in phi.operands:
            text = show_formula(p)
            if isinstance(p, Exists) or _PRECEDENCE.get(type(p), 3) <= mine:
                text = f"({text})"
            parts.append(text)
        return joiner.join(parts)
    if isinstance(phi, Exists):
        names = [phi.var]
        body = phi.body
        while isinstance(body, Exists):
            names.append(body.var)
            body = body.body
        return f"exists {', '.join(names)}. {show_formula(body)}"
    raise ContractViolation(f"not a formula: {phi!r}")
