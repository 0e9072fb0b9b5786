"""Compiling formulas to single SAR atoms.

Boolean combinations of atoms (and of arithmetic and list equations) are
compiled to one atom by automaton products, unions and complements;
existentials are pulled to the front, giving a Σ1 formula whose matrix is
a single atom.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from padded_logic.errors import ContractViolation, InputError
from padded_logic.guards import (
    FALSE,
    TRUE,
    Add,
    Cmp,
    Const,
    GuardFormula,
    GuardTerm,
    MulConst,
    Sub,
    cmp,
    conj,
    disj,
    eval_guard,
    ispad,
    neg,
    track,
)
from ssnfa.automaton import SsNfa, Transition
from ssnfa.constructions import complement, extend_tracks, product, restrict_to_convolutions, union
from listlang.formulas import (
    LIST,
    ArithCmp,
    Atom,
    Conj,
    Disj,
    Exists,
    ListEq,
    Neg,
    PredCall,
    SarAtom,
    SarFormula,
    Truth,
    free_vars,
    is_arith,
    substitute_formula,
)
from listlang.terms import (
    NIL,
    Cons,
    Head,
    IAdd,
    IConst,
    IMulConst,
    IntTerm,
    ISub,
    IVar,
    ListTerm,
    LVar,
    Term,
    heads_in,
    simplify,
)

logger = logging.getLogger(__name__)


def _merge(left: Sequence[Term], right: Sequence[Term]) -> Tuple[List[Term], List[int]]:
    combined = list(left)
    positions = []
    for term in right:
        if term in combined:
            positions.append(combined.index(term))
        else:
            positions.append(len(combined))
            combined.append(term)
    return combined, positions


def _widen(a: SarAtom, b: SarAtom) -> Tuple[List[ListTerm], List[IntTerm], SsNfa, SsNfa]:
    list_args, b_tracks = _merge(a.list_args, b.list_args)
    int_args, b_params = _merge(a.int_args, b.int_args)
    k, n = len(list_args), len(int_args)
    ma = extend_tracks(a.automaton, k, n, range(a.automaton.k), range(a.automaton.n))
    mb = extend_tracks(b.automaton, k, n, b_tracks, b_params)
    return list_args, int_args, ma, mb


def delta0_and(a: SarAtom, b: SarAtom) -> SarAtom:
    """Conjunction. Syntactically equal arguments share one track."""
    list_args, int_args, ma, mb = _widen(a, b)
    return SarAtom(product(ma, mb), tuple(list_args), tuple(int_args), f"({a.label or 'R'} & {b.label or 'R'})")


def delta0_or(a: SarAtom, b: SarAtom) -> SarAtom:
    list_args, int_args, ma, mb = _widen(a, b)
    return SarAtom(union(ma, mb), tuple(list_args), tuple(int_args), f"({a.label or 'R'} | {b.label or 'R'})")


def delta0_not(a: SarAtom, within_conv: bool = True) -> SarAtom:
    m = complement(a.automaton)
    if within_conv:
        m = restrict_to_convolutions(m)
    return SarAtom(m, a.list_args, a.int_args, f"~{a.label or 'R'}")


# -- equations ------------------------------------------------------------------------


def eq_automaton() -> SsNfa:
    return SsNfa.build(2, 0, ["q"], ["q"], ["q"], [Transition("q", cmp("=", track(0), track(1)), "q")])


def neq_automaton() -> SsNfa:
    # not (l0 = l1) also holds when exactly one side is padded
    return SsNfa.build(
        2,
        0,
        ["q", "d"],
        ["q"],
        ["d"],
        [
            Transition("q", cmp("=", track(0), track(1)), "q"),
            Transition("q", neg(cmp("=", track(0), track(1))), "d"),
            Transition("d", TRUE, "d"),
        ],
    )


def list_eq_atom(left: ListTerm, right: ListTerm, negated: bool = False) -> SarAtom:
    m = neq_automaton() if negated else eq_automaton()
    return SarAtom(m, (left, right), (), "neq" if negated else "eq")


# -- arithmetic ---------------------------------------------------------------------------


def _arith_terms(phi: SarFormula) -> List[IntTerm]:
    if isinstance(phi, ArithCmp):
        return [phi.left, phi.right]
    if isinstance(phi, Neg):
        return _arith_terms(phi.operand)
    if isinstance(phi, (Conj, Disj)):
        return [t for p in phi.operands for t in _arith_terms(p)]
    return []


def _simplify_arith(phi: SarFormula) -> SarFormula:
    if isinstance(phi, ArithCmp):
        return ArithCmp(phi.op, simplify(phi.left), simplify(phi.right))
    if isinstance(phi, Neg):
        return Neg(_simplify_arith(phi.operand))
    if isinstance(phi, Conj):
        return Conj(tuple(_simplify_arith(p) for p in phi.operands))
    if isinstance(phi, Disj):
        return Disj(tuple(_simplify_arith(p) for p in phi.operands))
    return phi


def int_to_guard(
    term: IntTerm,
    variables: Mapping[str, GuardTerm],
    heads: Mapping[ListTerm, GuardTerm],
) -> GuardTerm:
    if isinstance(term, IVar):
        if term.name not in variables:
            raise ContractViolation(f"no track for integer variable {term.name!r}")
        return variables[term.name]
    if isinstance(term, IConst):
        return Const(term.value)
    if isinstance(term, IAdd):
        return Add(int_to_guard(term.left, variables, heads), int_to_guard(term.right, variables, heads))
    if isinstance(term, ISub):
        return Sub(int_to_guard(term.left, variables, heads), int_to_guard(term.right, variables, heads))
    if isinstance(term, IMulConst):
        return MulConst(term.factor, int_to_guard(term.term, variables, heads))
    if isinstance(term, Head):
        if term.arg not in heads:
            raise ContractViolation("no track for head term")
        return heads[term.arg]
    raise ContractViolation(f"not an integer term: {term!r}")


def arith_to_guard(
    phi: SarFormula,
    variables: Mapping[str, GuardTerm],
    heads: Mapping[ListTerm, GuardTerm],
) -> GuardFormula:
    if isinstance(phi, Truth):
        return TRUE if phi.value else FALSE
    if isinstance(phi, ArithCmp):
        return Cmp(phi.op, int_to_guard(phi.left, variables, heads), int_to_guard(phi.right, variables, heads))
    if isinstance(phi, Neg):
        return neg(arith_to_guard(phi.operand, variables, heads))
    if isinstance(phi, Conj):
        return conj(*(arith_to_guard(p, variables, heads) for p in phi.operands))
    if isinstance(phi, Disj):
        return disj(*(arith_to_guard(p, variables, heads) for p in phi.operands))
    raise InputError(f"not an arithmetic formula: {phi!r}")


def lift_arith(phi: SarFormula) -> SarAtom:
    """One-letter automaton for an arithmetic formula.

    Integer variable x is read as the singleton list cons(x, nil); head(T)
    is read as the first letter of T, or as 0 when that letter is padded.
    """
    if not is_arith(phi):
        raise InputError("lift_arith expects a Boolean combination of integer comparisons")
    phi = _simplify_arith(phi)
    ints, _ = free_vars(phi)
    names = sorted(ints)
    heads: List[ListTerm] = []
    for term in _arith_terms(phi):
        for h in heads_in(term):
            if h.arg not in heads:
                heads.append(h.arg)
    nested = [t for t in heads if list(heads_in(t))]
    if nested:
        raise InputError("head terms inside head arguments must be flattened first")
    variables = {name: track(i) for i, name in enumerate(names)}
    first = len(names)
    branches = []
    for empties in itertools.product((False, True), repeat=len(heads)):
        head_map: Dict[ListTerm, GuardTerm] = {}
        shape = []
        for j, (term, empty) in enumerate(zip(heads, empties)):
            position = track(first + j)
            head_map[term] = Const(0) if empty else position
            shape.append(ispad(position) if empty else neg(ispad(position)))
        branches.append(conj(*shape, arith_to_guard(phi, variables, head_map)))
    guard = disj(*branches)
    list_args = tuple(Cons(IVar(name), NIL) for name in names) + tuple(heads)
    k = len(list_args)
    final = ["q1"]
    if not names:
        zeros = {term: Const(0) for term in heads}
        if eval_guard(arith_to_guard(phi, {}, zeros), (), ()):
            final.append("q0")
    m = SsNfa.build(
        k,
        0,
        ["q0", "q1"],
        ["q0"],
        final,
        [Transition("q0", guard, "q1"), Transition("q1", TRUE, "q1")],
    )
    logger.debug("lift_arith: %d variables, %d head tracks", len(names), len(heads))
    return SarAtom(m, list_args, (), "arith")


# -- whole formulas -----------------------------------------------------------------------


def nnf(phi: SarFormula, positive: bool = True) -> SarFormula:
    """Negation normal form with predicate calls expanded.

    A negated call uses the predicate's negative definition when it has one.
    """
    if isinstance(phi, Neg):
        return nnf(phi.operand, not positive)
    if isinstance(phi, Truth):
        return phi if positive else Truth(not phi.value)
    if isinstance(phi, (Atom, ArithCmp, ListEq)):
        return phi if positive else Neg(phi)
    if isinstance(phi, Conj):
        parts = tuple(nnf(p, positive) for p in phi.operands)
        return Conj(parts) if positive else Disj(parts)
    if isinstance(phi, Disj):
        parts = tuple(nnf(p, positive) for p in phi.operands)
        return Disj(parts) if positive else Conj(parts)
    if isinstance(phi, PredCall):
        pred = phi.predicate
        if positive:
            return nnf(pred.positive(*phi.args), True)
        if pred.negative is not None:
            return nnf(pred.negative(*phi.args), True)
        return nnf(pred.positive(*phi.args), False)
    if isinstance(phi, Exists):
        if not positive:
            raise InputError(
                f"existential over {phi.var!r} occurs under negation; the formula is not in the Σ1 class"
            )
        return Exists(phi.var, phi.sort, nnf(phi.body, True))
    raise ContractViolation(f"not a formula: {phi!r}")


@dataclass(frozen=True)
class Sigma1:
    """``exists bound. matrix`` with the matrix compiled to ``atom``."""

    bound: Tuple[Tuple[str, str], ...]
    matrix: SarFormula
    atom: SarAtom


class _Puller:
    def __init__(self, taken):
        self.taken = set(taken)
        self.bound: List[Tuple[str, str]] = []
        self.counter = 0

    def fresh(self, name: str) -> str:
        while True:
            self.counter += 1
            candidate = f"{name}#{self.counter}"
            if candidate not in self.taken:
                self.taken.add(candidate)
                return candidate

    def pull(self, phi: SarFormula) -> SarFormula:
        if isinstance(phi, Exists):
            name = self.fresh(phi.var)
            self.bound.append((name, phi.sort))
            if phi.sort == LIST:
                body = substitute_formula(phi.body, {}, {phi.var: LVar(name)})
            else:
                body = substitute_formula(phi.body, {phi.var: IVar(name)}, {})
            return self.pull(body)
        if isinstance(phi, Conj):
            return Conj(tuple(self.pull(p) for p in phi.operands))
        if isinstance(phi, Disj):
            return Disj(tuple(self.pull(p) for p in phi.operands))
        return phi


def prenex(phi: SarFormula) -> Tuple[Tuple[Tuple[str, str], ...], SarFormula]:
    """Existentials pulled to the front of the negation normal form."""
    ints, lists = free_vars(phi)
    puller = _Puller(ints | lists)
    matrix = puller.pull(nnf(phi))
    return tuple(puller.bound), matrix


def to_sigma1(phi: SarFormula) -> Sigma1:
    bound, matrix = prenex(phi)
    atom = to_delta0(matrix)
    logger.debug("to_sigma1: %d bound variables, %s", len(bound), atom.automaton.summary())
    return Sigma1(bound, matrix, atom)


def to_atom(phi: SarFormula) -> SarAtom:
    return to_sigma1(phi).atom


def to_delta0(phi: SarFormula) -> SarAtom:
    """Compile a quantifier-free formula in negation normal form."""
    if isinstance(phi, Atom):
        return phi.atom
    if is_arith(phi):
        return lift_arith(phi)
    if isinstance(phi, ListEq):
        return list_eq_atom(phi.left, phi.right)
    if isinstance(phi, Neg):
        inner = phi.operand
        if isinstance(inner, Atom):
            return delta0_not(inner.atom)
        if isinstance(inner, ListEq):
            return list_eq_atom(inner.left, inner.right, negated=True)
        return delta0_not(to_delta0(inner))
    if isinstance(phi, (Conj, Disj)):
        arith = [p for p in phi.operands if is_arith(p)]
        rest = [p for p in phi.operands if not is_arith(p)]
        parts = [to_delta0(p) for p in rest]
        if arith:
            combined = Conj(tuple(arith)) if isinstance(phi, Conj) else Disj(tuple(arith))
            parts.append(lift_arith(combined))
        combine = delta0_and if isinstance(phi, Conj) else delta0_or
        result = parts[0]
        for part in parts[1:]:
            result = combine(result, part)
        return result
    if isinstance(phi, (Exists, PredCall)):
        raise ContractViolation("to_delta0 expects an expanded, quantifier-free formula")
    raise ContractViolation(f"not a formula: {phi!r}")
