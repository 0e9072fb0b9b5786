"""From a normal SAR atom to linear CHCs over integers.

One predicate per automaton state reads the current letter (a flag and a
value per track) plus the atom's integer variables. The atom is satisfiable
in the standard list model iff the generated system has no model, i.e.
false is derivable.
"""

from __future__ import annotations

import logging
import re
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from padded_logic.errors import ContractViolation
from padded_logic.guards import (
    Add,
    And,
    BoolConst,
    Cmp,
    Const,
    GuardFormula,
    GuardTerm,
    IsPad,
    MulConst,
    Not,
    Or,
    ParamVar,
    Sub,
    TrackVar,
    show_guard,
)
from chc.constraints import (
    CBool,
    CCmp,
    CFlag,
    Constraint,
    Lin,
    cand,
    ceq,
    cimplies,
    cnot,
    cor,
)
from chc.model import GOAL, INIT, STEP, ChcSystem, Clause, FlaggedVar, PredApp, PredicateSig, letter_vars, pred_args
from listlang.terms import show_term, tail_shape
from normalize.atoms import NormalAtom

logger = logging.getLogger(__name__)

_RESERVED = re.compile(r"^[uv]\d+[fv]$")


def _compile_term(term: GuardTerm, letter: Sequence[FlaggedVar], params: Sequence[str]) -> Tuple[Lin, FrozenSet[int]]:
    if isinstance(term, TrackVar):
        return Lin.var(letter[term.index].value), frozenset({term.index})
    if isinstance(term, ParamVar):
        return Lin.var(params[term.index]), frozenset()
    if isinstance(term, Const):
        return Lin.constant(term.value), frozenset()
    if isinstance(term, (Add, Sub)):
        left, lt = _compile_term(term.left, letter, params)
        right, rt = _compile_term(term.right, letter, params)
        return (left + right if isinstance(term, Add) else left - right), lt | rt
    if isinstance(term, MulConst):
        inner, it = _compile_term(term.term, letter, params)
        return inner.scale(term.factor), it
    raise ContractViolation(f"not a guard term: {term!r}")


def compile_guard_flagged(phi: GuardFormula, letter: Sequence[FlaggedVar], params: Sequence[str]) -> Constraint:
    """Guard semantics over (flag, value) pairs.

    A comparison holds only when none of its tracks is padded; ispad(t)
    holds when some track of t is padded. Negation stays classical.
    """
    if isinstance(phi, BoolConst):
        return CBool(phi.value)
    if isinstance(phi, Cmp):
        left, lt = _compile_term(phi.left, letter, params)
        right, rt = _compile_term(phi.right, letter, params)
        defined = [cnot(CFlag(letter[i].flag)) for i in sorted(lt | rt)]
        return cand(*defined, CCmp(phi.op, left, right))
    if isinstance(phi, IsPad):
        _, tracks = _compile_term(phi.term, letter, params)
        return cor(*(CFlag(letter[i].flag) for i in sorted(tracks)))
    if isinstance(phi, Not):
        return cnot(compile_guard_flagged(phi.operand, letter, params))
    if isinstance(phi, And):
        return cand(*(compile_guard_flagged(p, letter, params) for p in phi.operands))
    if isinstance(phi, Or):
        return cor(*(compile_guard_flagged(p, letter, params) for p in phi.operands))
    raise ContractViolation(f"not a guard formula: {phi!r}")


def predicate_names(states: Iterable[str]) -> Dict[str, str]:
    names: Dict[str, str] = {}
    used = set()
    for state in states:
        base = "I_" + re.sub(r"[^A-Za-z0-9_]", "_", state)
        name = base
        suffix = 1
        while name in used:
            suffix += 1
            name = f"{base}_{suffix}"
        used.add(name)
        names[state] = name
    return names


def track_links(na: NormalAtom) -> Tuple[List[Tuple[int, int]], List[int]]:
    """Pairs (i, j) with track j = tail(track i), and the nil tracks."""
    shapes = [tail_shape(t) for t in na.list_args]
    index = {shape: i for i, shape in enumerate(shapes) if shape[0] is not None}
    links = []
    nil = []
    for i, (name, depth) in enumerate(shapes):
        if name is None:
            nil.append(i)
        elif (name, depth + 1) in index:
            links.append((i, index[(name, depth + 1)]))
    return links, nil


def _pad(v: FlaggedVar) -> Constraint:
    return CFlag(v.flag)


def _same_letter(a: FlaggedVar, b: FlaggedVar) -> Constraint:
    both_set = cand(cnot(_pad(a)), cnot(_pad(b)), ceq(a.value, b.value))
    return cor(both_set, cand(_pad(a), _pad(b)))


def end_of_input(letter: Sequence[FlaggedVar]) -> Constraint:
    return cand(*(_pad(v) for v in letter))


def to_chc(na: NormalAtom) -> ChcSystem:
    if not isinstance(na, NormalAtom):
        raise ContractViolation("to_chc expects a normalized atom")
    m = na.automaton
    params = tuple(na.int_args)
    clash = [p for p in params if _RESERVED.match(p)]
    if clash:
        raise ContractViolation(f"integer variables {clash} collide with letter variable names")
    u = letter_vars("u", m.k)
    v = letter_vars("v", m.k)
    links, nil = track_links(na)
    names = predicate_names(m.states)
    predicates = tuple(PredicateSig(names[s], m.k, m.n, s) for s in m.states)

    shift = [_same_letter(v[i], u[j]) for i, j in links]
    padding = [cimplies(_pad(u[i]), _pad(v[i])) for i in range(m.k)]
    cons_nil = [_pad(v[i]) for i in nil]
    tail_nil = [cimplies(_pad(v[i]), _pad(v[j])) for i, j in links]
    reading = cnot(end_of_input(u))

    clauses: List[Clause] = []
    seed = compile_guard_flagged(na.seed, v, params)
    for q in sorted(m.initial):
        clauses.append(
            Clause(INIT, PredApp(names[q], pred_args(v, params)), None, cand(*cons_nil, *tail_nil, seed), f"init {q}")
        )
    for t in m.transitions:
        constraint = cand(compile_guard_flagged(t.guard, u, params), *shift, *padding, reading)
        clauses.append(
            Clause(
                STEP,
                PredApp(names[t.target], pred_args(v, params)),
                PredApp(names[t.source], pred_args(u, params)),
                constraint,
                f"{t.source} -> {t.target} [{show_guard(t.guard)}]",
            )
        )
    for q in sorted(m.final):
        clauses.append(Clause(GOAL, None, PredApp(names[q], pred_args(u, params)), end_of_input(u), f"final {q}"))

    system = ChcSystem(
        predicates,
        tuple(clauses),
        params,
        tuple(show_term(t) for t in na.list_args),
        tuple(links),
        tuple(nil),
    )
    logger.debug("to_chc: %s", system.summary())
    return system
