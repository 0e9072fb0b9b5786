"""Rewriting a SAR atom into normal form.

Stages, in order: simplification and duplicate merging, head flattening,
cons elimination (first-letter seeding or unrolling), gap completion and
integer-argument cleanup. Every stage preserves satisfiability in the
standard list model.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from padded_logic.errors import ContractViolation, InputError
from padded_logic.guards import (
    Add,
    Const,
    GuardFormula,
    GuardTerm,
    MulConst,
    ParamVar,
    cmp,
    conj,
    disj,
    ispad,
    neg,
    param,
    reindex,
    substitute,
    track,
)
from ssnfa.automaton import SsNfa, Transition
from ssnfa.constructions import extend_tracks
from listlang.closure import delta0_and, list_eq_atom
from listlang.formulas import SarAtom
from listlang.terms import (
    Cons,
    Head,
    IAdd,
    IMulConst,
    IntTerm,
    ISub,
    IVar,
    ListTerm,
    LVar,
    Nil,
    Tail,
    cons_list,
    cons_spine,
    heads_in,
    linearize,
    simplify,
    subst_term,
    tail_n,
    tail_shape,
)
from normalize.atoms import AtomLike, FreshNames, NormalAtom, SeededAtom, seeded

logger = logging.getLogger(__name__)

CONS_STRATEGIES = ("auto", "unroll", "seed")


def _with_args(
    sa: SeededAtom,
    m: SsNfa,
    list_args: Sequence[ListTerm],
    int_args: Sequence[IntTerm],
    seed: Optional[GuardFormula] = None,
) -> SeededAtom:
    atom = SarAtom(m, tuple(list_args), tuple(int_args), sa.atom.label)
    return SeededAtom(atom, sa.seed if seed is None else seed)


def _widen(sa: SeededAtom, extra_lists: Sequence[ListTerm], extra_ints: Sequence[IntTerm]) -> SeededAtom:
    """Append ignored tracks and unused parameters."""
    m = sa.atom.automaton
    if not extra_lists and not extra_ints:
        return sa
    k = m.k + len(extra_lists)
    n = m.n + len(extra_ints)
    wide = extend_tracks(m, k, n, range(m.k), range(m.n))
    return _with_args(sa, wide, list(sa.atom.list_args) + list(extra_lists), list(sa.atom.int_args) + list(extra_ints))


def simplify_atom(a: AtomLike) -> SeededAtom:
    sa = seeded(a)
    return _with_args(
        sa,
        sa.atom.automaton,
        [simplify(t) for t in sa.atom.list_args],
        [simplify(t) for t in sa.atom.int_args],
    )


def _positions(terms: Sequence[object]) -> Tuple[List[object], List[int]]:
    unique: List[object] = []
    where = []
    for term in terms:
        if term not in unique:
            unique.append(term)
        where.append(unique.index(term))
    return unique, where


def merge_duplicate_args(a: AtomLike) -> SeededAtom:
    """Syntactically equal arguments are read from one track (one parameter)."""
    sa = seeded(a)
    lists, track_map = _positions(sa.atom.list_args)
    ints, param_map = _positions(sa.atom.int_args)
    if len(lists) == len(track_map) and len(ints) == len(param_map):
        return sa
    m = extend_tracks(sa.atom.automaton, len(lists), len(ints), track_map, param_map)
    seed = reindex(sa.seed, dict(enumerate(track_map)), dict(enumerate(param_map)))
    return _with_args(sa, m, lists, ints, seed)


# -- head flattening ---------------------------------------------------------------------


def flatten_heads(a: AtomLike, names: Optional[FreshNames] = None) -> SeededAtom:
    """Replace each head(T) by a fresh integer h bound to T's first letter.

    h is passed as a new parameter; the seed gains
    ``(not ispad(l_T) and l_T = h) or (ispad(l_T) and h = 0)``.
    """
    sa = simplify_atom(a)
    names = names or FreshNames.for_atom(sa)
    found: List[Head] = []
    for term in list(sa.atom.list_args) + list(sa.atom.int_args):
        for h in heads_in(term):
            if h not in found:
                found.append(h)
    if not found:
        return sa
    fresh = {h: IVar(names.head_var()) for h in found}

    def replace(term):
        if isinstance(term, Head):
            return fresh[term]
        if isinstance(term, Cons):
            return Cons(replace(term.head), replace(term.tail))
        if isinstance(term, Tail):
            return Tail(replace(term.arg))
        if isinstance(term, (IAdd, ISub)):
            return type(term)(replace(term.left), replace(term.right))
        if isinstance(term, IMulConst):
            return IMulConst(term.factor, replace(term.term))
        return term

    list_args = [replace(t) for t in sa.atom.list_args]
    int_args = [replace(t) for t in sa.atom.int_args]
    extra_lists = [h.arg for h in found if h.arg not in list_args]
    replaced = _with_args(sa, sa.atom.automaton, list_args, int_args)
    widened = _widen(replaced, extra_lists, [fresh[h] for h in found])
    all_lists = list(widened.atom.list_args)
    base = len(int_args)
    parts = [widened.seed]
    for j, h in enumerate(found):
        lane = track(all_lists.index(h.arg))
        value = param(base + j)
        parts.append(disj(conj(neg(ispad(lane)), cmp("=", lane, value)), conj(ispad(lane), cmp("=", value, 0))))
    logger.debug("flatten_heads: %d head terms", len(found))
    return SeededAtom(widened.atom, conj(*parts))


# -- cons elimination ----------------------------------------------------------------------


def _spines(list_args: Sequence[ListTerm]) -> Dict[int, Tuple[List[IntTerm], ListTerm]]:
    return {i: cons_spine(t) for i, t in enumerate(list_args) if isinstance(t, Cons)}


def name_bases(a: AtomLike, names: Optional[FreshNames] = None) -> SeededAtom:
    """Make every cons spine end in nil or in a variable owned by that spine.

    A base that is tail^r(X) with r > 0, or a variable already ending another
    spine, is replaced by a fresh Z together with the equation Z = base.
    """
    sa = seeded(a)
    names = names or FreshNames.for_atom(sa)
    owned = set()
    list_args = list(sa.atom.list_args)
    equations = []
    for i, (heads, base) in sorted(_spines(list_args).items()):
        if isinstance(base, Nil):
            continue
        if isinstance(base, LVar) and base.name not in owned:
            owned.add(base.name)
            continue
        z = LVar(names.list_var())
        owned.add(z.name)
        equations.append(list_eq_atom(z, base))
        list_args[i] = cons_list(heads, z)
    if not equations:
        return sa
    atom = SarAtom(sa.atom.automaton, tuple(list_args), sa.atom.int_args, sa.atom.label)
    for eq in equations:
        atom = delta0_and(atom, eq)
    return merge_duplicate_args(SeededAtom(atom, sa.seed))


def seed_cons(a: AtomLike, names: Optional[FreshNames] = None) -> SeededAtom:
    """Cons elimination for spines of depth one.

    cons(t, X) becomes a fresh W with X := tail(W) everywhere and the seed
    ``not ispad(l_W) and l_W = t``; cons(t, nil) additionally pads the first
    letter of tail(W).
    """
    sa = name_bases(a, names)
    names = names or FreshNames.for_atom(sa)
    spines = _spines(sa.atom.list_args)
    if any(len(heads) != 1 for heads, _ in spines.values()):
        raise ContractViolation("seeding only applies to cons terms of depth one")
    renaming: Dict[str, ListTerm] = {}
    list_args = list(sa.atom.list_args)
    int_args = list(sa.atom.int_args)
    seeds = []
    nil_tails = []
    for i, (heads, base) in sorted(spines.items()):
        w = LVar(names.list_var())
        list_args[i] = w
        int_args.append(heads[0])
        seeds.append((i, len(int_args) - 1))
        if isinstance(base, LVar):
            renaming[base.name] = Tail(w)
        else:
            nil_tails.append(Tail(w))
    for i, term in enumerate(list_args):
        if i not in spines:
            list_args[i] = subst_term(term, {}, renaming)
    m = sa.atom.automaton
    wide = extend_tracks(m, m.k, len(int_args), range(m.k), range(m.n))
    widened = _widen(_with_args(sa, wide, list_args, int_args), [t for t in nil_tails if t not in list_args], [])
    all_lists = list(widened.atom.list_args)
    parts = [widened.seed]
    for i, j in seeds:
        parts.append(neg(ispad(track(i))))
        parts.append(cmp("=", track(i), param(j)))
    for t in nil_tails:
        parts.append(ispad(track(all_lists.index(t))))
    logger.debug("seed_cons: %d spines seeded", len(spines))
    return merge_duplicate_args(SeededAtom(widened.atom, conj(*parts)))


def _level_name(state: str, level: int) -> str:
    return f"{state}@{level}"


def unroll(m: SsNfa, depth: int) -> Tuple[SsNfa, Dict[Transition, int]]:
    """States Q x {0..depth}; the first ``depth`` steps go through distinct
    levels, after which the copy at level ``depth`` loops.

    Returns the automaton and the source level of every transition.
    """
    levels: Dict[Transition, int] = {}
    transitions = []
    for level in range(depth + 1):
        for t in m.transitions:
            target_level = level if level == depth else level + 1
            unrolled = Transition(_level_name(t.source, level), t.guard, _level_name(t.target, target_level))
            transitions.append(unrolled)
            levels[unrolled] = level
    states = [_level_name(s, level) for level in range(depth + 1) for s in m.states]
    result = SsNfa.build(
        m.k,
        m.n,
        states,
        (_level_name(s, 0) for s in sorted(m.initial)),
        (_level_name(s, depth) for s in sorted(m.final)),
        transitions,
    )
    return result, levels


def unroll_cons(a: AtomLike, names: Optional[FreshNames] = None) -> SeededAtom:
    """Remove cons terms innermost first over an unrolled automaton.

    The letter at position p of a spine is taken from a new parameter on
    the transitions leaving level p. A nil-terminated spine gets a fresh
    tail variable whose letters after p must be padded; a spine over X
    shifts every other occurrence of X to tail(X).
    """
    sa = name_bases(a, names)
    names = names or FreshNames.for_atom(sa)
    spines = _spines(sa.atom.list_args)
    if not spines:
        return sa
    depth = max(len(heads) for heads, _ in spines.values())
    m, levels = unroll(sa.atom.automaton, depth)
    edges = [[t.source, t.guard, t.target, levels[t]] for t in m.transitions]
    list_args = list(sa.atom.list_args)
    int_args = list(sa.atom.int_args)
    for i in sorted(spines):
        heads, base = cons_spine(list_args[i])
        for position in range(len(heads) - 1, -1, -1):
            y = ParamVar(len(int_args))
            int_args.append(heads[position])
            for edge in edges:
                if edge[3] == position:
                    edge[1] = substitute(edge[1], tracks={i: y})
            if isinstance(base, Nil):
                base = LVar(names.list_var())
                for edge in edges:
                    if edge[3] > position:
                        edge[1] = conj(edge[1], ispad(track(i)))
            else:
                shift = {base.name: Tail(base)}
                for j, term in enumerate(list_args):
                    if j != i:
                        list_args[j] = subst_term(term, {}, shift)
            heads = heads[:position]
            list_args[i] = cons_list(heads, base)
    rebuilt = SsNfa.build(
        m.k,
        len(int_args),
        m.states,
        m.initial,
        m.final,
        (Transition(source, guard, target) for source, guard, target, _ in edges),
    )
    logger.debug("unroll_cons: depth %d, %s", depth, rebuilt.summary())
    result = _with_args(sa, rebuilt, list_args, int_args)
    return merge_duplicate_args(simplify_atom(result))


def eliminate_cons(a: AtomLike, strategy: str = "auto", names: Optional[FreshNames] = None) -> SeededAtom:
    if strategy not in CONS_STRATEGIES:
        raise InputError(f"unknown cons strategy {strategy!r}; expected one of {CONS_STRATEGIES}")
    sa = seeded(a)
    spines = _spines(sa.atom.list_args)
    if not spines:
        return sa
    shallow = all(len(heads) == 1 for heads, _ in spines.values())
    if strategy == "seed" or (strategy == "auto" and shallow):
        if not shallow:
            raise InputError("cons strategy 'seed' needs cons terms of depth one")
        return seed_cons(sa, names)
    return unroll_cons(sa, names)


# -- gaps and integer arguments ---------------------------------------------------------------


def make_gap_free(a: AtomLike) -> SeededAtom:
    """Add ignored tracks for every missing tail^m'(X) below a present tail^m(X)."""
    sa = seeded(a)
    deepest: Dict[str, int] = {}
    for term in sa.atom.list_args:
        shape = tail_shape(term)
        if shape is None:
            raise ContractViolation("make_gap_free expects cons-free list arguments")
        name, depth = shape
        if name is not None:
            deepest[name] = max(depth, deepest.get(name, 0))
    present = set(sa.atom.list_args)
    missing = [
        tail_n(LVar(name), d)
        for name in sorted(deepest)
        for d in range(deepest[name] + 1)
        if tail_n(LVar(name), d) not in present
    ]
    return _widen(sa, missing, [])


def _linear_guard_term(coeffs: Dict[str, int], constant: int, index: Dict[str, int]) -> GuardTerm:
    term: GuardTerm = Const(constant)
    for name, c in sorted(coeffs.items()):
        summand: GuardTerm = ParamVar(index[name]) if c == 1 else MulConst(c, ParamVar(index[name]))
        term = summand if term == Const(0) else Add(term, summand)
    return term


def eliminate_integer_terms(a: AtomLike) -> SeededAtom:
    """Integer arguments become pairwise distinct variables.

    Each argument term is substituted for its parameter inside the guards
    and the seed, written over new parameters for its free variables.
    """
    sa = seeded(a)
    args = sa.atom.int_args
    if all(isinstance(t, IVar) for t in args) and len({t.name for t in args}) == len(args):
        return sa
    order: List[str] = []
    linear = []
    for t in args:
        try:
            coeffs, constant = linearize(t)
        except ContractViolation as exc:
            raise InputError(f"integer argument is not linear: {exc}") from exc
        linear.append((coeffs, constant))
        for name in sorted(coeffs):
            if name not in order:
                order.append(name)
    index = {name: j for j, name in enumerate(order)}
    mapping = {j: _linear_guard_term(coeffs, constant, index) for j, (coeffs, constant) in enumerate(linear)}
    m = sa.atom.automaton
    rebuilt = SsNfa.build(
        m.k,
        len(order),
        m.states,
        m.initial,
        m.final,
        (Transition(t.source, substitute(t.guard, params=mapping), t.target) for t in m.transitions),
    )
    return _with_args(sa, rebuilt, sa.atom.list_args, [IVar(v) for v in order], substitute(sa.seed, params=mapping))


def normalize(a: AtomLike, cons_strategy: str = "auto") -> NormalAtom:
    sa = seeded(a)
    names = FreshNames.for_atom(sa)
    sa = merge_duplicate_args(simplify_atom(sa))
    sa = flatten_heads(sa, names)
    sa = merge_duplicate_args(sa)
    sa = eliminate_cons(sa, cons_strategy, names)
    sa = make_gap_free(sa)
    sa = eliminate_integer_terms(sa)
    sa = merge_duplicate_args(sa)
    atom = sa.atom
    normal = NormalAtom(
        atom.automaton,
        atom.list_args,
        tuple(t.name for t in atom.int_args),
        sa.seed,
        atom.label,
    )
    logger.debug("normalize: %s", atom.automaton.summary())
    return normal
