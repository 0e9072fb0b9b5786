"""Boolean closure and related constructions on ss-NFAs."""

from __future__ import annotations

import itertools
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from padded_logic.errors import ContractViolation
from padded_logic.guards import FALSE, TRUE, GuardFormula, conj, disj, eval_guard, ispad, neg, reindex, track
from padded_logic.probe import DEFAULT_PROBE, probe_satisfiable
from padded_logic.values import PAD, PaddedValue
from ssnfa.automaton import SsNfa, Transition, fresh_state

logger = logging.getLogger(__name__)


def pair_name(p: str, q: str) -> str:
    return f"<{p},{q}>"


def subset_name(states: Iterable[str]) -> str:
    return "{" + ",".join(sorted(states)) + "}"


def _same_arity(m1: SsNfa, m2: SsNfa) -> None:
    if (m1.k, m1.n) != (m2.k, m2.n):
        raise ContractViolation(f"arity mismatch: ({m1.k}, {m1.n}) vs ({m2.k}, {m2.n})")


def product(m1: SsNfa, m2: SsNfa) -> SsNfa:
    _same_arity(m1, m2)
    start = sorted((p, q) for p in m1.initial for q in m2.initial)
    order: List[Tuple[str, str]] = list(start)
    seen = set(start)
    queue = deque(start)
    transitions: List[Transition] = []
    while queue:
        p, q = queue.popleft()
        for t1 in m1.outgoing[p]:
            for t2 in m2.outgoing[q]:
                guard = conj(t1.guard, t2.guard)
                if guard == FALSE:
                    continue
                target = (t1.target, t2.target)
                transitions.append(Transition(pair_name(p, q), guard, pair_name(*target)))
                if target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
    return SsNfa.build(
        m1.k,
        m1.n,
        (pair_name(p, q) for p, q in order),
        (pair_name(p, q) for p, q in start),
        (pair_name(p, q) for p, q in order if p in m1.final and q in m2.final),
        transitions,
    )


def union(m1: SsNfa, m2: SsNfa) -> SsNfa:
    _same_arity(m1, m2)

    def left(s: str) -> str:
        return f"[1]{s}"

    def right(s: str) -> str:
        return f"[2]{s}"

    return SsNfa.build(
        m1.k,
        m1.n,
        [left(s) for s in m1.states] + [right(s) for s in m2.states],
        [left(s) for s in sorted(m1.initial)] + [right(s) for s in sorted(m2.initial)],
        [left(s) for s in sorted(m1.final)] + [right(s) for s in sorted(m2.final)],
        [Transition(left(t.source), t.guard, left(t.target)) for t in m1.transitions]
        + [Transition(right(t.source), t.guard, right(t.target)) for t in m2.transitions],
    )


def _minterms(groups: Sequence[Tuple[GuardFormula, FrozenSet[str]]]) -> List[Tuple[GuardFormula, FrozenSet[str]]]:
    regions: List[Tuple[GuardFormula, FrozenSet[str]]] = [(TRUE, frozenset())]
    for guard, targets in groups:
        split = []
        for region, reached in regions:
            inside = conj(region, guard)
            if inside != FALSE:
                split.append((inside, reached | targets))
            outside = conj(region, neg(guard))
            if outside != FALSE:
                split.append((outside, reached))
        regions = split
    merged: Dict[FrozenSet[str], List[GuardFormula]] = {}
    for region, reached in regions:
        merged.setdefault(reached, []).append(region)
    return [(disj(*guards), reached) for reached, guards in merged.items()]


def determinize(m: SsNfa) -> SsNfa:
    """Subset construction with minterm guards.

    Only structurally false minterms are dropped; the empty target set is
    left implicit (``complete`` routes it to a sink).
    """
    start = frozenset(m.initial)
    order = [start]
    seen = {start}
    queue = deque(order)
    transitions: List[Transition] = []
    while queue:
        subset = queue.popleft()
        groups: Dict[GuardFormula, Set[str]] = {}
        for state in sorted(subset):
            for t in m.outgoing[state]:
                groups.setdefault(t.guard, set()).add(t.target)
        for guard, reached in _minterms([(g, frozenset(ts)) for g, ts in groups.items()]):
            if not reached:
                continue
            transitions.append(Transition(subset_name(subset), guard, subset_name(reached)))
            if reached not in seen:
                seen.add(reached)
                order.append(reached)
                queue.append(reached)
    logger.debug("determinize: %s -> %d subset states", m.summary(), len(order))
    return SsNfa.build(
        m.k,
        m.n,
        (subset_name(s) for s in order),
        [subset_name(start)],
        (subset_name(s) for s in order if s & m.final),
        transitions,
    )


def complete(m: SsNfa) -> SsNfa:
    sink = fresh_state("sink", m.states)
    transitions = list(m.transitions)
    for state in m.states:
        rest = neg(disj(*(t.guard for t in m.outgoing[state])))
        if rest != FALSE:
            transitions.append(Transition(state, rest, sink))
    transitions.append(Transition(sink, TRUE, sink))
    return SsNfa.build(m.k, m.n, m.states + (sink,), m.initial, m.final, transitions)


def complement(m: SsNfa) -> SsNfa:
    full = complete(determinize(m))
    return SsNfa.build(
        full.k,
        full.n,
        full.states,
        full.initial,
        (s for s in full.states if s not in full.final),
        full.transitions,
    )


def _pad_state(padded: FrozenSet[int]) -> str:
    return "conv{" + ",".join(str(i) for i in sorted(padded)) + "}"


def convolution_automaton(k: int, n: int) -> SsNfa:
    """Accepts exactly the convolutions of k words (and ε)."""
    everything = frozenset(range(k))
    subsets = [
        frozenset(c)
        for size in range(k + 1)
        for c in itertools.combinations(range(k), size)
        if frozenset(c) != everything or size == 0
    ]
    transitions = []
    for padded in subsets:
        for wider in subsets:
            if not padded <= wider or wider == everything:
                continue
            guard = conj(
                *(ispad(track(i)) if i in wider else neg(ispad(track(i))) for i in range(k))
            )
            transitions.append(Transition(_pad_state(padded), guard, _pad_state(wider)))
    names = [_pad_state(s) for s in subsets]
    return SsNfa.build(k, n, names, [_pad_state(frozenset())], names, transitions)


def restrict_to_convolutions(m: SsNfa) -> SsNfa:
    return product(m, convolution_automaton(m.k, m.n))


def extend_tracks(m: SsNfa, k: int, n: int, track_map: Sequence[int], param_map: Sequence[int]) -> SsNfa:
    """Re-embed ``m`` into a (k, n) alphabet.

    Track i of ``m`` becomes track ``track_map[i]``. The embedded automaton
    reads its own tracks only; once they are all padded it can only move
    through an accepting ``done`` state, so words on other tracks may run
    longer than its own.
    """
    if len(track_map) != m.k or len(param_map) != m.n:
        raise ContractViolation("track/param maps must cover the automaton's variables")
    if any(not 0 <= i < k for i in track_map) or any(not 0 <= j < n for j in param_map):
        raise ContractViolation(f"maps point outside k={k}, n={n}")
    tracks = dict(enumerate(track_map))
    params = dict(enumerate(param_map))
    own = sorted(set(track_map))
    if own == list(range(k)):
        return SsNfa.build(
            k,
            n,
            m.states,
            m.initial,
            m.final,
            (Transition(t.source, reindex(t.guard, tracks, params), t.target) for t in m.transitions),
        )
    all_pad = conj(*(ispad(track(i)) for i in own))
    reading = neg(all_pad)
    done = fresh_state("done", m.states)
    transitions = [
        Transition(t.source, conj(reindex(t.guard, tracks, params), reading), t.target) for t in m.transitions
    ]
    for state in sorted(m.final):
        transitions.append(Transition(state, all_pad, done))
    transitions.append(Transition(done, all_pad, done))
    return SsNfa.build(k, n, m.states + (done,), m.initial, m.final | {done}, transitions)


def _probe_letters(k: int, probe: Sequence[PaddedValue]):
    return itertools.product(probe, repeat=k)


def is_deterministic(m: SsNfa, probe: Sequence[PaddedValue] = DEFAULT_PROBE) -> bool:
    """Probe-relative: a pair of guards with distinct targets is only
    treated as overlapping when the probe finds a common witness."""
    if len(m.initial) != 1:
        return False
    for state in m.states:
        for t1, t2 in itertools.combinations(m.outgoing[state], 2):
            if t1.target == t2.target:
                continue
            if probe_satisfiable(conj(t1.guard, t2.guard), m.k, m.n, probe):
                return False
    return True


def is_complete_heuristic(m: SsNfa, probe: Sequence[PaddedValue] = DEFAULT_PROBE) -> bool:
    ints = [v for v in probe if v is not PAD]
    for state in m.states:
        guards = [t.guard for t in m.outgoing[state]]
        for letter in _probe_letters(m.k, probe):
            for params in itertools.product(ints, repeat=m.n):
                if not any(eval_guard(g, letter, params) for g in guards):
                    return False
    return True


def rename_states(m: SsNfa, rename: Dict[str, str]) -> SsNfa:
    def r(s: str) -> str:
        return rename.get(s, s)

    return SsNfa.build(
        m.k,
        m.n,
        (r(s) for s in m.states),
        (r(s) for s in m.initial),
        (r(s) for s in m.final),
        (Transition(r(t.source), t.guard, r(t.target)) for t in m.transitions),
    )


def accept_all(k: int, n: int, name: str = "q") -> SsNfa:
    return SsNfa.build(k, n, [name], [name], [name], [Transition(name, TRUE, name)])


def accept_nothing(k: int, n: int, name: str = "q") -> SsNfa:
    return SsNfa.build(k, n, [name], [name], [], [])
