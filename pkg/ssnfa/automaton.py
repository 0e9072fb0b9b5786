"""Symbolic synchronous NFAs.

A (k, n)-automaton reads words whose letters are k-tuples of padded
integers; guards may also mention n integer parameters, fixed for the
whole run.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from padded_logic.errors import ContractViolation
from padded_logic.guards import GuardFormula, check_arity, eval_guard
from padded_logic.values import PaddedValue

Letter = Tuple[PaddedValue, ...]
SyncWord = Tuple[Letter, ...]


@dataclass(frozen=True)
class Transition:
    source: str
    guard: GuardFormula
    target: str


@dataclass(frozen=True)
class SsNfa:
    k: int
    n: int
    states: Tuple[str, ...]
    initial: FrozenSet[str]
    final: FrozenSet[str]
    transitions: Tuple[Transition, ...]

    def __post_init__(self) -> None:
        if self.k < 0 or self.n < 0:
            raise ContractViolation(f"negative arity ({self.k}, {self.n})")
        known = set(self.states)
        if len(known) != len(self.states):
            raise ContractViolation("duplicate state names")
        if not self.initial <= known or not self.final <= known:
            raise ContractViolation("initial/final states must be among the states")
        for t in self.transitions:
            if t.source not in known or t.target not in known:
                raise ContractViolation(f"transition {t.source!r} -> {t.target!r} leaves the state set")
            check_arity(t.guard, self.k, self.n)

    @classmethod
    def build(
        cls,
        k: int,
        n: int,
        states: Iterable[str],
        initial: Iterable[str],
        final: Iterable[str],
        transitions: Iterable[Transition],
    ) -> "SsNfa":
        unique: List[Transition] = []
        seen = set()
        for t in transitions:
            if t not in seen:
                seen.add(t)
                unique.append(t)
        return cls(k, n, tuple(states), frozenset(initial), frozenset(final), tuple(unique))

    @cached_property
    def outgoing(self) -> Dict[str, Tuple[Transition, ...]]:
        table: Dict[str, List[Transition]] = {s: [] for s in self.states}
        for t in self.transitions:
            table[t.source].append(t)
        return {s: tuple(ts) for s, ts in table.items()}

    def step(self, current: Iterable[str], letter: Letter, params: Sequence[int]) -> FrozenSet[str]:
        return frozenset(
            t.target
            for state in current
            for t in self.outgoing[state]
            if eval_guard(t.guard, letter, params)
        )

    def summary(self) -> str:
        return f"ss-NFA(k={self.k}, n={self.n}, |Q|={len(self.states)}, |Δ|={len(self.transitions)})"


def check_word(word: Sequence[Letter], k: int) -> None:
    for position, letter in enumerate(word):
        if len(letter) != k:
            raise ContractViolation(f"letter {position} has width {len(letter)}, expected {k}")


def accepts(m: SsNfa, params: Sequence[int], word: Sequence[Letter]) -> bool:
    if len(params) != m.n:
        raise ContractViolation(f"expected {m.n} parameters, got {len(params)}")
    check_word(word, m.k)
    current = m.initial
    for letter in word:
        current = m.step(current, letter, params)
        if not current:
            return False
    return bool(current & m.final)


def fresh_state(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    suffix = 1
    while f"{base}{suffix}" in taken:
        suffix += 1
    return f"{base}{suffix}"
