"""Bounded search for SLD refutations of translated CHC systems.

A refutation of a translated system is a chain goal <- step* <- init. It is
searched forward, letter by letter, over a finite value range. Letters are
built one track at a time and every conjunct of a clause constraint is
checked as soon as the tracks it mentions are fixed. Finding nothing is
inconclusive.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from padded_logic.values import PAD, PaddedValue
from chc.constraints import CAnd, Constraint, cand, constraint_names, eval_constraint, rename_constraint
from chc.model import (
    GOAL,
    INIT,
    STEP,
    ChcSystem,
    Clause,
    Derivation,
    DerivationState,
    FlaggedVar,
    letter_vars,
    rename_for_step,
    step_name,
)
from listlang.terms import Assignment, tail_shape
from normalize.atoms import NormalAtom

logger = logging.getLogger(__name__)

Letter = Tuple[PaddedValue, ...]

DEFAULT_SLD_BUDGET = 5_000_000

_NEXT_TRACK = re.compile(r"^v(\d+)[fv]$")


class _OutOfBudget(Exception):
    pass


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise _OutOfBudget()


@dataclass
class SldResult:
    """Outcome of a bounded refutation search.

    ``exhausted`` is False when the evaluation budget ran out before the
    depth bound was fully explored.
    """

    derivation: Optional[Derivation]
    checked: int
    exhausted: bool = True

    @property
    def found(self) -> bool:
        return self.derivation is not None


def _conjuncts(c: Constraint) -> Tuple[Constraint, ...]:
    return c.operands if isinstance(c, CAnd) else (c,)


def _tracks(c: Constraint, pattern: "re.Pattern[str]") -> List[int]:
    ints, flags = constraint_names(c)
    return [int(m.group(1)) for name in ints | flags if (m := pattern.match(name))]


class _Plan:
    """Conjuncts grouped by the highest next-letter track they read.

    ``levels[0]`` needs no next-letter track, ``levels[i + 1]`` can be
    checked once track i of the next letter is fixed.
    """

    def __init__(self, parts: Sequence[Constraint], k: int):
        self.levels: List[List[Constraint]] = [[] for _ in range(k + 1)]
        for part in parts:
            tracks = _tracks(part, _NEXT_TRACK)
            self.levels[max(tracks) + 1 if tracks else 0].append(part)


def _bind(env: Dict[str, object], letter_names: Sequence[FlaggedVar], letter: Letter) -> None:
    for var, value in zip(letter_names, letter):
        env[var.flag] = value is PAD
        env[var.value] = 0 if value is PAD else value


class _Search:
    def __init__(self, system: ChcSystem, values: Sequence[int], budget: _Budget):
        self.system = system
        self.k = system.k
        self.values = tuple(values)
        self.budget = budget
        self.u = letter_vars("u", self.k)
        self.v = letter_vars("v", self.k)
        self.steps: Dict[str, List[Clause]] = {}
        for clause in system.clauses_of(STEP):
            self.steps.setdefault(clause.body.pred, []).append(clause)
        self.goals: Dict[str, List[Clause]] = {}
        for clause in system.clauses_of(GOAL):
            self.goals.setdefault(clause.body.pred, []).append(clause)
        self.tail_of = dict(system.links)
        self.nil = set(system.nil_tracks)
        # deepest step count known to fail, per (params, pred, letter)
        self.failed: Dict[Tuple[Tuple[int, ...], str, Letter], int] = {}
        self._plans: Dict[Tuple[int, ...], _Plan] = {}
        self._to_next = {}
        for cur, nxt in zip(self.u, self.v):
            self._to_next[cur.flag] = nxt.flag
            self._to_next[cur.value] = nxt.value

    def env(self, params: Mapping[str, int], u: Optional[Letter] = None) -> Dict[str, object]:
        env: Dict[str, object] = dict(params)
        if u is not None:
            _bind(env, self.u, u)
        return env

    def step_plan(self, clause: Clause) -> _Plan:
        key = (id(clause),)
        if key not in self._plans:
            self._plans[key] = _Plan(_conjuncts(clause.constraint), self.k)
        return self._plans[key]

    def entry_plan(self, init: Clause, leaving: Clause) -> _Plan:
        """Init constraint plus the current-letter part of a clause leaving its head."""
        key = (id(init), id(leaving))
        if key not in self._plans:
            entry = [
                rename_constraint(part, self._to_next)
                for part in _conjuncts(leaving.constraint)
                if not _tracks(part, _NEXT_TRACK)
            ]
            self._plans[key] = _Plan(_conjuncts(init.constraint) + tuple(entry), self.k)
        return self._plans[key]

    def letters(self, plan: _Plan, choices: Sequence[Sequence[PaddedValue]], env: Dict[str, object]) -> Iterator[Letter]:
        """Next letters satisfying every conjunct of ``plan``, in choice order."""
        if not self._holds(plan.levels[0], env):
            return
        letter: List[PaddedValue] = []

        def extend(i: int) -> Iterator[Letter]:
            if i == self.k:
                yield tuple(letter)
                return
            var = self.v[i]
            for value in choices[i]:
                self.budget.spend()
                env[var.flag] = value is PAD
                env[var.value] = 0 if value is PAD else value
                if self._holds(plan.levels[i + 1], env):
                    letter.append(value)
                    yield from extend(i + 1)
                    letter.pop()

        yield from extend(0)

    def _holds(self, parts: Sequence[Constraint], env: Mapping[str, object]) -> bool:
        for part in parts:
            self.budget.spend()
            if not eval_constraint(part, env):
                return False
        return True

    def first_choices(self) -> List[Tuple[PaddedValue, ...]]:
        return [(PAD,) if i in self.nil else self.values + (PAD,) for i in range(self.k)]

    def next_choices(self, letter: Letter) -> List[Tuple[PaddedValue, ...]]:
        choices = []
        for i, value in enumerate(letter):
            if value is PAD:
                choices.append((PAD,))
            elif i in self.tail_of:
                choices.append((letter[self.tail_of[i]],))
            else:
                choices.append(self.values + (PAD,))
        return choices

    def first_letters(self, init: Clause, params: Mapping[str, int]) -> List[Letter]:
        """Letters the init clause admits that some clause out of its head can read."""
        head = init.head.pred
        leaving = self.goals.get(head, []) + self.steps.get(head, [])
        found: Dict[Letter, None] = {}
        for clause in leaving:
            for letter in self.letters(self.entry_plan(init, clause), self.first_choices(), dict(params)):
                found.setdefault(letter)
        return list(found)

    def run(
        self, pred: str, letter: Letter, params: Mapping[str, int], key: Tuple[int, ...], steps_left: int
    ) -> Optional[List[Tuple[Clause, Letter]]]:
        """Clauses and the letters they move to, ending with the goal clause."""
        memo = (key, pred, letter)
        if self.failed.get(memo, -1) >= steps_left:
            return None
        env = self.env(params, u=letter)
        for goal in self.goals.get(pred, []):
            self.budget.spend()
            if eval_constraint(goal.constraint, env):
                return [(goal, letter)]
        if steps_left > 0:
            for clause in self.steps.get(pred, []):
                for nxt in self.letters(self.step_plan(clause), self.next_choices(letter), dict(env)):
                    rest = self.run(clause.head.pred, nxt, params, key, steps_left - 1)
                    if rest is not None:
                        return [(clause, nxt)] + rest
        self.failed[memo] = steps_left
        return None


def sld_search(
    system: ChcSystem,
    max_depth: int,
    values: Sequence[int],
    budget: int = DEFAULT_SLD_BUDGET,
) -> SldResult:
    """Shortest refutation with at most ``max_depth`` clauses.

    Iterative deepening: all refutations with fewer letters are ruled out
    before a longer one is tried.
    """
    if not system.clauses_of(GOAL):
        return SldResult(None, 0)
    counter = _Budget(budget)
    search = _Search(system, values, counter)
    inits = system.clauses_of(INIT)
    entries: Dict[Tuple[int, ...], List[Tuple[Clause, Letter]]] = {}
    try:
        for steps in range(max(0, max_depth - 1)):
            for param_values in itertools.product(search.values, repeat=len(system.params)):
                params = dict(zip(system.params, param_values))
                if param_values not in entries:
                    entries[param_values] = [
                        (init, first) for init in inits for first in search.first_letters(init, params)
                    ]
                for init, first in entries[param_values]:
                    path = search.run(init.head.pred, first, params, param_values, steps)
                    if path is not None:
                        derivation = _assemble(system, init, first, path, params)
                        logger.debug("sld: refutation with %d clauses", len(derivation))
                        return SldResult(derivation, counter.used)
    except _OutOfBudget:
        logger.info("sld search budget of %d evaluations exhausted", budget)
        return SldResult(None, counter.used, exhausted=False)
    return SldResult(None, counter.used)


def bounded_sld_refute(
    system: ChcSystem,
    max_depth: int,
    values: Sequence[int],
    budget: int = DEFAULT_SLD_BUDGET,
) -> Optional[Derivation]:
    """Shortest refutation with at most ``max_depth`` clauses, or None.

    None means nothing was found within the bounds (or the budget), never
    that the system is satisfiable; :func:`sld_search` tells the two apart.
    """
    return sld_search(system, max_depth, values, budget).derivation


def _assemble(
    system: ChcSystem,
    init: Clause,
    first: Letter,
    path: List[Tuple[Clause, Letter]],
    params: Dict[str, int],
) -> Derivation:
    forward = [init] + [clause for clause, _ in path]
    letters = [first] + [letter for clause, letter in path if clause.kind == STEP]
    env: Dict[str, object] = dict(params)
    for position, letter in enumerate(letters):
        for i, value in enumerate(letter):
            var = FlaggedVar.named("u", i)
            env[step_name(var.flag, position)] = value is PAD
            env[step_name(var.value, position)] = 0 if value is PAD else value
    return Derivation(list(reversed(forward)), letters, dict(params), env)


def _positions(d: Derivation) -> List[Tuple[Clause, int]]:
    """Forward order with the letter position each clause reads."""
    forward = list(reversed(d.clauses))
    placed = []
    for index, clause in enumerate(forward):
        placed.append((clause, 0 if clause.kind == INIT else index - 1))
    return placed


def derivation_states(d: Derivation, system: ChcSystem) -> List[DerivationState]:
    """The SLD states from the goal down to top, with step-renamed variables."""
    states = []
    constraint = None
    for clause, position in reversed(_positions(d)):
        _, body, renamed = rename_for_step(clause, system.k, position)
        constraint = renamed if constraint is None else cand(constraint, renamed)
        states.append(DerivationState(body, constraint))
    return states


def check_derivation(d: Derivation, system: ChcSystem) -> bool:
    """Every step constraint holds and consecutive atoms match."""
    placed = _positions(d)
    if not placed or placed[0][0].kind != INIT or placed[-1][0].kind != GOAL:
        return False
    previous_head = None
    for clause, position in placed:
        head, body, renamed = rename_for_step(clause, system.k, position)
        if body is not None and body != previous_head:
            return False
        if not eval_constraint(renamed, d.env):
            return False
        previous_head = head
    return True


def extract_run(d: Derivation) -> Tuple[Tuple[Letter, ...], Dict[str, int]]:
    """The convolution read by the derivation (without the closing padded letter)."""
    return tuple(d.letters[:-1]), dict(d.params)


def run_to_assignment(word: Sequence[Letter], params: Mapping[str, int], na: NormalAtom) -> Assignment:
    lists: Dict[str, Tuple[int, ...]] = {}
    for i, term in enumerate(na.list_args):
        name, depth = tail_shape(term)
        if name is None or depth != 0:
            continue
        values = []
        for letter in word:
            if letter[i] is PAD:
                break
            values.append(letter[i])
        lists[name] = tuple(values)
    return Assignment({v: params[v] for v in na.int_args}, lists)
