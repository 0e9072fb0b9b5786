"""Brute-force language exploration, the bounded oracle behind the tests.

Both searches visit up to (|values| + 1) ** (k * max_len) words; they share
work between words with a common prefix, but remain exponential.
"""

from __future__ import annotations

import itertools
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from padded_logic.values import PAD
from ssnfa.automaton import Letter, SsNfa, SyncWord


def alphabet(k: int, values: Iterable[int]) -> List[Letter]:
    return list(itertools.product(tuple(values) + (PAD,), repeat=k))


def enumerate_accepted(m: SsNfa, params: Sequence[int], max_len: int, values: Iterable[int]) -> Set[SyncWord]:
    letters = alphabet(m.k, values)
    found: Set[SyncWord] = set()
    prefix: List[Letter] = []

    def walk(current) -> None:
        if current & m.final:
            found.add(tuple(prefix))
        if len(prefix) == max_len:
            return
        for letter in letters:
            nxt = m.step(current, letter, params)
            if nxt:
                prefix.append(letter)
                walk(nxt)
                prefix.pop()

    walk(m.initial)
    return found


def language_difference(
    m1: SsNfa,
    m2: SsNfa,
    params: Sequence[int],
    max_len: int,
    values: Iterable[int],
) -> Optional[SyncWord]:
    """Shortest-first search for a word accepted by exactly one automaton."""
    letters = alphabet(m1.k, values)
    frontier: List[Tuple[SyncWord, frozenset, frozenset]] = [((), m1.initial, m2.initial)]
    seen = set()
    for depth in range(max_len + 1):
        nxt_frontier = []
        for word, c1, c2 in frontier:
            if bool(c1 & m1.final) != bool(c2 & m2.final):
                return word
            if depth == max_len:
                continue
            for letter in letters:
                n1 = m1.step(c1, letter, params)
                n2 = m2.step(c2, letter, params)
                if not n1 and not n2:
                    continue
                key = (n1, n2)
                if key in seen:
                    continue
                seen.add(key)
                nxt_frontier.append((word + (letter,), n1, n2))
        frontier = nxt_frontier
    return None
