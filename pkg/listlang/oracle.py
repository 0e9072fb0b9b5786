"""Bounded witness search in the standard list model.

The oracle only ever proves satisfiability: running out of candidates (or
of budget) is UNKNOWN, never UNSAT.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence, Tuple

from listlang.closure import prenex
from listlang.formulas import SarFormula, free_vars, holds
from listlang.terms import Assignment

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class OracleBounds:
    max_len: int = 6
    values: Tuple[int, ...] = tuple(range(-3, 4))
    budget: int = DEFAULT_BUDGET

    @classmethod
    def from_range(cls, max_len: int, low: int, high: int, budget: int = DEFAULT_BUDGET) -> "OracleBounds":
        return cls(max_len, tuple(range(low, high + 1)), budget)


@dataclass
class OracleResult:
    assignment: Optional[Assignment]
    checked: int
    exhausted: bool = field(default=True)

    @property
    def found(self) -> bool:
        return self.assignment is not None


def candidates(
    int_vars: Sequence[str],
    list_vars: Sequence[str],
    bounds: OracleBounds,
) -> Iterator[Assignment]:
    """All assignments within bounds, by increasing maximal list length."""
    ints = sorted(int_vars)
    lists = sorted(list_vars)
    top = bounds.max_len if lists else 0
    for longest in range(top + 1):
        for lengths in itertools.product(range(longest + 1), repeat=len(lists)):
            if lists and max(lengths) != longest:
                continue
            pools = [list(itertools.product(bounds.values, repeat=n)) for n in lengths]
            for list_values in itertools.product(*pools):
                for int_values in itertools.product(bounds.values, repeat=len(ints)):
                    yield Assignment(dict(zip(ints, int_values)), dict(zip(lists, list_values)))


def oracle_search(
    int_vars: Iterable[str],
    list_vars: Iterable[str],
    predicate: Callable[[Assignment], bool],
    bounds: OracleBounds = OracleBounds(),
) -> OracleResult:
    checked = 0
    for alpha in candidates(list(int_vars), list(list_vars), bounds):
        if checked >= bounds.budget:
            logger.info("oracle budget of %d candidates exhausted", bounds.budget)
            return OracleResult(None, checked, exhausted=False)
        checked += 1
        if predicate(alpha):
            return OracleResult(alpha, checked)
    return OracleResult(None, checked)


def oracle_solve(phi: SarFormula, bounds: OracleBounds = OracleBounds()) -> OracleResult:
    """Search for a witness of the Σ1 formula ``phi``.

    The witness also binds the pulled existential variables.
    """
    _, matrix = prenex(phi)
    ints, lists = free_vars(matrix)
    result = oracle_search(ints, lists, lambda alpha: holds(matrix, alpha), bounds)
    logger.debug("oracle: %d candidates, found=%s", result.checked, result.found)
    return result
