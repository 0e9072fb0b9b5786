"""Finite probing of guards.

A TRUE answer is a real witness; FALSE only means no witness among the
probe values.
"""

import itertools
from typing import Iterable, Tuple

from padded_logic.errors import ContractViolation
from padded_logic.guards import GuardFormula, eval_guard, param_indices, track_indices
from padded_logic.values import PAD, PaddedValue

DEFAULT_PROBE: Tuple[PaddedValue, ...] = (-2, -1, 0, 1, 2, PAD)


def probe_satisfiable(
    phi: GuardFormula,
    k: int,
    n: int,
    probe_set: Iterable[PaddedValue] = DEFAULT_PROBE,
) -> bool:
    probe = tuple(probe_set)
    ints = tuple(v for v in probe if v is not PAD)
    tracks_used = sorted(track_indices(phi))
    params_used = sorted(param_indices(phi))
    if any(i >= k for i in tracks_used) or any(j >= n for j in params_used):
        raise ContractViolation(f"guard variables outside k={k}, n={n}")
    tracks = [0] * k
    params = [0] * n
    for track_values in itertools.product(probe, repeat=len(tracks_used)):
        for i, value in zip(tracks_used, track_values):
            tracks[i] = value
        for param_values in itertools.product(ints, repeat=len(params_used)):
            for j, value in zip(params_used, param_values):
                params[j] = value
            if eval_guard(phi, tracks, params):
                return True
    return False
