"""JSON form of automata, as used inside instance files."""

from typing import Any, Dict

from padded_logic.codec import guard_from_json
from padded_logic.errors import ContractViolation, InputError
from padded_logic.guards import show_guard
from ssnfa.automaton import SsNfa, Transition


def automaton_to_json(m: SsNfa) -> Dict[str, Any]:
    return {
        "k": m.k,
        "n": m.n,
        "states": list(m.states),
        "initial": sorted(m.initial),
        "final": sorted(m.final),
        "transitions": [{"from": t.source, "guard": show_guard(t.guard), "to": t.target} for t in m.transitions],
    }


def automaton_from_json(data: Dict[str, Any]) -> SsNfa:
    try:
        return SsNfa.build(
            int(data["k"]),
            int(data.get("n", 0)),
            data["states"],
            data["initial"],
            data["final"],
            (Transition(t["from"], guard_from_json(t["guard"]), t["to"]) for t in data.get("transitions", [])),
        )
    except KeyError as exc:
        raise InputError(f"automaton is missing field {exc}") from exc
    except ContractViolation as exc:
        raise InputError(f"inconsistent automaton: {exc}") from exc
