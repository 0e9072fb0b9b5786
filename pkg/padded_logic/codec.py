"""JSON form of guards. Strings are accepted too and go through parse_guard."""

from typing import Any

from padded_logic.errors import InputError
from padded_logic.guards import (
    FALSE,
    TRUE,
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
    conj,
    disj,
    neg,
)
from padded_logic.parse import parse_guard


def term_to_json(term: GuardTerm) -> Any:
    if isinstance(term, TrackVar):
        return {"track": term.index}
    if isinstance(term, ParamVar):
        return {"param": term.index}
    if isinstance(term, Const):
        return {"const": term.value}
    if isinstance(term, Add):
        return {"add": [term_to_json(term.left), term_to_json(term.right)]}
    if isinstance(term, Sub):
        return {"sub": [term_to_json(term.left), term_to_json(term.right)]}
    if isinstance(term, MulConst):
        return {"mul": [term.factor, term_to_json(term.term)]}
    raise InputError(f"not a guard term: {term!r}")


def guard_to_json(phi: GuardFormula) -> Any:
    if isinstance(phi, BoolConst):
        return phi.value
    if isinstance(phi, Cmp):
        return {"cmp": phi.op, "args": [term_to_json(phi.left), term_to_json(phi.right)]}
    if isinstance(phi, IsPad):
        return {"ispad": term_to_json(phi.term)}
    if isinstance(phi, Not):
        return {"not": guard_to_json(phi.operand)}
    if isinstance(phi, And):
        return {"and": [guard_to_json(p) for p in phi.operands]}
    if isinstance(phi, Or):
        return {"or": [guard_to_json(p) for p in phi.operands]}
    raise InputError(f"not a guard formula: {phi!r}")


def term_from_json(data: Any) -> GuardTerm:
    if not isinstance(data, dict) or len(data) != 1:
        raise InputError(f"malformed guard term: {data!r}")
    (key, value), = data.items()
    if key == "track":
        return TrackVar(int(value))
    if key == "param":
        return ParamVar(int(value))
    if key == "const":
        return Const(int(value))
    if key in ("add", "sub"):
        left, right = (term_from_json(v) for v in value)
        return Add(left, right) if key == "add" else Sub(left, right)
    if key == "mul":
        factor, inner = value
        return MulConst(int(factor), term_from_json(inner))
    raise InputError(f"unknown guard term tag {key!r}")


def guard_from_json(data: Any) -> GuardFormula:
    if isinstance(data, bool):
        return TRUE if data else FALSE
    if isinstance(data, str):
        return parse_guard(data)
    if not isinstance(data, dict):
        raise InputError(f"malformed guard: {data!r}")
    if "cmp" in data:
        left, right = (term_from_json(v) for v in data["args"])
        return Cmp(data["cmp"], left, right)
    if "ispad" in data:
        return IsPad(term_from_json(data["ispad"]))
    if "not" in data:
        return neg(guard_from_json(data["not"]))
    if "and" in data:
        return conj(*(guard_from_json(p) for p in data["and"]))
    if "or" in data:
        return disj(*(guard_from_json(p) for p in data["or"]))
    raise InputError(f"unknown guard tag in {data!r}")
