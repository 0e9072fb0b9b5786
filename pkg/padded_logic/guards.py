"""Guard terms and formulas over track variables l_i and parameters x_j.

Guards are evaluated in the padded integer model: arithmetic on a padded
operand yields PAD, and every comparison involving PAD is false. Negation
stays classical on top of that, so ``1 < PAD`` is false while
``not (1 >= PAD)`` is true.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterator, Mapping, Optional, Sequence, Tuple, Union

from padded_logic.errors import ContractViolation
from padded_logic.values import PAD, PaddedValue


@dataclass(frozen=True)
class TrackVar:
    index: int


@dataclass(frozen=True)
class ParamVar:
    index: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Add:
    left: "GuardTerm"
    right: "GuardTerm"


@dataclass(frozen=True)
class Sub:
    left: "GuardTerm"
    right: "GuardTerm"


@dataclass(frozen=True)
class MulConst:
    factor: int
    term: "GuardTerm"


GuardTerm = Union[TrackVar, ParamVar, Const, Add, Sub, MulConst]


_CMP: Dict[str, Callable[[int, int], bool]] = {
    "=": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}
CMP_OPS: Tuple[str, ...] = tuple(_CMP)


@dataclass(frozen=True)
class BoolConst:
    value: bool


TRUE = BoolConst(True)
FALSE = BoolConst(False)


@dataclass(frozen=True)
class Cmp:
    op: str
    left: GuardTerm
    right: GuardTerm

    def __post_init__(self) -> None:
        if self.op not in _CMP:
            raise ContractViolation(f"unknown comparison operator {self.op!r}")


@dataclass(frozen=True)
class IsPad:
    term: GuardTerm


@dataclass(frozen=True)
class Not:
    operand: "GuardFormula"


@dataclass(frozen=True)
class And:
    operands: Tuple["GuardFormula", ...]


@dataclass(frozen=True)
class Or:
    operands: Tuple["GuardFormula", ...]


GuardFormula = Union[BoolConst, Cmp, IsPad, Not, And, Or]


# -- evaluation ---------------------------------------------------------------


def eval_term(term: GuardTerm, tracks: Sequence[PaddedValue], params: Sequence[int]) -> PaddedValue:
    if isinstance(term, TrackVar):
        if not 0 <= term.index < len(tracks):
            raise ContractViolation(f"track l{term.index} out of range for k={len(tracks)}")
        return tracks[term.index]
    if isinstance(term, ParamVar):
        if not 0 <= term.index < len(params):
            raise ContractViolation(f"parameter x{term.index} out of range for n={len(params)}")
        return params[term.index]
    if isinstance(term, Const):
        return term.value
    if isinstance(term, (Add, Sub)):
        left = eval_term(term.left, tracks, params)
        right = eval_term(term.right, tracks, params)
        if left is PAD or right is PAD:
            return PAD
        return left + right if isinstance(term, Add) else left - right
    if isinstance(term, MulConst):
        inner = eval_term(term.term, tracks, params)
        return PAD if inner is PAD else term.factor * inner
    raise ContractViolation(f"not a guard term: {term!r}")


def eval_guard(phi: GuardFormula, tracks: Sequence[PaddedValue], params: Sequence[int]) -> bool:
    if isinstance(phi, BoolConst):
        return phi.value
    if isinstance(phi, Cmp):
        left = eval_term(phi.left, tracks, params)
        right = eval_term(phi.right, tracks, params)
        if left is PAD or right is PAD:
            return False
        return _CMP[phi.op](left, right)
    if isinstance(phi, IsPad):
        return eval_term(phi.term, tracks, params) is PAD
    if isinstance(phi, Not):
        return not eval_guard(phi.operand, tracks, params)
    if isinstance(phi, And):
        return all(eval_guard(part, tracks, params) for part in phi.operands)
    if isinstance(phi, Or):
        return any(eval_guard(part, tracks, params) for part in phi.operands)
    raise ContractViolation(f"not a guard formula: {phi!r}")


def compare(op: str, left: int, right: int) -> bool:
    return _CMP[op](left, right)


# -- traversal ----------------------------------------------------------------


def term_leaves(term: GuardTerm) -> Iterator[GuardTerm]:
    if isinstance(term, (Add, Sub)):
        yield from term_leaves(term.left)
        yield from term_leaves(term.right)
    elif isinstance(term, MulConst):
        yield from term_leaves(term.term)
    else:
        yield term


def formula_terms(phi: GuardFormula) -> Iterator[GuardTerm]:
    if isinstance(phi, Cmp):
        yield phi.left
        yield phi.right
    elif isinstance(phi, IsPad):
        yield phi.term
    elif isinstance(phi, Not):
        yield from formula_terms(phi.operand)
    elif isinstance(phi, (And, Or)):
        for part in phi.operands:
            yield from formula_terms(part)


def track_indices(phi: GuardFormula) -> FrozenSet[int]:
    return frozenset(
        leaf.index for term in formula_terms(phi) for leaf in term_leaves(term) if isinstance(leaf, TrackVar)
    )


def param_indices(phi: GuardFormula) -> FrozenSet[int]:
    return frozenset(
        leaf.index for term in formula_terms(phi) for leaf in term_leaves(term) if isinstance(leaf, ParamVar)
    )


def term_track_indices(term: GuardTerm) -> FrozenSet[int]:
    return frozenset(leaf.index for leaf in term_leaves(term) if isinstance(leaf, TrackVar))


def check_arity(phi: GuardFormula, k: int, n: int) -> None:
    bad_tracks = [i for i in track_indices(phi) if i >= k]
    bad_params = [j for j in param_indices(phi) if j >= n]
    if bad_tracks or bad_params:
        raise ContractViolation(
            f"guard {show_guard(phi)!r} mentions l{bad_tracks} / x{bad_params} outside k={k}, n={n}"
        )


# -- substitution ---------------------------------------------------------------


def substitute_term(
    term: GuardTerm,
    tracks: Optional[Mapping[int, GuardTerm]] = None,
    params: Optional[Mapping[int, GuardTerm]] = None,
    strict_tracks: bool = False,
) -> GuardTerm:
    if isinstance(term, TrackVar):
        if tracks is not None and term.index in tracks:
            return tracks[term.index]
        if strict_tracks:
            raise ContractViolation(f"no substitute given for track l{term.index}")
        return term
    if isinstance(term, ParamVar):
        if params is not None and term.index in params:
            return params[term.index]
        return term
    if isinstance(term, Const):
        return term
    if isinstance(term, Add):
        return Add(
            substitute_term(term.left, tracks, params, strict_tracks),
            substitute_term(term.right, tracks, params, strict_tracks),
        )
    if isinstance(term, Sub):
        return Sub(
            substitute_term(term.left, tracks, params, strict_tracks),
            substitute_term(term.right, tracks, params, strict_tracks),
        )
    if isinstance(term, MulConst):
        return MulConst(term.factor, substitute_term(term.term, tracks, params, strict_tracks))
    raise ContractViolation(f"not a guard term: {term!r}")


def substitute(
    phi: GuardFormula,
    tracks: Optional[Mapping[int, GuardTerm]] = None,
    params: Optional[Mapping[int, GuardTerm]] = None,
    strict_tracks: bool = False,
) -> GuardFormula:
    """Simultaneous substitution of track and parameter variables."""
    if isinstance(phi, BoolConst):
        return phi
    if isinstance(phi, Cmp):
        return Cmp(
            phi.op,
            substitute_term(phi.left, tracks, params, strict_tracks),
            substitute_term(phi.right, tracks, params, strict_tracks),
        )
    if isinstance(phi, IsPad):
        return IsPad(substitute_term(phi.term, tracks, params, strict_tracks))
    if isinstance(phi, Not):
        return neg(substitute(phi.operand, tracks, params, strict_tracks))
    if isinstance(phi, And):
        return conj(*(substitute(part, tracks, params, strict_tracks) for part in phi.operands))
    if isinstance(phi, Or):
        return disj(*(substitute(part, tracks, params, strict_tracks) for part in phi.operands))
    raise ContractViolation(f"not a guard formula: {phi!r}")


def substitute_tracks(phi: GuardFormula, mapping: Mapping[int, GuardTerm]) -> GuardFormula:
    return substitute(phi, tracks=mapping, strict_tracks=True)


def reindex(phi: GuardFormula, track_map: Mapping[int, int], param_map: Mapping[int, int]) -> GuardFormula:
    return substitute(
        phi,
        tracks={old: TrackVar(new) for old, new in track_map.items()},
        params={old: ParamVar(new) for old, new in param_map.items()},
    )


# -- smart constructors -----------------------------------------------------------


def _dedupe(parts: Sequence[GuardFormula]) -> Tuple[GuardFormula, ...]:
    seen = set()
    out = []
    for part in parts:
        if part not in seen:
            seen.add(part)
            out.append(part)
    return tuple(out)


def conj(*parts: GuardFormula) -> GuardFormula:
    flat = []
    for part in parts:
        if part == TRUE:
            continue
        if part == FALSE:
            return FALSE
        if isinstance(part, And):
            flat.extend(part.operands)
        else:
            flat.append(part)
    flat = list(_dedupe(flat))
    present = set(flat)
    for part in flat:
        if not isinstance(part, Not):
            continue
        inner = part.operand
        if inner in present:
            return FALSE
        # not (a and b) next to a and b
        if isinstance(inner, And) and all(op in present for op in inner.operands):
            return FALSE
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(*parts: GuardFormula) -> GuardFormula:
    flat = []
    for part in parts:
        if part == FALSE:
            continue
        if part == TRUE:
            return TRUE
        if isinstance(part, Or):
            flat.extend(part.operands)
        else:
            flat.append(part)
    flat = list(_dedupe(flat))
    present = set(flat)
    for part in flat:
        if isinstance(part, Not) and part.operand in present:
            return TRUE
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def neg(phi: GuardFormula) -> GuardFormula:
    if phi == TRUE:
        return FALSE
    if phi == FALSE:
        return TRUE
    if isinstance(phi, Not):
        return phi.operand
    return Not(phi)


def track(i: int) -> TrackVar:
    return TrackVar(i)


def param(j: int) -> ParamVar:
    return ParamVar(j)


def cmp(op: str, left: Union[GuardTerm, int], right: Union[GuardTerm, int]) -> Cmp:
    return Cmp(op, _as_term(left), _as_term(right))


def ispad(term: Union[GuardTerm, int]) -> IsPad:
    return IsPad(_as_term(term))


def plus(term: Union[GuardTerm, int], offset: int) -> GuardTerm:
    return Add(_as_term(term), Const(offset))


def _as_term(value: Union[GuardTerm, int]) -> GuardTerm:
    return Const(value) if isinstance(value, int) else value


# -- printing -----------------------------------------------------------------------


def show_term(term: GuardTerm) -> str:
    if isinstance(term, TrackVar):
        return f"l{term.index}"
    if isinstance(term, ParamVar):
        return f"x{term.index}"
    if isinstance(term, Const):
        return str(term.value)
    if isinstance(term, Add):
        return f"{show_term(term.left)} + {_show_operand(term.right)}"
    if isinstance(term, Sub):
        return f"{show_term(term.left)} - {_show_operand(term.right)}"
    if isinstance(term, MulConst):
        return f"{term.factor} * {_show_operand(term.term)}"
    raise ContractViolation(f"not a guard term: {term!r}")


def _show_operand(term: GuardTerm) -> str:
    text = show_term(term)
    if isinstance(term, (Add, Sub, MulConst)) or (isinstance(term, Const) and term.value < 0):
        return f"({text})"
    return text


def show_guard(phi: GuardFormula) -> str:
    if isinstance(phi, BoolConst):
        return "true" if phi.value else "false"
    if isinstance(phi, Cmp):
        return f"{show_term(phi.left)} {phi.op} {show_term(phi.right)}"
    if isinstance(phi, IsPad):
        return f"ispad({show_term(phi.term)})"
    if isinstance(phi, Not):
        inner = show_guard(phi.operand)
        if isinstance(phi.operand, (BoolConst, IsPad)):
            return f"not {inner}"
        return f"not ({inner})"
    if isinstance(phi, (And, Or)):
        glue = " and " if isinstance(phi, And) else " or "
        return glue.join(
            f"({show_guard(part)})" if isinstance(part, (And, Or)) else show_guard(part) for part in phi.operands
        )
    raise ContractViolation(f"not a guard formula: {phi!r}")
