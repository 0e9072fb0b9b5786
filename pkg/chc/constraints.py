"""Pad-free constraint language used in generated clauses.

Integer variables carry values, boolean flag variables carry "is padded".
Linear expressions are kept in a canonical coefficient form so printing
and evaluation are deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Set, Tuple, Union

from padded_logic.errors import ContractViolation
from padded_logic.guards import CMP_OPS, compare


@dataclass(frozen=True)
class Lin:
    """sum(c * name) + const"""

    coeffs: Tuple[Tuple[str, int], ...] = ()
    const: int = 0

    @classmethod
    def var(cls, name: str) -> "Lin":
        return cls(((name, 1),), 0)

    @classmethod
    def constant(cls, value: int) -> "Lin":
        return cls((), value)

    @classmethod
    def _make(cls, table: Mapping[str, int], const: int) -> "Lin":
        return cls(tuple(sorted((n, c) for n, c in table.items() if c)), const)

    def __add__(self, other: "Lin") -> "Lin":
        table = dict(self.coeffs)
        for name, c in other.coeffs:
            table[name] = table.get(name, 0) + c
        return Lin._make(table, self.const + other.const)

    def scale(self, factor: int) -> "Lin":
        return Lin._make({n: c * factor for n, c in self.coeffs}, self.const * factor)

    def __sub__(self, other: "Lin") -> "Lin":
        return self + other.scale(-1)

    def names(self) -> Set[str]:
        return {n for n, _ in self.coeffs}

    def evaluate(self, env: Mapping[str, object]) -> int:
        total = self.const
        for name, c in self.coeffs:
            if name not in env:
                raise ContractViolation(f"no value for {name}")
            total += c * int(env[name])
        return total

    def rename(self, mapping: Mapping[str, str]) -> "Lin":
        table: Dict[str, int] = {}
        for name, c in self.coeffs:
            target = mapping.get(name, name)
            table[target] = table.get(target, 0) + c
        return Lin._make(table, self.const)


@dataclass(frozen=True)
class CBool:
    value: bool


CTRUE = CBool(True)
CFALSE = CBool(False)


@dataclass(frozen=True)
class CFlag:
    """True iff the flagged variable is padded."""

    name: str


@dataclass(frozen=True)
class CCmp:
    op: str
    left: Lin
    right: Lin

    def __post_init__(self) -> None:
        if self.op not in CMP_OPS:
            raise ContractViolation(f"unknown comparison operator {self.op!r}")


@dataclass(frozen=True)
class CNot:
    operand: "Constraint"


@dataclass(frozen=True)
class CAnd:
    operands: Tuple["Constraint", ...]


@dataclass(frozen=True)
class COr:
    operands: Tuple["Constraint", ...]


Constraint = Union[CBool, CFlag, CCmp, CNot, CAnd, COr]


def _flatten(parts: Iterable[Constraint], kind: type) -> List[Constraint]:
    """Operands of nested ``kind`` nodes spliced in, first occurrence kept."""
    flat: List[Constraint] = []
    for part in parts:
        for operand in part.operands if isinstance(part, kind) else (part,):
            if operand not in flat:
                flat.append(operand)
    return flat


def cand(*parts: Constraint) -> Constraint:
    flat = [p for p in _flatten(parts, CAnd) if p != CTRUE]
    if CFALSE in flat:
        return CFALSE
    if not flat:
        return CTRUE
    return flat[0] if len(flat) == 1 else CAnd(tuple(flat))


def cor(*parts: Constraint) -> Constraint:
    flat = [p for p in _flatten(parts, COr) if p != CFALSE]
    if CTRUE in flat:
        return CTRUE
    if not flat:
        return CFALSE
    return flat[0] if len(flat) == 1 else COr(tuple(flat))


def cnot(c: Constraint) -> Constraint:
    if isinstance(c, CBool):
        return CBool(not c.value)
    if isinstance(c, CNot):
        return c.operand
    return CNot(c)


def cimplies(a: Constraint, b: Constraint) -> Constraint:
    return cor(cnot(a), b)


def ceq(left: Union[str, Lin], right: Union[str, int, Lin]) -> Constraint:
    return CCmp("=", _lin(left), _lin(right))


def _lin(value: Union[str, int, Lin]) -> Lin:
    if isinstance(value, Lin):
        return value
    if isinstance(value, str):
        return Lin.var(value)
    return Lin.constant(value)


def eval_constraint(c: Constraint, env: Mapping[str, object]) -> bool:
    if isinstance(c, CBool):
        return c.value
    if isinstance(c, CFlag):
        if c.name not in env:
            raise ContractViolation(f"no value for flag {c.name}")
        return bool(env[c.name])
    if isinstance(c, CCmp):
        return compare(c.op, c.left.evaluate(env), c.right.evaluate(env))
    if isinstance(c, CNot):
        return not eval_constraint(c.operand, env)
    if isinstance(c, CAnd):
        return all(eval_constraint(p, env) for p in c.operands)
    if isinstance(c, COr):
        return any(eval_constraint(p, env) for p in c.operands)
    raise ContractViolation(f"not a constraint: {c!r}")


def constraint_names(c: Constraint) -> Tuple[Set[str], Set[str]]:
    """(integer variables, flag variables)"""
    ints: Set[str] = set()
    flags: Set[str] = set()

    def walk(node: Constraint) -> None:
        if isinstance(node, CFlag):
            flags.add(node.name)
        elif isinstance(node, CCmp):
            ints.update(node.left.names() | node.right.names())
        elif isinstance(node, CNot):
            walk(node.operand)
        elif isinstance(node, (CAnd, COr)):
            for part in node.operands:
                walk(part)

    walk(c)
    return ints, flags


def rename_constraint(c: Constraint, mapping: Mapping[str, str]) -> Constraint:
    if isinstance(c, CBool):
        return c
    if isinstance(c, CFlag):
        return CFlag(mapping.get(c.name, c.name))
    if isinstance(c, CCmp):
        return CCmp(c.op, c.left.rename(mapping), c.right.rename(mapping))
    if isinstance(c, CNot):
        return CNot(rename_constraint(c.operand, mapping))
    if isinstance(c, CAnd):
        return CAnd(tuple(rename_constraint(p, mapping) for p in c.operands))
    if isinstance(c, COr):
        return COr(tuple(rename_constraint(p, mapping) for p in c.operands))
    raise ContractViolation(f"not a constraint: {c!r}")


# -- printing ----------------------------------------------------------------------------------

_SIMPLE_SYMBOL = re.compile(r"^[A-Za-z~!@$%^&*_+=<>.?/-][A-Za-z0-9~!@$%^&*_+=<>.?/-]*$")


def smt_symbol(name: str) -> str:
    if _SIMPLE_SYMBOL.match(name):
        return name
    if "|" in name or "\\" in name:
        raise ContractViolation(f"cannot quote symbol {name!r}")
    return f"|{name}|"


def _smt_int(value: int) -> str:
    return str(value) if value >= 0 else f"(- {-value})"


def lin_to_smt(e: Lin) -> str:
    parts = []
    for name, c in e.coeffs:
        sym = smt_symbol(name)
        parts.append(sym if c == 1 else f"(* {_smt_int(c)} {sym})")
    if e.const or not parts:
        parts.append(_smt_int(e.const))
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


def to_smt(c: Constraint) -> str:
    if isinstance(c, CBool):
        return "true" if c.value else "false"
    if isinstance(c, CFlag):
        return smt_symbol(c.name)
    if isinstance(c, CCmp):
        left, right = lin_to_smt(c.left), lin_to_smt(c.right)
        if c.op == "!=":
            return f"(not (= {left} {right}))"
        return f"({c.op} {left} {right})"
    if isinstance(c, CNot):
        return f"(not {to_smt(c.operand)})"
    if isinstance(c, CAnd):
        return f"(and {' '.join(to_smt(p) for p in c.operands)})"
    if isinstance(c, COr):
        return f"(or {' '.join(to_smt(p) for p in c.operands)})"
    raise ContractViolation(f"not a constraint: {c!r}")


def show_lin(e: Lin) -> str:
    text = ""
    for name, c in e.coeffs:
        term = name if abs(c) == 1 else f"{abs(c)}*{name}"
        if not text:
            text = term if c > 0 else f"-{term}"
        else:
            text += f" + {term}" if c > 0 else f" - {term}"
    if not text:
        return str(e.const)
    if e.const:
        text += f" + {e.const}" if e.const > 0 else f" - {-e.const}"
    return text


def show_constraint(c: Constraint) -> str:
    if isinstance(c, CBool):
        return "true" if c.value else "false"
    if isinstance(c, CFlag):
        return f"pad({c.name})"
    if isinstance(c, CCmp):
        return f"{show_lin(c.left)} {c.op} {show_lin(c.right)}"
    if isinstance(c, CNot):
        return f"!({show_constraint(c.operand)})"
    if isinstance(c, CAnd):
        return " && ".join(_wrap(p) for p in c.operands)
    if isinstance(c, COr):
        return " || ".join(_wrap(p) for p in c.operands)
    raise ContractViolation(f"not a constraint: {c!r}")


def _wrap(c: Constraint) -> str:
    text = show_constraint(c)
    return f"({text})" if isinstance(c, (CAnd, COr)) else text


def all_names(constraints: Iterable[Constraint]) -> Set[str]:
    names: Set[str] = set()
    for c in constraints:
        ints, flags = constraint_names(c)
        names |= ints | flags
    return names
