"""SMT-LIB2 HORN and plain-text renderings of a CHC system."""

from __future__ import annotations

from typing import List

from chc.constraints import CTRUE, smt_symbol, to_smt
from chc.model import ChcSystem, Clause, PredApp


def _app(app: PredApp) -> str:
    if not app.args:
        return smt_symbol(app.pred)
    return f"({smt_symbol(app.pred)} {' '.join(smt_symbol(a) for a in app.args)})"


def _clause(system: ChcSystem, clause: Clause) -> str:
    body_parts: List[str] = []
    if clause.body is not None:
        body_parts.append(_app(clause.body))
    if clause.constraint != CTRUE or not body_parts:
        body_parts.append(to_smt(clause.constraint))
    body = body_parts[0] if len(body_parts) == 1 else f"(and {' '.join(body_parts)})"
    head = _app(clause.head) if clause.head is not None else "false"
    implication = f"(=> {body} {head})"
    variables = system.variables(clause)
    if not variables:
        return f"(assert {implication})"
    bound = " ".join(f"({smt_symbol(name)} {sort})" for name, sort in variables)
    return f"(assert (forall ({bound}) {implication}))"


def emit_smtlib_horn(system: ChcSystem) -> str:
    lines = ["(set-logic HORN)"]
    for sig in sorted(system.predicates, key=lambda p: p.name):
        lines.append(f"(declare-fun {smt_symbol(sig.name)} ({' '.join(sig.sorts)}) Bool)")
    for clause in system.clauses:
        lines.append(f"; {clause.label}" if clause.label else ";")
        lines.append(_clause(system, clause))
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def pretty_chc(system: ChcSystem) -> str:
    lines = []
    if system.tracks:
        lines.append("% tracks: " + ", ".join(f"{i}={t}" for i, t in enumerate(system.tracks)))
    if system.params:
        lines.append("% params: " + ", ".join(system.params))
    for number, clause in enumerate(system.clauses, start=1):
        lines.append(f"({number}) {clause.show()}")
    return "\n".join(lines) + "\n"
