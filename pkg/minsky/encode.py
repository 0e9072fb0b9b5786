"""Encoding a two-counter machine as a SAR atom.

The atom reads (X0, X1, tail X0, tail X1): letter t holds the registers of
configuration t and of configuration t + 1. It is satisfiable iff the
machine halts, with X0 and X1 the register logs of the run.
"""

from __future__ import annotations

from typing import List

from padded_logic.guards import GuardFormula, conj
from padded_logic.parse import parse_guard
from ssnfa.automaton import SsNfa, Transition
from listlang.formulas import SarAtom
from listlang.terms import Assignment, LVar, Tail
from minsky.machine import Halt, Halted, Inc, Instruction, JzDec, MinskyProgram

START = "q_start"
ACCEPT = "q_accept"

_ZERO_START = parse_guard("l0 = 0 and l1 = 0")


def line_state(line: int) -> str:
    return f"q{line}"


def _keep(reg: int) -> str:
    return f"l{3 - reg} = l{1 - reg}"


def instruction_edges(line: int, ins: Instruction) -> List[Transition]:
    source = line_state(line)
    if isinstance(ins, Inc):
        guard = parse_guard(f"l{ins.reg + 2} = l{ins.reg} + 1 and {_keep(ins.reg)}")
        return [Transition(source, guard, line_state(ins.next))]
    if isinstance(ins, JzDec):
        r = ins.reg
        positive = parse_guard(f"l{r} > 0 and l{r + 2} = l{r} - 1 and {_keep(r)}")
        zero = parse_guard(f"l{r} = 0 and l{r + 2} = l{r} and {_keep(r)}")
        return [Transition(source, positive, line_state(ins.positive)), Transition(source, zero, line_state(ins.zero))]
    if isinstance(ins, Halt):
        return [Transition(source, parse_guard("ispad(l2) and ispad(l3)"), ACCEPT)]
    raise TypeError(f"unknown instruction {ins!r}")


def _restrict(t: Transition, guard: GuardFormula) -> Transition:
    return Transition(START, conj(t.guard, guard), t.target)


def encode_automaton(program: MinskyProgram) -> SsNfa:
    transitions: List[Transition] = []
    for line in sorted(program.code):
        transitions.extend(instruction_edges(line, program.code[line]))
    # the run starts in q0 with both registers at zero
    starts = [_restrict(t, _ZERO_START) for t in transitions if t.source == line_state(0)]
    transitions.extend(starts)
    states = [START] + [line_state(line) for line in sorted(program.lines)] + [ACCEPT]
    return SsNfa.build(4, 0, states, [START], [ACCEPT], transitions)


def encode_program(program: MinskyProgram) -> SarAtom:
    x0, x1 = LVar("X0"), LVar("X1")
    return SarAtom(encode_automaton(program), (x0, x1, Tail(x0), Tail(x1)), (), "minsky")


def log_assignment(halted: Halted) -> Assignment:
    return Assignment({}, {"X0": halted.log0, "X1": halted.log1})
