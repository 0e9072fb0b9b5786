"""Two-counter machines: program model, loading and simulation."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from padded_logic.errors import InputError

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

logger = logging.getLogger(__name__)


class Inc(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)
    op: Literal["inc"] = "inc"
    reg: Literal[0, 1]
    next: int


class JzDec(BaseModel):
    """Decrement and go to ``positive`` if the register is non-zero, else go to ``zero``."""

    model_config = ConfigDict(extra="forbid", frozen=True)
    op: Literal["jzdec"] = "jzdec"
    reg: Literal[0, 1]
    positive: int
    zero: int


class Halt(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)
    op: Literal["halt"] = "halt"


Instruction = Annotated[Union[Inc, JzDec, Halt], Field(discriminator="op")]


def targets(ins: Instruction) -> Tuple[int, ...]:
    if isinstance(ins, Inc):
        return (ins.next,)
    if isinstance(ins, JzDec):
        return (ins.positive, ins.zero)
    return ()


class MinskyProgram(BaseModel):
    model_config = ConfigDict(extra="forbid")
    version: Literal[1] = 1
    lines: List[int]
    code: Dict[int, Instruction]

    @model_validator(mode="after")
    def _closed(self) -> "MinskyProgram":
        lines = set(self.lines)
        if 0 not in lines:
            raise ValueError("line 0 is missing")
        if any(line < 0 for line in lines):
            raise ValueError("lines must be non-negative")
        if set(self.code) != lines:
            raise ValueError(f"code must be defined exactly on lines {sorted(lines)}")
        for line, ins in self.code.items():
            bad = [t for t in targets(ins) if t not in lines]
            if bad:
                raise ValueError(f"line {line} jumps to undefined lines {bad}")
        return self

    @classmethod
    def of(cls, code: Dict[int, Instruction]) -> "MinskyProgram":
        return cls(lines=sorted(code), code=code)


@dataclass(frozen=True)
class Halted:
    """Register values of every configuration, from the start to the halt."""

    log0: Tuple[int, ...]
    log1: Tuple[int, ...]

    @property
    def steps(self) -> int:
        return len(self.log0) - 1


@dataclass(frozen=True)
class OutOfFuel:
    steps: int


def _schema_path() -> Path:
    return Path(__file__).resolve().parents[1] / "contracts" / "minsky_program.schema.json"


def load_program(payload: Dict[str, Any]) -> MinskyProgram:
    if jsonschema is not None:
        schema = json.loads(_schema_path().read_text(encoding="utf-8"))
        try:
            jsonschema.Draft7Validator(schema).validate(payload)
        except jsonschema.ValidationError as exc:
            raise InputError(f"minsky program: {exc.message}") from exc
    try:
        return MinskyProgram.model_validate(payload)
    except ValidationError as exc:
        raise InputError(f"minsky program: {exc}") from exc


def run_machine(program: MinskyProgram, fuel: int) -> Union[Halted, OutOfFuel]:
    pc = 0
    regs = [0, 0]
    log0, log1 = [0], [0]
    for step in range(fuel + 1):
        ins = program.code.get(pc)
        if ins is None:
            raise InputError(f"no instruction at line {pc}")
        if isinstance(ins, Halt):
            logger.debug("halted after %d steps", step)
            return Halted(tuple(log0), tuple(log1))
        if step == fuel:
            break
        if isinstance(ins, Inc):
            regs[ins.reg] += 1
            pc = ins.next
        elif regs[ins.reg] > 0:
            regs[ins.reg] -= 1
            pc = ins.positive
        else:
            pc = ins.zero
        log0.append(regs[0])
        log1.append(regs[1])
    return OutOfFuel(fuel)
