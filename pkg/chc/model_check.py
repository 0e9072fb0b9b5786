"""Checking a candidate model of CHCs over lists.

Each clause ``head <= body`` is valid under the candidate iff
``body and not head`` is unsatisfiable; the negation is a Σ1 formula, so
the solve pipeline decides it.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from padded_logic.errors import InputError
from chc.backends import SAT, UNSAT
from chc.pipeline import SolveOptions, solve_formula
from listlang.formulas import INT, LIST, Conj, Neg, PredCall, SarFormula, substitute_formula
from listlang.parse import parse_formula, sort_of_name
from listlang.predicates import LIBRARY, PredicateDef
from listlang.terms import Term
from telemetry.logger import log_event

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

logger = logging.getLogger(__name__)

VALID = "VALID"
INVALID = "INVALID"
UNKNOWN = "UNKNOWN"


class ClauseFile(BaseModel):
    model_config = ConfigDict(extra="forbid")
    version: Literal[1]
    predicates: Dict[str, List[Literal["int", "list"]]]
    clauses: List[str]


class ModelEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")
    library: Optional[str] = None
    params: List[str] = Field(default_factory=list)
    formula: Optional[str] = None

    @model_validator(mode="after")
    def _one_form(self) -> "ModelEntry":
        if (self.library is None) == (self.formula is None):
            raise ValueError("a model entry needs exactly one of 'library' or 'formula'")
        return self


class ModelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")
    version: Literal[1]
    model: Dict[str, ModelEntry]


@dataclass(frozen=True)
class ListClause:
    text: str
    head: Optional[PredCall]
    body: SarFormula


@dataclass
class ClauseReport:
    index: int
    clause: str
    status: str
    witness: Optional[Dict[str, Any]] = None
    source: str = ""

    def show(self) -> str:
        line = f"[{self.index}] {self.status}: {self.clause}"
        if self.witness is not None:
            line += f"  witness {json.dumps(self.witness, sort_keys=True)}"
        return line


def _contract(name: str) -> Dict[str, Any]:
    path = Path(__file__).resolve().parents[1] / "contracts" / name
    return json.loads(path.read_text(encoding="utf-8"))


def _validate(payload: Dict[str, Any], schema_name: str, model):
    if jsonschema is not None:
        try:
            jsonschema.Draft7Validator(_contract(schema_name)).validate(payload)
        except jsonschema.ValidationError as exc:
            raise InputError(f"{schema_name}: {exc.message}") from exc
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        raise InputError(f"{schema_name}: {exc}") from exc


def load_clause_file(payload: Dict[str, Any]) -> ClauseFile:
    return _validate(payload, "chc_clauses.schema.json", ClauseFile)


def load_model_file(payload: Dict[str, Any]) -> ModelFile:
    return _validate(payload, "candidate_model.schema.json", ModelFile)


def formula_predicate(name: str, params: Sequence[str], text: str) -> PredicateDef:
    """A predicate given by a formula over the named parameters."""
    body = parse_formula(text)
    signature = tuple(sort_of_name(p) for p in params)

    def build(*args: Term) -> SarFormula:
        ints = {p: a for p, a, s in zip(params, args, signature) if s == INT}
        lists = {p: a for p, a, s in zip(params, args, signature) if s == LIST}
        return substitute_formula(body, ints, lists)

    return PredicateDef(name, signature, build)


def interpret_model(model: ModelFile, signatures: Mapping[str, Sequence[str]]) -> Dict[str, PredicateDef]:
    theta: Dict[str, PredicateDef] = {}
    for var, signature in signatures.items():
        entry = model.model.get(var)
        if entry is None:
            raise InputError(f"candidate model has no image for predicate variable {var}")
        if entry.library is not None:
            if entry.library not in LIBRARY:
                raise InputError(f"unknown library predicate {entry.library!r} for {var}")
            image = LIBRARY[entry.library]
        else:
            image = formula_predicate(var, entry.params, entry.formula)
        if tuple(image.signature) != tuple(signature):
            raise InputError(f"image of {var} has signature {image.signature}, expected {tuple(signature)}")
        theta[var] = image
    return theta


def parse_clause(text: str, theta: Mapping[str, PredicateDef]) -> ListClause:
    if "<=" not in text:
        raise InputError(f"clause {text!r} is not of the form 'head <= body'")
    head_text, body_text = (part.strip() for part in text.split("<=", 1))
    head: Optional[PredCall] = None
    if head_text != "false":
        parsed = parse_formula(head_text, theta)
        if not isinstance(parsed, PredCall) or parsed.predicate not in theta.values():
            raise InputError(f"clause head {head_text!r} must be false or a predicate variable application")
        head = parsed
    return ListClause(text, head, parse_formula(body_text, theta))


def _negation(clause: ListClause) -> SarFormula:
    if clause.head is None:
        return clause.body
    return Conj((clause.body, Neg(clause.head)))


def check_candidate_model(
    clauses: Sequence[str],
    theta: Mapping[str, PredicateDef],
    options: Optional[SolveOptions] = None,
) -> List[ClauseReport]:
    reports = []
    for index, text in enumerate(clauses):
        clause = parse_clause(text, theta)
        outcome = solve_formula(_negation(clause), options, name=f"clause {index}")
        if outcome.verdict == SAT:
            status = INVALID
        elif outcome.verdict == UNSAT:
            status = VALID
        else:
            status = UNKNOWN
        witness = outcome.witness.to_json() if outcome.witness is not None else None
        reports.append(ClauseReport(index, text, status, witness, outcome.source))
        logger.info("clause %d: %s", index, status)
        try:
            log_event({"event": "model_check", "clause": index, "status": status})
        except Exception:
            logger.debug("event log failed", exc_info=True)
    return reports


def check_files(clause_payload: Dict[str, Any], model_payload: Dict[str, Any], options: Optional[SolveOptions] = None) -> List[ClauseReport]:
    clause_file = load_clause_file(clause_payload)
    theta = interpret_model(load_model_file(model_payload), clause_file.predicates)
    return check_candidate_model(clause_file.clauses, theta, options)
