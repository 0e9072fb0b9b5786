"""Instance files: a formula plus optional automaton-defined predicates."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from padded_logic.errors import InputError
from ssnfa.codec import automaton_from_json
from listlang.formulas import SarFormula
from listlang.parse import parse_formula
from listlang.predicates import LIBRARY, PredicateDef, custom_predicate

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

logger = logging.getLogger(__name__)


class PredicateSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    signature: List[Literal["int", "list"]]
    automaton: Dict[str, Any]
    negative: Optional[Dict[str, Any]] = None


class Instance(BaseModel):
    model_config = ConfigDict(extra="forbid")
    version: Literal[1]
    name: str
    description: str = ""
    formula: str
    expected: Optional[Literal["SAT", "UNSAT"]] = None
    predicates: Dict[str, PredicateSpec] = Field(default_factory=dict)


@dataclass
class LoadedInstance:
    spec: Instance
    formula: SarFormula
    predicates: Dict[str, PredicateDef]
    path: Optional[Path] = None

    @property
    def name(self) -> str:
        return self.spec.name


def _schema_path() -> Path:
    return Path(__file__).resolve().parents[1] / "contracts" / "instance.schema.json"


def validate_instance(payload: Dict[str, Any]) -> Instance:
    if jsonschema is not None:
        schema = json.loads(_schema_path().read_text(encoding="utf-8"))
        try:
            jsonschema.Draft7Validator(schema).validate(payload)
        except jsonschema.ValidationError as exc:
            raise InputError(f"instance: {exc.message}") from exc
    try:
        return Instance.model_validate(payload)
    except ValidationError as exc:
        raise InputError(f"instance: {exc}") from exc


def build_predicates(spec: Instance) -> Dict[str, PredicateDef]:
    defs: Dict[str, PredicateDef] = {}
    for name, pred in sorted(spec.predicates.items()):
        if name in LIBRARY:
            raise InputError(f"predicate {name!r} shadows a library predicate")
        positive = automaton_from_json(pred.automaton)
        negative = automaton_from_json(pred.negative) if pred.negative is not None else None
        defs[name] = custom_predicate(name, positive, pred.signature, negative)
    return defs


def load_instance_payload(payload: Dict[str, Any], path: Optional[Path] = None) -> LoadedInstance:
    spec = validate_instance(payload)
    predicates = build_predicates(spec)
    formula = parse_formula(spec.formula, predicates)
    return LoadedInstance(spec, formula, predicates, path)


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def load_instance(path: Union[str, Path]) -> LoadedInstance:
    path = Path(path)
    return load_instance_payload(read_json(path), path)


def instance_files(directory: Union[str, Path]) -> List[Path]:
    return sorted(Path(directory).glob("*.json"))
