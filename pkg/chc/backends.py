"""External CHC solvers: configuration, process driver, in-process z3."""

from __future__ import annotations

import json
import logging
import os
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from padded_logic.errors import InputError
from chc.emit import emit_smtlib_horn
from chc.model import ChcSystem
from telemetry.logger import log_event

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

try:
    import psutil  # type: ignore
except ImportError:  # pragma: no cover - psutil optional
    psutil = None

try:
    import z3  # type: ignore
except ImportError:  # pragma: no cover - z3-solver optional
    z3 = None

logger = logging.getLogger(__name__)

BACKENDS_ENV = "SARSOLVE_BACKENDS"
ANSWERS = ("sat", "unsat", "unknown", "timeout", "error")

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"


class BackendUnavailable(RuntimeError):
    """The solver binary or module is not installed."""


class BackendConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    name: str
    kind: Literal["process", "z3"] = "process"
    command: List[str] = Field(default_factory=list)
    timeout_s: float = 60.0
    enabled: bool = True

    @model_validator(mode="after")
    def _check_template(self) -> "BackendConfig":
        if self.kind == "process" and not any("{file}" in part for part in self.command):
            raise ValueError("process backend command must contain {file}")
        return self


class BackendsFile(BaseModel):
    model_config = ConfigDict(extra="forbid")
    version: Literal[1]
    backends: List[BackendConfig]


@dataclass
class BackendAnswer:
    backend: str
    answer: str
    elapsed_ms: float
    diagnostic: str = ""


def _schema_path() -> Path:
    return Path(__file__).resolve().parents[1] / "contracts" / "backends.schema.json"


def default_config_path() -> Path:
    return Path(__file__).resolve().parents[1] / "config" / "backends.json"


def resolve_config_path(explicit: Optional[os.PathLike] = None) -> Path:
    if explicit:
        return Path(explicit)
    override = os.environ.get(BACKENDS_ENV)
    if override:
        return Path(override)
    return default_config_path()


def parse_backends(payload: Dict[str, Any]) -> Dict[str, BackendConfig]:
    if jsonschema is not None:
        schema = json.loads(_schema_path().read_text(encoding="utf-8"))
        try:
            jsonschema.Draft7Validator(schema).validate(payload)
        except jsonschema.ValidationError as exc:
            raise InputError(f"backend config: {exc.message}") from exc
    try:
        parsed = BackendsFile.model_validate(payload)
    except ValidationError as exc:
        raise InputError(f"backend config: {exc}") from exc
    return {b.name: b for b in parsed.backends}


def load_backends(path: Optional[os.PathLike] = None) -> Dict[str, BackendConfig]:
    resolved = resolve_config_path(path)
    try:
        payload = json.loads(resolved.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"backend config not found: {resolved}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"backend config {resolved} is not JSON: {exc}") from exc
    return parse_backends(payload)


def get_backend(name: str, path: Optional[os.PathLike] = None) -> BackendConfig:
    backends = load_backends(path)
    if name not in backends:
        raise InputError(f"unknown backend {name!r}; configured: {sorted(backends)}")
    return backends[name]


def parse_answer(stdout: str) -> Tuple[str, str]:
    """First token of the last non-empty line, as (answer, diagnostic)."""
    lines = [line.strip() for line in stdout.splitlines() if line.strip()]
    if not lines:
        return "error", "empty solver output"
    token = lines[-1].split()[0].strip("()").lower()
    if token in ("sat", "unsat", "unknown"):
        return token, ""
    return "error", f"unrecognised solver output: {lines[-1][:200]}"


def _kill_tree(proc: subprocess.Popen) -> None:
    if psutil is not None:
        try:
            parent = psutil.Process(proc.pid)
            for child in parent.children(recursive=True):
                child.kill()
            parent.kill()
            return
        except psutil.NoSuchProcess:
            return
    proc.kill()


def run_process(config: BackendConfig, text: str) -> BackendAnswer:
    exe = config.command[0]
    if shutil.which(exe) is None and not Path(exe).exists():
        raise BackendUnavailable(f"backend {config.name}: {exe} not found")
    with tempfile.TemporaryDirectory(prefix="sarsolve-") as workdir:
        path = Path(workdir) / "system.smt2"
        path.write_text(text, encoding="utf-8")
        cmd = [
            part.replace("{file}", str(path)).replace("{timeout}", str(int(config.timeout_s)))
            for part in config.command
        ]
        start = time.monotonic()
        try:
            proc = subprocess.Popen(cmd, cwd=workdir, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
        except OSError as exc:
            raise BackendUnavailable(f"backend {config.name}: {exc}") from exc
        try:
            out, err = proc.communicate(timeout=config.timeout_s)
        except subprocess.TimeoutExpired:
            _kill_tree(proc)
            proc.communicate()
            elapsed = (time.monotonic() - start) * 1000
            return BackendAnswer(config.name, "timeout", elapsed, f"no answer within {config.timeout_s}s")
        elapsed = (time.monotonic() - start) * 1000
    answer, diagnostic = parse_answer(out)
    if answer == "error" and err.strip():
        diagnostic = f"{diagnostic}; stderr: {err.strip()[-200:]}"
    return BackendAnswer(config.name, answer, elapsed, diagnostic)


def run_z3(config: BackendConfig, text: str) -> BackendAnswer:
    if z3 is None:
        raise BackendUnavailable("backend z3 needs the z3-solver package")
    start = time.monotonic()
    solver = z3.SolverFor("HORN")
    solver.set("timeout", int(config.timeout_s * 1000))
    try:
        solver.from_string(text)
        result = solver.check()
    except z3.Z3Exception as exc:
        return BackendAnswer(config.name, "error", (time.monotonic() - start) * 1000, str(exc))
    elapsed = (time.monotonic() - start) * 1000
    answer = str(result)
    if answer == "unknown":
        reason = solver.reason_unknown()
        if "timeout" in reason or "canceled" in reason:
            return BackendAnswer(config.name, "timeout", elapsed, reason)
        return BackendAnswer(config.name, "unknown", elapsed, reason)
    return BackendAnswer(config.name, answer, elapsed)


def run_backend(config: BackendConfig, system: ChcSystem) -> BackendAnswer:
    if not config.enabled:
        raise BackendUnavailable(f"backend {config.name} is disabled")
    text = emit_smtlib_horn(system)
    if config.kind == "z3":
        result = run_z3(config, text)
    else:
        result = run_process(config, text)
    if result.answer in ("error", "timeout"):
        logger.warning("backend %s: %s (%s)", config.name, result.answer, result.diagnostic)
    else:
        logger.info("backend %s answered %s in %.0f ms", config.name, result.answer, result.elapsed_ms)
    try:
        log_event(
            {
                "event": "backend_call",
                "backend": config.name,
                "answer": result.answer,
                "elapsed_ms": round(result.elapsed_ms, 1),
            }
        )
    except Exception:
        logger.debug("event log failed", exc_info=True)
    return result


def interpret_backend_result(answer: str) -> str:
    """A refutable system (unsat) means the formula is satisfiable."""
    if answer == "unsat":
        return SAT
    if answer == "sat":
        return UNSAT
    if answer not in ANSWERS:
        logger.warning("malformed backend answer %r", answer)
    return UNKNOWN
