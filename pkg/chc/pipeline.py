"""closure -> normalize -> toCHC -> (oracle || backend)."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Tuple

from chc.backends import SAT, UNKNOWN, UNSAT, BackendAnswer, BackendConfig, interpret_backend_result, run_backend
from chc.model import ChcSystem
from chc.translate import to_chc
from listlang.closure import Sigma1, to_sigma1
from listlang.formulas import SarFormula
from listlang.oracle import OracleBounds, OracleResult, oracle_solve
from listlang.terms import Assignment
from normalize.atoms import NormalAtom
from normalize.pipeline import normalize
from telemetry.logger import log_event

logger = logging.getLogger(__name__)


class SoundnessViolation(RuntimeError):
    """The oracle found a witness for a formula a backend proved unsatisfiable."""


@dataclass(frozen=True)
class Compiled:
    sigma1: Sigma1
    normal: NormalAtom
    system: ChcSystem


@dataclass
class SolveOptions:
    backend: Optional[BackendConfig] = None
    bounds: OracleBounds = field(default_factory=OracleBounds)
    use_oracle: bool = True
    cons_strategy: str = "auto"


@dataclass
class SolveOutcome:
    verdict: str
    source: str
    elapsed_ms: float
    witness: Optional[Assignment] = None
    backend_answer: Optional[BackendAnswer] = None
    oracle: Optional[OracleResult] = None
    compiled: Optional[Compiled] = None
    diagnostic: str = ""


def compile_formula(phi: SarFormula, cons_strategy: str = "auto") -> Compiled:
    sigma1 = to_sigma1(phi)
    normal = normalize(sigma1.atom, cons_strategy)
    system = to_chc(normal)
    return Compiled(sigma1, normal, system)


def combine(oracle: Optional[OracleResult], answer: Optional[BackendAnswer]) -> Tuple[str, str, str]:
    """(verdict, source, diagnostic) from the two halves of a solve."""
    backend_verdict = interpret_backend_result(answer.answer) if answer else UNKNOWN
    if oracle is not None and oracle.found:
        if backend_verdict == UNSAT:
            logger.error("oracle witness %s contradicts backend %s", oracle.assignment.show(), answer.backend)
            raise SoundnessViolation(
                f"oracle found {oracle.assignment.show()} but backend {answer.backend} reported the CHCs satisfiable"
            )
        return SAT, "oracle", ""
    if backend_verdict != UNKNOWN:
        return backend_verdict, "backend", ""
    notes = []
    if answer is not None:
        notes.append(f"backend {answer.backend}: {answer.answer} {answer.diagnostic}".strip())
    if oracle is not None:
        notes.append(f"oracle: no witness in {oracle.checked} candidates" + ("" if oracle.exhausted else " (budget)"))
    return UNKNOWN, "none", "; ".join(notes)


def solve_formula(phi: SarFormula, options: Optional[SolveOptions] = None, name: str = "") -> SolveOutcome:
    options = options or SolveOptions()
    start = time.monotonic()
    compiled = compile_formula(phi, options.cons_strategy)
    oracle_result: Optional[OracleResult] = None
    answer: Optional[BackendAnswer] = None
    with ThreadPoolExecutor(max_workers=2) as pool:
        backend_future = pool.submit(run_backend, options.backend, compiled.system) if options.backend else None
        if options.use_oracle:
            oracle_result = oracle_solve(phi, options.bounds)
        if backend_future is not None:
            answer = backend_future.result()
    verdict, source, diagnostic = combine(oracle_result, answer)
    elapsed = (time.monotonic() - start) * 1000
    outcome = SolveOutcome(
        verdict,
        source,
        elapsed,
        oracle_result.assignment if oracle_result else None,
        answer,
        oracle_result,
        compiled,
        diagnostic,
    )
    logger.info("solve %s: %s via %s in %.0f ms", name or "<formula>", verdict, source, elapsed)
    try:
        log_event(
            {
                "event": "solve",
                "instance": name,
                "verdict": verdict,
                "source": source,
                "elapsed_ms": round(elapsed, 1),
                "backend": options.backend.name if options.backend else None,
            }
        )
    except Exception:
        logger.debug("event log failed", exc_info=True)
    return outcome
