"""sarsolve: satisfiability of SAR formulas over integer lists."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from padded_logic.errors import InputError
from chc.backends import SAT, UNSAT, BackendConfig, BackendUnavailable, get_backend
from chc.emit import emit_smtlib_horn, pretty_chc
from chc.model_check import INVALID, VALID, check_files
from chc.pipeline import SolveOptions, SoundnessViolation, compile_formula, solve_formula
from cli.bench import ORACLE_ONLY, default_jobs, format_table, run_bench, write_reports
from cli.instance import load_instance, read_json
from listlang.formulas import Atom, show_atom
from listlang.oracle import DEFAULT_BUDGET, OracleBounds
from minsky.encode import encode_program
from minsky.machine import load_program
from normalize.pipeline import CONS_STRATEGIES

logger = logging.getLogger("sarsolve")

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3
EXIT_UNSOUND = 4

_VERDICT_EXIT = {SAT: EXIT_SAT, UNSAT: EXIT_UNSAT}


def configure_logging(verbose: bool) -> None:
    root = logging.getLogger()
    if root.handlers:
        root.setLevel(logging.DEBUG if verbose else logging.WARNING)
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def parse_range(text: str) -> range:
    low, sep, high = text.partition("..")
    try:
        if not sep:
            raise ValueError(text)
        lo, hi = int(low), int(high)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def oracle_bounds(args: argparse.Namespace) -> OracleBounds:
    r = args.oracle_range
    return OracleBounds.from_range(args.oracle_max_len, r.start, r.stop - 1, args.oracle_budget)


def select_backend(name: Optional[str], args: argparse.Namespace) -> Optional[BackendConfig]:
    if name is None or name == ORACLE_ONLY:
        return None
    config = get_backend(name, args.backends_config)
    if args.timeout is not None:
        config = config.model_copy(update={"timeout_s": args.timeout})
    return config


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--timeout", type=float, default=None, help="Backend timeout in seconds (default: config, 60)")
    p.add_argument("--oracle-max-len", type=int, default=6, help="Longest list the oracle tries")
    p.add_argument("--oracle-range", type=parse_range, default=range(-3, 4), help="Oracle integer range A..B")
    p.add_argument("--oracle-budget", type=int, default=DEFAULT_BUDGET, help="Oracle candidate budget")
    p.add_argument("--backends-config", default=None, help="Backend config JSON (else $SARSOLVE_BACKENDS)")
    p.add_argument("--cons-strategy", choices=CONS_STRATEGIES, default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sarsolve", description=__doc__)
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Decide an instance")
    solve.add_argument("instance")
    solve.add_argument("--backend", default=None, help="Backend name; omit or 'none' for the oracle only")
    _add_solver_flags(solve)

    translate = sub.add_parser("translate", help="Print intermediate forms")
    translate.add_argument("instance")
    translate.add_argument("--dump-normal", action="store_true")
    translate.add_argument("--dump-chc", action="store_true")
    translate.add_argument("--dump-smt2", action="store_true")
    translate.add_argument("--cons-strategy", choices=CONS_STRATEGIES, default="auto")

    bench = sub.add_parser("bench", help="Run every instance of a directory")
    bench.add_argument("directory")
    bench.add_argument("--backend", action="append", default=None, help="Repeatable; 'none' is oracle only")
    bench.add_argument("--jobs", type=int, default=1, help=f"Parallel instances (capped at {default_jobs()})")
    bench.add_argument("--out", default=None, help="Directory for <backend>.csv and summary.json")
    _add_solver_flags(bench)

    check = sub.add_parser("check-model", help="Check a candidate model of CHCs over lists")
    check.add_argument("clauses")
    check.add_argument("model")
    check.add_argument("--backend", default=None)
    _add_solver_flags(check)

    encode = sub.add_parser("encode-minsky", help="Encode a two-counter machine")
    encode.add_argument("program")
    encode.add_argument("--solve", action="store_true", help="Also run the solve pipeline")
    encode.add_argument("--backend", default=None)
    _add_solver_flags(encode)
    return parser


def _solve_options(args: argparse.Namespace) -> SolveOptions:
    return SolveOptions(
        backend=select_backend(args.backend, args),
        bounds=oracle_bounds(args),
        cons_strategy=args.cons_strategy,
    )


def _report(outcome, name: str) -> int:
    print(f"{outcome.verdict} ({outcome.source}) {outcome.elapsed_ms:.0f} ms")
    if outcome.witness is not None:
        print(f"witness: {outcome.witness.show()}")
    if outcome.diagnostic:
        print(f"note: {outcome.diagnostic}")
    logger.info("%s: %s", name, outcome.verdict)
    return _VERDICT_EXIT.get(outcome.verdict, EXIT_UNKNOWN)


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    outcome = solve_formula(inst.formula, _solve_options(args), name=inst.name)
    return _report(outcome, inst.name)


def cmd_translate(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    compiled = compile_formula(inst.formula, args.cons_strategy)
    wanted = [args.dump_normal, args.dump_chc, args.dump_smt2]
    if not any(wanted):
        wanted = [False, True, False]
    if wanted[0]:
        print(compiled.normal.show())
    if wanted[1]:
        sys.stdout.write(pretty_chc(compiled.system))
    if wanted[2]:
        sys.stdout.write(emit_smtlib_horn(compiled.system))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    names: List[str] = args.backend or [ORACLE_ONLY]
    backends = [select_backend(name, args) for name in names]
    rows = run_bench(Path(args.directory), backends, oracle_bounds(args), args.jobs)
    sys.stdout.write(format_table(rows))
    if args.out:
        write_reports(rows, Path(args.out))
    return 0


def cmd_check_model(args: argparse.Namespace) -> int:
    reports = check_files(read_json(args.clauses), read_json(args.model), _solve_options(args))
    for report in reports:
        print(report.show())
    if any(r.status == INVALID for r in reports):
        return EXIT_UNSAT
    if all(r.status == VALID for r in reports):
        return EXIT_SAT
    return EXIT_UNKNOWN


def cmd_encode_minsky(args: argparse.Namespace) -> int:
    program = load_program(read_json(args.program))
    atom = encode_program(program)
    print(show_atom(atom))
    if not args.solve:
        return 0
    outcome = solve_formula(Atom(atom), _solve_options(args), name=Path(args.program).stem)
    return _report(outcome, Path(args.program).stem)


COMMANDS = {
    "solve": cmd_solve,
    "translate": cmd_translate,
    "bench": cmd_bench,
    "check-model": cmd_check_model,
    "encode-minsky": cmd_encode_minsky,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BackendUnavailable as exc:
        print(f"backend unavailable: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except SoundnessViolation as exc:
        logger.error("soundness violation: %s", exc)
        print(f"soundness violation: {exc}", file=sys.stderr)
        return EXIT_UNSOUND


if __name__ == "__main__":
    sys.exit(main())
