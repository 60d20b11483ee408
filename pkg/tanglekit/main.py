"""
Main entry point for tanglekit.

Subcommands:
    generate  write a named or random state to a state file
    compute   print the invariant report of a state
    verify    run the verification suites (exit 1 if any check fails)
"""

import argparse
import json
import sys
from typing import Dict, List, Optional

import pandas as pd

from .engines.invariants import InvariantError, InvariantReport, full_report
from .engines.state import PureState, named_state, random_state
from .parsers.state_parser import StateParsingError, dump_state, load_state_file, state_to_dict
from .processors.base_processor import CheckResult
from .processors.verify_processor import VerificationProcessor, all_passed
from .utils.constants import (
    DEFAULT_TOLERANCES,
    GENERATOR_NAMES,
    SEED_ENV_VAR,
    default_seed,
    seed_env_is_valid,
)
from .utils.helpers import format_value
from .utils.log import (
    debug,
    error,
    exception,
    info,
    set_log_file,
    set_quiet,
    set_verbosity,
    success,
    warn,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

# Qubit counts implied by fixed-size names
IMPLIED_QUBITS = {'bell': 2, 'chi': 4}


class UsageError(Exception):
    """Raised for invalid flag combinations."""
    pass


def build_state(name: str, n: Optional[int], seed: int, index: Optional[int] = None) -> PureState:
    """
    Build a named or random state from CLI arguments.

    Raises:
        UsageError: If n is required but missing
    """
    if n is None:
        n = IMPLIED_QUBITS.get(name)
    if n is None:
        raise UsageError(f"--n (or N) is required for '{name}'")
    if name == 'random':
        state = random_state(n, seed)
        return state.with_source(f"random(n={n}, seed={seed})")
    return named_state(name, n, index=index)


def parse_tolerances(items: Optional[List[str]]) -> Dict[str, float]:
    """Parse repeated NAME=VALUE tolerance overrides."""
    overrides: Dict[str, float] = {}
    for item in items or []:
        name, sep, raw = item.partition('=')
        name = name.strip()
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        if name not in DEFAULT_TOLERANCES:
            raise UsageError(
                f"unknown tolerance {name!r} (known: {', '.join(sorted(DEFAULT_TOLERANCES))})"
            )
        try:
            value = float(raw)
        except ValueError:
            raise UsageError(f"--tol {name}: {raw!r} is not a number") from None
        if value < 0:
            raise UsageError(f"--tol {name}: tolerance must be >= 0")
        overrides[name] = value
    return overrides


def parse_selection(items: Optional[List[str]]) -> List[str]:
    names: List[str] = []
    for item in items or []:
        names.extend(part.strip() for part in item.split(',') if part.strip())
    return names


def write_excel(tables: Dict[str, pd.DataFrame], path: str) -> None:
    from .excel.workbook_generator import generate_excel_workbook
    for written in generate_excel_workbook(tables, path):
        info(f"Excel: {written.resolve()}")


# === Output ===

def print_report_table(report: InvariantReport) -> None:
    df = report.to_dataframe()
    width = max([len(name) for name in df['name']] + [4])
    info(f"State: n={report.n}" + (f", source={report.source}" if report.source else ""))
    for name, value in zip(df['name'], df['value']):
        info(f"  {name:<{width}}  {format_value(value)}")


def print_check_table(results: List[CheckResult]) -> None:
    width = max([len(r.name) for r in results] + [4])
    for r in results:
        status = 'PASS' if r.passed else 'FAIL'
        info(f"  {status}  {r.name:<{width}}  max_dev={r.max_deviation:.3e}  "
             f"tol={r.tolerance:.1e}  trials={r.trials}")


# === Commands ===

def cmd_generate(args: argparse.Namespace) -> int:
    state = build_state(args.name, args.n, args.seed, args.index)
    if args.out:
        path = dump_state(state, args.out)
        success(f"Wrote {state.n}-qubit {args.name} state to {path}")
    else:
        print(json.dumps(state_to_dict(state), indent=2))
    return EXIT_OK


def cmd_compute(args: argparse.Namespace) -> int:
    if args.state:
        state = load_state_file(args.state)
    else:
        state = build_state(args.name, args.n, args.seed, args.index)
    debug(f"Loaded {state.n}-qubit state ({state.source})")

    report = full_report(state)
    selection = parse_selection(args.select)
    if selection:
        report = report.select(selection)

    if args.json:
        print(report.to_json())
    else:
        print_report_table(report)

    if args.output_excel:
        write_excel({'report': report.to_dataframe()}, args.output_excel)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    tolerances = parse_tolerances(args.tol)
    processor = VerificationProcessor(seed=args.seed, tolerances=tolerances)

    if args.benchmarks:
        info("Running benchmark suite...")
        results = processor.benchmark_suite()
    else:
        results = processor.run_all(args.n, args.trials, benchmarks=False)

    passed = all_passed(results)
    if args.json:
        print(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        print_check_table(results)
        failed = sum(1 for r in results if not r.passed)
        if passed:
            success(f"All {len(results)} checks passed")
        else:
            error(f"{failed} of {len(results)} checks failed")

    if args.output_excel:
        write_excel({'checks': processor.results_dataframe(results)}, args.output_excel)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


# === Parser ===

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--verbose',
        action='store_true',
        help='Enable extra debug output'
    )
    common.add_argument(
        '--log-file',
        type=str,
        default=None,
        help='Write logs to file'
    )

    parser = argparse.ArgumentParser(
        prog='tanglekit',
        description="Local-unitary invariants and entanglement monotones of N-qubit pure states"
    )
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('generate', parents=[common], help='Write a named or random state file')
    gen.add_argument('name', choices=GENERATOR_NAMES, help='State name')
    gen.add_argument('n', nargs='?', type=int, default=None, help='Qubit count')
    gen.add_argument('--seed', type=int, default=None, help=f'Seed for random states (default ${SEED_ENV_VAR} or 0)')
    gen.add_argument('--index', type=int, default=None, help='Basis index (basis only)')
    gen.add_argument('--out', type=str, default=None, help='Output file (default: stdout)')
    gen.set_defaults(handler=cmd_generate)

    comp = sub.add_parser('compute', parents=[common], help='Compute the invariant report of a state')
    source = comp.add_mutually_exclusive_group(required=True)
    source.add_argument('--state', type=str, help='State file (JSON)')
    source.add_argument('--name', choices=GENERATOR_NAMES, help='Named or random state')
    comp.add_argument('--n', type=int, default=None, help='Qubit count for --name')
    comp.add_argument('--seed', type=int, default=None, help='Seed for --name random')
    comp.add_argument('--index', type=int, default=None, help='Basis index for --name basis')
    comp.add_argument('--select', action='append', default=None,
                      help='Report entries to print (comma separated, repeatable)')
    comp.add_argument('--json', action='store_true', help='Print JSON instead of a table')
    comp.add_argument('--output-excel', type=str, default=None, help='Also write an Excel workbook')
    comp.set_defaults(handler=cmd_compute)

    ver = sub.add_parser('verify', parents=[common], help='Run the verification suites')
    ver.add_argument('--n', type=int, default=4, help='Qubit count (2..6, default 4)')
    ver.add_argument('--trials', type=int, default=100, help='Trials per check (default 100)')
    ver.add_argument('--seed', type=int, default=None, help=f'Master seed (default ${SEED_ENV_VAR} or 0)')
    ver.add_argument('--benchmarks', action='store_true', help='Run only the exact-value benchmarks')
    ver.add_argument('--tol', action='append', default=None, metavar='NAME=VALUE',
                     help='Override a check tolerance (repeatable)')
    ver.add_argument('--json', action='store_true', help='Print JSON instead of a table')
    ver.add_argument('--output-excel', type=str, default=None, help='Also write an Excel workbook')
    ver.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    # Configure logging
    set_verbosity(args.verbose)
    set_quiet(bool(getattr(args, 'json', False)))
    set_log_file(None)
    if args.log_file:
        set_log_file(args.log_file)
        debug(f"Logging to file: {args.log_file}")

    if not seed_env_is_valid():
        warn(f"{SEED_ENV_VAR} is not a non-negative integer; using seed 0")
    if getattr(args, 'seed', None) is None:
        args.seed = default_seed()
    elif args.seed < 0:
        error("--seed must be a non-negative integer")
        return EXIT_USAGE

    try:
        return args.handler(args)
    except (StateParsingError, UsageError, InvariantError, ValueError, OSError) as e:
        error(str(e))
        return EXIT_USAGE
    except Exception as e:
        exception("Unexpected error", e)
        return EXIT_USAGE
    finally:
        set_quiet(False)


def run() -> None:
    """Console script entry point."""
    sys.exit(main())


if __name__ == '__main__':
    run()
