"""
Command-line front end.

    python -m landauer_mbqc <command> [--pattern FILE | --builtin NAME] [flags]

The JSON report goes to stdout (or --out); a Rich summary and any log
output go to stderr. Exit codes: 0 success, 1 failed verification, 2 input
error.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from landauer_mbqc import __version__
from landauer_mbqc.commands import build_registry
from landauer_mbqc.config import (
    DEFAULT_OTP_SAMPLES,
    DEFAULT_TEMPERATURE_K,
    Command,
    RunConfig,
    Tolerances,
    load_config_from_file,
    load_settings,
    save_config_to_file,
)
from landauer_mbqc.console_output import ConsoleReporter
from landauer_mbqc.engine import list_builtin_patterns
from landauer_mbqc.errors import MBQCError
from landauer_mbqc.output_handler import get_sink

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


# ============================================================================
# Argument parsing
# ============================================================================

def parse_csv_floats(text: str) -> List[float]:
    """Parse "0.3,0.7" into floats (argparse type)."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated numbers, got {text!r}")


def _commands_epilog() -> str:
    commands = build_registry().get_all()
    width = max(len(name) for name in commands)
    lines = [f"  {name:<{width}}  {command.description}" for name, command in commands.items()]
    return "commands:\n" + "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landauer-mbqc",
        description="MBQC simulator and heat-dissipation verification harness",
        epilog=_commands_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('command', choices=[c.value for c in Command], help='Sub-command to run')
    parser.add_argument('--pattern', metavar='PATH', help='Pattern JSON file')
    parser.add_argument('--builtin', metavar='NAME', choices=list_builtin_patterns(),
                        help='Built-in pattern instead of a file')
    parser.add_argument('--params', type=parse_csv_floats, default=[], metavar='CSV',
                        help='Parameters of the built-in pattern')
    parser.add_argument('--rows', type=int, default=1, help='Parallel wires for built-in patterns')
    parser.add_argument('--seed', type=int, default=0, help='Seed of every random stream (u64)')
    parser.add_argument('--temp', type=float, default=None, metavar='KELVIN',
                        help=f'Bath temperature (default {DEFAULT_TEMPERATURE_K} K, 1 in natural units)')
    parser.add_argument('--natural-units', action='store_true', help='k = 1, heats in multiples of ln 2')
    parser.add_argument('--tolerance', type=float, default=None, help='Verification tolerance override')
    parser.add_argument('--r', type=int, default=None, metavar='LAYER', help='Cut position C_r | O_r')
    parser.add_argument('--angles-a', type=parse_csv_floats, default=None, metavar='CSV',
                        help='Alice strategy A angles on C_r (column-major)')
    parser.add_argument('--angles-b', type=parse_csv_floats, default=None, metavar='CSV',
                        help='Alice strategy B angles on C_r (column-major)')
    parser.add_argument('--samples', type=int, default=DEFAULT_OTP_SAMPLES,
                        help='Random input states sampled by the one-time-pad check')
    parser.add_argument('--include-final-erasure', dest='include_final_erasure', action='store_true',
                        default=True, help='Erase the final record at the end of the run (default)')
    parser.add_argument('--no-final-erasure', dest='include_final_erasure', action='store_false',
                        help='Leave the final record stored (steady-state view)')
    parser.add_argument('--config', metavar='PATH', default=None,
                        help='Saved run configuration; explicit flags override it')
    parser.add_argument('--save-config', metavar='PATH', default=None,
                        help='Write the effective run configuration here before running')
    parser.add_argument('--out', metavar='PATH', default=None, help='Write the report here instead of stdout')
    parser.add_argument('--verbose', action='store_true', help='Debug logging on stderr')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    return parser


def config_defaults(config: RunConfig) -> Dict[str, Any]:
    """Parser defaults taken from a saved RunConfig (the command stays positional)."""
    return {
        'pattern': config.pattern_path,
        'builtin': config.builtin,
        'params': config.builtin_params,
        'rows': config.rows,
        'seed': config.seed,
        'temp': config.temperature,
        'natural_units': config.natural_units,
        'r': config.r,
        'angles_a': config.angles_a,
        'angles_b': config.angles_b,
        'samples': config.otp_samples,
        'include_final_erasure': config.include_final_erasure,
        'out': config.out_path,
    }


def build_config(args: argparse.Namespace, max_workers: int, base: Optional[RunConfig] = None) -> RunConfig:
    """
    RunConfig from parsed arguments.

    Args:
        args: Parsed arguments (defaults already taken from `base`)
        max_workers: Thread cap from the environment
        base: Config loaded with --config, the source of the tolerances

    Raises:
        ValidationError: If a value violates the config model
    """
    temperature = args.temp
    if temperature is None:
        temperature = 1.0 if args.natural_units else DEFAULT_TEMPERATURE_K
    tolerances = base.tolerances if base is not None else Tolerances()
    return RunConfig(
        command=Command(args.command),
        pattern_path=args.pattern,
        builtin=args.builtin,
        builtin_params=args.params,
        rows=args.rows,
        seed=args.seed,
        temperature=temperature,
        natural_units=args.natural_units,
        tolerances=tolerances.with_verification(args.tolerance),
        r=args.r,
        angles_a=args.angles_a,
        angles_b=args.angles_b,
        otp_samples=args.samples,
        include_final_erasure=args.include_final_erasure,
        out_path=args.out,
        max_workers=max_workers,
    )


# ============================================================================
# Main Entry Point
# ============================================================================

def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI entry point.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    reporter = ConsoleReporter()
    base: Optional[RunConfig] = None
    try:
        settings = load_settings()
        if args.config:
            base = load_config_from_file(args.config)
            parser.set_defaults(**config_defaults(base))
            args = parser.parse_args(argv)
    except (ValueError, OSError) as e:
        reporter.show_error(str(e), "configuration")
        return EXIT_INPUT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        format=LOG_FORMAT,
        stream=sys.stderr
    )

    name = args.command
    try:
        config = build_config(args, settings.max_threads, base)
        if args.save_config:
            save_config_to_file(config, args.save_config)
            logger.info(f"Saved run configuration to {args.save_config}")
        logger.info(f"Running {name} (seed {config.seed}, {config.max_workers} worker(s))")
        result = build_registry().execute(name, config, settings)
        sink = get_sink(config.out_path)
        sink.emit(result.report)
    except (MBQCError, ValidationError, ValueError, OSError) as e:
        logger.debug("Input error", exc_info=True)
        reporter.show_error(str(e), type(e).__name__)
        return EXIT_INPUT_ERROR

    reporter.show_report(result.report, sink.description)
    if not result.passed:
        logger.warning(f"{name} failed verification")
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
