"""
Main entry point for the skewcode command line.

Exit codes: 0 success, 1 selftest or classification failure, 2 invalid
parameters or input, 3 message out of bounds, 4 enumeration guard hit,
5 uncorrectable word or syndrome collision.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError as PydanticValidationError

from src.cli.commands import CliConfig, execute
from src.config import OUTPUT_FORMATS, get_settings
from src.services.monitoring import track_error, write_metrics
from src.utils.errors import SkewCodeError
from src.utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
GLOBAL_FLAGS = ("p", "k", "s", "n", "guard", "format", "descending", "log_level", "metrics_file", "output", "workers")


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """Flags accepted before or after the subcommand name."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    group = parser.add_argument_group("ring and output options")
    group.add_argument("--p", type=int, default=default(None), help="characteristic (prime)")
    group.add_argument("--k", type=int, default=default(None), help="nilpotency index of u")
    group.add_argument("--s", type=int, default=default(None), help="theta(u) = s*u")
    group.add_argument("--n", type=int, default=default(None), help="code length")
    group.add_argument("--guard", type=int, default=default(None), help="max codewords to enumerate")
    group.add_argument("--format", choices=OUTPUT_FORMATS, default=default(None), help="report format")
    group.add_argument(
        "--descending", action="store_true", default=default(False), help="coefficient arrays highest degree first"
    )
    group.add_argument(
        "--log-level", type=str.upper, choices=LOG_LEVELS, default=default(None), help="logging level (default WARNING)"
    )
    group.add_argument("--metrics-file", type=Path, default=default(None), help="write Prometheus metrics here")
    group.add_argument("--output", type=Path, default=default(None), help="write the report here instead of stdout")
    group.add_argument("--workers", type=int, default=default(None), help="process pool size for factor searches")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewcode", description="Skew cyclic codes over F_p[u]/<u^k> and their skew polynomial rings."
    )
    _add_global_flags(parser)
    subparsers = parser.add_subparsers(dest="command", required=True)

    factor = subparsers.add_parser("factor", help="factor x^n - 1 and report the codes of each factor")
    _add_global_flags(factor, suppress=True)
    factor.add_argument("--d1", type=int, help="degree of the left factor")
    factor.add_argument("--level", type=int, help="factor over R_level (default k)")
    factor.add_argument("--target", help="unit-leading target polynomial instead of x^n - 1")
    factor.add_argument("--table1", action="store_true", help="reproduce the quadratic family table")
    factor.add_argument("--census", action="store_true", help="report the linear-factor census of x^2 + 1")
    factor.add_argument("--no-stats", dest="with_stats", action="store_false", help="skip per-code statistics")
    factor.add_argument("--no-distance", dest="with_distance", action="store_false", help="skip minimum distances")

    analyze = subparsers.add_parser("analyze", help="classify a code and print its matrices and statistics")
    _add_global_flags(analyze, suppress=True)
    analyze.add_argument("--generators", type=Path, help="code description JSON file")
    analyze.add_argument("--gen", dest="gens", action="append", help="generator polynomial (repeatable)")
    analyze.add_argument("--no-distance", dest="with_distance", action="store_false", help="skip the minimum distance")

    encode = subparsers.add_parser("encode", help="encode a message")
    _add_global_flags(encode, suppress=True)
    encode.add_argument("--code", dest="code_path", type=Path, required=True, help="code description JSON file")
    encode.add_argument("--message", dest="message_path", type=Path, required=True, help="message JSON file")

    decode = subparsers.add_parser("decode", help="correct a received word and recover its message")
    _add_global_flags(decode, suppress=True)
    decode.add_argument("--code", dest="code_path", type=Path, required=True, help="code description JSON file")
    decode.add_argument("--received", required=True, help="received word: JSON array or polynomial text")
    decode.add_argument("--max-weight", type=int, default=1, help="largest error weight tabulated")
    decode.add_argument("--strict", action="store_true", help="fail on any syndrome collision")

    selftest = subparsers.add_parser("selftest", help="run the golden fixtures")
    _add_global_flags(selftest, suppress=True)
    selftest.add_argument("--fixtures", type=Path, help="fixture directory")

    return parser


def _command_options(args: argparse.Namespace) -> dict:
    options = {key: value for key, value in vars(args).items() if key not in GLOBAL_FLAGS and key != "command"}
    if args.command == "factor":
        options["workers"] = args.workers
    return options


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        overrides = {
            key: value
            for key, value in {"log_level": args.log_level, "output_format": args.format, "workers": args.workers}.items()
            if value is not None
        }
        settings = get_settings().model_copy(update=overrides)
        setup_logging(settings.log_level, settings.log_json)
        config = CliConfig(
            p=args.p,
            k=args.k,
            s=args.s,
            n=args.n,
            guard=args.guard,
            format=settings.output_format,
            descending=args.descending,
            output=args.output,
        )
        if args.command == "factor":
            args.workers = settings.workers
        execute(args.command, config, **_command_options(args))
        return 0
    except SkewCodeError as exc:
        track_error(exc.error_code, exc.message)
        logger.debug("command_failed", command=args.command, error=exc.error_code, details=exc.details)
        print(f"error: {exc.error_code}: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except (PydanticValidationError, ValueError) as exc:
        track_error(type(exc).__name__, str(exc))
        print(f"error: VALIDATION_ERROR: {_first_line(exc)}", file=sys.stderr)
        return 2
    finally:
        if args.metrics_file is not None:
            write_metrics(args.metrics_file)


def _first_line(exc: Exception) -> str:
    text = str(exc).strip()
    return text.splitlines()[0] if text else type(exc).__name__


if __name__ == "__main__":
    sys.exit(main())
