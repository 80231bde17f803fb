"""
PACFLab CLI

Entry point of the `pacflab` command.
"""

import argparse
import json
import sys
import uuid
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from pacflab.cli.commands import RunConfig, run
from pacflab.cli.output import check_writable, emit
from pacflab.coeffs.models import TruncationPolicy
from pacflab.core.errors import ConfigError, PacflabError
from pacflab.core.logging import PacfEvents, bind_command_context, clear_context, configure_logging, get_logger

logger = get_logger(__name__)
events = PacfEvents()

COMMANDS = {
    "coeffs": "MA/AR coefficients and autocovariance of a model",
    "beta": "kernel sequence beta(n) with tail bounds",
    "pacf": "partial autocorrelation function",
    "compare": "per-lag comparison of the representation with Durbin-Levinson",
    "verify": "run verification scenarios",
    "factorize": "cepstral factorization of the spectral density",
}


def _float_list(text: str) -> list[float]:
    try:
        values = json.loads(text) if text.lstrip().startswith("[") else text.split(",")
        return [float(x) for x in values]
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected a list of numbers, got {text!r}") from exc


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", default="builtin:farima", help="builtin:<name>, FarimaSpec JSON or gamma CSV path")
    parser.add_argument("--d", type=float, default=None, help="memory parameter")
    parser.add_argument("--phi", type=_float_list, default=None, help="AR polynomial, ascending powers")
    parser.add_argument("--theta", type=_float_list, default=None, help="MA polynomial, ascending powers")
    parser.add_argument("--n-max", type=int, default=50)
    parser.add_argument("--abs-tol", type=float, default=None)
    parser.add_argument("--inner-len", type=int, default=None)
    parser.add_argument("--mid-len", type=int, default=None)
    parser.add_argument("--outer-depth", type=int, default=None)
    parser.add_argument("--grid-size", type=int, default=None)
    parser.add_argument("--out", type=Path, default=None, help="output file (stdout when omitted)")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pacflab",
        description="PACF of stationary processes from their AR/MA coefficients.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text)
        _add_common(sub)
        if name == "pacf":
            sub.add_argument("--method", choices=["auto", "repr", "levinson", "both"], default="auto")
        if name in ("compare", "factorize"):
            sub.add_argument("--tolerance", type=float, default=None)
        if name == "verify":
            sub.add_argument("scenarios", nargs="*", help="scenario names (all when omitted)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Turn parsed flags into a validated RunConfig."""
    try:
        policy = TruncationPolicy.from_settings(
            abs_tol=args.abs_tol,
            inner_len=args.inner_len,
            mid_len=args.mid_len,
            outer_depth=args.outer_depth,
        )
        return RunConfig(
            command=args.command,
            model=args.model,
            d=args.d,
            phi=args.phi,
            theta=args.theta,
            n_max=args.n_max,
            method=getattr(args, "method", "auto"),
            tolerance=getattr(args, "tolerance", None),
            grid_size=args.grid_size,
            scenarios=getattr(args, "scenarios", []),
            policy=policy,
            out=args.out,
            format=args.format,
        )
    except ValidationError as exc:
        error = exc.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        message = f"invalid option {location}: {error['msg']}" if location else error["msg"]
        raise ConfigError(message) from exc


def _report_error(exc: PacflabError) -> int:
    sys.stderr.write(json.dumps(exc.to_dict(), default=str) + "\n")
    return exc.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return the process exit status."""
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help
        return int(exc.code or 0)

    bind_command_context(args.command, run_id=uuid.uuid4().hex[:12])
    try:
        config = config_from_args(args)
        check_writable(config.out)
        result = run(config)
        written = emit(result, config)
    except PacflabError as exc:
        logger.error("run_failed", error=str(exc), category=exc.category)
        events.run_completed(args.command, "error", category=exc.category)
        return _report_error(exc)
    finally:
        clear_context()

    status = "ok" if result.passed else "failed"
    events.run_completed(config.command, status, outputs=[str(path) for path in written])
    # failed verdicts exit 1
    return 0 if result.passed or config.command not in ("verify", "compare") else 1


if __name__ == "__main__":
    sys.exit(main())
