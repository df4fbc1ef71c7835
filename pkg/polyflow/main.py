"""
polyflow command-line entry point.
"""

import argparse
import json
import logging
import sys
from typing import Callable, NoReturn

from . import __version__
from .cli.evolve import run_evolve
from .cli.oracle_solve import run_oracle_solve
from .cli.schema import run_schema
from .cli.simulate import run_simulate
from .cli.solve import run_solve
from .cli.verify import run_verify
from .core.exceptions import EXIT_FAILURE, InputError, handle_cli_exception
from .core.log_config import configure_logging
from .schemas.jobs import JobCommand, JobSpec

logger = logging.getLogger(__name__)

COMMANDS: dict[JobCommand, Callable[[JobSpec], int]] = {
    JobCommand.solve: run_solve,
    JobCommand.evolve: run_evolve,
    JobCommand.simulate: run_simulate,
    JobCommand.verify: run_verify,
    JobCommand.oracle_solve: run_oracle_solve,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 is reserved for out-of-scope instances."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILURE, f"{self.prog}: error: {message}\n")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input file ('-' for stdin); .csv files hold records")
    common.add_argument("--payload", help="inline JSON input instead of --input")
    common.add_argument("--output", help="write the data artifact here instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--tol", type=float, help="event / oracle / suite tolerance")
    common.add_argument("--steps", type=int, help="step budget or count")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--workers", type=int, help="worker processes for batch inputs")
    common.add_argument("--log-level", help="diagnostic verbosity (overrides POLYFLOW_LOG)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="polyflow",
        description="Translation-invariant coefficient flows of real-rooted polynomials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(
        dest="command", metavar="{solve,evolve,simulate,verify,schema}", required=True
    )
    common = _common_flags()

    solve = sub.add_parser("solve", parents=[common], help="roots by degree reduction")
    solve.add_argument("--method", choices=["reduce", "trig", "oracle"], default="reduce")
    solve.add_argument("--root-bound", choices=["cauchy", "samuelson"], default="samuelson")
    solve.add_argument("--mode", choices=["rk4", "cauchy-lipschitz"], default="rk4")

    evolve = sub.add_parser("evolve", parents=[common], help="trace the flow to P^2 = 0")
    evolve.add_argument("--mode", choices=["rk4", "cauchy-lipschitz"], default="rk4")

    simulate = sub.add_parser("simulate", parents=[common], help="particle dynamics run")
    simulate.add_argument("--report", help="write the conservation report JSON here")

    verify = sub.add_parser("verify", parents=[common], help="run a property suite")
    verify.add_argument("--suite", required=True)
    verify.add_argument("--count", type=int, help="instances per property")
    verify.add_argument("--drift-tol", type=float)
    verify.add_argument("--degree", type=int)

    schema = sub.add_parser("schema", help="print the JSON schema of job inputs")
    schema.add_argument("which", nargs="?", choices=["job", "simulation"], default="job")
    schema.add_argument("--output")
    schema.add_argument("--log-level")

    sub.add_parser("oracle-solve", parents=[common])
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    payload = None
    if args.payload is not None:
        try:
            payload = json.loads(args.payload)
        except json.JSONDecodeError as e:
            raise InputError(f"malformed --payload JSON: {e.msg}") from e
    flags = vars(args)
    options = {
        key: flags[key]
        for key in (
            "format", "tol", "steps", "seed", "workers", "method", "mode", "suite", "count",
            "degree", "drift_tol", "root_bound",
        )
        if flags.get(key) is not None
    }
    return JobSpec(
        command=JobCommand(args.command),
        input=args.input,
        payload=payload,
        output=args.output,
        report=flags.get("report"),
        options=options,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    if args.command == "schema":
        return run_schema(args.which, args.output)
    try:
        job = job_from_args(args)
        return COMMANDS[job.command](job)
    except Exception as e:
        return handle_cli_exception(e, args.command)


if __name__ == "__main__":
    sys.exit(main())
