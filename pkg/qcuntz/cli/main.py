import argparse
import logging
import sys
import time
from typing import Any, Dict, List, Optional

from qcuntz import setting
from qcuntz.cli.commands import COMMANDS, make_report
from qcuntz.cli.io import render, write_output
from qcuntz.exceptions import (
    AnalysisError,
    InvalidInputError,
    RejectInputError,
    UnclassifiedRemainderError,
)
from qcuntz.schemas.config import RunConfig, load_config_file, make_run_config
from qcuntz.schemas.spec import FAMILIES

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2


def build_parser() -> argparse.ArgumentParser:
    # flags left out on the command line stay unset so config file values survive
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="YAML file with default flag values")
    common.add_argument("-v", "--verbose", action="count", help="Log INFO (-v) or DEBUG (-vv)")
    common.add_argument("--q", type=float)
    common.add_argument("--n", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--out", help="Write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="Add wall time to the report")

    family = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    family.add_argument("--family", choices=FAMILIES)
    family.add_argument("--j", type=int)
    family.add_argument("--x", type=float)
    family.add_argument("--phi", type=float)
    family.add_argument("--L", type=int)
    family.add_argument("--smin", dest="s_min", type=int)
    family.add_argument("--smax", dest="s_max", type=int)

    parser = argparse.ArgumentParser(
        prog="qcuntz",
        description="Truncated representations of the q-deformed Cuntz-Toeplitz algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, parents: List[argparse.ArgumentParser], help: str):
        return sub.add_parser(
            name, parents=parents, help=help, argument_default=argparse.SUPPRESS
        )

    command("build", [common, family], "Write basis and generator matrices")

    verify = command("verify", [common, family], "Check the operator identities")
    verify.add_argument("--corrupt", type=float, help="Scale one interior weight by 1 + EPS")
    verify.add_argument("--generator", type=int, help="Generator touched by --corrupt")
    verify.add_argument("--jobs", type=int)
    verify.add_argument("--commutant", action="store_true", help="Add the commutant heuristic")

    wold = command("wold", [common], "Block decomposition of one operator")
    wold.add_argument("--input", help="Matrices file written by build")
    wold.add_argument("--generator", type=int)
    wold.add_argument("--x0", type=float)

    classify = command("classify", [common], "Decide unitary equivalence")
    classify.add_argument("--spec1")
    classify.add_argument("--spec2")
    classify.add_argument("--x0", type=float)

    normalize = command("normalize", [common], "Orbit representative of y")
    normalize.add_argument("--y", type=float)
    normalize.add_argument("--x0", type=float)

    wick = command("wick", [common], "Wick normal form")
    wick.add_argument("--expr")
    wick.add_argument("--probe", action="store_true", help="Random confluence probe instead")
    wick.add_argument("--trials", type=int)
    wick.add_argument("--max-len", dest="max_len", type=int)
    return parser


def configure_logging(verbose: int) -> None:
    level = {0: setting.LOG_LEVEL.upper(), 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge the YAML file, if any, under the command-line flags and validate."""
    given: Dict[str, Any] = dict(vars(args))
    path = given.pop("config", None)
    given.pop("verbose", None)
    fields = load_config_file(path) if path else {}
    fields.update(given)
    return make_run_config(**fields)


def error_payload(exc: AnalysisError) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"error": type(exc).__name__, "message": exc.message}
    if isinstance(exc, RejectInputError):
        payload["residual"] = exc.residual
    if isinstance(exc, UnclassifiedRemainderError):
        payload["eigenvalues"] = exc.eigenvalues
    return payload


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(getattr(args, "verbose", 0) or 0)

    try:
        config = resolve_config(args)
    except InvalidInputError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: cannot read config file: {exc.strerror}", file=sys.stderr)
        return EXIT_INVALID

    started = time.perf_counter()
    try:
        report = COMMANDS[config.command](config)
    except InvalidInputError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_INVALID
    except AnalysisError as exc:
        logger.warning("%s: %s", config.command, exc.message)
        report = make_report(config, payload=error_payload(exc), status="fail")

    if config.timing:
        report.wall_time = time.perf_counter() - started
    try:
        write_output(render(report, config.format), config.out)
    except OSError as exc:
        print(f"error: cannot write {config.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_PASS if report.passed else EXIT_FAIL
