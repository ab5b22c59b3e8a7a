import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from qcuntz import setting
from qcuntz.analysis import (
    check_eigenvalue_laws,
    check_number_identity,
    check_shift_identity,
    check_structure_bc,
    commutant_dimension,
    q_wold,
    relation_residuals,
    series_check,
    spectrum_check,
)
from qcuntz.classify.equivalence import same_rep
from qcuntz.classify.orbits import normalize_x
from qcuntz.cli.io import family_document, load_operator_file
from qcuntz.exceptions import InvalidInputError
from qcuntz.rep.family import OperatorFamily, corrupt_family
from qcuntz.schemas.config import RunConfig
from qcuntz.schemas.report import Report, ResidualReport, Status
from qcuntz.schemas.spec import RepSpec, parse_spec_string
from qcuntz.wick import confluence_probe, wick_normal_form

logger = logging.getLogger(__name__)


def overall_status(checks: Sequence[ResidualReport]) -> Status:
    statuses = {check.status for check in checks}
    if "fail" in statuses:
        return "fail"
    if "inconclusive" in statuses or not checks:
        return "inconclusive"
    return "pass"


def make_report(
    config: RunConfig,
    checks: Sequence[ResidualReport] = (),
    payload: Optional[Dict[str, Any]] = None,
    status: Optional[Status] = None,
) -> Report:
    status = overall_status(checks) if status is None else status
    return Report(
        schema_version=setting.SCHEMA_VERSION,
        command=config.command,
        config=config.echo(),
        checks=list(checks),
        payload=payload,
        passed=status == "pass",
        status=status,
    )


def build_family(config: RunConfig) -> OperatorFamily:
    family = OperatorFamily.build(config.rep_spec(), config.truncation())
    logger.info("Built %r", family)
    return family


def cmd_build(config: RunConfig) -> Report:
    family = build_family(config)
    return make_report(config, payload=family_document(family), status="pass")


def cmd_verify(config: RunConfig) -> Report:
    family = build_family(config)
    if config.corrupt is not None:
        if config.generator > family.n:
            raise InvalidInputError(f"--generator {config.generator} exceeds n = {family.n}")
        family = corrupt_family(family, config.corrupt, config.generator - 1)

    tasks, notes = verification_tasks(family, config.tol, config.seed)
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            checks = list(pool.map(lambda task: task(), tasks))
    else:
        checks = [task() for task in tasks]
    for check in checks:
        logger.info("%s: %s (%.3g)", check.check, check.status, check.max_residual)

    payload: Dict[str, Any] = {"size": family.size, "interior_size": len(family.basis.interior(2))}
    if notes:
        payload["notes"] = notes
    if config.commutant:
        payload["commutant"] = commutant_dimension(family).model_dump(mode="json")
    return make_report(config, checks, payload)


def verification_tasks(
    family: OperatorFamily, tol: Optional[float], seed: int
) -> Tuple[List[Callable[[], ResidualReport]], List[str]]:
    """Independent checks in report order, and notes on skipped ones."""
    tasks: List[Callable[[], ResidualReport]] = [
        lambda: relation_residuals(family, tol),
        lambda: check_structure_bc(family, tol),
        lambda: check_number_identity(family, tol),
        lambda: check_eigenvalue_laws(family, tol),
    ]
    notes: List[str] = []
    for k in range(family.n):
        tasks.append(lambda k=k: check_shift_identity(family, k, tol=tol, seed=seed))
        tasks.append(lambda k=k: spectrum_check(family, k, tol))
        if _unbounded_direction(family.spec, k):
            notes.append(f"series[k={k + 1}] skipped: C_{k + 1}^2 is unbounded")
        else:
            tasks.append(lambda k=k: series_check(family, k, tol=tol)[1])
    return tasks, notes


def _unbounded_direction(spec: Optional[RepSpec], k: int) -> bool:
    if spec is None or not spec.unbounded:
        return False
    return spec.family == "line" or spec.j == k + 1


def cmd_wold(config: RunConfig) -> Report:
    A, interior, file_q = load_operator_file(config.input, config.generator)
    q = config.q if config.q is not None else file_q
    if q is None:
        raise InvalidInputError("q is neither given nor stored in the input file")
    decomposition = q_wold(A, q, config.tol, interior, config.x0)
    return make_report(config, payload=decomposition.model_dump(mode="json"), status="pass")


def cmd_classify(config: RunConfig) -> Report:
    spec1 = parse_spec_string(config.spec1, config.q, config.n)
    spec2 = parse_spec_string(config.spec2, config.q, config.n)
    decision = same_rep(spec1, spec2, config.x0)
    return make_report(config, payload=decision.model_dump(mode="json"), status="pass")


def cmd_normalize(config: RunConfig) -> Report:
    normalized = normalize_x(config.y, config.q, config.x0)
    return make_report(config, payload=normalized.model_dump(mode="json"), status="pass")


def cmd_wick(config: RunConfig) -> Report:
    if config.probe:
        probe = confluence_probe(config.n, config.max_len, config.trials, config.seed)
        return make_report(
            config,
            payload=probe.model_dump(mode="json"),
            status="pass" if probe.passed else "fail",
        )
    expr = wick_normal_form(config.expr, config.n)
    payload = {"input": config.expr, "normal_form": str(expr), "monomials": expr.to_json()}
    return make_report(config, payload=payload, status="pass")


COMMANDS: Dict[str, Callable[[RunConfig], Report]] = {
    "build": cmd_build,
    "verify": cmd_verify,
    "wold": cmd_wold,
    "classify": cmd_classify,
    "normalize": cmd_normalize,
    "wick": cmd_wick,
}
