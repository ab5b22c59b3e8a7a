import csv
import io
import json
import logging
from typing import Any, Dict, List, Optional, Tuple

from qcuntz import setting
from qcuntz.exceptions import InvalidInputError, StructureError
from qcuntz.rep.family import OperatorFamily
from qcuntz.rep.operator import SparseOperator
from qcuntz.schemas.report import Report

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("check", "status", "pass", "max_residual", "tolerance", "vectors_checked")


def dump_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def dump_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    if not report.checks:
        writer.writerow({"check": report.command, "status": report.status, "pass": report.passed})
    for check in report.checks:
        writer.writerow(
            {
                "check": check.check,
                "status": check.status,
                "pass": check.passed,
                "max_residual": repr(check.max_residual),
                "tolerance": repr(check.tolerance),
                "vectors_checked": check.vectors_checked,
            }
        )
    return buffer.getvalue()


def render(report: Report, fmt: str) -> str:
    return dump_csv(report) if fmt == "csv" else dump_json(report.to_json())


def write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        print(text, end="")
        return
    with open(out, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("Wrote %s", out)


def family_document(family: OperatorFamily) -> Dict[str, Any]:
    """Basis, interior flags and generator matrices in coordinate-list form."""
    basis = family.basis
    return {
        "schema_version": setting.SCHEMA_VERSION,
        "q": family.q,
        "n": family.n,
        "size": family.size,
        "spec": family.spec.model_dump(mode="json") if family.spec is not None else None,
        "truncation": family.trunc.model_dump() if family.trunc is not None else None,
        "labels": [str(label) for label in basis.labels],
        "interior": {
            "depth_1": sorted(basis.interior(1)),
            "depth_2": sorted(basis.interior(2)),
            "per_generator": [sorted(basis.interior(2, generators=[k])) for k in range(family.n)],
        },
        "generators": [a.to_json() for a in family.A],
        "C_sq": [c.diagonal_values().real.tolist() for c in family.C_sq],
        "D_sq": [d.diagonal_values().real.tolist() for d in family.D_sq],
    }


def load_operator_file(
    path: str, generator: int = 1
) -> Tuple[SparseOperator, List[int], Optional[float]]:
    """Read one generator, its interior ordinals and ``q`` from a matrices file.

    Accepts the output of ``build`` (a report whose payload is a family
    document) as well as a bare document with a single ``matrix`` and an
    ``interior`` list.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as exc:
        raise InvalidInputError(f"Cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc.msg}")

    document = data.get("payload", data) if isinstance(data, dict) else None
    if not isinstance(document, dict):
        raise InvalidInputError(f"{path} does not hold a matrices document")
    if "schema_version" in document and document["schema_version"] != setting.SCHEMA_VERSION:
        raise InvalidInputError(f"Unsupported schema_version {document['schema_version']!r}")

    try:
        if "generators" in document:
            matrix = document["generators"][generator - 1]
            interior = document["interior"]["per_generator"][generator - 1]
        else:
            matrix = document["matrix"]
            interior = document["interior"]
        operator = SparseOperator.from_json(matrix)
        ordinals = [int(i) for i in interior]
    except (KeyError, IndexError, TypeError, ValueError):
        raise InvalidInputError(
            f"{path} lacks generator {generator} or its interior flags"
        )
    except StructureError as exc:
        raise InvalidInputError(exc.message)

    if any(not 0 <= i < operator.size for i in ordinals):
        raise InvalidInputError(f"Interior ordinals out of range in {path}")
    q = document.get("q")
    logger.debug("Loaded %r with %d interior vectors from %s", operator, len(ordinals), path)
    return operator, ordinals, None if q is None else float(q)
