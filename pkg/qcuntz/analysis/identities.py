"""Numeric checks of the defining relations and their consequences.

Every check only looks at interior basis vectors, where the truncated
matrices act exactly like the untruncated operators. Residuals of quantities
that grow with the number operator are divided by ``max(1, C_k^2)`` at the
vector, so the unbounded families are judged on relative error.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from qcuntz import setting
from qcuntz.classify.orbits import delta_set
from qcuntz.rep.family import OperatorFamily
from qcuntz.rep.models import fock_value, level_value
from qcuntz.rep.operator import SparseOperator
from qcuntz.rep.spectral import IntervalSet
from qcuntz.schemas.report import ResidualReport
from qcuntz.schemas.spec import BoundedPhiJ, Circle, FockQ1, FockQn, LineZ, UnboundedXJ
from qcuntz.words import m_k

logger = logging.getLogger(__name__)


def relation_residuals(family: OperatorFamily, tol: Optional[float] = None) -> ResidualReport:
    tol = setting.VERIFY_TOL if tol is None else tol
    ordinals = sorted(family.basis.interior(2))
    quadratic, orthogonality = 0.0, 0.0
    if ordinals:
        identity = SparseOperator.identity(family.size)
        for i in range(family.n):
            scale = _scale(family, i, ordinals)
            R = family.A_adj[i] @ family.A[i] - identity - family.A[i] @ family.A_adj[i] * family.q
            quadratic = max(quadratic, float(np.max(R.column_norms(ordinals) / scale)))
            for j in range(family.n):
                if i == j:
                    continue
                cross = family.A_adj[i] @ family.A[j]
                norms = cross.column_norms(ordinals) / _scale(family, j, ordinals)
                orthogonality = max(orthogonality, float(np.max(norms)))
    report = ResidualReport.evaluate(
        "relation_residuals",
        tol,
        max(quadratic, orthogonality),
        len(ordinals),
        quadratic=quadratic,
        orthogonality=orthogonality,
    )
    logger.debug("relation_residuals: %s", report.status)
    return report


def check_structure_bc(family: OperatorFamily, tol: Optional[float] = None) -> ResidualReport:
    tol = setting.VERIFY_TOL if tol is None else tol
    ordinals = sorted(family.basis.interior(1))
    commutator = 0.0
    for i in range(family.n):
        for j in range(i + 1, family.n):
            C = family.C_sq[i] @ family.C_sq[j] - family.C_sq[j] @ family.C_sq[i]
            commutator = max(commutator, float(np.max(np.abs(C.matrix.data), initial=0.0)))

    isometry = 0.0
    if ordinals:
        identity = SparseOperator.identity(family.size)
        for i in range(family.n):
            for j in range(family.n):
                product = family.S[i].adjoint() @ family.S[j]
                if i == j:
                    product = product - identity
                isometry = max(isometry, float(np.max(product.column_norms(ordinals))))
    return ResidualReport.evaluate(
        "structure_bc",
        tol,
        max(commutator, isometry),
        len(ordinals),
        commutator=commutator,
        isometry=isometry,
    )


def check_number_identity(family: OperatorFamily, tol: Optional[float] = None) -> ResidualReport:
    tol = setting.VERIFY_TOL if tol is None else tol
    ordinals = sorted(family.basis.interior(1))
    identity_residual, matrix_residual = 0.0, 0.0
    if ordinals:
        for k in range(family.n):
            C = family.C_sq[k].diagonal_values().real[ordinals]
            D = family.D_sq[k].diagonal_values().real[ordinals]
            scale = np.maximum(1.0, C)
            identity_residual = max(
                identity_residual, float(np.max(np.abs(C - 1.0 - family.q * D) / scale))
            )
            numeric = family.A_adj[k] @ family.A[k] - family.C_sq[k]
            matrix_residual = max(
                matrix_residual, float(np.max(numeric.column_norms(ordinals) / scale))
            )
    return ResidualReport.evaluate(
        "number_identity",
        tol,
        max(identity_residual, matrix_residual),
        len(ordinals),
        identity=identity_residual,
        matrix=matrix_residual,
    )


def check_shift_identity(
    family: OperatorFamily,
    k: int,
    intervals: Optional[Sequence[IntervalSet]] = None,
    tol: Optional[float] = None,
    count: Optional[int] = None,
    seed: int = 0,
) -> ResidualReport:
    """``E_k(delta) S_k = S_k E_k((delta - 1)/q)`` for each ``delta``, on interior depth 1.

    ``k`` is 0-based. At ``q = 0`` the right side is ``S_k`` when ``1`` lies in
    ``delta`` and zero otherwise. The functional form
    ``f(D_k^2) S_k = S_k f(1 + q D_k^2)`` is checked for ``f(t) = 1/(1 + t)``.
    """
    tol = setting.VERIFY_TOL if tol is None else tol
    if intervals is None:
        count = setting.SHIFT_SAMPLES if count is None else count
        intervals = sample_intervals(family, k, count, seed)
    ordinals = sorted(family.basis.interior(1))
    resolution = family.resolutions[k]
    S = family.S[k]
    atol = setting.DEDUP_TOL

    projection = 0.0
    if ordinals:
        for delta in intervals:
            left = resolution.apply_E(delta, atol) @ S
            if family.q > 0:
                right = S @ resolution.apply_E(delta.preimage(family.q), atol)
            elif delta.contains(1.0, atol):
                right = S
            else:
                right = SparseOperator.zeros(family.size)
            projection = max(projection, float(np.max((left - right).column_norms(ordinals))))

    functional = 0.0
    if ordinals:
        D = family.D_sq[k].diagonal_values().real
        left = SparseOperator.diagonal(1.0 / (1.0 + D)) @ S
        right = S @ SparseOperator.diagonal(1.0 / (2.0 + family.q * D))
        functional = float(np.max((left - right).column_norms(ordinals)))

    return ResidualReport.evaluate(
        f"shift_identity[k={k + 1}]",
        tol,
        max(projection, functional),
        len(ordinals),
        intervals=len(intervals),
        projection=projection,
        functional=functional,
    )


def sample_intervals(
    family: OperatorFamily, k: int, count: int, seed: int = 0
) -> List[IntervalSet]:
    # cut points separate the eigenvalues of D_k^2 and their images and preimages under t -> 1 + q t
    rng = np.random.default_rng(seed)
    values = np.asarray(family.resolutions[k].eigenvalues)
    points = [values, 1.0 + family.q * values]
    if family.q > 0:
        points.append((values - 1.0) / family.q)
    points = np.unique(np.round(np.concatenate(points), 12))
    cuts = list((points[:-1] + points[1:]) / 2.0)
    cuts = [points[0] - 1.0] + cuts + [points[-1] + 1.0]

    intervals = []
    for _ in range(count):
        pieces = int(rng.integers(1, 3))
        ends = np.sort(rng.choice(cuts, size=2 * pieces, replace=True))
        intervals.append(IntervalSet((ends[2 * p], ends[2 * p + 1]) for p in range(pieces)))
    return intervals


def expected_d_sq(family: OperatorFamily, k: int, label) -> Optional[float]:
    return _law(family, k, label, creation=False)


def expected_c_sq(family: OperatorFamily, k: int, label) -> Optional[float]:
    return _law(family, k, label, creation=True)


def check_eigenvalue_laws(family: OperatorFamily, tol: Optional[float] = None) -> ResidualReport:
    tol = setting.VERIFY_TOL if tol is None else tol
    if family.spec is None:
        return ResidualReport.evaluate(
            "eigenvalue_laws", tol, 0.0, 0, reason="family has no closed-form description"
        )
    interior = family.basis.interior(1)
    closed, numeric = 0.0, 0.0
    for k in range(family.n):
        values = family.D_sq[k].diagonal_values().real
        AAH = (family.A[k] @ family.A_adj[k]).diagonal_values().real
        for ordinal, label in enumerate(family.basis.labels):
            expected = expected_d_sq(family, k, label)
            scale = max(1.0, expected)
            closed = max(closed, abs(values[ordinal] - expected) / scale)
            if ordinal in interior:
                numeric = max(numeric, abs(AAH[ordinal] - expected) / scale)
    return ResidualReport.evaluate(
        "eigenvalue_laws",
        tol,
        max(closed, numeric),
        family.size,
        closed_form=closed,
        matrix=numeric,
    )


def spectrum_check(family: OperatorFamily, k: int, tol: Optional[float] = None) -> ResidualReport:
    """Eigenvalues of ``C_k^2`` against the predicted multiset, on interior depth 1."""
    tol = setting.VERIFY_TOL if tol is None else tol
    if family.spec is None:
        return ResidualReport.evaluate(
            f"spectrum[k={k + 1}]", tol, 0.0, 0, reason="family has no closed-form description"
        )
    labels = family.basis.labels
    predicted = np.array([expected_c_sq(family, k, label) for label in labels])
    diagonal = family.C_sq[k].diagonal_values().real
    scale = np.maximum(1.0, np.sort(predicted))
    closed = float(np.max(np.abs(np.sort(diagonal) - np.sort(predicted)) / scale))

    ordinals = sorted(family.basis.interior(1))
    numeric = 0.0
    if ordinals:
        block = (family.A_adj[k] @ family.A[k]).to_dense()[np.ix_(ordinals, ordinals)]
        eigenvalues = np.linalg.eigvalsh(block)
        expected = np.sort(predicted[ordinals])
        numeric = float(np.max(np.abs(eigenvalues - expected) / np.maximum(1.0, expected)))

    orbit = 0.0
    spec = family.spec
    if spec.unbounded and (spec.family == "line" or k + 1 == spec.j):
        levels = [
            predicted[i]
            for i, label in enumerate(labels)
            if label.word is None or label.word.is_empty
        ]
        window = (min(levels) - 1e-9, max(levels) + 1e-9)
        reference = delta_set(spec.x, spec.q, window)
        orbit = max(
            min(abs(value - ref) / max(1.0, value) for ref in reference) if reference else math.inf
            for value in levels
        )

    distinct = sorted({round(float(v), 12) for v in diagonal})
    return ResidualReport.evaluate(
        f"spectrum[k={k + 1}]",
        tol,
        max(closed, numeric, orbit),
        len(labels),
        eigenvalues=distinct,
        closed_form=closed,
        matrix=numeric,
        orbit=orbit,
    )


def _law(family: OperatorFamily, k: int, label, creation: bool) -> Optional[float]:
    spec = family.spec
    q = family.q
    generator = k + 1
    if isinstance(spec, Circle):
        return 1.0 / (1.0 - q)
    if isinstance(spec, FockQ1):
        return fock_value(label.level + 1 if creation else label.level, q)
    if isinstance(spec, LineZ):
        return level_value(label.level if creation else label.level - 1, q, spec.x)

    word = label.word
    j = getattr(spec, "j", None)
    if word.is_empty and generator == j:
        if isinstance(spec, BoundedPhiJ):
            return 1.0 / (1.0 - q)
        if isinstance(spec, UnboundedXJ):
            return level_value(label.level if creation else label.level - 1, q, spec.x)
    run = m_k(generator, word)
    if isinstance(spec, (FockQn, UnboundedXJ, BoundedPhiJ)):
        return fock_value(run + 1 if creation else run, q)
    return None


def _scale(family: OperatorFamily, k: int, ordinals: Sequence[int]) -> np.ndarray:
    return np.maximum(1.0, family.C_sq[k].diagonal_values().real[ordinals])
