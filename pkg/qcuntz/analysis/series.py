import logging
from typing import Optional, Tuple

import numpy as np

from qcuntz import setting
from qcuntz.rep.family import OperatorFamily
from qcuntz.rep.operator import SparseOperator
from qcuntz.schemas.report import ResidualReport

logger = logging.getLogger(__name__)


def series_number_operator(S: SparseOperator, q: float, K: int) -> SparseOperator:
    """Partial sum ``sum_{k=0..K} q^k S^k S*^k``."""
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    S_adj = S.adjoint()
    power = SparseOperator.identity(S.size, S.basis)
    total = SparseOperator.identity(S.size, S.basis)
    for k in range(1, K + 1):
        power = S @ power @ S_adj
        total = total + power * q**k
    return total


def series_check(
    family: OperatorFamily,
    k: int = 0,
    K: Optional[int] = None,
    tol: Optional[float] = None,
) -> Tuple[SparseOperator, ResidualReport]:
    """Compare the partial series with ``C_k^2`` and its square root form with ``A_k``.

    Vectors are those of interior depth 1 whose first ``K`` adjoint images stay
    in the truncation. The tolerance is the geometric tail bound
    ``q^{K+1}/(1 - q)`` plus ``tol``. The linear form ``S * series`` is
    reported as ``linear_deviation``; it is not expected to reproduce ``A``.
    """
    K = setting.SERIES_TERMS if K is None else K
    tol = setting.VERIFY_TOL if tol is None else tol
    q = family.q
    S = family.S[k]
    series = series_number_operator(S, q, K)

    basis = family.basis
    ordinals = sorted(basis.interior(1) & basis.adjoint_closed(K, generators=[k]))
    tail_bound = q ** (K + 1) / (1.0 - q)

    series_residual = sqrt_residual = linear_deviation = 0.0
    if ordinals:
        series_residual = float(np.max((series - family.C_sq[k]).column_norms(ordinals)))
        root = SparseOperator(_psd_sqrt(series.to_dense()), basis)
        sqrt_residual = float(np.max((family.A[k] - S @ root).column_norms(ordinals)))
        linear_deviation = float(np.max((family.A[k] - S @ series).column_norms(ordinals)))

    tolerance = tail_bound + tol
    report = ResidualReport.evaluate(
        f"series[k={k + 1}]",
        tolerance,
        max(series_residual, sqrt_residual),
        len(ordinals),
        terms=K,
        tail_bound=tail_bound,
        series_residual=series_residual,
        sqrt_residual=sqrt_residual,
        linear_deviation=linear_deviation,
        discrepancy=linear_deviation > tolerance,
    )
    if report.detail["discrepancy"]:
        logger.info("Linear series form deviates from A by %.3g", linear_deviation)
    return series, report


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    hermitian = (matrix + matrix.conj().T) / 2.0
    w, V = np.linalg.eigh(hermitian)
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T
