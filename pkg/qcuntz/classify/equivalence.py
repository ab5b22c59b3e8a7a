import cmath
import logging
import math
from typing import Any, Dict, Optional

import numpy as np

from qcuntz import setting
from qcuntz.analysis.wold import QWold
from qcuntz.classify.orbits import normalize_x
from qcuntz.exceptions import IncomparableError, UnrecognizedStructureError
from qcuntz.rep.family import OperatorFamily
from qcuntz.schemas.report import EquivalenceDecision, NormalizedParam
from qcuntz.schemas.spec import (
    BoundedPhiJ,
    Circle,
    FockQ1,
    FockQn,
    LineZ,
    RepSpec,
    UnboundedXJ,
    canonical_spec,
)

logger = logging.getLogger(__name__)


def same_rep(
    spec1: RepSpec,
    spec2: RepSpec,
    x0: Optional[float] = None,
    tol: float = 1e-12,
    phase_tol: float = 0.0,
) -> EquivalenceDecision:
    """Decide unitary equivalence of two irreducible representations from their parameters.

    Phases are compared exactly unless ``phase_tol`` is given, which is meant
    for phases read off matrices; the distance is taken around the circle.
    """
    if spec1.q != spec2.q:
        raise IncomparableError(f"Different q: {spec1.q} vs {spec2.q}")
    if spec1.n != spec2.n:
        raise IncomparableError(f"Different generator counts: {spec1.n} vs {spec2.n}")
    a, b = canonical_spec(spec1), canonical_spec(spec2)

    certificate: Dict[str, Any] = {"family": [a.family, b.family]}
    if a.family != b.family:
        certificate["invariant"] = "family"
        return EquivalenceDecision(equivalent=False, certificate=certificate)

    if isinstance(a, (UnboundedXJ, BoundedPhiJ)):
        certificate["j"] = [a.j, b.j]
        if a.j != b.j:
            certificate["invariant"] = "j"
            return EquivalenceDecision(equivalent=False, certificate=certificate)

    if isinstance(a, (LineZ, UnboundedXJ)):
        na, nb = normalize_x(a.x, a.q, x0), normalize_x(b.x, b.q, x0)
        certificate["x"] = [na.x, nb.x]
        certificate["shift"] = [na.shift, nb.shift]
        certificate["x0"] = na.x0
        equivalent = _same_representative(na, nb, tol)
        if not equivalent:
            certificate["invariant"] = "x"
        return EquivalenceDecision(equivalent=equivalent, certificate=certificate)

    if isinstance(a, (Circle, BoundedPhiJ)):
        certificate["phi"] = [a.phi, b.phi]
        period = 2 * math.pi if isinstance(a, Circle) else 1.0
        distance = abs(a.phi - b.phi) % period
        equivalent = min(distance, period - distance) <= phase_tol
        if not equivalent:
            certificate["invariant"] = "phi"
        return EquivalenceDecision(equivalent=equivalent, certificate=certificate)

    return EquivalenceDecision(equivalent=True, certificate=certificate)


def detect_parameters(
    family: OperatorFamily,
    tol: Optional[float] = None,
    x0: Optional[float] = None,
) -> RepSpec:
    """Recover the family and its parameters from the generator matrices alone.

    Each generator is decomposed on its own interior; the generator owning an
    unbounded block is ``j`` and yields ``x``, a unitary block yields the phase,
    and a representation made of Fock blocks only is the Fock family.
    """
    tol = setting.WOLD_TOL if tol is None else tol
    q, n = family.q, family.n
    unitary_generator = None
    fock_found = False

    for k in range(n):
        interior = family.basis.interior(2, generators=[k])
        run = QWold(family.A[k], q, tol, interior, x0)
        decomposition = run.run()
        if decomposition.unbounded_blocks:
            x = decomposition.unbounded_blocks[0].x
            logger.debug("Generator %d carries an unbounded block, x = %r", k + 1, x)
            if n == 1:
                return LineZ(q=q, x=x)
            return UnboundedXJ(q=q, n=n, j=k + 1, x=x)
        if decomposition.unitary_block.present and unitary_generator is None:
            unitary_generator = (k, run.unitary_span)
        fock_found = fock_found or bool(decomposition.fock_blocks)

    if unitary_generator is not None:
        k, span = unitary_generator
        theta = _phase(family.A[k].to_dense(), span, q)
        if n == 1:
            return Circle(q=q, phi=theta)
        return BoundedPhiJ(q=q, n=n, j=k + 1, phi=_unit_phase(theta / (2 * math.pi)))

    if fock_found:
        return FockQ1(q=q) if n == 1 else FockQn(q=q, n=n)
    raise UnrecognizedStructureError("No generator shows a Fock, unitary or unbounded block")


def _same_representative(na: NormalizedParam, nb: NormalizedParam, tol: float) -> bool:
    # each inverse step of normalization scales the rounding error by 1/q
    steps = max(0, na.shift, nb.shift)
    slack = tol * na.q ** (-steps) * max(1.0, abs(na.x), abs(nb.x))
    if abs(na.x - nb.x) <= slack:
        return True
    # representatives split across the domain ends: f(hi) is lo
    upper, lower = max(na.x, nb.x), min(na.x, nb.x)
    return abs(1.0 + na.q * upper - lower) <= slack


def _phase(A: np.ndarray, span: np.ndarray, q: float) -> float:
    """Eigenphase of ``A`` compressed to the unitary block, in [0, 2 pi)."""
    compressed = span.conj().T @ A @ span * math.sqrt(1.0 - q)
    eigenvalue = np.linalg.eigvals(compressed)[0]
    theta = cmath.phase(eigenvalue) % (2 * math.pi)
    if abs(theta - 2 * math.pi) <= setting.PHASE_TOL:
        theta = 0.0
    if abs(theta) <= setting.PHASE_TOL:
        theta = 0.0
    return theta


def _unit_phase(value: float) -> float:
    value = value % 1.0
    if abs(value - 1.0) <= setting.PHASE_TOL or abs(value) <= setting.PHASE_TOL:
        return 0.0
    return value
