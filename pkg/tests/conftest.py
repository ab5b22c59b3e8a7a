import pytest

from qcuntz.rep import OperatorFamily
from qcuntz.schemas.spec import (
    BoundedPhiJ,
    Circle,
    FockQ1,
    FockQn,
    LineZ,
    UnboundedXJ,
    make_truncation,
)


def build(spec, L=0, s_min=0, s_max=0) -> OperatorFamily:
    return OperatorFamily.build(spec, make_truncation(L=L, s_min=s_min, s_max=s_max))


@pytest.fixture(scope="session")
def fock1_family():
    return build(FockQ1(q=0.5), s_max=8)


@pytest.fixture(scope="session")
def circle_family():
    return build(Circle(q=0.5, phi=1.0))


@pytest.fixture(scope="session")
def line_family():
    return build(LineZ(q=0.5, x=2.8), s_min=-4, s_max=4)


@pytest.fixture(scope="session")
def fockn_family():
    return build(FockQn(q=0.3, n=2), L=4)


@pytest.fixture(scope="session")
def unbounded_family():
    return build(UnboundedXJ(q=0.5, n=2, j=1, x=2.8), L=4, s_min=-4, s_max=4)


@pytest.fixture(scope="session")
def bounded_family():
    return build(BoundedPhiJ(q=0.5, n=2, j=1, phi=0.25), L=4)


@pytest.fixture(scope="session")
def all_families(
    fock1_family, circle_family, line_family, fockn_family, unbounded_family, bounded_family
):
    return [
        fock1_family,
        circle_family,
        line_family,
        fockn_family,
        unbounded_family,
        bounded_family,
    ]
