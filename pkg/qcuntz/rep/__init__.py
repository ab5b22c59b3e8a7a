from qcuntz.rep.basis import Basis, build_basis
from qcuntz.rep.family import (
    OperatorFamily,
    build_generators,
    corrupt_family,
    number_operators,
    permutation_family,
)
from qcuntz.rep.models import Label, fock_value, level_value, model_for
from qcuntz.rep.operator import SparseOperator, polar_isometry
from qcuntz.rep.spectral import (
    Interval,
    IntervalSet,
    SpectralResolution,
    apply_E,
    spectral_resolution,
)
