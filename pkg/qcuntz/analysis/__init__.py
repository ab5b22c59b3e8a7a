from qcuntz.analysis.commutant import commutant_dimension
from qcuntz.analysis.identities import (
    check_eigenvalue_laws,
    check_number_identity,
    check_shift_identity,
    check_structure_bc,
    relation_residuals,
    sample_intervals,
    spectrum_check,
)
from qcuntz.analysis.series import series_check, series_number_operator
from qcuntz.analysis.wold import QWold, q_wold
