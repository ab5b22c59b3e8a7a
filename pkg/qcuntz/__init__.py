from qcuntz.exceptions import *
from qcuntz.rep import OperatorFamily, build_generators
from qcuntz.schemas.spec import make_spec, make_truncation
