from qcuntz.schemas.config import RunConfig, load_config_file, make_run_config
from qcuntz.schemas.report import (
    CommutantReport,
    ConfluenceReport,
    EquivalenceDecision,
    FockBlock,
    NormalizedParam,
    Report,
    ResidualReport,
    UnboundedBlock,
    UnitaryBlock,
    WoldDecomposition,
)
from qcuntz.schemas.spec import (
    FAMILIES,
    BoundedPhiJ,
    Circle,
    FockQ1,
    FockQn,
    LineZ,
    RepSpec,
    TruncationParams,
    UnboundedXJ,
    canonical_spec,
    make_spec,
    make_truncation,
    parse_spec_string,
)
