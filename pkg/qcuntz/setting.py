import os

from dotenv import load_dotenv

load_dotenv()

SCHEMA_VERSION: str = "1"

VERIFY_TOL: float = float(os.getenv("QCUNTZ_VERIFY_TOL", "1e-10"))
WOLD_TOL: float = float(os.getenv("QCUNTZ_WOLD_TOL", "1e-8"))
DEDUP_TOL: float = float(os.getenv("QCUNTZ_DEDUP_TOL", "1e-9"))
BOUNDARY_GUARD: float = float(os.getenv("QCUNTZ_BOUNDARY_GUARD", "1e-14"))
PHASE_TOL: float = float(os.getenv("QCUNTZ_PHASE_TOL", "1e-10"))
SERIES_TERMS: int = int(os.getenv("QCUNTZ_SERIES_TERMS", "20"))
SHIFT_SAMPLES: int = int(os.getenv("QCUNTZ_SHIFT_SAMPLES", "20"))
COMMUTANT_MAX: int = int(os.getenv("QCUNTZ_COMMUTANT_MAX", "64"))
LOG_LEVEL: str = os.getenv("QCUNTZ_LOG_LEVEL", "WARNING")
