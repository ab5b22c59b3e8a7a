from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

Status = Literal["pass", "fail", "inconclusive"]


class ResidualReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    check: str
    tolerance: float
    max_residual: float = Field(ge=0.0)
    vectors_checked: int = Field(ge=0)
    passed: bool = Field(alias="pass")
    status: Status
    detail: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def evaluate(
        cls,
        check: str,
        tolerance: float,
        residual: float,
        vectors_checked: int,
        **detail: Any,
    ) -> "ResidualReport":
        """Pass iff at least one vector was checked and the residual is within tolerance."""
        residual = float(residual)
        if vectors_checked == 0:
            status = "inconclusive"
        elif residual <= tolerance:
            status = "pass"
        else:
            status = "fail"
        return cls(
            check=check,
            tolerance=tolerance,
            max_residual=residual,
            vectors_checked=vectors_checked,
            passed=status == "pass",
            status=status,
            detail=detail,
        )


class CommutantReport(BaseModel):
    check: str = "commutant_dimension"
    heuristic: bool = True
    dimension: Optional[int] = None
    status: Status
    tolerance: float
    basis_size: int
    interior_size: int
    detail: Dict[str, Any] = Field(default_factory=dict)


class FockBlock(BaseModel):
    vacuum: List[List[float]] = Field(description="Sparse coordinates [ordinal, re, im].")
    labels: List[int]
    chain_length: int


class UnitaryBlock(BaseModel):
    present: bool = False
    labels: List[int] = Field(default_factory=list)
    dimension: int = 0


class UnboundedBlock(BaseModel):
    labels: List[int]
    x: float
    shift: int
    eigenvalues: List[float]


class WoldDecomposition(BaseModel):
    q: float
    dimension: int
    fock_blocks: List[FockBlock] = Field(default_factory=list)
    unitary_block: UnitaryBlock = Field(default_factory=UnitaryBlock)
    unbounded_blocks: List[UnboundedBlock] = Field(default_factory=list)
    boundary: List[int] = Field(default_factory=list)
    residual: float = 0.0

    def partition(self) -> List[List[int]]:
        """Every block's ordinals, boundary last; together they cover the basis."""
        parts = [block.labels for block in self.fock_blocks]
        if self.unitary_block.present:
            parts.append(self.unitary_block.labels)
        parts.extend(block.labels for block in self.unbounded_blocks)
        parts.append(self.boundary)
        return parts


class NormalizedParam(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    shift: int
    input: float
    q: float
    x0: float

    @computed_field
    @property
    def annotation(self) -> str:
        return f"x={self.x:.12g} (shift {self.shift:+d} from {self.input:.12g})"


class EquivalenceDecision(BaseModel):
    equivalent: bool
    certificate: Dict[str, Any]


class ConfluenceReport(BaseModel):
    n: int
    max_len: int
    trials: int
    seed: int
    mismatches: int
    examples: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str
    command: str
    config: Dict[str, Any]
    checks: List[ResidualReport] = Field(default_factory=list)
    payload: Optional[Dict[str, Any]] = None
    passed: bool = Field(alias="pass")
    status: Status
    wall_time: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)
