import math
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from qcuntz.exceptions import InvalidSpecError, InvalidTruncationError

FAMILIES = ("fock1", "circle", "line", "fockn", "unbounded", "bounded")


class _SpecBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    q: float = Field(description="Deformation parameter, 0 <= q < 1.")

    @model_validator(mode="after")
    def check_q(self):
        if not 0.0 <= self.q < 1.0:
            raise ValueError(f"q must lie in [0, 1), got {self.q}")
        return self

    @property
    def unbounded(self) -> bool:
        return False

    def label(self) -> str:
        return self.family


class _UnboundedBase(_SpecBase):
    x: float

    @model_validator(mode="after")
    def check_x(self):
        if self.q <= 0.0:
            raise ValueError(f"family {self.family!r} requires q > 0")
        if self.x <= 1.0 / (1.0 - self.q):
            raise ValueError(
                f"x must exceed 1/(1-q) = {1.0 / (1.0 - self.q):.12g}, got {self.x}"
            )
        return self

    @property
    def unbounded(self) -> bool:
        return True


class _IndexedBase(_SpecBase):
    n: int = Field(ge=1)
    j: int

    @model_validator(mode="after")
    def check_j(self):
        if not 1 <= self.j <= self.n:
            raise ValueError(f"j must lie in 1..{self.n}, got {self.j}")
        return self


class FockQ1(_SpecBase):
    family: Literal["fock1"] = "fock1"
    n: Literal[1] = 1


class Circle(_SpecBase):
    family: Literal["circle"] = "circle"
    n: Literal[1] = 1
    phi: float = Field(ge=0.0, lt=2 * math.pi)

    def label(self) -> str:
        return f"circle:{self.phi!r}"


class LineZ(_UnboundedBase):
    family: Literal["line"] = "line"
    n: Literal[1] = 1

    def label(self) -> str:
        return f"line:{self.x!r}"


class FockQn(_SpecBase):
    family: Literal["fockn"] = "fockn"
    n: int = Field(ge=1)


class UnboundedXJ(_UnboundedBase, _IndexedBase):
    family: Literal["unbounded"] = "unbounded"

    def label(self) -> str:
        return f"unbounded:{self.j}:{self.x!r}"


class BoundedPhiJ(_IndexedBase):
    family: Literal["bounded"] = "bounded"
    phi: float = Field(ge=0.0, lt=1.0)

    def label(self) -> str:
        return f"bounded:{self.j}:{self.phi!r}"


RepSpec = Annotated[
    Union[FockQ1, Circle, LineZ, FockQn, UnboundedXJ, BoundedPhiJ],
    Field(discriminator="family"),
]

_rep_spec_adapter: TypeAdapter = TypeAdapter(RepSpec)


def make_spec(**fields: Any) -> RepSpec:
    """Validate a family description, raising ``InvalidSpecError`` on failure."""
    try:
        return _rep_spec_adapter.validate_python(fields)
    except ValidationError as exc:
        raise InvalidSpecError(_summarize(exc))


def parse_spec_string(text: str, q: float, n: int = 1) -> RepSpec:
    """Parse ``family[:j][:value]`` as used by the ``classify`` subcommand."""
    parts = [part.strip() for part in text.strip().split(":")]
    family = parts[0].lower()
    try:
        if family == "fock1" and len(parts) == 1:
            return make_spec(family=family, q=q)
        if family == "fockn" and len(parts) == 1:
            return make_spec(family=family, q=q, n=n)
        if family == "circle" and len(parts) == 2:
            return make_spec(family=family, q=q, phi=float(parts[1]))
        if family == "line" and len(parts) == 2:
            return make_spec(family=family, q=q, x=float(parts[1]))
        if family == "unbounded" and len(parts) == 3:
            return make_spec(family=family, q=q, n=n, j=int(parts[1]), x=float(parts[2]))
        if family == "bounded" and len(parts) == 3:
            return make_spec(
                family=family, q=q, n=n, j=int(parts[1]), phi=float(parts[2])
            )
    except ValueError as exc:
        raise InvalidSpecError(f"Malformed spec string {text!r}: {exc}")
    raise InvalidSpecError(f"Malformed spec string {text!r}")


def canonical_spec(spec: RepSpec) -> RepSpec:
    """Map one-generator members of the n-generator families onto O_1 families."""
    if spec.n != 1:
        return spec
    if isinstance(spec, FockQn):
        return FockQ1(q=spec.q)
    if isinstance(spec, UnboundedXJ):
        return LineZ(q=spec.q, x=spec.x)
    if isinstance(spec, BoundedPhiJ):
        return Circle(q=spec.q, phi=2 * math.pi * spec.phi)
    return spec


class TruncationParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    L: int = Field(default=0, ge=0, description="Maximal word length.")
    s_min: int = Field(default=0, description="Lowest level of the window.")
    s_max: int = Field(default=0, description="Highest level of the window.")

    @model_validator(mode="after")
    def check_window(self):
        if self.s_min > self.s_max:
            raise ValueError(f"empty level window [{self.s_min}, {self.s_max}]")
        return self


def make_truncation(**fields: Any) -> TruncationParams:
    try:
        return TruncationParams(**fields)
    except ValidationError as exc:
        raise InvalidTruncationError(_summarize(exc))


def _summarize(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or 'spec'}: {err['msg']}"
        for err in exc.errors()
    )
