from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from qcuntz.exceptions import InvalidInputError, InvalidSpecError
from qcuntz.schemas.spec import (
    FAMILIES,
    RepSpec,
    TruncationParams,
    _summarize,
    make_spec,
    make_truncation,
)

Command = Literal["build", "verify", "wold", "classify", "normalize", "wick"]

_FAMILY_FIELDS = {
    "fock1": ("q",),
    "circle": ("q", "phi"),
    "line": ("q", "x"),
    "fockn": ("q", "n"),
    "unbounded": ("q", "n", "j", "x"),
    "bounded": ("q", "n", "j", "phi"),
}

_FLAG_ALIASES = {"smin": "s_min", "smax": "s_max"}


class RunConfig(BaseModel):
    """Effective configuration of one CLI run, defaults resolved."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    family: Optional[Literal[FAMILIES]] = None
    q: Optional[float] = None
    n: int = Field(default=1, ge=1)
    j: Optional[int] = None
    x: Optional[float] = None
    phi: Optional[float] = None
    L: int = Field(default=0, ge=0)
    s_min: int = 0
    s_max: int = 0
    tol: Optional[float] = Field(default=None, gt=0.0)
    format: Literal["json", "csv"] = "json"
    seed: int = 0
    out: Optional[str] = None
    corrupt: Optional[float] = None
    jobs: int = Field(default=1, ge=1)
    timing: bool = False
    commutant: bool = False
    x0: Optional[float] = None
    spec1: Optional[str] = None
    spec2: Optional[str] = None
    y: Optional[float] = None
    expr: Optional[str] = None
    probe: bool = False
    trials: int = Field(default=200, ge=1)
    max_len: int = Field(default=6, ge=0)
    input: Optional[str] = None
    generator: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def check_required(self):
        required = {
            "build": ("family",),
            "verify": ("family",),
            "classify": ("spec1", "spec2", "q"),
            "normalize": ("q", "y"),
            "wold": ("input",),
        }.get(self.command, ())
        if self.command == "wick" and not self.probe and self.expr is None:
            required = ("expr",)
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.command} requires {', '.join('--' + m for m in missing)}")
        return self

    def rep_spec(self) -> RepSpec:
        if self.family is None:
            raise InvalidSpecError("No family given")
        fields = {name: getattr(self, name) for name in _FAMILY_FIELDS[self.family]}
        missing = [name for name, value in fields.items() if value is None]
        if missing:
            raise InvalidSpecError(
                f"family {self.family!r} requires {', '.join('--' + m for m in missing)}"
            )
        return make_spec(family=self.family, **fields)

    def truncation(self) -> TruncationParams:
        s_min = 0 if self.family == "fock1" else self.s_min
        return make_truncation(L=self.L, s_min=s_min, s_max=self.s_max)

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


def load_config_file(path: str) -> Dict[str, Any]:
    with open(path, "r") as f:
        data = yaml.load(f, Loader=yaml.SafeLoader)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidInputError(f"Config file {path} must hold a mapping")
    # yaml keys follow the flag spelling
    fields = {}
    for key, value in data.items():
        key = str(key).replace("-", "_")
        fields[_FLAG_ALIASES.get(key, key)] = value
    return fields


def make_run_config(**fields: Any) -> RunConfig:
    try:
        return RunConfig(**fields)
    except ValidationError as exc:
        raise InvalidInputError(_summarize(exc))
