import math
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator


# =============================================================================
# Exponents and Space Pairs
# =============================================================================

ExponentLike = Union["Exponent", float, int, str]

_INFINITY_LABELS = {"inf", "infinity", "∞", "+inf"}


class Exponent(BaseModel):
    """An exponent in [1, ∞], stored by its reciprocal (0 encodes ∞)."""
    model_config = ConfigDict(frozen=True)

    reciprocal: float = Field(ge=0.0, le=1.0)

    @classmethod
    def parse(cls, value: ExponentLike) -> "Exponent":
        """Build an exponent from a number >= 1, an Exponent, or "inf"."""
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str):
            text = value.strip().lower()
            if text in _INFINITY_LABELS:
                return cls(reciprocal=0.0)
            value = float(text)
        value = float(value)
        if math.isnan(value) or value < 1.0:
            raise ValueError(f"exponent must lie in [1, inf], got {value}")
        if math.isinf(value):
            return cls(reciprocal=0.0)
        return cls(reciprocal=1.0 / value)

    @property
    def is_infinite(self) -> bool:
        return self.reciprocal == 0.0

    def value(self) -> float:
        return math.inf if self.is_infinite else 1.0 / self.reciprocal

    @property
    def label(self) -> str:
        """Short text form used in reports: "1", "2.5", "inf"."""
        if self.is_infinite:
            return "inf"
        return f"{self.value():g}"

    def __str__(self) -> str:
        return self.label


class SpacePair(BaseModel):
    """Source space L_p(L_u) and target space L_q(L_v) over an n1 x n2 grid."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    n1: int = Field(ge=1, alias="N1")
    n2: int = Field(ge=1, alias="N2")
    p: Exponent
    q: Exponent
    u: Exponent
    v: Exponent

    @field_validator("p", "q", "u", "v", mode="before")
    @classmethod
    def _parse_exponent(cls, value):
        if isinstance(value, dict):
            return value
        return Exponent.parse(value)

    @field_serializer("p", "q", "u", "v")
    def _serialize_exponent(self, value: Exponent) -> str:
        return value.label

    @property
    def cells(self) -> int:
        return self.n1 * self.n2

    @property
    def is_admissible(self) -> bool:
        """True when p < q and u > v, the only case where sampling beats zero."""
        return self.p.reciprocal > self.q.reciprocal and self.u.reciprocal < self.v.reciprocal

    @property
    def inner_gap(self) -> float:
        """1/v - 1/u, the quantity that selects between the two adaptive variants."""
        return self.v.reciprocal - self.u.reciprocal


# =============================================================================
# Algorithm Parameters
# =============================================================================

class ApproxParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    sp: SpacePair
    n: int = Field(ge=1)
    m: int = Field(ge=1)

    @property
    def samples_per_row(self) -> int:
        """ceil(n / N1), the number of column samples per row and repetition."""
        return -(-self.n // self.sp.n1)

    @property
    def rows_read(self) -> int:
        """ceil(n / N2), the number of top-ranked rows read in full."""
        return -(-self.n // self.sp.n2)

    def require_subfull_budget(self) -> None:
        if self.n >= self.sp.cells:
            raise ValueError(
                f"budget n={self.n} must be smaller than N1*N2={self.sp.cells} for the adaptive approximators"
            )


# =============================================================================
# Experiment Configuration
# =============================================================================

AlgorithmName = Literal["dispatch", "a2", "a3", "zero", "fixed_rows", "random_cells"]
ReportFormat = Literal["csv", "json"]


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    sp: SpacePair = Field(alias="space")
    budgets: List[int] = Field(min_length=1)
    m_override: Optional[int] = Field(default=None, ge=1, alias="m-override")
    measure: int = Field(default=1, ge=0, le=6)
    algorithm: AlgorithmName = "dispatch"
    trials: int = Field(default=100, ge=1)
    w: float = Field(default=1.0, ge=1.0)
    master_seed: int = Field(default=0, ge=0, lt=2**64, alias="master-seed")
    output: Optional[str] = None
    format: ReportFormat = "csv"
    workers: int = Field(default=1, ge=1)
    label: Optional[str] = None

    @field_validator("budgets")
    @classmethod
    def _strictly_increasing(cls, budgets: List[int]) -> List[int]:
        if any(n < 1 for n in budgets):
            raise ValueError("budgets must be positive")
        if any(b <= a for a, b in zip(budgets, budgets[1:])):
            raise ValueError("budgets must be strictly increasing")
        return budgets

    @model_validator(mode="after")
    def _default_label(self) -> "ExperimentConfig":
        if self.label is None:
            self.label = f"{self.algorithm}-mu{self.measure}"
        return self


class RootConfig(BaseModel):
    experiment: ExperimentConfig
