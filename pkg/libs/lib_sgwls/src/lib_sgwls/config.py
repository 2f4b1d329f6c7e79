"""Parameter models for guidance weights and SG-WLS smoothing."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class WeightKind(str, Enum):
    """Guidance weight family."""

    FRAC = "frac"
    EXP = "exp"


class Axis(str, Enum):
    """Sweep direction of a smoothing pass."""

    COLUMN = "column"
    ROW = "row"

    @property
    def other(self) -> "Axis":
        return Axis.ROW if self is Axis.COLUMN else Axis.COLUMN


class WeightParams(BaseModel):
    """Constants of the guidance weight.

    ``range_scale`` multiplies guidance differences before they enter the
    range term, so parameters tuned for 8-bit guidance can be used with
    guidance stored in [0, 1] (``range_scale=255``).
    """

    model_config = ConfigDict(frozen=True)

    kind: WeightKind = WeightKind.FRAC
    alpha_s: float = 1.2
    alpha_r: float = 1.2
    sigma_s: float = Field(1.0, gt=0)
    sigma_r: float = Field(1.0, gt=0)
    epsilon: float = Field(1e-4, gt=0)
    range_scale: float = Field(1.0, gt=0)


class SmoothConfig(BaseModel):
    """Knobs of one SG-WLS smoothing run.

    ``iterations`` counts directional passes: 4 means column, row, column,
    row when ``first_axis`` is column.
    """

    model_config = ConfigDict(frozen=True)

    lam: float = Field(900.0, ge=0)
    r: int = Field(1, ge=1)
    tau: int = Field(1, ge=1)
    iterations: int = Field(4, ge=1)
    weight: WeightParams = WeightParams()
    first_axis: Axis = Axis.COLUMN

    @model_validator(mode="after")
    def _check_stride(self) -> "SmoothConfig":
        if self.tau > 2 * self.r + 1:
            raise ValueError(
                f"tau={self.tau} leaves gaps between bands; must be <= 2r+1={2 * self.r + 1}"
            )
        return self
