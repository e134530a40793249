"""
Strict experiment configuration for the command-line runner.

Every field is validated before dispatch and unknown keys are rejected, so a
typo in a config file fails loudly instead of silently running the defaults.
"""

import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from model.configuration import Configuration
from model.kernel_spec import kernel_spec, parse_kernel_spec


class RunConfig(BaseModel):
    """Configuration of one simulation or figure reproduction."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    kernel: str = Field("trunc:k=2.0,r=1.0", description="Kernel spec string, e.g. 'trunc:k=2,r=1'")
    dimension: int = Field(1, ge=1, le=2)
    initial: Optional[List[Tuple[float, ...]]] = Field(
        None, description="Initial particle positions; a single particle at the origin when omitted"
    )
    t_end: float = Field(100.0, ge=0, allow_inf_nan=False)
    replicas: int = Field(1, ge=1)
    seed: int = Field(0, ge=0)
    output_dir: Optional[Path] = Field(None, description="Falls back to settings.output_dir")
    log_path: Optional[Path] = Field(None, description="Event log destination for `simulate`")

    # figure parameters; those present in a config file override the frozen figure defaults
    hitting_lambda: float = Field(0.1, gt=0, lt=1, description="λ of the hitting balls B(n e_1, λn)")
    sectors: int = Field(12, ge=2)
    n_caps: List[int] = Field(default_factory=lambda: [1, 2, 8, 32, 128, 512, 2048, 8192])
    k_grid: List[float] = Field(default_factory=lambda: [1.2, 1.5, 2.0, 3.0, 5.0])
    alphas: List[float] = Field(default_factory=lambda: [2.8, 4.2])
    window_fraction: float = Field(0.5, gt=0, lt=1)

    @field_validator("kernel")
    @classmethod
    def validate_kernel(cls, v: str) -> str:
        # normalise to the canonical spelling so round trips are exact
        return kernel_spec(parse_kernel_spec(v))

    @field_validator("n_caps")
    @classmethod
    def validate_n_caps(cls, v: List[int]) -> List[int]:
        if not v or any(n < 1 for n in v):
            raise ValueError("n_caps must be a non-empty list of positive integers")
        return v

    @field_validator("k_grid")
    @classmethod
    def validate_k_grid(cls, v: List[float]) -> List[float]:
        if not v or any(k <= 0 for k in v):
            raise ValueError("k_grid must be a non-empty list of positive caps")
        return v

    @field_validator("alphas")
    @classmethod
    def validate_alphas(cls, v: List[float]) -> List[float]:
        if any(a <= 2 for a in v):
            raise ValueError("Power-law exponents must exceed 2")
        return v

    @model_validator(mode="after")
    def validate_initial(self):
        if self.initial is not None:
            if not self.initial:
                raise ValueError("initial must contain at least one particle")
            bad = [p for p in self.initial if len(p) != self.dimension]
            if bad:
                raise ValueError(f"Initial points {bad} do not have dimension {self.dimension}")
            if len(set(self.initial)) != len(self.initial):
                raise ValueError("Initial points must be distinct")
        return self

    @property
    def birth_kernel(self):
        return parse_kernel_spec(self.kernel)

    def initial_configuration(self):
        if self.initial is None:
            return Configuration.origin(self.dimension)
        return Configuration(dimension=self.dimension, points=tuple(tuple(p) for p in self.initial))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "RunConfig":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def to_file(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.model_dump(mode="json"), indent=2) + "\n", encoding="utf-8")
        return path
