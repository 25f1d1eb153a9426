"""Experiment configuration loading and validation."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Annotated, Any, Literal, Union, get_args

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from extscale.core.errors import ConfigError

SuiteName = Literal[
    "membership", "indices", "norm", "interp", "quotient", "bvp", "embedding", "witness"
]
ModelName = Literal["dirichlet", "neumann", "biharmonic"]

ALL_SUITES: tuple[str, ...] = get_args(SuiteName)

_FROZEN = {"frozen": True, "extra": "forbid"}


class AppSettings(BaseModel):
    """Application-level settings."""

    name: str = "extscale"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    output_dir: str = "./reports"

    model_config = _FROZEN


class PowerSpec(BaseModel):
    family: Literal["power"]
    s: float
    label: str | None = None

    model_config = _FROZEN


class PowerLogSpec(BaseModel):
    family: Literal["powerlog"]
    s: float
    r: float = 0.0
    label: str | None = None

    model_config = _FROZEN


class OscPowerSpec(BaseModel):
    family: Literal["oscpower"]
    s: float
    eps: float = 0.0
    clock: Literal["loglog", "log"] = "loglog"
    label: str | None = None

    model_config = _FROZEN


class RepresentedSpec(BaseModel):
    """Weight given by beta/gamma samples on a uniform ln(t) grid."""

    family: Literal["represented"]
    beta: list[float] = Field(min_length=2)
    gamma: list[float] = Field(min_length=2)
    log_step: float = Field(gt=0)
    beta_bound: float | None = None
    gamma_bound: float | None = None
    label: str | None = None

    model_config = _FROZEN

    @model_validator(mode="after")
    def validate_lengths(self) -> RepresentedSpec:
        if len(self.beta) != len(self.gamma):
            raise ValueError("beta and gamma need the same number of samples")
        return self


WeightSpec = Annotated[
    Union[PowerSpec, PowerLogSpec, OscPowerSpec, RepresentedSpec],
    Field(discriminator="family"),
]


def _default_weights() -> list[Any]:
    return [
        PowerSpec(family="power", s=1.0),
        PowerLogSpec(family="powerlog", s=1.0, r=1.0),
        OscPowerSpec(family="oscpower", s=1.0, eps=0.5),
    ]


class Tolerances(BaseModel):
    """Pass/fail tolerances; each is a calibration choice."""

    algebraic: float = Field(default=1e-12, gt=0)
    quadrature: float = Field(default=1e-8, gt=0)
    boundary_mode: float = Field(default=1e-10, gt=0)
    index: float = Field(default=0.05, gt=0)
    oracle: float = Field(default=1e-8, gt=0)
    infimum_slack: float = Field(default=1e-10, gt=0)
    cross_route_factor: float = Field(default=2.0, gt=1)
    apriori_growth: float = Field(default=1.10, gt=1)
    isomorphism_factor: float = Field(default=1.25, gt=1)
    witness_growth: float = Field(default=0.20, gt=0)
    witness_variation: float = Field(default=0.05, gt=0)

    model_config = _FROZEN


class SolverOptions(BaseModel):
    """Quotient-norm solver and parallel execution options."""

    tolerance: float = Field(default=1e-12, gt=0)
    max_iterations: int | None = Field(default=None, ge=1)
    use_ray: bool = False
    num_cpus: int = Field(default=2, ge=1)

    model_config = _FROZEN


class IndexGridSpec(BaseModel):
    """Grid for estimated Matuszewska indices (windows are ln(lambda))."""

    lambda_min: float = Field(default=8.0, gt=1)
    h_lo: float = Field(default=1.0e3, gt=0)
    h_hi: float = Field(default=1.0e4, gt=0)
    x_max: float = Field(default=1.0e12, gt=1)
    points: int = Field(default=4000, ge=2)

    model_config = _FROZEN

    @model_validator(mode="after")
    def validate_windows(self) -> IndexGridSpec:
        if self.h_lo >= self.h_hi:
            raise ValueError("h_lo must be smaller than h_hi")
        return self


class SampleSettings(BaseModel):
    """Sample counts for randomized suites."""

    fields: int = Field(default=20, ge=1)
    quotient_instances: int = Field(default=50, ge=1)
    extensions: int = Field(default=100, ge=1)
    bvp_samples: int = Field(default=100, ge=1)
    green_pairs: int = Field(default=20, ge=1)
    sobolev_order: float = Field(default=1.0, gt=-0.5)
    boundary_band: int = Field(default=8, ge=1)
    disk_points: int = Field(default=65, ge=3)

    model_config = _FROZEN

    @model_validator(mode="after")
    def validate_disk_points(self) -> SampleSettings:
        if self.disk_points % 2 == 0:
            raise ValueError("disk_points must be odd")
        return self


class ExperimentConfig(BaseModel):
    """Complete experiment configuration."""

    app: AppSettings = Field(default_factory=AppSettings)
    weights: list[WeightSpec] = Field(default_factory=_default_weights, min_length=1)
    lattice_sizes: list[Annotated[int, Field(ge=1)]] = Field(
        default_factory=lambda: [8, 16, 32, 64], min_length=1
    )
    models: list[ModelName] = Field(
        default_factory=lambda: ["dirichlet", "neumann", "biharmonic"], min_length=1
    )
    suites: list[SuiteName] = Field(min_length=1)
    seeds: list[int] = Field(min_length=1)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    solver: SolverOptions = Field(default_factory=SolverOptions)
    index_grid: IndexGridSpec = Field(default_factory=IndexGridSpec)
    samples: SampleSettings = Field(default_factory=SampleSettings)

    model_config = _FROZEN

    @property
    def digest(self) -> str:
        """SHA-256 of the canonical JSON dump."""
        return config_digest(self)

    def build_weights(self) -> list[Any]:
        """Instantiate the configured weights, in config order."""
        from extscale.weights.registry import weight_from_spec

        return [weight_from_spec(spec.model_dump(exclude_none=True)) for spec in self.weights]

    def weight_labels(self) -> list[str]:
        return [
            spec.label or weight.label for spec, weight in zip(self.weights, self.build_weights())
        ]


def config_digest(config: ExperimentConfig) -> str:
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def parse_config(raw: Any, source: yaml.Node | None = None) -> ExperimentConfig:
    """Validate raw config data.

    Args:
        raw: Parsed YAML content
        source: Composed YAML node tree, used to attach line numbers

    Raises:
        ConfigError: With one diagnostic per schema problem
    """
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a mapping")
    try:
        return ExperimentConfig(**raw)
    except ValidationError as exc:
        diagnostics = [_describe(err, source) for err in exc.errors()]
        raise ConfigError("invalid configuration", diagnostics) from exc


def _describe(err: Any, source: yaml.Node | None) -> str:
    loc = list(err["loc"])
    path = ".".join(str(part) for part in loc)
    if err["type"] == "missing":
        message = f"{path} required"
    else:
        message = f"{path}: {err['msg']}"
    line = _locate(source, loc)
    return message if line is None else f"line {line}: {message}"


def _locate(node: yaml.Node | None, loc: list[Any]) -> int | None:
    """1-based line of the deepest existing node on a key path."""
    line = None
    for part in loc:
        if isinstance(node, yaml.MappingNode):
            match = next((v for k, v in node.value if k.value == part), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(part, int):
            match = node.value[part] if part < len(node.value) else None
        else:
            match = None
        if match is None:
            break
        node = match
        line = match.start_mark.line + 1
    return line


def load_config(path: Path | str) -> ExperimentConfig:
    """Load and validate an experiment configuration file.

    Args:
        path: Path to YAML configuration file

    Returns:
        Validated ExperimentConfig with defaults filled

    Raises:
        FileNotFoundError: If config file doesn't exist
        ConfigError: If the YAML is malformed or the schema check fails
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")

    text = path.read_text()
    try:
        raw = yaml.safe_load(text)
        source = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark else ""
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError("malformed YAML", [f"{where}{problem}"]) from exc
    return parse_config(raw, source)


def validate_config(path: Path | str) -> ExperimentConfig:
    """Validate a config file, reporting every problem as a ConfigError.

    Example:
        config = validate_config("configs/minimal.yaml")
        print(config.digest)
    """
    try:
        return load_config(path)
    except FileNotFoundError as exc:
        raise ConfigError(str(exc)) from exc


def save_config(config: ExperimentConfig, path: Path | str) -> None:
    """Save a normalized configuration to YAML.

    Args:
        config: Configuration to save
        path: Path to write YAML file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, "w") as f:
        yaml.safe_dump(config.model_dump(mode="json", exclude_none=True), f, sort_keys=False)
