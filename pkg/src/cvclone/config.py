"""Experiment configuration: INI-style files plus command-line overrides.

A config file has an `[experiment]` section (name, seed, output) and a
`[parameters]` section whose values are scalars, `min:max:steps` range
triples, or comma-separated lists. Overrides passed as `key=value` strings
use the same value syntax and win over file values.
"""

import configparser
from dataclasses import dataclass, field

import numpy as np

EXPERIMENTS = (
    "fidelity-sweep",
    "uncertainty-scan",
    "duality-check",
    "discrete-verify",
    "wigner-export",
    "squeezed-sweep",
)

#: Parameter values: a scalar, a (min, max, steps) triple, or an explicit list.
ParamValue = float | tuple[float, float, int] | list[float]


class ConfigError(ValueError):
    """Invalid experiment name, parameter value, or config file."""


def parse_value(text: str) -> ParamValue:
    """Parse a parameter value string.

    `a:b:k` is a range triple, `a,b,c` an explicit list, anything else a
    scalar.
    """
    text = text.strip()
    try:
        if ":" in text:
            lo, hi, steps = text.split(":")
            return (float(lo), float(hi), int(steps))
        if "," in text:
            return [float(item) for item in text.split(",") if item.strip()]
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse parameter value {text!r}") from exc


def expand(value: ParamValue) -> np.ndarray:
    """Materialize a parameter value as an array of grid points."""
    if isinstance(value, tuple):
        lo, hi, steps = value
        return np.linspace(lo, hi, steps)
    if isinstance(value, list):
        return np.asarray(value, dtype=float)
    return np.array([float(value)])


@dataclass
class ExperimentConfig:
    """One experiment run: which runner, its parameters, seed, and output."""

    experiment: str
    parameters: dict[str, ParamValue] = field(default_factory=dict)
    seed: int = 0
    output_path: str = ""

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}"
            )
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        for name, value in self.parameters.items():
            if isinstance(value, tuple):
                lo, hi, steps = value
                if steps < 1:
                    raise ConfigError(f"{name}: steps must be >= 1, got {steps}")
                if lo > hi:
                    raise ConfigError(f"{name}: min {lo} exceeds max {hi}")

    # -- parameter accessors used by the runners ---------------------------

    def scalar(self, name: str, default: float) -> float:
        value = self.parameters.get(name, default)
        if isinstance(value, (tuple, list)):
            raise ConfigError(f"parameter {name} must be a scalar")
        return float(value)

    def integer(self, name: str, default: int) -> int:
        value = self.scalar(name, default)
        if value != int(value):
            raise ConfigError(f"parameter {name} must be an integer")
        return int(value)

    def points(self, name: str, default: ParamValue) -> np.ndarray:
        return expand(self.parameters.get(name, default))

    def override(self, assignment: str) -> None:
        """Apply one `key=value` override; `seed` is special, the rest are parameters."""
        if "=" not in assignment:
            raise ConfigError(f"override {assignment!r} is not of the form key=value")
        key, text = assignment.split("=", 1)
        key = key.strip()
        if key == "seed":
            self.seed = int(parse_value(text))
        elif key == "output":
            self.output_path = text.strip()
        else:
            self.parameters[key] = parse_value(text)
        self.__post_init__()


def load_config(path, experiment: str | None = None) -> ExperimentConfig:
    """Read an ExperimentConfig from an INI file.

    Args:
        path: config file location.
        experiment: expected experiment name; a mismatch with the file's
            `name` entry is an error. Required if the file omits the name.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    section = parser["experiment"] if parser.has_section("experiment") else {}
    name = section.get("name", experiment)
    if name is None:
        raise ConfigError(f"{path}: no experiment name given")
    if experiment is not None and name != experiment:
        raise ConfigError(
            f"{path}: file is for experiment {name!r}, requested {experiment!r}"
        )
    params: dict[str, ParamValue] = {}
    if parser.has_section("parameters"):
        for key, text in parser["parameters"].items():
            params[key] = parse_value(text)
    return ExperimentConfig(
        experiment=name,
        parameters=params,
        seed=int(section.get("seed", 0)),
        output_path=section.get("output", ""),
    )
