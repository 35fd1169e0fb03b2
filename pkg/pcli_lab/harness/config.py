# ---------------------------------------------------------------------------- #
#  pcli-lab                                                                    #
#  copyright (c) pcli-lab authors 2026                                         #
#                                                                              #
#  licensed under the apache license, version 2.0 (the "license");             #
#  you may not use this file except in compliance with the license.            #
#                                                                              #
#  you may obtain a copy of the license at                                     #
#                                                                              #
#                  http://www.apache.org/licenses/license-2.0                  #
#                                                                              #
#  unless required by applicable law or agreed to in writing, software         #
#  distributed under the license is distributed on an "as is" basis,           #
#  without warranties or conditions of any kind, either express or implied.    #
#  see the license for the specific language governing permissions and         #
#  limitations under the license.                                              #
# ---------------------------------------------------------------------------- #
import json
import os
from typing import Any, Dict, List, Literal, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    model_validator,
)

from pcli_lab.algos.stochastic import StochasticMethod
from pcli_lab.logger import init_logger

logger = init_logger(__name__)

EXPERIMENT_NAMES = (
    "verify-lb-sc",
    "verify-lb-smooth",
    "rate-fit",
    "lemma-b3",
    "stochastic",
    "restart",
    "lemmas",
    "side-info",
)

DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "cli",
    "default_config.json",
)


class ConfigError(ValueError):
    pass


class _Settings(BaseModel):
    model_config = ConfigDict(extra="forbid")


class StochasticSettings(_Settings):
    methods: List[StochasticMethod] = Field(
        default_factory=lambda: list(StochasticMethod), min_length=1
    )
    m: int = Field(5, ge=1)
    replicates: int = Field(100_000, ge=2)
    steps: List[int] = Field(default_factory=lambda: [1, 10], min_length=1)
    # None means 1 / (m L)
    step: Optional[float] = Field(None, gt=0.0)
    svrg_epoch: Optional[int] = Field(None, ge=1)


class RateFitSettings(_Settings):
    n_eta: int = Field(32, ge=2)
    max_iterations: int = Field(1_000_000, ge=1)


class RestartSettings(_Settings):
    C: float = Field(4.0, gt=0.0)
    alpha: float = Field(2.0, gt=0.0)
    kappa_list: List[float] = Field(
        default_factory=lambda: [25.0, 100.0, 400.0], min_length=1
    )
    target_eps: float = Field(1e-8, gt=0.0)


class ExperimentConfig(_Settings):
    config_version: Literal[1] = 1
    experiment: str = "all"
    kappa_list: List[float] = Field(
        default_factory=lambda: [100.0, 1000.0, 10000.0], min_length=1
    )
    k_list: List[int] = Field(
        default_factory=lambda: [0, 1, 2, 5, 10, 20, 40, 60], min_length=1
    )
    eps: float = Field(1e-6, gt=0.0)
    d: int = Field(4, ge=1)
    R: float = Field(1.0, gt=0.0)
    L: float = Field(1.0, gt=0.0)
    n_grid: int = Field(10_000, ge=2)
    seed: int = Field(0, ge=0, lt=2**64)
    output_path: Optional[str] = None
    stochastic: StochasticSettings = Field(default_factory=StochasticSettings)
    rate_fit: RateFitSettings = Field(default_factory=RateFitSettings)
    restart: RestartSettings = Field(default_factory=RestartSettings)

    @model_validator(mode="after")
    def _check_ranges(self) -> "ExperimentConfig":
        if self.experiment != "all" and self.experiment not in EXPERIMENT_NAMES:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        kappas = self.kappa_list + self.restart.kappa_list
        if any(kappa <= 1.0 for kappa in kappas):
            raise ValueError("condition numbers must exceed 1")
        if any(k < 0 for k in self.k_list + self.stochastic.steps):
            raise ValueError("iteration counts must be non-negative")
        return self


def read_config(config_path: str) -> dict:
    try:
        with open(config_path, "r") as file:
            return json.load(file)
    except FileNotFoundError:
        raise ConfigError(f"Config file {config_path} not found.")
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"JSON decode error in config file {config_path}: {e}"
        )


def deep_update(original: dict, updates: dict) -> dict:
    for key, value in updates.items():
        if isinstance(value, dict) and isinstance(original.get(key), dict):
            original[key] = deep_update(original.get(key, {}), value)
        else:
            original[key] = value
    return original


def find_config(config: str) -> str:
    search_paths = [
        os.path.abspath(config),
        os.path.expanduser(os.path.join("~", ".pcli_lab", config)),
    ]
    for path in search_paths:
        if os.path.exists(path):
            return path
    listing = "\n".join(f"  - {path}" for path in search_paths)
    raise ConfigError(
        f"Config file '{config}' not found in any of these locations:\n"
        f"{listing}"
    )


def load_config(
    config: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """Packaged defaults, then the user file, then non-None overrides."""
    config_data = read_config(DEFAULT_CONFIG_PATH)
    if config:
        config_data = deep_update(config_data, read_config(find_config(config)))
    if overrides:
        flags = {
            key: value
            for key, value in overrides.items()
            if value is not None
        }
        config_data = deep_update(config_data, flags)
    try:
        cfg = ExperimentConfig.model_validate(config_data)
    except ValidationError as e:
        logger.error(f"Invalid experiment configuration: {e}")
        raise ConfigError(str(e)) from e
    logger.debug(f"Loaded configuration: {cfg.model_dump()}")
    return cfg
