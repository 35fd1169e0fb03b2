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

import pytest

from pcli_lab.algos import StochasticMethod
from pcli_lab.harness.config import (
    DEFAULT_CONFIG_PATH,
    EXPERIMENT_NAMES,
    ConfigError,
    deep_update,
    find_config,
    load_config,
    read_config,
)


@pytest.fixture
def user_config(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(
        json.dumps(
            {"kappa_list": [4, 9], "stochastic": {"m": 3, "replicates": 50}}
        )
    )
    return str(path)


def test_packaged_defaults():
    cfg = load_config()
    assert cfg.kappa_list == [100.0, 1000.0, 10000.0]
    assert cfg.k_list == [0, 1, 2, 5, 10, 20, 40, 60]
    assert cfg.n_grid == 10_000
    assert cfg.stochastic.methods == list(StochasticMethod)
    assert cfg.stochastic.replicates == 100_000
    assert cfg.restart.kappa_list == [25.0, 100.0, 400.0]
    assert read_config(DEFAULT_CONFIG_PATH)["config_version"] == 1


def test_user_file_is_merged_over_defaults(user_config):
    cfg = load_config(user_config)
    assert cfg.kappa_list == [4.0, 9.0]
    assert cfg.stochastic.m == 3
    assert cfg.stochastic.replicates == 50
    assert cfg.stochastic.steps == [1, 10]


def test_overrides_skip_none(user_config):
    cfg = load_config(
        user_config, {"eps": 1e-3, "seed": None, "kappa_list": [16.0]}
    )
    assert cfg.eps == 1e-3
    assert cfg.seed == 0
    assert cfg.kappa_list == [16.0]


@pytest.mark.parametrize(
    "overrides",
    [
        {"kappa_list": [1.0]},
        {"kappa_list": []},
        {"k_list": [-1]},
        {"eps": 0.0},
        {"experiment": "nope"},
        {"seed": -3},
        {"unknown_key": 1},
        {"stochastic": {"m": 0}},
        {"restart": {"kappa_list": [0.5]}},
    ],
)
def test_invalid_values(overrides):
    with pytest.raises(ConfigError):
        load_config(overrides=overrides)


def test_every_experiment_name_is_accepted():
    for name in EXPERIMENT_NAMES:
        assert load_config(overrides={"experiment": name}).experiment == name


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(broken))


def test_find_config_prefers_the_given_path(user_config):
    assert find_config(user_config) == user_config


def test_deep_update():
    original = {"a": 1, "nested": {"x": 1, "y": 2}}
    merged = deep_update(original, {"nested": {"y": 5}, "b": 2})
    assert merged == {"a": 1, "b": 2, "nested": {"x": 1, "y": 5}}
