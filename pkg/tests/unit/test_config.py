# Copyright (c) 2022, hybrid_residual authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import pytest
import yaml

from hybrid_residual.curriculum.config import Experiment
from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.harness.config import ExperimentConfig
from hybrid_residual.residual.config import ResidualMode
from hybrid_residual.utils.config import BaseConfig, YamlConfigFile, merge_dicts

CONFIGS_DIR = Path(__file__).parent.parent.parent.absolute() / "configs"


@dataclass
class MyConfig(BaseConfig):
    config_a: int
    config_b: str
    config_c: Optional[bool] = None
    config_d: Tuple[float, ...] = (1.0, 2.0)
    config_e: ResidualMode = ResidualMode.NONE


@dataclass
class MyConfigOtherParams(BaseConfig):
    config2_a: int
    config2_b: bool = False


def test_config_from_dict_just_primitives():
    config = MyConfig.from_dict({"config_a": 1, "config_b": "foo"})  # just required parameters
    assert config.config_c is None

    config = MyConfig.from_dict({"config_a": 1, "config_b": "foo", "config_c": False})  # with optional parameter
    assert config.config_c is False

    with pytest.raises(ConfigurationError):
        MyConfig.from_dict({"config_a": 1, "config_b": "foo", "config_z": 2})  # with unknown parameter
    with pytest.raises(ConfigurationError):
        MyConfig.from_dict({"config_a": 1})  # missing required parameter


def test_config_from_dict_casts_enums_and_tuples():
    config = MyConfig.from_dict({"config_a": 1, "config_b": "foo", "config_d": [3, 4], "config_e": "Hybrid"})

    assert config.config_d == (3.0, 4.0)
    assert config.config_e == ResidualMode.HYBRID

    with pytest.raises(ConfigurationError):
        MyConfig.from_dict({"config_a": 1, "config_b": "foo", "config_e": "Telepathy"})


def test_config_save_and_load():
    """Save and load single config file"""
    config = MyConfig(config_a=8, config_b="foo", config_e=ResidualMode.EE_WRENCH)
    with tempfile.TemporaryDirectory() as tmp_dir:
        config_path = Path(tmp_dir) / "config.yml"
        with YamlConfigFile(config_path) as config_file:
            config_file.save_config(config)

        with YamlConfigFile(config_path) as config_file:
            loaded_config = config_file.load(MyConfig)

        assert config == loaded_config


def test_config_save_and_load_multiple_configs():
    """Save two configs into one file and load each back"""
    config1 = MyConfig(config_a=8, config_b="foo")
    config2 = MyConfigOtherParams(config2_a=8)
    with tempfile.TemporaryDirectory() as tmp_dir:
        config_path = Path(tmp_dir) / "config.yml"

        with YamlConfigFile(config_path) as config_file:
            config_file.save_config(config1)
            config_file.save_config(config2)

        with config_path.open("r") as stored_file:
            stored = yaml.safe_load(stored_file)

        assert MyConfig.from_dict({k: v for k, v in stored.items() if k.startswith("config_")}) == config1
        assert MyConfigOtherParams.from_dict({k: v for k, v in stored.items() if k.startswith("config2_")}) == config2


def test_config_save_conflicting_values():
    with tempfile.TemporaryDirectory() as tmp_dir:
        config_path = Path(tmp_dir) / "config.yml"

        with YamlConfigFile(config_path) as config_file:
            config_file.save_config(MyConfig(config_a=8, config_b="foo"))
            with pytest.raises(ConfigurationError):
                config_file.save_config(MyConfig(config_a=9, config_b="foo"))


def test_merge_dicts_is_recursive():
    base = {"a": 1, "nested": {"b": 2, "c": 3}}

    merged = merge_dicts(base, {"nested": {"c": 4}, "d": 5})

    assert merged == {"a": 1, "nested": {"b": 2, "c": 4}, "d": 5}
    assert base["nested"]["c"] == 3


def test_desk_scale_config_matches_defaults():
    with YamlConfigFile(CONFIGS_DIR / "desk_scale.yaml") as config_file:
        config = config_file.load(ExperimentConfig)

    defaults = ExperimentConfig()
    assert config.arm == defaults.arm
    assert config.world == defaults.world
    assert config.controller == defaults.controller
    assert config.optim == defaults.optim
    assert config.curriculum == defaults.curriculum


def test_experiment_config_overrides():
    with YamlConfigFile(CONFIGS_DIR / "desk_scale.yaml") as config_file:
        config = config_file.load(
            ExperimentConfig,
            {"mode": "Hybrid", "experiment": "Both", "seeds": [7], "buffer_steps": 10, "optim": {"epochs": 3}},
        )

    assert config.mode == ResidualMode.HYBRID
    assert config.experiment == Experiment.BOTH
    assert config.seeds == (7,)
    assert config.optim.epochs == 3
    assert config.optim.gamma == pytest.approx(0.99)
    assert config.effective_controller.buffer_steps == 10


def test_conflicting_controller_buffer_steps_is_rejected():
    with pytest.raises(ConfigurationError, match="controller.buffer_steps"):
        ExperimentConfig.from_dict({"buffer_steps": 10, "controller": {"buffer_steps": 50}})


def test_conflicting_controller_strict_condition_is_rejected():
    with pytest.raises(ConfigurationError, match="controller.strict_condition"):
        ExperimentConfig.from_dict({"controller": {"strict_condition": True}})


def test_matching_controller_keys_are_accepted():
    config = ExperimentConfig.from_dict(
        {"buffer_steps": 50, "strict_condition": True, "controller": {"buffer_steps": 50, "strict_condition": True}}
    )

    assert config.effective_controller.buffer_steps == 50
    assert config.effective_controller.strict_condition


def test_experiment_config_rejects_unknown_section():
    with pytest.raises(ConfigurationError):
        ExperimentConfig.from_dict({"optim": {"momentum": 0.9}})


def test_scratch_requires_joint_effort():
    with pytest.raises(ConfigurationError):
        ExperimentConfig(scratch=True, mode=ResidualMode.HYBRID)

    assert ExperimentConfig(scratch=True, mode=ResidualMode.JOINT_EFFORT).scratch
