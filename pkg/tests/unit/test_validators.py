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
import pytest

from hybrid_residual.controller.config import ControllerConfig, ImpedanceGains
from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.harness.config import DiagnosticConfig, ExperimentConfig
from hybrid_residual.policy.config import PolicyConfig
from hybrid_residual.validators import run_command_validators


def test_defaults_pass_all_validators():
    config = ExperimentConfig()

    run_command_validators("run", config)
    run_command_validators("diagnose-buffer", config)


def test_gains_must_match_arm():
    config = ExperimentConfig(controller=ControllerConfig(gains=ImpedanceGains(kp=(60.0, 60.0), kd=(8.0, 8.0))))

    with pytest.raises(ConfigurationError):
        run_command_validators("run", config)


def test_observation_scale_length():
    config = ExperimentConfig(policy=PolicyConfig(obs_scale=(1.0, 1.0)))

    with pytest.raises(ConfigurationError):
        run_command_validators("run", config)
    run_command_validators("diagnose-buffer", config)


def test_buffer_steps_within_pre_insert_move():
    with pytest.raises(ConfigurationError):
        run_command_validators("run", ExperimentConfig(buffer_steps=1201))
    run_command_validators("run", ExperimentConfig(buffer_steps=1200))


def test_diagnostic_offset_out_of_reach():
    config = ExperimentConfig(diagnostic=DiagnosticConfig(offset=0.5))

    with pytest.raises(ConfigurationError):
        run_command_validators("diagnose-buffer", config)
    run_command_validators("run", config)
