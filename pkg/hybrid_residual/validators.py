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
import logging
import math
from abc import ABC, abstractmethod
from typing import List

from hybrid_residual.controller.machine import InsertionStateMachine
from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.harness.config import ExperimentConfig
from hybrid_residual.world.env import OBSERVATION_DIM

LOGGER = logging.getLogger(__name__)

REACH_MARGIN = 0.05


class BaseValidator(ABC):
    @abstractmethod
    def validate(self, config: ExperimentConfig):
        pass


class CommandValidator(BaseValidator):
    commands_names: List[str]


class ArmDimensionsConfiguration(CommandValidator):
    commands_names = ["run", "diagnose-buffer"]

    def validate(self, config: ExperimentConfig):
        n_joints = config.arm.n_joints
        gains = config.controller.gains
        LOGGER.debug(f"ArmDimensionsConfiguration n_joints={n_joints} kp={gains.kp} kd={gains.kd}")
        if len(gains.kp) != n_joints:
            raise ConfigurationError(
                f"controller.gains has {len(gains.kp)} entries per gain but the arm has {n_joints} joints"
            )


class ObservationScaleConfiguration(CommandValidator):
    commands_names = ["run"]

    def validate(self, config: ExperimentConfig):
        obs_scale = config.policy.obs_scale
        LOGGER.debug(f"ObservationScaleConfiguration obs_scale={obs_scale}")
        if len(obs_scale) != OBSERVATION_DIM:
            raise ConfigurationError(f"policy.obs_scale needs {OBSERVATION_DIM} entries, got {len(obs_scale)}")


class BufferStepsConfiguration(CommandValidator):
    commands_names = ["run", "diagnose-buffer"]

    def validate(self, config: ExperimentConfig):
        duration_ticks = int(round(config.controller.pre_insert_duration / config.world.control_dt))
        requested = [config.buffer_steps, *config.diagnostic.b_values]
        LOGGER.debug(f"BufferStepsConfiguration requested={requested} duration_ticks={duration_ticks}")
        if max(requested) > duration_ticks:
            raise ConfigurationError(
                f"Buffer steps {max(requested)} exceed the MoveToPreInsert duration of {duration_ticks} ticks"
            )


class DiagnosticOffsetConfiguration(CommandValidator):
    commands_names = ["diagnose-buffer"]

    def validate(self, config: ExperimentConfig):
        machine = InsertionStateMachine(config.controller, config.arm, config.world.control_dt)
        nominal = config.world.geometry.nominal_hole_pose
        pre_insert = machine.pre_insert_pose(nominal)
        offset = config.diagnostic.offset
        x = pre_insert.x - offset * math.sin(nominal.phi)
        y = pre_insert.y + offset * math.cos(nominal.phi)
        # the TCP must stay clear of the wrist so the last link can keep its orientation
        limit = config.arm.reach - REACH_MARGIN
        LOGGER.debug(f"DiagnosticOffsetConfiguration offset={offset} target=({x:.4f}, {y:.4f}) limit={limit:.4f}")
        if math.hypot(x, y) >= limit:
            raise ConfigurationError(f"Diagnostic offset {offset} m moves the pre-insert pose out of reach")


def run_command_validators(command_name: str, config: ExperimentConfig):
    for validator in _get_command_validators(command_name):
        LOGGER.debug(f"Running command validator: {validator}")
        validator.validate(config)


def _get_command_validators(command_name) -> List[CommandValidator]:
    return [
        ValidatorCls()
        for ValidatorCls in CommandValidator.__subclasses__()
        if command_name in ValidatorCls.commands_names
    ]
