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
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Tuple

from hybrid_residual.arm.config import ArmParams
from hybrid_residual.controller.config import ControllerConfig
from hybrid_residual.curriculum.config import CurriculumConfig, Experiment
from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.policy.config import OptimConfig, PolicyConfig
from hybrid_residual.residual.config import ResidualBounds, ResidualMode
from hybrid_residual.utils.config import BaseConfig
from hybrid_residual.utils.workspace import DEFAULT_WORKSPACE_PATH
from hybrid_residual.world.config import WorldConfig


@dataclass
class DiagnosticConfig(BaseConfig):
    """Buffer-steps experiment: scripted oracle residual during MoveToPreInsert."""

    b_values: Tuple[int, ...] = (0, 10, 50, 100)
    modes: Tuple[ResidualMode, ...] = (ResidualMode.JOINT_EFFORT, ResidualMode.JOINT_POS_FEEDBACK)
    offset: float = 0.016
    torque_bound: float = 6.0
    joint_delta_bound: float = 0.15

    def __post_init__(self):
        if not self.b_values or min(self.b_values) < 0:
            raise ConfigurationError(f"b_values must be a non-empty list of counts >= 0, got {self.b_values}")
        allowed = (ResidualMode.JOINT_EFFORT, ResidualMode.JOINT_POS_FEEDBACK)
        if not self.modes or any(mode not in allowed for mode in self.modes):
            raise ConfigurationError(
                f"Diagnostic modes must be drawn from {[mode.value for mode in allowed]}, "
                f"got {[mode.value for mode in self.modes]}"
            )
        if self.torque_bound <= 0 or self.joint_delta_bound <= 0:
            raise ConfigurationError("Oracle bounds must be positive")


@dataclass
class ExperimentConfig(BaseConfig):
    mode: ResidualMode = ResidualMode.JOINT_POS_FEEDBACK
    experiment: Experiment = Experiment.ONLY_POSITION
    seeds: Tuple[int, ...] = (0, 1, 2, 3, 4)
    n_train_envs: int = 4
    n_eval_envs: int = 4
    total_episodes: int = 2000
    eval_every: int = 10
    curriculum_enabled: bool = True
    # top-level values win over the controller section; a differing non-default controller value is rejected
    buffer_steps: int = 0
    strict_condition: bool = False
    scratch: bool = False
    output_dir: Path = DEFAULT_WORKSPACE_PATH
    n_workers: int = 1
    record_steps: bool = False
    checkpoint_every: int = 0
    arm: ArmParams = field(default_factory=ArmParams)
    world: WorldConfig = field(default_factory=WorldConfig)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    residual: ResidualBounds = field(default_factory=ResidualBounds)
    optim: OptimConfig = field(default_factory=OptimConfig)
    policy: PolicyConfig = field(default_factory=PolicyConfig)
    curriculum: CurriculumConfig = field(default_factory=CurriculumConfig)
    diagnostic: DiagnosticConfig = field(default_factory=DiagnosticConfig)

    def __post_init__(self):
        if not self.seeds:
            raise ConfigurationError("At least one seed is required")
        if self.n_train_envs < 1 or self.n_eval_envs < 0 or self.n_workers < 1:
            raise ConfigurationError("n_train_envs and n_workers must be >= 1, n_eval_envs >= 0")
        if self.total_episodes < 1 or self.eval_every < 1:
            raise ConfigurationError("total_episodes and eval_every must be >= 1")
        if self.buffer_steps < 0 or self.checkpoint_every < 0:
            raise ConfigurationError("buffer_steps and checkpoint_every must be >= 0")
        if self.scratch and self.mode != ResidualMode.JOINT_EFFORT:
            raise ConfigurationError("Learning from scratch runs in JointEffort mode")
        defaults = ControllerConfig()
        for key in ("buffer_steps", "strict_condition"):
            top, section = getattr(self, key), getattr(self.controller, key)
            if section != getattr(defaults, key) and section != top:
                raise ConfigurationError(
                    f"controller.{key}={section} conflicts with top-level {key}={top}; set it in one place"
                )

    @property
    def effective_controller(self) -> ControllerConfig:
        return replace(self.controller, buffer_steps=self.buffer_steps, strict_condition=self.strict_condition)
