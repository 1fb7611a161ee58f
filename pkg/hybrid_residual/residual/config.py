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
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.utils.config import BaseConfig


class ResidualMode(Enum):
    NONE = "None"
    JOINT_EFFORT = "JointEffort"
    EE_WRENCH = "EEWrench"
    JOINT_POS_FEEDBACK = "JointPosFeedback"
    EE_POSE_FEEDBACK = "EEPoseFeedback"
    HYBRID = "Hybrid"

    def action_dim(self, n_joints: int) -> int:
        return {
            ResidualMode.NONE: 0,
            ResidualMode.JOINT_EFFORT: n_joints,
            ResidualMode.EE_WRENCH: 3,
            ResidualMode.JOINT_POS_FEEDBACK: n_joints,
            ResidualMode.EE_POSE_FEEDBACK: 3,
            ResidualMode.HYBRID: 2 * n_joints,
        }[self]

    @property
    def modifies_feedback(self) -> bool:
        return self in (ResidualMode.JOINT_POS_FEEDBACK, ResidualMode.EE_POSE_FEEDBACK, ResidualMode.HYBRID)


@dataclass
class ResidualBounds(BaseConfig):
    torque: float = 2.0
    wrench: Tuple[float, float, float] = (4.0, 4.0, 1.0)
    joint_delta: float = 0.05
    pose_delta: Tuple[float, float, float] = (0.01, 0.01, 0.05)
    scratch_torque_bound: float = 10.0

    def __post_init__(self):
        values = (self.torque, self.joint_delta, self.scratch_torque_bound, *self.wrench, *self.pose_delta)
        if min(values) <= 0:
            raise ConfigurationError("Residual bounds must be strictly positive")

    def scale(self, mode: ResidualMode, n_joints: int, scratch: bool = False) -> np.ndarray:
        """Componentwise bound of the payload for `mode`."""
        if scratch:
            if mode != ResidualMode.JOINT_EFFORT:
                raise ConfigurationError(f"Learning from scratch uses joint torques, got mode {mode.value}")
            return np.full(n_joints, self.scratch_torque_bound)
        if mode == ResidualMode.JOINT_EFFORT:
            return np.full(n_joints, self.torque)
        if mode == ResidualMode.EE_WRENCH:
            return np.asarray(self.wrench, dtype=np.float64)
        if mode == ResidualMode.JOINT_POS_FEEDBACK:
            return np.full(n_joints, self.joint_delta)
        if mode == ResidualMode.EE_POSE_FEEDBACK:
            return np.asarray(self.pose_delta, dtype=np.float64)
        if mode == ResidualMode.HYBRID:
            return np.concatenate([np.full(n_joints, self.torque), np.full(n_joints, self.joint_delta)])
        return np.zeros(0)
