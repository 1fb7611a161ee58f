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

import numpy as np

from hybrid_residual.exceptions import ResidualModeError
from hybrid_residual.residual.config import ResidualBounds, ResidualMode


@dataclass(frozen=True, eq=False)
class ResidualCommand:
    """Bounded policy output tagged with the formulation it belongs to.

    Payload layout per mode: joint torques (JointEffort), TCP wrench (EEWrench), joint-position deltas
    (JointPosFeedback), TCP pose delta (EEPoseFeedback), torques followed by joint deltas (Hybrid).
    """

    mode: ResidualMode
    payload: np.ndarray

    @classmethod
    def from_raw(
        cls, mode: ResidualMode, raw, bounds: ResidualBounds, n_joints: int, scratch: bool = False
    ) -> "ResidualCommand":
        scale = bounds.scale(mode, n_joints, scratch=scratch)
        raw = np.asarray(raw, dtype=np.float64)
        if raw.shape != scale.shape:
            raise ResidualModeError(f"{mode.value} expects {scale.shape[0]} action values, got shape {raw.shape}")
        return cls(mode=mode, payload=np.tanh(raw) * scale)

    @classmethod
    def zeros(cls, mode: ResidualMode, n_joints: int) -> "ResidualCommand":
        return cls(mode=mode, payload=np.zeros(mode.action_dim(n_joints)))

    def expect(self, mode: ResidualMode) -> "ResidualCommand":
        if self.mode != mode:
            raise ResidualModeError(f"Expected a {mode.value} residual, got {self.mode.value}")
        return self

    @property
    def torque_part(self) -> np.ndarray:
        if self.mode == ResidualMode.HYBRID:
            return self.payload[: self.payload.shape[0] // 2]
        return self.expect(ResidualMode.JOINT_EFFORT).payload

    @property
    def feedback_part(self) -> np.ndarray:
        if self.mode == ResidualMode.HYBRID:
            return self.payload[self.payload.shape[0] // 2 :]
        return self.expect(ResidualMode.JOINT_POS_FEEDBACK).payload


@dataclass
class ResidualAudit:
    """Per-environment counters of silent fallbacks."""

    ik_fallbacks: int = 0
    torque_clamps: int = 0

    def reset(self):
        self.ik_fallbacks = 0
        self.torque_clamps = 0
