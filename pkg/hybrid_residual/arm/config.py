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
from functools import cached_property
from typing import Tuple

import numpy as np

from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.utils.config import BaseConfig


@dataclass
class ArmParams(BaseConfig):
    """Planar revolute arm carrying the peg at the tip of its last link.

    Inertia is diagonal and constant in joint space (horizontal plane, no gravity, no Coriolis terms).
    """

    n_joints: int = 3
    link_lengths: Tuple[float, ...] = (0.30, 0.30, 0.10)
    joint_inertia: Tuple[float, ...] = (0.06, 0.05, 0.03)
    joint_damping: Tuple[float, ...] = (0.05, 0.05, 0.05)
    joint_limits: Tuple[Tuple[float, float], ...] = ((-2.9, 2.9), (-2.9, 2.9), (-2.9, 2.9))
    torque_limit: Tuple[float, ...] = (50.0, 50.0, 50.0)
    damping_lambda: float = 1e-4
    # TCP at (0.40, -0.10) pointing down, elbow up
    home_q: Tuple[float, ...] = (-0.8411, 1.6821, -2.4118)

    def __post_init__(self):
        if self.n_joints < 2:
            raise ConfigurationError(f"Arm needs at least 2 joints, got n_joints={self.n_joints}")
        per_joint = {
            "link_lengths": self.link_lengths,
            "joint_inertia": self.joint_inertia,
            "joint_damping": self.joint_damping,
            "joint_limits": self.joint_limits,
            "torque_limit": self.torque_limit,
            "home_q": self.home_q,
        }
        for name, values in per_joint.items():
            if len(values) != self.n_joints:
                raise ConfigurationError(f"{name} has {len(values)} entries, expected n_joints={self.n_joints}")
        for name in ("link_lengths", "joint_inertia", "joint_damping", "torque_limit"):
            if min(per_joint[name]) <= 0:
                raise ConfigurationError(f"All {name} entries must be strictly positive, got {per_joint[name]}")
        if any(lower >= upper for lower, upper in self.joint_limits):
            raise ConfigurationError(f"Joint limits must be increasing intervals, got {self.joint_limits}")
        if self.damping_lambda < 0:
            raise ConfigurationError(f"damping_lambda must be >= 0, got {self.damping_lambda}")

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.asarray(self.link_lengths, dtype=np.float64)

    @cached_property
    def inertia(self) -> np.ndarray:
        return np.asarray(self.joint_inertia, dtype=np.float64)

    @cached_property
    def damping(self) -> np.ndarray:
        return np.asarray(self.joint_damping, dtype=np.float64)

    @cached_property
    def lower_limits(self) -> np.ndarray:
        return np.asarray([lower for lower, _ in self.joint_limits], dtype=np.float64)

    @cached_property
    def upper_limits(self) -> np.ndarray:
        return np.asarray([upper for _, upper in self.joint_limits], dtype=np.float64)

    @cached_property
    def torque_limits(self) -> np.ndarray:
        return np.asarray(self.torque_limit, dtype=np.float64)

    @cached_property
    def home(self) -> np.ndarray:
        return np.asarray(self.home_q, dtype=np.float64)

    @property
    def reach(self) -> float:
        return float(self.lengths.sum())
