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
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Wrap to (-pi, pi]."""
    wrapped = math.remainder(angle, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


@dataclass(frozen=True)
class PlanarPose:
    x: float
    y: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "phi", wrap_angle(float(self.phi)))

    @classmethod
    def from_array(cls, values) -> "PlanarPose":
        return cls(float(values[0]), float(values[1]), float(values[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.phi], dtype=np.float64)

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=np.float64)

    def translated(self, dx: float, dy: float, dphi: float = 0.0) -> "PlanarPose":
        return PlanarPose(self.x + dx, self.y + dy, self.phi + dphi)

    def distance_to(self, other: "PlanarPose") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class PlanarWrench:
    fx: float = 0.0
    fy: float = 0.0
    tz: float = 0.0

    @classmethod
    def zero(cls) -> "PlanarWrench":
        return cls()

    @classmethod
    def from_array(cls, values) -> "PlanarWrench":
        return cls(float(values[0]), float(values[1]), float(values[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.fx, self.fy, self.tz], dtype=np.float64)

    def __add__(self, other: "PlanarWrench") -> "PlanarWrench":
        return PlanarWrench(self.fx + other.fx, self.fy + other.fy, self.tz + other.tz)

    def __neg__(self) -> "PlanarWrench":
        return PlanarWrench(-self.fx, -self.fy, -self.tz)

    def is_zero(self) -> bool:
        return self.fx == 0.0 and self.fy == 0.0 and self.tz == 0.0


@dataclass(frozen=True, eq=False)
class JointState:
    """Controller feedback: joint positions, velocities and measured external torques."""

    q: np.ndarray
    v: np.ndarray
    tau_ext: np.ndarray

    @classmethod
    def at_rest(cls, q) -> "JointState":
        q = np.array(q, dtype=np.float64)
        return cls(q=q, v=np.zeros_like(q), tau_ext=np.zeros_like(q))

    @property
    def n_joints(self) -> int:
        return int(self.q.shape[0])

    def with_q(self, q: np.ndarray) -> "JointState":
        return JointState(q=q, v=self.v, tau_ext=self.tau_ext)


def joint_state_zeros(params) -> JointState:
    """All-zero state of an arm described by `params` (anything with `n_joints`)."""
    return JointState.at_rest(np.zeros(params.n_joints))
