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
from dataclasses import dataclass, field
from typing import Tuple

from hybrid_residual import core
from hybrid_residual.arm.types import PlanarPose
from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.utils.config import BaseConfig


@dataclass
class HoleGeometry(BaseConfig):
    """Peg and hole dimensions (m) and where the controller believes the hole is.

    `nominal_pose` is the mouth centre (x, y) plus the insertion axis angle; the surface line runs
    through the mouth centre perpendicular to that axis.
    """

    hole_width: float = 0.0258
    peg_width: float = 0.025
    peg_length: float = 0.070
    hole_depth: float = 0.030
    nominal_pose: Tuple[float, float, float] = (0.45, -0.20, -math.pi / 2)

    def __post_init__(self):
        if self.hole_width <= self.peg_width:
            raise ConfigurationError(
                f"hole_width ({self.hole_width}) must exceed peg_width ({self.peg_width}) to leave clearance"
            )
        if min(self.peg_width, self.peg_length, self.hole_depth) <= 0:
            raise ConfigurationError("Peg and hole dimensions must be strictly positive")

    @property
    def clearance(self) -> float:
        return self.hole_width - self.peg_width

    @property
    def nominal_hole_pose(self) -> PlanarPose:
        return PlanarPose(*self.nominal_pose)

    @property
    def surface_line(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """(point, unit direction) of the nominal surface."""
        x, y, phi = self.nominal_pose
        return (x, y), (-math.sin(phi), math.cos(phi))


@dataclass
class ContactParams(BaseConfig):
    # stiffness and damping of a flat tip face on the surface or the floor; each contact point carries half
    stiffness: float = 1e4
    damping: float = 50.0
    # hole side walls; a peg tilted past the jam angle wedges between them
    wall_stiffness: float = 2e5
    wall_damping: float = 200.0
    friction: float = 0.3
    slip_velocity: float = 1e-3

    def __post_init__(self):
        if min(self.stiffness, self.wall_stiffness, self.slip_velocity) <= 0:
            raise ConfigurationError("Contact stiffness and slip velocity must be positive")
        if min(self.damping, self.wall_damping, self.friction) < 0:
            raise ConfigurationError("Contact damping and friction must be non-negative")


@dataclass
class WorldConfig(BaseConfig):
    geometry: HoleGeometry = field(default_factory=HoleGeometry)
    contact: ContactParams = field(default_factory=ContactParams)
    control_dt: float = core.CONTROL_DT
    policy_period_ticks: int = core.POLICY_PERIOD_TICKS
    episode_cap_ticks: int = core.EPISODE_CAP_TICKS
    success_epsilon: float = 0.005
    observation_noise_std: float = 0.0

    def __post_init__(self):
        if self.control_dt <= 0 or self.policy_period_ticks < 1 or self.episode_cap_ticks < 1:
            raise ConfigurationError("Timing constants must be positive")
        if self.success_epsilon <= 0:
            raise ConfigurationError(f"success_epsilon must be positive, got {self.success_epsilon}")
        if self.observation_noise_std < 0:
            raise ConfigurationError("observation_noise_std must be >= 0")
