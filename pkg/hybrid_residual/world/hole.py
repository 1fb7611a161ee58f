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

from hybrid_residual.arm.types import PlanarPose
from hybrid_residual.curriculum.curriculum import CurriculumState
from hybrid_residual.world.config import HoleGeometry


@dataclass(frozen=True)
class HoleSample:
    """Where the hole really is (`true_pose`) against where the controller believes it is."""

    true_pose: PlanarPose
    nominal_pose: PlanarPose
    depth: float

    @property
    def goal(self) -> PlanarPose:
        """Centre of the hole floor, with the hole's own insertion axis as orientation."""
        phi = self.true_pose.phi
        return PlanarPose(
            self.true_pose.x + self.depth * math.cos(phi),
            self.true_pose.y + self.depth * math.sin(phi),
            phi,
        )

    @property
    def offset(self) -> np.ndarray:
        return self.true_pose.as_array() - self.nominal_pose.as_array()


def sample_hole(curriculum: CurriculumState, geometry: HoleGeometry, rng: np.random.Generator) -> HoleSample:
    """Gaussian re-posing of the hole.

    The rotation pivots on the mouth centre, so orientation noise never moves the mouth. All three
    draws are taken even at zero std so the stream advances identically at every difficulty.
    """
    nominal = geometry.nominal_hole_pose
    dx, dy = rng.normal(0.0, 1.0, size=2) * curriculum.pos_std
    dphi = rng.normal(0.0, 1.0) * curriculum.ori_std
    true_pose = nominal.translated(float(dx), float(dy), float(dphi))
    return HoleSample(true_pose=true_pose, nominal_pose=nominal, depth=geometry.hole_depth)
