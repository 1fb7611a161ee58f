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
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from hybrid_residual import core
from hybrid_residual.arm.config import ArmParams
from hybrid_residual.arm.dynamics import clamp_torque
from hybrid_residual.arm.kinematics import jacobian
from hybrid_residual.arm.types import JointState, PlanarWrench
from hybrid_residual.controller.config import ImpedanceGains
from hybrid_residual.exceptions import ConfigurationError


@dataclass(frozen=True)
class Oscillation:
    """Sinusoidal force overlay along a unit world-frame direction."""

    amplitude: float
    frequency: float
    axis: Tuple[float, float]

    def wrench(self, tick: int, dt: float = core.CONTROL_DT) -> PlanarWrench:
        magnitude = self.amplitude * math.sin(2.0 * math.pi * self.frequency * tick * dt)
        return PlanarWrench(magnitude * self.axis[0], magnitude * self.axis[1], 0.0)


@dataclass(frozen=True, eq=False)
class ControllerSetpoint:
    q_set: np.ndarray
    ff_wrench: PlanarWrench = PlanarWrench()
    oscillation: Optional[Oscillation] = None

    def shifted(self, offset: np.ndarray) -> "ControllerSetpoint":
        return replace(self, q_set=self.q_set + offset)


def impedance_torque(
    setpoint: ControllerSetpoint,
    state: JointState,
    gains: ImpedanceGains,
    tick: int,
    params: ArmParams,
    dt: float = core.CONTROL_DT,
) -> np.ndarray:
    """Joint-space PD around q_set plus the task-space feed-forward mapped through J^T."""
    if state.n_joints != params.n_joints or len(gains.kp) != params.n_joints:
        raise ConfigurationError(
            f"Controller dimensions do not match the arm: state {state.n_joints}, gains {len(gains.kp)}, "
            f"arm {params.n_joints}"
        )
    tau = gains.kp_array * (setpoint.q_set - state.q) - gains.kd_array * state.v
    wrench = setpoint.ff_wrench
    if setpoint.oscillation is not None:
        wrench = wrench + setpoint.oscillation.wrench(tick, dt)
    if not wrench.is_zero():
        tau = tau + jacobian(state.q, params).T @ wrench.as_array()
    return clamp_torque(tau, params)
