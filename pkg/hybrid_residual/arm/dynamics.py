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
import numpy as np

from hybrid_residual.arm.config import ArmParams
from hybrid_residual.arm.kinematics import jacobian
from hybrid_residual.arm.types import JointState, PlanarWrench
from hybrid_residual.exceptions import PlantError


def clamp_torque(tau, params: ArmParams) -> np.ndarray:
    return np.clip(np.asarray(tau, dtype=np.float64), -params.torque_limits, params.torque_limits)


def step_dynamics(
    state: JointState,
    tau_cmd,
    contact: PlanarWrench,
    dt: float,
    params: ArmParams,
) -> JointState:
    """Semi-implicit Euler step of the decoupled joint-space plant.

    The contact wrench acts at the TCP and enters through J^T; it is also what the joint torque
    sensors report as tau_ext.
    """
    if dt <= 0:
        raise PlantError(f"dt must be positive, got {dt}")
    tau_cmd = np.asarray(tau_cmd, dtype=np.float64)
    wrench = contact.as_array()
    if not (
        np.all(np.isfinite(state.q))
        and np.all(np.isfinite(state.v))
        and np.all(np.isfinite(tau_cmd))
        and np.all(np.isfinite(wrench))
    ):
        raise PlantError("Non-finite plant state or input")

    tau = clamp_torque(tau_cmd, params)
    tau_contact = jacobian(state.q, params).T @ wrench

    v_next = state.v + dt * (tau + tau_contact - params.damping * state.v) / params.inertia
    q_next = state.q + dt * v_next

    clamped = (q_next < params.lower_limits) | (q_next > params.upper_limits)
    if np.any(clamped):
        q_next = np.clip(q_next, params.lower_limits, params.upper_limits)
        v_next = np.where(clamped, 0.0, v_next)

    return JointState(q=q_next, v=v_next, tau_ext=tau_contact)
