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
"""Superposition of a residual policy with the prior controller.

Action-side residuals are added to the controller's torque, feedback-side residuals are added to the
joint state the controller is evaluated on. The controller is any callable `f(o1, tick) -> torque`.
"""
import logging
from typing import Callable, Optional

import numpy as np

from hybrid_residual.arm.config import ArmParams
from hybrid_residual.arm.dynamics import clamp_torque
from hybrid_residual.arm.kinematics import forward_kinematics, jacobian, solve_ik
from hybrid_residual.arm.types import JointState, PlanarPose
from hybrid_residual.exceptions import IKFailure
from hybrid_residual.residual.commands import ResidualAudit, ResidualCommand
from hybrid_residual.residual.config import ResidualMode

LOGGER = logging.getLogger(__name__)

TorqueLaw = Callable[[JointState, int], np.ndarray]


def _add_torque(f_out: np.ndarray, residual: np.ndarray, params: ArmParams, audit: Optional[ResidualAudit]):
    total = np.asarray(f_out, dtype=np.float64) + residual
    clamped = clamp_torque(total, params)
    if audit is not None and not np.array_equal(clamped, total):
        audit.torque_clamps += 1
    return clamped


def apply_joint_effort(
    f_out: np.ndarray, cmd: ResidualCommand, params: ArmParams, audit: Optional[ResidualAudit] = None
) -> np.ndarray:
    cmd.expect(ResidualMode.JOINT_EFFORT)
    return _add_torque(f_out, cmd.payload, params, audit)


def apply_ee_wrench(
    f_out: np.ndarray, cmd: ResidualCommand, q, params: ArmParams, audit: Optional[ResidualAudit] = None
) -> np.ndarray:
    """Residual wrench at the TCP mapped to joint torques by J(q)^T."""
    cmd.expect(ResidualMode.EE_WRENCH)
    return _add_torque(f_out, jacobian(q, params).T @ cmd.payload, params, audit)


def apply_joint_pos_feedback(o1: JointState, cmd: ResidualCommand) -> JointState:
    cmd.expect(ResidualMode.JOINT_POS_FEEDBACK)
    return o1.with_q(o1.q + cmd.payload)


def apply_ee_pose_feedback(
    o1: JointState, cmd: ResidualCommand, params: ArmParams, audit: Optional[ResidualAudit] = None
) -> JointState:
    """Shift the perceived TCP pose by the residual and map it back to joints by IK seeded at the true q.

    An unreachable shifted pose leaves the feedback untouched.
    """
    cmd.expect(ResidualMode.EE_POSE_FEEDBACK)
    current = forward_kinematics(o1.q, params)
    dx, dy, dphi = (float(value) for value in cmd.payload)
    target = PlanarPose(current.x + dx, current.y + dy, current.phi + dphi)
    try:
        q_virtual = solve_ik(target, o1.q, params).q
    except IKFailure as e:
        if audit is not None:
            audit.ik_fallbacks += 1
        LOGGER.debug(f"Pose feedback IK fell back to the true feedback: {e}")
        return o1
    return o1.with_q(q_virtual)


def apply_hybrid(
    o1: JointState,
    f: TorqueLaw,
    cmd: ResidualCommand,
    tick: int,
    params: ArmParams,
    audit: Optional[ResidualAudit] = None,
) -> np.ndarray:
    cmd.expect(ResidualMode.HYBRID)
    modified = o1.with_q(o1.q + cmd.feedback_part)
    return _add_torque(f(modified, tick), cmd.torque_part, params, audit)


def compose_step(
    mode: ResidualMode,
    o1: JointState,
    f: TorqueLaw,
    cmd: Optional[ResidualCommand],
    rl_gated: bool,
    buffered: bool,
    tick: int,
    params: ArmParams,
    audit: Optional[ResidualAudit] = None,
    scratch: bool = False,
) -> np.ndarray:
    """Torque for one controller tick.

    The bare controller runs whenever there is no residual to apply: mode None, a closed RL gate,
    buffer steps or a missing command. With `scratch` the policy torque replaces the controller.
    """
    if mode == ResidualMode.NONE or not rl_gated or buffered or cmd is None:
        return f(o1, tick)
    cmd.expect(mode)
    if scratch:
        return _add_torque(np.zeros(params.n_joints), cmd.payload, params, audit)
    if mode == ResidualMode.JOINT_EFFORT:
        return apply_joint_effort(f(o1, tick), cmd, params, audit)
    if mode == ResidualMode.EE_WRENCH:
        return apply_ee_wrench(f(o1, tick), cmd, o1.q, params, audit)
    if mode == ResidualMode.JOINT_POS_FEEDBACK:
        return f(apply_joint_pos_feedback(o1, cmd), tick)
    if mode == ResidualMode.EE_POSE_FEEDBACK:
        return f(apply_ee_pose_feedback(o1, cmd, params, audit), tick)
    return apply_hybrid(o1, f, cmd, tick, params, audit)


def feedback_offset(
    mode: ResidualMode, o1: JointState, cmd: Optional[ResidualCommand], params: ArmParams
) -> np.ndarray:
    """Joint-space offset a feedback residual adds to o1 this tick; zero for action-side modes."""
    if cmd is None or not mode.modifies_feedback:
        return np.zeros(o1.n_joints)
    cmd.expect(mode)
    if mode == ResidualMode.JOINT_POS_FEEDBACK:
        return cmd.payload.copy()
    if mode == ResidualMode.HYBRID:
        return cmd.feedback_part.copy()
    return apply_ee_pose_feedback(o1, cmd, params).q - o1.q


def perceived_state(
    mode: ResidualMode,
    o1: JointState,
    cmd: Optional[ResidualCommand],
    rl_gated: bool,
    buffered: bool,
    params: ArmParams,
) -> JointState:
    """The joint state the controller sees."""
    if mode == ResidualMode.NONE or not rl_gated or buffered or cmd is None or not mode.modifies_feedback:
        return o1
    if mode == ResidualMode.EE_POSE_FEEDBACK:
        return apply_ee_pose_feedback(o1, cmd, params)
    return o1.with_q(o1.q + feedback_offset(mode, o1, cmd, params))
