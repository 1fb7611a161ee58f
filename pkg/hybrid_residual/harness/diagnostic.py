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
"""Buffer-steps experiment without learning.

A scripted oracle residual pushes the peg towards a target laterally offset from the pre-insert pose
while the arm moves there. The last `b` ticks of the move run the bare controller. Action-side
residuals are then fought back by the controller, feedback-side ones are not.
"""
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from hybrid_residual.arm.kinematics import forward_kinematics, inverse_kinematics
from hybrid_residual.arm.types import PlanarPose
from hybrid_residual.controller.config import MachinePhase
from hybrid_residual.curriculum.curriculum import CurriculumState
from hybrid_residual.exceptions import ResidualModeError
from hybrid_residual.harness import records
from hybrid_residual.harness.config import DiagnosticConfig, ExperimentConfig
from hybrid_residual.residual.commands import ResidualCommand
from hybrid_residual.residual.config import ResidualMode
from hybrid_residual.world.env import PegInHoleEnv

LOGGER = logging.getLogger(__name__)

_NOMINAL = CurriculumState(pos_std=0.0, ori_std=0.0)


@dataclass(frozen=True)
class DiagnosticRow:
    mode: ResidualMode
    buffer_steps: int
    strict_condition: bool
    offset: float
    displacement: float
    error: bool

    def as_record(self) -> Dict:
        return {
            "mode": self.mode.value,
            "buffer_steps": self.buffer_steps,
            "strict_condition": self.strict_condition,
            "offset": self.offset,
            "displacement": self.displacement,
            "error": self.error,
        }


def oracle_command(
    mode: ResidualMode, q_goal: np.ndarray, q_target: np.ndarray, kp: np.ndarray, diagnostic: DiagnosticConfig
) -> ResidualCommand:
    """Constant residual whose steady state moves the arm from q_goal to q_target."""
    if mode == ResidualMode.JOINT_EFFORT:
        payload, bound = kp * (q_target - q_goal), diagnostic.torque_bound
    elif mode == ResidualMode.JOINT_POS_FEEDBACK:
        payload, bound = q_goal - q_target, diagnostic.joint_delta_bound
    else:
        raise ResidualModeError(f"No oracle residual for mode {mode.value}")
    clipped = np.clip(payload, -bound, bound)
    if not np.array_equal(clipped, payload):
        LOGGER.warning(f"{mode.value} oracle residual clipped to +/-{bound}")
    return ResidualCommand(mode=mode, payload=clipped)


def _run_pre_insert(env: PegInHoleEnv, cmd: Optional[ResidualCommand]) -> PlanarPose:
    env.reset(_NOMINAL)
    while not env.done and env.machine.phase == MachinePhase.MOVE_TO_PRE_INSERT:
        env.step(cmd)
    return env.tcp


def buffer_steps_diagnostic(
    config: ExperimentConfig,
    b_values: Optional[Sequence[int]] = None,
    modes: Optional[Sequence[ResidualMode]] = None,
    oracle_offset: Optional[float] = None,
    output_path: Optional[Path] = None,
) -> List[DiagnosticRow]:
    diagnostic = config.diagnostic
    b_values = list(b_values if b_values is not None else diagnostic.b_values)
    modes = list(modes if modes is not None else diagnostic.modes)
    offset = float(oracle_offset if oracle_offset is not None else diagnostic.offset)
    arm = config.arm
    kp = config.controller.gains.kp_array
    _, surface_direction = config.world.geometry.surface_line

    rows = []
    for mode in modes:
        for b in b_values:
            for strict in (False, True):
                controller = replace(
                    config.controller,
                    buffer_steps=b,
                    strict_condition=strict,
                    rl_phases=(MachinePhase.MOVE_TO_PRE_INSERT,),
                )
                reference_env = PegInHoleEnv(arm, config.world, controller, ResidualMode.NONE)
                reference = _run_pre_insert(reference_env, None)

                env = PegInHoleEnv(arm, config.world, controller, mode)
                env.reset(_NOMINAL)
                q_goal = env.machine.approach_goal
                goal = forward_kinematics(q_goal, arm)
                lateral = np.array(surface_direction)
                shifted = goal.translated(offset * lateral[0], offset * lateral[1])
                q_target = inverse_kinematics(shifted, q_goal, arm, tol=1e-10)
                cmd = oracle_command(mode, q_goal, q_target, kp, diagnostic)

                final = _run_pre_insert(env, cmd)
                displacement = float((final.position - reference.position) @ lateral)
                row = DiagnosticRow(
                    mode=mode,
                    buffer_steps=b,
                    strict_condition=strict,
                    offset=offset,
                    displacement=displacement,
                    error=env.machine.phase == MachinePhase.RECOVERY,
                )
                LOGGER.debug(f"{row}")
                rows.append(row)

    if output_path is not None:
        records.write_records(output_path, "diagnostic", [row.as_record() for row in rows])
    return rows


def error_rate(rows: Sequence[DiagnosticRow], mode: ResidualMode, buffer_steps: int) -> float:
    selected = [
        row.error
        for row in rows
        if row.mode == mode and row.buffer_steps == buffer_steps and row.strict_condition
    ]
    return sum(selected) / len(selected) if selected else 0.0


def displacement(rows: Sequence[DiagnosticRow], mode: ResidualMode, buffer_steps: int, strict: bool = False) -> float:
    for row in rows:
        if row.mode == mode and row.buffer_steps == buffer_steps and row.strict_condition == strict:
            return row.displacement
    raise KeyError(f"No diagnostic row for {mode.value}, b={buffer_steps}, strict={strict}")
