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
"""Five-state insertion skill with a recovery state.

The machine is a pure function of an explicit `MachineState` value. It runs at the policy rate: every
call emits the set-point the impedance law tracks until the next call. Positions used in the success
conditions are expressed in the nominal hole frame, with "depth" measured along the nominal insertion
axis from the mouth centre.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np

from hybrid_residual import core
from hybrid_residual.arm.config import ArmParams
from hybrid_residual.arm.kinematics import forward_kinematics, inverse_kinematics
from hybrid_residual.arm.types import JointState, PlanarPose, PlanarWrench
from hybrid_residual.controller.config import DEFAULT_RL_PHASES, ControllerConfig, MachinePhase
from hybrid_residual.controller.impedance import ControllerSetpoint, Oscillation
from hybrid_residual.exceptions import IKFailure, UsageError
from hybrid_residual.world.contact import ContactFlags

LOGGER = logging.getLogger(__name__)

TRANSITIONS: Dict[MachinePhase, FrozenSet[MachinePhase]] = {
    MachinePhase.MOVE_TO_PRE_INSERT: frozenset({MachinePhase.FIND_CONTACT, MachinePhase.RECOVERY}),
    MachinePhase.FIND_CONTACT: frozenset({MachinePhase.SEARCH_HOLE, MachinePhase.RECOVERY}),
    MachinePhase.SEARCH_HOLE: frozenset({MachinePhase.HYBRID_FORCE_ALIGN, MachinePhase.RECOVERY}),
    MachinePhase.HYBRID_FORCE_ALIGN: frozenset({MachinePhase.INSERTION, MachinePhase.RECOVERY}),
    MachinePhase.INSERTION: frozenset({MachinePhase.RECOVERY}),
    MachinePhase.RECOVERY: frozenset(),
}


@dataclass(frozen=True, eq=False)
class MachineState:
    phase: MachinePhase
    entry_tick: int
    setpoint: ControllerSetpoint
    setpoint_offset: np.ndarray
    strict_condition: bool = False
    buffer_steps: int = 0
    exit_tick: Optional[int] = None
    anchor: Optional[PlanarPose] = None
    contact_depth: Optional[float] = None
    approach_start: Optional[np.ndarray] = None
    approach_goal: Optional[np.ndarray] = None
    folded: bool = False
    error: bool = False
    error_reason: str = ""
    ik_failures: int = 0

    @property
    def effective_setpoint(self) -> ControllerSetpoint:
        """Emitted set-point plus any offset folded in when the buffer steps began."""
        if not self.folded:
            return self.setpoint
        return self.setpoint.shifted(self.setpoint_offset)

    def fold(self, feedback_offset: np.ndarray) -> "MachineState":
        """Make the controller keep tracking the virtual target it saw through a feedback offset."""
        return replace(self, setpoint_offset=self.setpoint_offset - feedback_offset, folded=True)


def rl_gate(machine: MachineState, rl_phases: Tuple[MachinePhase, ...] = DEFAULT_RL_PHASES) -> bool:
    return machine.phase in rl_phases


def buffer_phase(machine: MachineState, tick: int) -> bool:
    """True during the last `buffer_steps` ticks of MoveToPreInsert."""
    if machine.buffer_steps <= 0 or machine.phase != MachinePhase.MOVE_TO_PRE_INSERT or machine.exit_tick is None:
        return False
    return machine.exit_tick - machine.buffer_steps <= tick < machine.exit_tick


def _smoothstep(s: float) -> float:
    s = min(max(s, 0.0), 1.0)
    return s * s * (3.0 - 2.0 * s)


def _triangle(t: float, period: float) -> float:
    """Unit triangle wave starting at 0 and rising: 0, 1, 0, -1, 0 over one period."""
    phase = (t / period) % 1.0
    if phase < 0.25:
        return 4.0 * phase
    if phase < 0.75:
        return 2.0 - 4.0 * phase
    return 4.0 * phase - 4.0


class _NominalFrame:
    def __init__(self, hole: PlanarPose):
        self.hole = hole
        self.axis = np.array([math.cos(hole.phi), math.sin(hole.phi)])
        self.lateral = np.array([-math.sin(hole.phi), math.cos(hole.phi)])

    def depth(self, pose: PlanarPose) -> float:
        return float((pose.position - self.hole.position) @ self.axis)

    def lateral_offset(self, pose: PlanarPose) -> float:
        return float((pose.position - self.hole.position) @ self.lateral)

    def pose(self, lateral: float, depth: float, phi: float) -> PlanarPose:
        position = self.hole.position + lateral * self.lateral + depth * self.axis
        return PlanarPose(float(position[0]), float(position[1]), phi)

    def push(self, force: float) -> PlanarWrench:
        return PlanarWrench(force * float(self.axis[0]), force * float(self.axis[1]), 0.0)


class InsertionStateMachine:
    def __init__(self, config: ControllerConfig, params: ArmParams, control_dt: float = core.CONTROL_DT):
        self._config = config
        self._params = params
        self._dt = control_dt

    @property
    def config(self) -> ControllerConfig:
        return self._config

    def ticks(self, seconds: float) -> int:
        return int(round(seconds / self._dt))

    def pre_insert_pose(self, nominal_hole: PlanarPose) -> PlanarPose:
        frame = _NominalFrame(nominal_hole)
        return frame.pose(0.0, -self._config.pre_insert_height, nominal_hole.phi + self._config.pre_insert_tilt)

    def start(
        self, state: JointState, nominal_hole: PlanarPose, tick: int = 0
    ) -> Tuple[ControllerSetpoint, MachineState]:
        """Fresh episode: MoveToPreInsert from the current configuration."""
        start_q = np.array(state.q, dtype=np.float64)
        ik_failures = 0
        try:
            goal_q = inverse_kinematics(self.pre_insert_pose(nominal_hole), start_q, self._params)
        except IKFailure as e:
            LOGGER.debug(f"Pre-insert pose unreachable ({e}); holding the start configuration")
            goal_q = start_q
            ik_failures = 1
        setpoint = ControllerSetpoint(q_set=start_q)
        machine = MachineState(
            phase=MachinePhase.MOVE_TO_PRE_INSERT,
            entry_tick=tick,
            setpoint=setpoint,
            setpoint_offset=np.zeros_like(start_q),
            strict_condition=self._config.strict_condition,
            buffer_steps=self._config.buffer_steps,
            exit_tick=tick + self.ticks(self._config.pre_insert_duration),
            approach_start=start_q,
            approach_goal=goal_q,
            ik_failures=ik_failures,
        )
        return self._emit(machine, state, tick, nominal_hole)

    def step(
        self,
        machine: MachineState,
        state: JointState,
        contact_flags: ContactFlags,
        tcp: PlanarPose,
        nominal_hole: PlanarPose,
        tick: int,
    ) -> Tuple[ControllerSetpoint, MachineState]:
        """Evaluate the phase's success and error conditions, then emit the next set-point.

        `state` and `tcp` are what the controller perceives, which differs from the true arm state
        whenever a feedback residual is active.
        """
        frame = _NominalFrame(nominal_hole)
        elapsed = tick - machine.entry_tick
        phase = machine.phase

        if phase == MachinePhase.MOVE_TO_PRE_INSERT:
            if tick >= machine.exit_tick:
                if self._strict_violation(machine, tcp):
                    return self._recover(machine, state, tick, nominal_hole, "pre-insert pose missed")
                return self._enter(machine, MachinePhase.FIND_CONTACT, state, tcp, tick, nominal_hole)
        elif phase == MachinePhase.FIND_CONTACT:
            if contact_flags.any():
                depth = frame.depth(tcp)
                # entering the mouth directly means the hole is already found
                contact_depth = depth if contact_flags.surface_contact else depth - self._config.search_drop
                return self._enter(
                    machine,
                    MachinePhase.SEARCH_HOLE,
                    state,
                    tcp,
                    tick,
                    nominal_hole,
                    contact_depth=contact_depth,
                )
        elif phase == MachinePhase.SEARCH_HOLE:
            depth = frame.depth(tcp)
            dropped = depth >= machine.contact_depth + self._config.search_drop
            inside = contact_flags.inside_hole() and depth > machine.contact_depth
            if dropped or inside:
                return self._enter(machine, MachinePhase.HYBRID_FORCE_ALIGN, state, tcp, tick, nominal_hole)
        elif phase == MachinePhase.HYBRID_FORCE_ALIGN:
            if tick >= machine.exit_tick:
                if self._strict_violation(machine, tcp):
                    return self._recover(machine, state, tick, nominal_hole, "alignment pose missed")
                return self._enter(machine, MachinePhase.INSERTION, state, tcp, tick, nominal_hole)
        elif phase == MachinePhase.RECOVERY:
            return machine.setpoint, machine

        if elapsed >= self.ticks(self._config.budgets.for_phase(phase)):
            return self._recover(machine, state, tick, nominal_hole, f"{phase.value} budget exceeded")
        return self._emit(machine, state, tick, nominal_hole)

    def _strict_violation(self, machine: MachineState, tcp: PlanarPose) -> bool:
        if not machine.strict_condition:
            return False
        goal = forward_kinematics(machine.effective_setpoint.q_set, self._params)
        deviation = tcp.distance_to(goal)
        LOGGER.debug(f"Strict check at {machine.phase.value} exit: deviation {deviation * 1e3:.2f} mm")
        return deviation > self._config.strict_threshold

    def _enter(
        self,
        machine: MachineState,
        phase: MachinePhase,
        state: JointState,
        tcp: PlanarPose,
        tick: int,
        nominal_hole: PlanarPose,
        contact_depth: Optional[float] = None,
    ) -> Tuple[ControllerSetpoint, MachineState]:
        if phase not in TRANSITIONS[machine.phase]:
            raise UsageError(f"Illegal transition {machine.phase.value} -> {phase.value}")
        if self._config.trace:
            LOGGER.info(f"tick {tick}: {machine.phase.value} -> {phase.value}")
        exit_tick = None
        if phase == MachinePhase.HYBRID_FORCE_ALIGN:
            exit_tick = tick + self.ticks(self._config.align_duration)
        entered = replace(
            machine,
            phase=phase,
            entry_tick=tick,
            exit_tick=exit_tick,
            anchor=tcp,
            contact_depth=contact_depth if contact_depth is not None else machine.contact_depth,
            setpoint_offset=np.zeros_like(machine.setpoint_offset),
            folded=False,
        )
        return self._emit(entered, state, tick, nominal_hole)

    def _recover(
        self, machine: MachineState, state: JointState, tick: int, nominal_hole: PlanarPose, reason: str
    ) -> Tuple[ControllerSetpoint, MachineState]:
        LOGGER.debug(f"tick {tick}: {machine.phase.value} -> Recovery ({reason})")
        if self._config.trace:
            LOGGER.info(f"tick {tick}: {machine.phase.value} -> Recovery ({reason})")
        setpoint = ControllerSetpoint(q_set=self._params.home.copy())
        recovered = replace(
            machine,
            phase=MachinePhase.RECOVERY,
            entry_tick=tick,
            exit_tick=None,
            setpoint=setpoint,
            setpoint_offset=np.zeros_like(machine.setpoint_offset),
            folded=False,
            error=True,
            error_reason=reason,
        )
        return setpoint, recovered

    def _solve(self, machine: MachineState, target: PlanarPose, state: JointState) -> Tuple[np.ndarray, int]:
        try:
            return inverse_kinematics(target, state.q, self._params), 0
        except IKFailure as e:
            LOGGER.debug(f"Set-point IK failed ({e}); holding the previous set-point")
            return machine.setpoint.q_set, 1

    def _emit(
        self, machine: MachineState, state: JointState, tick: int, nominal_hole: PlanarPose
    ) -> Tuple[ControllerSetpoint, MachineState]:
        config = self._config
        frame = _NominalFrame(nominal_hole)
        elapsed_s = (tick - machine.entry_tick) * self._dt
        phase = machine.phase
        push = frame.push(config.contact_force)

        if phase == MachinePhase.MOVE_TO_PRE_INSERT:
            s = _smoothstep(elapsed_s / config.approach_duration)
            q_set = machine.approach_start + s * (machine.approach_goal - machine.approach_start)
            setpoint = ControllerSetpoint(q_set=q_set)
            return setpoint, replace(machine, setpoint=setpoint)

        if phase == MachinePhase.FIND_CONTACT:
            pre_insert = self.pre_insert_pose(nominal_hole)
            travel = config.find_contact_speed * elapsed_s
            target = frame.pose(frame.lateral_offset(pre_insert), frame.depth(pre_insert) + travel, pre_insert.phi)
            q_set, failed = self._solve(machine, target, state)
            setpoint = ControllerSetpoint(q_set=q_set)
        elif phase == MachinePhase.SEARCH_HOLE:
            anchor = machine.anchor
            sweep = config.search_amplitude * _triangle(elapsed_s, config.search_period)
            target = frame.pose(frame.lateral_offset(anchor) + sweep, frame.depth(anchor), anchor.phi)
            q_set, failed = self._solve(machine, target, state)
            setpoint = ControllerSetpoint(q_set=q_set, ff_wrench=push)
        elif phase == MachinePhase.HYBRID_FORCE_ALIGN:
            target = PlanarPose(machine.anchor.x, machine.anchor.y, nominal_hole.phi)
            q_set, failed = self._solve(machine, target, state)
            setpoint = ControllerSetpoint(q_set=q_set, ff_wrench=push)
        elif phase == MachinePhase.INSERTION:
            anchor = machine.anchor
            target = frame.pose(
                frame.lateral_offset(anchor), frame.depth(anchor) + config.insertion_travel, nominal_hole.phi
            )
            q_set, failed = self._solve(machine, target, state)
            oscillation = Oscillation(
                amplitude=config.oscillation_amplitude,
                frequency=config.oscillation_frequency,
                axis=(float(frame.lateral[0]), float(frame.lateral[1])),
            )
            setpoint = ControllerSetpoint(q_set=q_set, ff_wrench=push, oscillation=oscillation)
        else:
            return machine.setpoint, machine

        return setpoint, replace(machine, setpoint=setpoint, ik_failures=machine.ik_failures + failed)


def machine_step(
    machine: MachineState,
    state: JointState,
    contact_flags: ContactFlags,
    tcp: PlanarPose,
    nominal_hole: PlanarPose,
    *,
    tick: int,
    config: ControllerConfig,
    params: ArmParams,
    control_dt: float = core.CONTROL_DT,
) -> Tuple[ControllerSetpoint, MachineState]:
    return InsertionStateMachine(config, params, control_dt).step(
        machine, state, contact_flags, tcp, nominal_hole, tick
    )
