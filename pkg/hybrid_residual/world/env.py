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
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from hybrid_residual.arm.config import ArmParams
from hybrid_residual.arm.dynamics import step_dynamics
from hybrid_residual.arm.kinematics import forward_kinematics, jacobian
from hybrid_residual.arm.types import JointState, PlanarPose, PlanarWrench, wrap_angle
from hybrid_residual.controller.config import ControllerConfig
from hybrid_residual.controller.impedance import impedance_torque
from hybrid_residual.controller.machine import InsertionStateMachine, MachineState, buffer_phase, rl_gate
from hybrid_residual.curriculum.curriculum import CurriculumState
from hybrid_residual.exceptions import PlantError, UsageError
from hybrid_residual.residual.commands import ResidualAudit, ResidualCommand
from hybrid_residual.residual.config import ResidualMode
from hybrid_residual.residual.stack import compose_step, feedback_offset, perceived_state
from hybrid_residual.utils.seeding import StreamPurpose, rng_stream
from hybrid_residual.world.config import WorldConfig
from hybrid_residual.world.contact import NO_CONTACT, ContactFlags, contact_wrench
from hybrid_residual.world.hole import HoleSample, sample_hole

LOGGER = logging.getLogger(__name__)

OBSERVATION_DIM = 6


@dataclass(frozen=True)
class Observation:
    rel_pos: Tuple[float, float]
    rel_phi: float
    wrench: PlanarWrench

    def to_array(self) -> np.ndarray:
        return np.array(
            [self.rel_pos[0], self.rel_pos[1], self.rel_phi, self.wrench.fx, self.wrench.fy, self.wrench.tz],
            dtype=np.float64,
        )

    @classmethod
    def from_array(cls, values) -> "Observation":
        return cls((float(values[0]), float(values[1])), float(values[2]), PlanarWrench.from_array(values[3:6]))


@dataclass(frozen=True)
class Transition:
    observation: Observation
    reward: int
    done: bool
    info: Dict[str, Any] = field(default_factory=dict)


def reward(tcp: PlanarPose, goal: PlanarPose, epsilon: float) -> int:
    """Sparse success signal: 1 strictly inside the epsilon ball around the goal position."""
    if epsilon <= 0:
        raise UsageError(f"epsilon must be positive, got {epsilon}")
    return int(tcp.distance_to(goal) < epsilon)


class PegInHoleEnv:
    """One peg-in-hole episode at a time, stepped one policy period per call.

    Every period runs `policy_period_ticks` controller ticks. The residual command is held for the
    whole period; the state machine runs at the period boundaries on what the controller perceives.
    """

    def __init__(
        self,
        arm: ArmParams,
        world: WorldConfig,
        controller: ControllerConfig,
        mode: ResidualMode = ResidualMode.NONE,
        *,
        seed: int = 0,
        env_id: int = 0,
        scratch: bool = False,
        record_torques: bool = False,
    ):
        self._arm = arm
        self._world = world
        self._controller = controller
        self._mode = mode
        self._scratch = scratch
        self._record_torques = record_torques
        self._machine_logic = InsertionStateMachine(controller, arm, world.control_dt)
        self._hole_rng = rng_stream(seed, env_id, StreamPurpose.HOLE)
        self._noise_rng = rng_stream(seed, env_id, StreamPurpose.NOISE)
        self.audit = ResidualAudit()

        self._state: Optional[JointState] = None
        self._machine: Optional[MachineState] = None
        self._hole: Optional[HoleSample] = None
        self._tick = 0
        self._done = True
        self._first_contact: Optional[np.ndarray] = None
        self._wrench = PlanarWrench.zero()
        self._flags = NO_CONTACT
        self._torque_trace: List[np.ndarray] = []
        self._phase_trace: List[Tuple[int, str]] = []

    @property
    def mode(self) -> ResidualMode:
        return self._mode

    @property
    def action_dim(self) -> int:
        return self._mode.action_dim(self._arm.n_joints)

    @property
    def done(self) -> bool:
        return self._done

    @property
    def tick(self) -> int:
        return self._tick

    @property
    def state(self) -> JointState:
        return self._state

    @property
    def machine(self) -> MachineState:
        return self._machine

    @property
    def hole(self) -> HoleSample:
        return self._hole

    @property
    def tcp(self) -> PlanarPose:
        return forward_kinematics(self._state.q, self._arm)

    @property
    def torque_trace(self) -> np.ndarray:
        return np.array(self._torque_trace)

    @property
    def phase_trace(self) -> List[Tuple[int, str]]:
        return list(self._phase_trace)

    def reset(self, curriculum: CurriculumState, rng: Optional[np.random.Generator] = None) -> Observation:
        hole_rng = rng if rng is not None else self._hole_rng
        self._hole = sample_hole(curriculum, self._world.geometry, hole_rng)
        self._state = JointState.at_rest(self._arm.home)
        self._tick = 0
        self._done = False
        self._first_contact = None
        self._wrench = PlanarWrench.zero()
        self._flags = NO_CONTACT
        self._torque_trace = []
        self.audit.reset()
        _, self._machine = self._machine_logic.start(self._state, self._hole.nominal_pose, tick=0)
        self._phase_trace = [(0, self._machine.phase.value)]
        return self._observe()

    def step(self, cmd: Optional[ResidualCommand] = None) -> Transition:
        if self._done:
            raise UsageError("Cannot step a finished episode; call reset() first")
        if cmd is not None and self._mode != ResidualMode.NONE:
            cmd.expect(self._mode)
        gated = self._mode != ResidualMode.NONE and cmd is not None
        gated = gated and rl_gate(self._machine, self._controller.rl_phases)

        plant_error = False
        try:
            self._run_period(cmd, gated)
        except PlantError as e:
            LOGGER.warning(f"Plant error at tick {self._tick}, ending episode as a failure: {e}")
            plant_error = True

        tcp = self.tcp
        success = 0 if plant_error else reward(tcp, self._hole.goal, self._world.success_epsilon)

        if not plant_error and not success:
            # a folded set-point already carries the feedback offset
            buffered = self._machine.folded or buffer_phase(self._machine, self._tick - 1)
            perceived = perceived_state(self._mode, self._state, cmd, gated, buffered, self._arm)
            previous_phase = self._machine.phase
            _, self._machine = self._machine_logic.step(
                self._machine,
                perceived,
                self._flags,
                forward_kinematics(perceived.q, self._arm),
                self._hole.nominal_pose,
                self._tick,
            )
            if self._machine.phase != previous_phase:
                self._phase_trace.append((self._tick, self._machine.phase.value))

        self._done = bool(
            success or plant_error or self._machine.error or self._tick >= self._world.episode_cap_ticks
        )
        info = {
            "phase": self._machine.phase.value,
            "flags": self._flags.as_dict(),
            "tcp": tcp,
            "rl_gated": gated,
            "ticks": self._tick,
            "success": bool(success),
            "error": self._machine.error,
            "plant_error": plant_error,
            "ik_fallbacks": self.audit.ik_fallbacks,
            "torque_clamps": self.audit.torque_clamps,
        }
        return Transition(observation=self._observe(), reward=success, done=self._done, info=info)

    def _run_period(self, cmd: Optional[ResidualCommand], gated: bool):
        arm = self._arm
        gains = self._controller.gains
        dt = self._world.control_dt
        saw_contact = False
        for _ in range(self._world.policy_period_ticks):
            tick = self._tick
            buffered = buffer_phase(self._machine, tick)
            if gated and buffered and self._mode.modifies_feedback and not self._machine.folded:
                self._machine = self._machine.fold(feedback_offset(self._mode, self._state, cmd, arm))
            setpoint = self._machine.effective_setpoint

            def law(o1: JointState, t: int) -> np.ndarray:
                return impedance_torque(setpoint, o1, gains, t, arm, dt)

            tau = compose_step(
                self._mode, self._state, law, cmd, gated, buffered, tick, arm, self.audit, scratch=self._scratch
            )
            tcp = forward_kinematics(self._state.q, arm)
            tcp_vel = jacobian(self._state.q, arm) @ self._state.v
            self._wrench, self._flags = contact_wrench(
                tcp, self._world.geometry, self._hole, tcp_vel, self._world.contact
            )
            if self._record_torques:
                self._torque_trace.append(np.array(tau, dtype=np.float64))
            self._state = step_dynamics(self._state, tau, self._wrench, dt, arm)
            self._tick += 1
            saw_contact = saw_contact or self._flags.any()
            if self._tick >= self._world.episode_cap_ticks:
                break
        if saw_contact and self._first_contact is None:
            self._first_contact = self.tcp.position

    def _observe(self) -> Observation:
        tcp = self.tcp
        rel_pos = (0.0, 0.0)
        if self._first_contact is not None:
            delta = tcp.position - self._first_contact
            rel_pos = (float(delta[0]), float(delta[1]))
        observation = Observation(rel_pos, wrap_angle(tcp.phi - self._hole.nominal_pose.phi), self._wrench)
        std = self._world.observation_noise_std
        if std > 0:
            noisy = observation.to_array() + self._noise_rng.normal(0.0, std, size=OBSERVATION_DIM)
            observation = Observation.from_array(noisy)
        return observation

    def contact_flags(self) -> ContactFlags:
        return self._flags
