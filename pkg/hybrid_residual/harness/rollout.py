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
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from hybrid_residual.controller.machine import rl_gate
from hybrid_residual.curriculum.curriculum import CurriculumState
from hybrid_residual.harness.config import ExperimentConfig
from hybrid_residual.policy.buffer import RolloutBuffer
from hybrid_residual.policy.distribution import ObservationWindow, sample_action
from hybrid_residual.policy.network import PolicyNet, policy_forward
from hybrid_residual.residual.commands import ResidualCommand
from hybrid_residual.residual.config import ResidualMode
from hybrid_residual.utils.seeding import StreamPurpose, rng_stream
from hybrid_residual.world.env import OBSERVATION_DIM, PegInHoleEnv

LOGGER = logging.getLogger(__name__)

EVAL_ENV_ID_OFFSET = 1000


class Role(Enum):
    TRAIN = "train"
    EVAL = "eval"


@dataclass
class EpisodeResult:
    env_id: int
    role: Role
    success: bool
    episode_return: float
    ticks: int
    final_state: str
    pos_std: float
    ori_std: float
    ik_fallbacks: int
    buffer: Optional[RolloutBuffer] = None
    steps: List[Dict[str, Any]] = field(default_factory=list)
    phase_trace: List[Any] = field(default_factory=list)


class EnvWorker:
    """One environment with its own curriculum, observation window and policy noise stream."""

    def __init__(self, config: ExperimentConfig, seed: int, env_id: int, role: Role, curriculum: CurriculumState):
        self.config = config
        self.seed = seed
        self.env_id = env_id
        self.role = role
        self.curriculum = curriculum
        self.episodes = 0
        self.env = PegInHoleEnv(
            config.arm,
            config.world,
            config.effective_controller,
            config.mode,
            seed=seed,
            env_id=env_id,
            scratch=config.scratch,
        )
        self._window = ObservationWindow(config.policy.window, OBSERVATION_DIM)
        self._policy_rng = rng_stream(seed, env_id, StreamPurpose.POLICY)

    def run_episode(self, net: Optional[PolicyNet]) -> EpisodeResult:
        """Train workers sample actions and fill a rollout buffer; eval workers act on the mean."""
        config = self.config
        mode = config.mode
        n_joints = config.arm.n_joints
        train = self.role == Role.TRAIN
        buffer = RolloutBuffer(gamma=config.optim.gamma) if train else None
        steps: List[Dict[str, Any]] = []

        observation = self.env.reset(self.curriculum)
        self._window.reset()
        self._window.push(observation.to_array())
        total_reward = 0.0
        transition = None
        while not self.env.done:
            gated = mode != ResidualMode.NONE and net is not None
            gated = gated and rl_gate(self.env.machine, config.effective_controller.rl_phases)
            cmd = None
            if gated:
                window = self._window.as_array()
                mean, log_std, value = policy_forward(net, window)
                if train:
                    action, log_prob = sample_action(mean, log_std, self._policy_rng)
                else:
                    action, log_prob = mean, 0.0
                cmd = ResidualCommand.from_raw(mode, action, config.residual, n_joints, scratch=config.scratch)
            phase = self.env.machine.phase.value
            tick = self.env.tick
            transition = self.env.step(cmd)
            total_reward += transition.reward
            if train:
                if gated:
                    buffer.add(window, action, log_prob, value, transition.reward, transition.done, phase)
                else:
                    buffer.accumulate_reward(transition.reward)
            if gated and config.record_steps and train:
                steps.append(
                    {
                        "seed": self.seed,
                        "env_id": self.env_id,
                        "episode": self.episodes,
                        "tick": tick,
                        "phase": phase,
                        "residual_norm": float(np.linalg.norm(cmd.payload)),
                        "reward": transition.reward,
                    }
                )
            self._window.push(transition.observation.to_array())
        if train:
            buffer.finish_episode()

        self.episodes += 1
        success = bool(transition is not None and transition.reward == 1)
        return EpisodeResult(
            env_id=self.env_id,
            role=self.role,
            success=success,
            episode_return=total_reward,
            ticks=self.env.tick,
            final_state=self.env.machine.phase.value,
            pos_std=self.curriculum.pos_std,
            ori_std=self.curriculum.ori_std,
            ik_fallbacks=self.env.audit.ik_fallbacks,
            buffer=buffer,
            steps=steps,
            phase_trace=self.env.phase_trace,
        )
