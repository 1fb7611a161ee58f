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
from typing import List, Tuple

import numpy as np

from hybrid_residual.exceptions import UsageError
from hybrid_residual.policy.config import OptimConfig

LOGGER = logging.getLogger(__name__)


@dataclass
class RolloutBuffer:
    """Gated policy steps of completed (or in-progress) episodes, stored flat in collection order.

    Rewards earned while the RL gate is closed are credited to the preceding gated step.
    """

    gamma: float = 0.99
    observations: List[np.ndarray] = field(default_factory=list)
    actions: List[np.ndarray] = field(default_factory=list)
    log_probs: List[float] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    rewards: List[float] = field(default_factory=list)
    dones: List[bool] = field(default_factory=list)
    phases: List[str] = field(default_factory=list)
    episode_returns: List[float] = field(default_factory=list)
    bootstrap_value: float = 0.0
    _episode_start: int = field(default=0, init=False, repr=False)

    def __len__(self) -> int:
        return len(self.rewards)

    @property
    def completed_episodes(self) -> int:
        return len(self.episode_returns)

    def add(self, observation, action, log_prob: float, value: float, reward: float, done: bool, phase: str = ""):
        self.observations.append(np.asarray(observation, dtype=np.float64))
        self.actions.append(np.asarray(action, dtype=np.float64))
        self.log_probs.append(float(log_prob))
        self.values.append(float(value))
        self.rewards.append(float(reward))
        self.dones.append(bool(done))
        self.phases.append(phase)

    def accumulate_reward(self, reward: float) -> bool:
        """Credit a reward from an ungated period to the last gated step of the running episode."""
        if len(self) == self._episode_start:
            if reward:
                LOGGER.debug("Reward earned before any gated step; not credited")
            return False
        self.rewards[-1] += float(reward)
        return True

    def finish_episode(self):
        """Close the running episode: its last step becomes terminal and its return is recorded."""
        rewards = self.rewards[self._episode_start :]
        if rewards:
            self.dones[-1] = True
        discounts = self.gamma ** np.arange(len(rewards))
        self.episode_returns.append(float(np.dot(discounts, rewards)) if rewards else 0.0)
        self._episode_start = len(self)

    def extend(self, other: "RolloutBuffer"):
        self.observations += other.observations
        self.actions += other.actions
        self.log_probs += other.log_probs
        self.values += other.values
        self.rewards += other.rewards
        self.dones += other.dones
        self.phases += other.phases
        self.episode_returns += other.episode_returns
        self._episode_start = len(self)

    def clear(self):
        for items in (
            self.observations,
            self.actions,
            self.log_probs,
            self.values,
            self.rewards,
            self.dones,
            self.phases,
            self.episode_returns,
        ):
            items.clear()
        self._episode_start = 0


def compute_gae(buffer: RolloutBuffer, config: OptimConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Generalized advantage estimates and value targets (advantage + value), unnormalized.

    A step that is not terminal and is the last in the buffer bootstraps from `buffer.bootstrap_value`.
    """
    if len(buffer) == 0:
        raise UsageError("Cannot compute advantages of an empty rollout buffer")
    rewards = np.asarray(buffer.rewards, dtype=np.float64)
    values = np.asarray(buffer.values, dtype=np.float64)
    dones = np.asarray(buffer.dones, dtype=np.float64)
    advantages = np.zeros_like(rewards)
    next_value = buffer.bootstrap_value
    next_advantage = 0.0
    for t in reversed(range(len(rewards))):
        not_done = 1.0 - dones[t]
        delta = rewards[t] + config.gamma * next_value * not_done - values[t]
        advantages[t] = delta + config.gamma * config.gae_lambda * not_done * next_advantage
        next_value = values[t]
        next_advantage = advantages[t]
    return advantages, advantages + values


def normalize_advantages(advantages: np.ndarray, min_std: float = 1e-8) -> np.ndarray:
    advantages = np.asarray(advantages, dtype=np.float64)
    return (advantages - advantages.mean()) / max(float(advantages.std()), min_std)
