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
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
import torch
from torch import nn

from hybrid_residual.exceptions import OptimizerError, UsageError
from hybrid_residual.policy.buffer import RolloutBuffer, compute_gae, normalize_advantages
from hybrid_residual.policy.checkpoint import save_checkpoint
from hybrid_residual.policy.config import OptimConfig
from hybrid_residual.policy.distribution import action_distribution
from hybrid_residual.policy.network import PolicyNet

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Batch:
    observations: torch.Tensor
    actions: torch.Tensor
    log_probs: torch.Tensor
    advantages: torch.Tensor
    returns: torch.Tensor

    def __len__(self) -> int:
        return int(self.observations.shape[0])

    def subset(self, indices: np.ndarray) -> "Batch":
        index = torch.as_tensor(indices, dtype=torch.long)
        return Batch(
            observations=self.observations[index],
            actions=self.actions[index],
            log_probs=self.log_probs[index],
            advantages=self.advantages[index],
            returns=self.returns[index],
        )

    @classmethod
    def from_buffer(cls, buffer: RolloutBuffer, config: OptimConfig) -> "Batch":
        advantages, returns = compute_gae(buffer, config)
        return cls(
            observations=torch.as_tensor(np.stack(buffer.observations)),
            actions=torch.as_tensor(np.stack(buffer.actions)),
            log_probs=torch.as_tensor(np.asarray(buffer.log_probs, dtype=np.float64)),
            advantages=torch.as_tensor(normalize_advantages(advantages)),
            returns=torch.as_tensor(returns),
        )


class PPOOptimizer:
    """Clipped-surrogate updates with a critic-only warm-up.

    During warm-up the loss is the value loss alone: the actor head and log-std never enter the
    graph, receive no gradient and are skipped by Adam.
    """

    def __init__(
        self,
        net: PolicyNet,
        config: OptimConfig,
        rng: np.random.Generator,
        *,
        seed: int = 0,
        dump_dir: Optional[Path] = None,
    ):
        self._net = net
        self._config = config
        self._rng = rng
        self._seed = seed
        self._dump_dir = dump_dir
        self._optimizer = torch.optim.Adam(net.parameters(), lr=config.learning_rate)
        self.updates = 0

    @property
    def net(self) -> PolicyNet:
        return self._net

    def loss(self, batch: Batch, warmup: bool) -> Tuple[torch.Tensor, Dict[str, torch.Tensor]]:
        config = self._config
        mean, log_std, values = self._net(batch.observations)
        value_loss = ((values - batch.returns) ** 2).mean()
        if warmup:
            return config.value_coef * value_loss, {"value_loss": value_loss}

        distribution = action_distribution(mean, log_std)
        log_probs = distribution.log_prob(batch.actions).sum(-1)
        ratio = torch.exp(log_probs - batch.log_probs)
        clipped = torch.clamp(ratio, 1.0 - config.clip_ratio, 1.0 + config.clip_ratio)
        policy_loss = -torch.min(ratio * batch.advantages, clipped * batch.advantages).mean()
        entropy = distribution.entropy().sum(-1).mean()
        total = policy_loss + config.value_coef * value_loss - config.entropy_coef * entropy
        with torch.no_grad():
            stats = {
                "policy_loss": policy_loss.detach(),
                "value_loss": value_loss.detach(),
                "entropy": entropy.detach(),
                "approx_kl": (batch.log_probs - log_probs).mean(),
                "clip_fraction": ((ratio - 1.0).abs() > config.clip_ratio).double().mean(),
            }
        return total, stats

    def update_batch(self, batch: Batch, episode_count: int) -> Dict[str, float]:
        if len(batch) == 0:
            raise UsageError("Cannot update on an empty batch")
        config = self._config
        warmup = episode_count < config.critic_warmup_episodes
        totals: Dict[str, float] = {}
        n_minibatches = 0
        for _ in range(config.epochs):
            order = self._rng.permutation(len(batch))
            for start in range(0, len(batch), config.minibatch_size):
                minibatch = batch.subset(order[start : start + config.minibatch_size])
                loss, stats = self.loss(minibatch, warmup)
                if not torch.isfinite(loss):
                    self._fail(episode_count, float(loss))
                self._optimizer.zero_grad(set_to_none=True)
                loss.backward()
                nn.utils.clip_grad_norm_(self._net.parameters(), config.max_grad_norm)
                self._optimizer.step()
                for key, value in stats.items():
                    totals[key] = totals.get(key, 0.0) + float(value)
                n_minibatches += 1

        self.updates += 1
        diagnostics = {key: value / n_minibatches for key, value in totals.items()}
        for key in ("policy_loss", "entropy", "approx_kl", "clip_fraction"):
            diagnostics.setdefault(key, 0.0)
        diagnostics["warmup"] = float(warmup)
        diagnostics["n_steps"] = float(len(batch))
        LOGGER.debug(f"Update {self.updates} (episode {episode_count}, warmup={warmup}): {diagnostics}")
        return diagnostics

    def update(self, buffer: RolloutBuffer, episode_count: int) -> Dict[str, float]:
        if buffer.completed_episodes < 1:
            raise UsageError("The rollout buffer holds no completed episode")
        return self.update_batch(Batch.from_buffer(buffer, self._config), episode_count)

    def _fail(self, episode_count: int, loss_value: float):
        dump_path = None
        if self._dump_dir is not None:
            dump_path = save_checkpoint(self._net, self._dump_dir / "failed_update", self._seed, episode_count)
        raise OptimizerError(f"Non-finite loss ({loss_value}) at episode {episode_count}", log_path=dump_path)
