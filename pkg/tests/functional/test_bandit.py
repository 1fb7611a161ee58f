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
import torch

from hybrid_residual.policy.buffer import RolloutBuffer
from hybrid_residual.policy.config import OptimConfig
from hybrid_residual.policy.distribution import sample_action
from hybrid_residual.policy.network import PolicyNet, policy_forward
from hybrid_residual.policy.ppo import PPOOptimizer

OBS = np.ones(1)


def test_ppo_solves_quadratic_bandit():
    net = PolicyNet(1, 1, window=1, hidden_sizes=(4,), rng=np.random.default_rng(0))
    with torch.no_grad():
        net.actor.bias.fill_(0.5)
    config = OptimConfig(learning_rate=3e-3, epochs=10, minibatch_size=50, critic_warmup_episodes=0)
    optimizer = PPOOptimizer(net, config, np.random.default_rng(1))
    rng = np.random.default_rng(2)

    for _ in range(200):
        buffer = RolloutBuffer(gamma=config.gamma)
        for _ in range(100):
            mean, log_std, value = policy_forward(net, OBS)
            action, log_prob = sample_action(mean, log_std, rng)
            buffer.add(OBS, action, log_prob, value, float(-action[0] ** 2), True)
            buffer.finish_episode()
        optimizer.update(buffer, episode_count=optimizer.updates * 100)

    assert abs(policy_forward(net, OBS)[0][0]) < 0.05
