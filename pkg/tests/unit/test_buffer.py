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
import pytest

from hybrid_residual.exceptions import ConfigurationError, UsageError
from hybrid_residual.policy.buffer import RolloutBuffer, compute_gae, normalize_advantages
from hybrid_residual.policy.config import OptimConfig


def _fill(buffer, rewards, values, dones):
    for reward, value, done in zip(rewards, values, dones):
        buffer.add(np.zeros(2), np.zeros(1), 0.0, value, reward, done)
        if done:
            buffer.finish_episode()
    return buffer


def test_single_terminal_step():
    buffer = _fill(RolloutBuffer(), [1.5], [0.4], [True])

    advantages, returns = compute_gae(buffer, OptimConfig())

    assert advantages[0] == pytest.approx(1.5 - 0.4)
    assert returns[0] == pytest.approx(1.5)


def test_unit_discount_gives_monte_carlo_advantages():
    rewards = [0.5, -1.0, 2.0, 0.25]
    values = [0.1, 0.3, -0.2, 0.6]
    buffer = _fill(RolloutBuffer(gamma=1.0), rewards, values, [False, False, False, True])

    advantages, _ = compute_gae(buffer, OptimConfig(gamma=1.0, gae_lambda=1.0))

    expected = [sum(rewards[t:]) - values[t] for t in range(4)]
    np.testing.assert_allclose(advantages, expected, atol=1e-12)


def _brute_force_gae(rewards, values, dones, gamma, lam, bootstrap):
    n = len(rewards)
    advantages = np.zeros(n)
    for t in range(n):
        total = 0.0
        for k in range(t, n):
            last = dones[k] or k == n - 1
            next_value = 0.0 if dones[k] else (bootstrap if k == n - 1 else values[k + 1])
            delta = rewards[k] + gamma * next_value - values[k]
            total += (gamma * lam) ** (k - t) * delta
            if last:
                break
        advantages[t] = total
    return advantages


def test_matches_brute_force_over_episode_boundaries():
    rng = np.random.default_rng(0)
    rewards = rng.normal(size=20)
    values = rng.normal(size=20)
    dones = [False] * 20
    dones[6] = dones[13] = True
    buffer = _fill(RolloutBuffer(), rewards, values, dones)
    buffer.bootstrap_value = 0.7
    config = OptimConfig(gamma=0.97, gae_lambda=0.9)

    advantages, returns = compute_gae(buffer, config)

    expected = _brute_force_gae(rewards, values, dones, 0.97, 0.9, 0.7)
    np.testing.assert_allclose(advantages, expected, atol=1e-10)
    np.testing.assert_allclose(returns, expected + values, atol=1e-10)


def test_empty_buffer():
    with pytest.raises(UsageError):
        compute_gae(RolloutBuffer(), OptimConfig())


def test_normalized_advantages_statistics():
    normalized = normalize_advantages(np.random.default_rng(1).normal(3.0, 5.0, size=257))

    assert abs(normalized.mean()) < 1e-10
    assert abs(normalized.std() - 1.0) < 1e-6


def test_constant_advantages_normalize_to_zero():
    normalized = normalize_advantages(np.full(10, 2.0))

    np.testing.assert_array_equal(normalized, np.zeros(10))


def test_ungated_reward_is_credited_to_last_gated_step():
    buffer = RolloutBuffer(gamma=0.5)

    assert not buffer.accumulate_reward(1.0)
    buffer.add(np.zeros(2), np.zeros(1), 0.0, 0.0, 1.0, False)
    buffer.add(np.zeros(2), np.zeros(1), 0.0, 0.0, 2.0, False)
    assert buffer.accumulate_reward(0.5)
    buffer.finish_episode()

    assert buffer.rewards == [1.0, 2.5]
    assert buffer.dones == [False, True]
    assert buffer.episode_returns == [pytest.approx(1.0 + 0.5 * 2.5)]
    assert buffer.completed_episodes == 1
    assert not buffer.accumulate_reward(1.0)


def test_episode_without_gated_steps_counts_with_zero_return():
    buffer = RolloutBuffer()

    buffer.finish_episode()

    assert len(buffer) == 0
    assert buffer.episode_returns == [0.0]


def test_extend_and_clear():
    first = _fill(RolloutBuffer(), [1.0, 2.0], [0.0, 0.0], [False, True])
    second = _fill(RolloutBuffer(), [3.0], [0.0], [True])

    first.extend(second)
    assert len(first) == 3
    assert first.completed_episodes == 2

    first.clear()
    assert len(first) == 0
    assert first.completed_episodes == 0


@pytest.mark.parametrize(
    "kwargs",
    [{"gamma": 0.0}, {"gae_lambda": 1.5}, {"epochs": 0}, {"learning_rate": -1.0}, {"critic_warmup_episodes": -1}],
)
def test_invalid_optim_config(kwargs):
    with pytest.raises(ConfigurationError):
        OptimConfig(**kwargs)
