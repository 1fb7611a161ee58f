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
from typing import Tuple

import numpy as np
import torch
from torch.distributions import Normal


class ObservationWindow:
    """Last `size` observations, oldest first, zero-padded after a reset."""

    def __init__(self, size: int, obs_dim: int):
        self._frames = np.zeros((size, obs_dim), dtype=np.float64)

    def reset(self):
        self._frames[:] = 0.0

    def push(self, observation: np.ndarray):
        self._frames = np.roll(self._frames, -1, axis=0)
        self._frames[-1] = observation

    def as_array(self) -> np.ndarray:
        return self._frames.reshape(-1).copy()


def action_distribution(mean: torch.Tensor, log_std: torch.Tensor) -> Normal:
    """Diagonal Gaussian over actions; sum `log_prob` and `entropy` over the last axis."""
    return Normal(mean, log_std.exp())


def gaussian_log_prob(x: np.ndarray, mean: np.ndarray, log_std: np.ndarray) -> float:
    distribution = action_distribution(torch.as_tensor(mean), torch.as_tensor(log_std))
    return float(distribution.log_prob(torch.as_tensor(x)).sum(-1))


def sample_action(mean: np.ndarray, log_std: np.ndarray, rng: np.random.Generator) -> Tuple[np.ndarray, float]:
    """Diagonal Gaussian draw; the log-probability is taken before any squashing."""
    mean = np.asarray(mean, dtype=np.float64)
    log_std = np.asarray(log_std, dtype=np.float64)
    action = mean + np.exp(log_std) * rng.standard_normal(mean.shape)
    return action, gaussian_log_prob(action, mean, log_std)
