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
from dataclasses import dataclass
from typing import Tuple

from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.utils.config import BaseConfig


@dataclass
class OptimConfig(BaseConfig):
    gamma: float = 0.99
    gae_lambda: float = 0.95
    clip_ratio: float = 0.2
    epochs: int = 10
    minibatch_size: int = 64
    learning_rate: float = 3e-4
    entropy_coef: float = 0.0
    value_coef: float = 0.5
    max_grad_norm: float = 0.5
    critic_warmup_episodes: int = 50

    def __post_init__(self):
        if not (0.0 < self.gamma <= 1.0 and 0.0 < self.gae_lambda <= 1.0):
            raise ConfigurationError(f"gamma and gae_lambda must lie in (0, 1], got {self.gamma}, {self.gae_lambda}")
        if self.critic_warmup_episodes < 0:
            raise ConfigurationError(f"critic_warmup_episodes must be >= 0, got {self.critic_warmup_episodes}")
        if self.epochs < 1 or self.minibatch_size < 1:
            raise ConfigurationError("epochs and minibatch_size must be >= 1")
        if self.learning_rate <= 0 or self.clip_ratio <= 0 or self.max_grad_norm <= 0:
            raise ConfigurationError("learning_rate, clip_ratio and max_grad_norm must be positive")


@dataclass
class PolicyConfig(BaseConfig):
    hidden_sizes: Tuple[int, ...] = (64, 64)
    window: int = 4
    init_log_std: float = -0.5
    # divides (rel_x, rel_y, rel_phi, fx, fy, tz) before the trunk
    obs_scale: Tuple[float, ...] = (0.01, 0.01, 0.1, 10.0, 10.0, 1.0)

    def __post_init__(self):
        if self.window < 1 or not self.hidden_sizes or min(self.hidden_sizes) < 1:
            raise ConfigurationError("window and hidden layer sizes must be >= 1")
        if min(self.obs_scale) <= 0:
            raise ConfigurationError(f"obs_scale entries must be positive, got {self.obs_scale}")
