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
import math
from typing import Optional, Sequence, Tuple

import numpy as np
import torch
from torch import nn

from hybrid_residual.exceptions import InferenceError

SQRT2 = math.sqrt(2.0)


class PolicyNet(nn.Module):
    """Shared tanh trunk over a stacked observation window with Gaussian actor and value heads.

    The actor head starts at exactly zero so the initial policy mean is zero for every input.
    """

    def __init__(
        self,
        obs_dim: int,
        action_dim: int,
        *,
        window: int = 4,
        hidden_sizes: Sequence[int] = (64, 64),
        init_log_std: float = -0.5,
        obs_scale: Optional[Sequence[float]] = None,
        rng: Optional[np.random.Generator] = None,
    ):
        super().__init__()
        self.obs_dim = obs_dim
        self.action_dim = action_dim
        self.window = window
        input_dim = obs_dim * window

        layers = []
        previous = input_dim
        for size in hidden_sizes:
            layers += [nn.Linear(previous, size), nn.Tanh()]
            previous = size
        self.trunk = nn.Sequential(*layers)
        self.actor = nn.Linear(previous, action_dim)
        self.critic = nn.Linear(previous, 1)
        self.log_std = nn.Parameter(torch.full((action_dim,), float(init_log_std)))

        scale = np.ones(obs_dim) if obs_scale is None else np.asarray(obs_scale, dtype=np.float64)
        self.register_buffer("obs_scale", torch.as_tensor(np.tile(scale, window)))
        self.double()
        self._initialize(rng if rng is not None else np.random.default_rng(0))

    def _initialize(self, rng: np.random.Generator):
        generator = torch.Generator().manual_seed(int(rng.integers(2**62)))
        for module in self.trunk:
            if isinstance(module, nn.Linear):
                nn.init.orthogonal_(module.weight, gain=SQRT2, generator=generator)
                nn.init.zeros_(module.bias)
        nn.init.orthogonal_(self.critic.weight, gain=1.0, generator=generator)
        nn.init.zeros_(self.critic.bias)
        nn.init.zeros_(self.actor.weight)
        nn.init.zeros_(self.actor.bias)

    def forward(self, obs: torch.Tensor) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        features = self.trunk(obs / self.obs_scale)
        mean = self.actor(features)
        value = self.critic(features).squeeze(-1)
        return mean, self.log_std.expand_as(mean), value


def policy_forward(net: PolicyNet, obs_window) -> Tuple[np.ndarray, np.ndarray, float]:
    obs = np.asarray(obs_window, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(obs)):
        raise InferenceError("Non-finite observation passed to the policy")
    with torch.no_grad():
        mean, log_std, value = net(torch.as_tensor(obs).unsqueeze(0))
    return mean[0].detach().numpy().copy(), log_std[0].detach().numpy().copy(), float(value[0].detach())
