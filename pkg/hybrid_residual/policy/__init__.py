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
from hybrid_residual.policy.buffer import RolloutBuffer, compute_gae, normalize_advantages  # noqa: F401
from hybrid_residual.policy.checkpoint import load_checkpoint, save_checkpoint  # noqa: F401
from hybrid_residual.policy.config import OptimConfig, PolicyConfig  # noqa: F401
from hybrid_residual.policy.distribution import (  # noqa: F401
    ObservationWindow,
    action_distribution,
    gaussian_log_prob,
    sample_action,
)
from hybrid_residual.policy.network import PolicyNet, policy_forward  # noqa: F401
from hybrid_residual.policy.ppo import Batch, PPOOptimizer  # noqa: F401
