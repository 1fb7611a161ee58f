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
from enum import IntEnum

import numpy as np


class StreamPurpose(IntEnum):
    HOLE = 0
    POLICY = 1
    NOISE = 2
    OPTIM = 3
    INIT = 4


def rng_stream(seed: int, env_id: int, purpose: StreamPurpose) -> np.random.Generator:
    """Independent generator keyed by (seed, env id, purpose); adding envs never shifts other streams."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(env_id), int(purpose)]))
