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
from enum import Enum

from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.utils.config import BaseConfig


class Experiment(Enum):
    ONLY_POSITION = "OnlyPosition"
    ONLY_ORIENTATION = "OnlyOrientation"
    BOTH = "Both"
    HARDWARE = "Hardware"


@dataclass
class CurriculumConfig(BaseConfig):
    window_size: int = 15
    lower_bound: float = 0.6
    upper_bound: float = 0.7
    # ceilings are this multiple of the evaluation difficulty
    ceiling_factor: float = 2.0

    def __post_init__(self):
        if self.window_size < 1:
            raise ConfigurationError(f"window_size must be >= 1, got {self.window_size}")
        if not 0.0 <= self.lower_bound < self.upper_bound <= 1.0:
            raise ConfigurationError(
                "Success-rate bounds must satisfy 0 <= lower < upper <= 1, "
                f"got [{self.lower_bound}, {self.upper_bound}]"
            )
        if self.ceiling_factor < 1.0:
            raise ConfigurationError(f"ceiling_factor must be >= 1, got {self.ceiling_factor}")
