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
"""Adaptive domain randomization of the hole pose.

Every training environment owns one `CurriculumState` and folds its episode outcomes into it. Once
the window of recent outcomes is full, a success rate above the upper bound widens the pose
distribution, one below the lower bound narrows it, and the window starts over.
"""
import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from hybrid_residual.curriculum.config import CurriculumConfig, Experiment
from hybrid_residual.exceptions import ConfigurationError

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurriculumState:
    pos_std: float
    ori_std: float
    pos_increment: float = 0.0
    ori_increment: float = 0.0
    lower_bound: float = 0.6
    upper_bound: float = 0.7
    window_size: int = 15
    window: Tuple[bool, ...] = ()
    pos_floor: float = 0.0
    ori_floor: float = 0.0
    pos_ceiling: Optional[float] = None
    ori_ceiling: Optional[float] = None

    def __post_init__(self):
        if self.window_size < 1:
            raise ConfigurationError(f"window_size must be >= 1, got {self.window_size}")
        if not 0.0 <= self.lower_bound < self.upper_bound <= 1.0:
            raise ConfigurationError(f"Invalid success-rate bounds [{self.lower_bound}, {self.upper_bound}]")
        if self.pos_floor < 0 or self.ori_floor < 0:
            raise ConfigurationError("Curriculum floors must be >= 0")
        if self.pos_std < self.pos_floor or self.ori_std < self.ori_floor:
            raise ConfigurationError(f"Standard deviations ({self.pos_std}, {self.ori_std}) are below the floors")

    @property
    def success_rate(self) -> Optional[float]:
        if not self.window:
            return None
        return sum(self.window) / len(self.window)

    @property
    def window_full(self) -> bool:
        return len(self.window) >= self.window_size

    def fixed(self) -> "CurriculumState":
        """Same difficulty, never adapting."""
        return replace(self, pos_increment=0.0, ori_increment=0.0, window=())


def _clamp(value: float, floor: float, ceiling: Optional[float]) -> float:
    value = max(value, floor)
    if ceiling is not None:
        value = min(value, ceiling)
    return value


def record_episode(state: CurriculumState, success: bool) -> CurriculumState:
    window = (state.window + (bool(success),))[-state.window_size :]
    return replace(state, window=window)


def adapt(state: CurriculumState) -> CurriculumState:
    if not state.window_full:
        return state
    rate = state.success_rate
    if rate > state.upper_bound:
        direction = 1.0
    elif rate < state.lower_bound:
        direction = -1.0
    else:
        return state

    pos_std = _clamp(state.pos_std + direction * state.pos_increment, state.pos_floor, state.pos_ceiling)
    ori_std = _clamp(state.ori_std + direction * state.ori_increment, state.ori_floor, state.ori_ceiling)
    if pos_std == state.pos_std and ori_std == state.ori_std:
        return state
    LOGGER.debug(
        f"Success rate {rate:.2f}: difficulty ({state.pos_std:.4f} m, {state.ori_std:.4f} rad) -> "
        f"({pos_std:.4f} m, {ori_std:.4f} rad)"
    )
    return replace(state, pos_std=pos_std, ori_std=ori_std, window=())


def curriculum_step(state: CurriculumState, success: bool) -> CurriculumState:
    return adapt(record_episode(state, success))


@dataclass(frozen=True)
class DifficultyProfile:
    experiment: Experiment
    start: CurriculumState
    eval_pos_std: float
    eval_ori_std: float

    def evaluation(self) -> CurriculumState:
        """Fixed-difficulty state for the evaluation environments."""
        return replace(self.start.fixed(), pos_std=self.eval_pos_std, ori_std=self.eval_ori_std)


# (initial pos, pos increment, initial ori, ori increment, eval pos, eval ori)
_PROFILES = {
    Experiment.ONLY_POSITION: (0.007, 0.001, 0.0, 0.0, 0.016, 0.0),
    Experiment.ONLY_ORIENTATION: (0.0, 0.0, 0.05, 0.01, 0.0, 0.15),
    Experiment.BOTH: (0.007, 0.001, 0.05, 0.01, 0.015, 0.1),
    Experiment.HARDWARE: (0.005, 0.0, 0.015, 0.0025, 0.005, 0.015),
}


def difficulty_profile(experiment: Experiment, config: Optional[CurriculumConfig] = None) -> DifficultyProfile:
    if not isinstance(experiment, Experiment) or experiment not in _PROFILES:
        raise ConfigurationError(f"Unknown experiment profile: {experiment}")
    config = config or CurriculumConfig()
    pos, pos_increment, ori, ori_increment, eval_pos, eval_ori = _PROFILES[experiment]
    start = CurriculumState(
        pos_std=pos,
        ori_std=ori,
        pos_increment=pos_increment,
        ori_increment=ori_increment,
        lower_bound=config.lower_bound,
        upper_bound=config.upper_bound,
        window_size=config.window_size,
        pos_ceiling=config.ceiling_factor * eval_pos,
        ori_ceiling=config.ceiling_factor * eval_ori,
    )
    return DifficultyProfile(experiment=experiment, start=start, eval_pos_std=eval_pos, eval_ori_std=eval_ori)
