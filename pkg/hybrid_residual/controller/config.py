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
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np

from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.utils.config import BaseConfig


class MachinePhase(Enum):
    MOVE_TO_PRE_INSERT = "MoveToPreInsert"
    FIND_CONTACT = "FindContact"
    SEARCH_HOLE = "SearchHole"
    HYBRID_FORCE_ALIGN = "HybridForceAlign"
    INSERTION = "Insertion"
    RECOVERY = "Recovery"


DEFAULT_RL_PHASES = (MachinePhase.SEARCH_HOLE, MachinePhase.INSERTION)


@dataclass
class ImpedanceGains(BaseConfig):
    kp: Tuple[float, ...] = (60.0, 60.0, 60.0)
    kd: Tuple[float, ...] = (8.0, 8.0, 8.0)

    def __post_init__(self):
        if len(self.kp) != len(self.kd):
            raise ConfigurationError(f"kp and kd lengths differ: {len(self.kp)} != {len(self.kd)}")
        if min(self.kp) <= 0 or min(self.kd) <= 0:
            raise ConfigurationError("Impedance gains must be strictly positive")

    @property
    def kp_array(self) -> np.ndarray:
        return np.asarray(self.kp, dtype=np.float64)

    @property
    def kd_array(self) -> np.ndarray:
        return np.asarray(self.kd, dtype=np.float64)


@dataclass
class StateBudgets(BaseConfig):
    """Time allowed in each phase (s) before the machine gives up and recovers."""

    move_to_pre_insert: float = 1.5
    find_contact: float = 1.0
    search_hole: float = 2.0
    hybrid_force_align: float = 0.5
    insertion: float = 1.0

    def __post_init__(self):
        if any(seconds <= 0 for seconds in vars(self).values()):
            raise ConfigurationError("State budgets must be positive")

    def for_phase(self, phase: MachinePhase) -> float:
        return {
            MachinePhase.MOVE_TO_PRE_INSERT: self.move_to_pre_insert,
            MachinePhase.FIND_CONTACT: self.find_contact,
            MachinePhase.SEARCH_HOLE: self.search_hole,
            MachinePhase.HYBRID_FORCE_ALIGN: self.hybrid_force_align,
            MachinePhase.INSERTION: self.insertion,
        }.get(phase, float("inf"))


@dataclass
class ControllerConfig(BaseConfig):
    gains: ImpedanceGains = field(default_factory=ImpedanceGains)
    budgets: StateBudgets = field(default_factory=StateBudgets)
    # MoveToPreInsert
    pre_insert_height: float = 0.020
    pre_insert_tilt: float = 0.1
    approach_duration: float = 0.6
    pre_insert_duration: float = 1.2
    # FindContact
    find_contact_speed: float = 0.05
    # SearchHole
    search_amplitude: float = 0.032
    search_period: float = 1.0
    search_drop: float = 0.003
    # HybridForceAlign
    align_duration: float = 0.3
    # Insertion
    insertion_travel: float = 0.050
    oscillation_amplitude: float = 2.0
    oscillation_frequency: float = 8.0
    contact_force: float = 5.0
    strict_condition: bool = False
    strict_threshold: float = 0.005
    buffer_steps: int = 0
    rl_phases: Tuple[MachinePhase, ...] = DEFAULT_RL_PHASES
    trace: bool = False

    def __post_init__(self):
        if self.buffer_steps < 0:
            raise ConfigurationError(f"buffer_steps must be >= 0, got {self.buffer_steps}")
        if self.approach_duration > self.pre_insert_duration:
            raise ConfigurationError("approach_duration must not exceed pre_insert_duration")
        if self.pre_insert_duration >= self.budgets.move_to_pre_insert:
            raise ConfigurationError("pre_insert_duration must end before the MoveToPreInsert budget")
        if self.align_duration >= self.budgets.hybrid_force_align:
            raise ConfigurationError("align_duration must end before the HybridForceAlign budget")
        if self.strict_threshold <= 0 or self.search_period <= 0 or self.search_drop <= 0:
            raise ConfigurationError("strict_threshold, search_period and search_drop must be positive")
        if self.contact_force < 0 or self.oscillation_amplitude < 0 or self.oscillation_frequency < 0:
            raise ConfigurationError("Forces and frequencies must be non-negative")
