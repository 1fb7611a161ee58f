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
import random

import pytest

from hybrid_residual.curriculum.config import CurriculumConfig, Experiment
from hybrid_residual.curriculum.curriculum import (
    CurriculumState,
    adapt,
    curriculum_step,
    difficulty_profile,
    record_episode,
)
from hybrid_residual.exceptions import ConfigurationError


def _with_outcomes(state, outcomes):
    for outcome in outcomes:
        state = record_episode(state, outcome)
    return state


def _state(**kwargs):
    defaults = dict(pos_std=0.007, ori_std=0.0, pos_increment=0.001, window_size=4)
    defaults.update(kwargs)
    return CurriculumState(**defaults)


def test_record_episode_success_rate():
    state = _state()

    assert state.success_rate is None
    assert record_episode(state, True).success_rate == 1.0
    assert _with_outcomes(state, [True, False, True, False]).success_rate == 0.5


def test_window_evicts_oldest():
    state = _with_outcomes(_state(), [False, True, True, True, True])

    assert state.window == (True, True, True, True)
    assert state.pos_std == 0.007


def test_no_adaptation_before_window_is_full():
    state = _with_outcomes(_state(), [True, True, True])

    assert adapt(state) is state


def test_high_success_rate_widens_distribution():
    state = _with_outcomes(_state(), [True, True, True, True])

    adapted = adapt(state)

    assert adapted.pos_std == pytest.approx(0.008)
    assert adapted.window == ()


def test_rate_inside_bounds_keeps_difficulty():
    state = _with_outcomes(_state(window_size=20), [True] * 13 + [False] * 7)

    assert state.success_rate == pytest.approx(0.65)
    assert adapt(state) is state


def test_low_success_rate_stops_at_floor():
    state = _with_outcomes(_state(pos_std=0.0), [True, False, False, True])

    adapted = adapt(state)

    assert adapted.pos_std == 0.0
    assert adapted.success_rate == 0.5


def test_ceiling_caps_growth():
    state = _state(pos_std=0.0315, pos_ceiling=0.032)

    for _ in range(5):
        state = _with_outcomes(state, [True] * 4)
        state = adapt(state)

    assert state.pos_std == 0.032


def test_adversarial_sequences_stay_within_limits():
    rng = random.Random(0)
    state = _state(pos_std=0.002, pos_floor=0.001, pos_ceiling=0.01)

    for _ in range(500):
        state = curriculum_step(state, rng.random() < 0.5)
        assert 0.001 <= state.pos_std <= 0.01


def test_replay_is_deterministic():
    rng = random.Random(1)
    outcomes = [rng.random() < 0.7 for _ in range(200)]

    first = second = _state()
    trajectory = []
    for outcome in outcomes:
        first = curriculum_step(first, outcome)
        trajectory.append(first.pos_std)
    for index, outcome in enumerate(outcomes):
        second = curriculum_step(second, outcome)
        assert second.pos_std == trajectory[index]


def test_invalid_bounds_are_rejected():
    with pytest.raises(ConfigurationError):
        _state(lower_bound=0.8, upper_bound=0.7)

    with pytest.raises(ConfigurationError):
        CurriculumConfig(window_size=0)


@pytest.mark.parametrize(
    "experiment, start, evaluation",
    [
        (Experiment.ONLY_POSITION, (0.007, 0.0), (0.016, 0.0)),
        (Experiment.ONLY_ORIENTATION, (0.0, 0.05), (0.0, 0.15)),
        (Experiment.BOTH, (0.007, 0.05), (0.015, 0.1)),
    ],
)
def test_difficulty_profiles(experiment, start, evaluation):
    profile = difficulty_profile(experiment)

    assert (profile.start.pos_std, profile.start.ori_std) == start
    assert (profile.eval_pos_std, profile.eval_ori_std) == evaluation
    fixed = profile.evaluation()
    assert (fixed.pos_std, fixed.ori_std) == evaluation
    assert fixed.pos_increment == 0.0 and fixed.ori_increment == 0.0


def test_profile_uses_curriculum_config():
    profile = difficulty_profile(Experiment.ONLY_POSITION, CurriculumConfig(window_size=15, ceiling_factor=2.0))

    assert profile.start.window_size == 15
    assert profile.start.pos_ceiling == pytest.approx(0.032)
    assert profile.start.pos_increment == 0.001


def test_unknown_profile_is_a_configuration_error():
    with pytest.raises(ConfigurationError):
        difficulty_profile("OnlyPosition")
