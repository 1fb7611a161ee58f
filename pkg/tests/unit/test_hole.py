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

import numpy as np
import pytest

from hybrid_residual.curriculum.curriculum import CurriculumState
from hybrid_residual.utils.seeding import StreamPurpose, rng_stream
from hybrid_residual.world.config import HoleGeometry
from hybrid_residual.world.hole import HoleSample, sample_hole

GEOMETRY = HoleGeometry()


def test_zero_std_places_hole_at_nominal(nominal_curriculum):
    hole = sample_hole(nominal_curriculum, GEOMETRY, rng_stream(0, 0, StreamPurpose.HOLE))

    assert hole.true_pose == hole.nominal_pose
    np.testing.assert_array_equal(hole.offset, np.zeros(3))


def test_goal_is_floor_centre():
    nominal = GEOMETRY.nominal_hole_pose

    goal = HoleSample(true_pose=nominal, nominal_pose=nominal, depth=GEOMETRY.hole_depth).goal

    assert goal.x == pytest.approx(0.45)
    assert goal.y == pytest.approx(-0.23)
    assert goal.phi == pytest.approx(-math.pi / 2)


def test_stream_advances_identically_at_every_difficulty(nominal_curriculum):
    easy_rng = rng_stream(3, 1, StreamPurpose.HOLE)
    hard_rng = rng_stream(3, 1, StreamPurpose.HOLE)

    sample_hole(nominal_curriculum, GEOMETRY, easy_rng)
    sample_hole(CurriculumState(pos_std=0.01, ori_std=0.1), GEOMETRY, hard_rng)

    assert easy_rng.normal() == hard_rng.normal()


def test_sampled_offsets_follow_std():
    rng = rng_stream(0, 0, StreamPurpose.HOLE)
    state = CurriculumState(pos_std=0.01, ori_std=0.0)

    offsets = np.array([sample_hole(state, GEOMETRY, rng).offset for _ in range(2000)])

    assert np.std(offsets[:, 0]) == pytest.approx(0.01, rel=0.1)
    assert np.std(offsets[:, 1]) == pytest.approx(0.01, rel=0.1)
    np.testing.assert_allclose(offsets[:, 2], 0.0, atol=1e-12)


def test_streams_are_independent_per_env_and_purpose():
    first = rng_stream(0, 0, StreamPurpose.HOLE).normal(size=4)

    np.testing.assert_array_equal(first, rng_stream(0, 0, StreamPurpose.HOLE).normal(size=4))
    assert not np.array_equal(first, rng_stream(0, 1, StreamPurpose.HOLE).normal(size=4))
    assert not np.array_equal(first, rng_stream(0, 0, StreamPurpose.POLICY).normal(size=4))
