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
"""Scripted-oracle reproduction of controller resistance against action-side residuals."""
import pytest

from hybrid_residual.harness.config import ExperimentConfig
from hybrid_residual.harness.diagnostic import buffer_steps_diagnostic, displacement, error_rate
from hybrid_residual.residual.config import ResidualMode

EFFORT = ResidualMode.JOINT_EFFORT
FEEDBACK = ResidualMode.JOINT_POS_FEEDBACK


@pytest.fixture(scope="module")
def rows():
    return buffer_steps_diagnostic(ExperimentConfig(), b_values=[0, 100])


def test_oracle_reaches_offset_without_buffer(rows):
    for mode in (EFFORT, FEEDBACK):
        assert displacement(rows, mode, 0) == pytest.approx(0.016, abs=0.002)


def test_controller_fights_back_effort_residual(rows):
    assert displacement(rows, EFFORT, 100) < 0.5 * displacement(rows, EFFORT, 0)


def test_feedback_residual_survives_buffer(rows):
    assert displacement(rows, FEEDBACK, 100) >= 0.9 * displacement(rows, FEEDBACK, 0)


def test_strict_condition_trips_on_effort_residual(rows):
    assert error_rate(rows, EFFORT, 100) > error_rate(rows, FEEDBACK, 100)
