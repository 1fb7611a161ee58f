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
import tempfile
from pathlib import Path

import numpy as np
import pytest

from hybrid_residual.exceptions import ConfigurationError, ResidualModeError
from hybrid_residual.harness import records
from hybrid_residual.harness.config import DiagnosticConfig, ExperimentConfig
from hybrid_residual.harness.diagnostic import (
    DiagnosticRow,
    buffer_steps_diagnostic,
    displacement,
    error_rate,
    oracle_command,
)
from hybrid_residual.residual.config import ResidualMode

KP = np.full(3, 60.0)
Q_GOAL = np.zeros(3)
Q_TARGET = np.array([0.01, 0.2, -0.01])


def test_effort_oracle_is_clipped_to_torque_bound():
    cmd = oracle_command(ResidualMode.JOINT_EFFORT, Q_GOAL, Q_TARGET, KP, DiagnosticConfig())

    assert cmd.mode == ResidualMode.JOINT_EFFORT
    np.testing.assert_allclose(cmd.payload, [0.6, 6.0, -0.6])


def test_feedback_oracle_shifts_perceived_state():
    cmd = oracle_command(ResidualMode.JOINT_POS_FEEDBACK, Q_GOAL, Q_TARGET, KP, DiagnosticConfig())

    np.testing.assert_allclose(cmd.payload, [-0.01, -0.15, 0.01])


def test_oracle_unsupported_mode():
    with pytest.raises(ResidualModeError):
        oracle_command(ResidualMode.HYBRID, Q_GOAL, Q_TARGET, KP, DiagnosticConfig())


@pytest.mark.parametrize(
    "kwargs", [{"b_values": ()}, {"b_values": (10, -1)}, {"modes": (ResidualMode.EE_WRENCH,)}, {"torque_bound": 0.0}]
)
def test_invalid_diagnostic_config(kwargs):
    with pytest.raises(ConfigurationError):
        DiagnosticConfig(**kwargs)


def _row(mode, b, strict, value, error=False):
    return DiagnosticRow(
        mode=mode, buffer_steps=b, strict_condition=strict, offset=0.016, displacement=value, error=error
    )


def test_row_helpers():
    rows = [
        _row(ResidualMode.JOINT_EFFORT, 0, False, 0.012),
        _row(ResidualMode.JOINT_EFFORT, 0, True, 0.012, error=True),
        _row(ResidualMode.JOINT_EFFORT, 100, True, 0.001),
    ]

    assert error_rate(rows, ResidualMode.JOINT_EFFORT, 0) == 1.0
    assert error_rate(rows, ResidualMode.JOINT_EFFORT, 100) == 0.0
    assert error_rate(rows, ResidualMode.JOINT_POS_FEEDBACK, 0) == 0.0
    assert displacement(rows, ResidualMode.JOINT_EFFORT, 100, strict=True) == 0.001
    with pytest.raises(KeyError):
        displacement(rows, ResidualMode.JOINT_POS_FEEDBACK, 0)
    assert rows[1].as_record()["mode"] == "JointEffort"


def test_diagnostic_writes_one_row_per_combination():
    config = ExperimentConfig()

    with tempfile.TemporaryDirectory() as temp_dir:
        output_path = Path(temp_dir) / records.DIAGNOSTIC_CSV
        rows = buffer_steps_diagnostic(config, b_values=[0], output_path=output_path)
        written = records.read_records(output_path)

    assert len(rows) == 4
    assert len(written) == 4
    assert [(row.mode, row.strict_condition) for row in rows] == [
        (ResidualMode.JOINT_EFFORT, False),
        (ResidualMode.JOINT_EFFORT, True),
        (ResidualMode.JOINT_POS_FEEDBACK, False),
        (ResidualMode.JOINT_POS_FEEDBACK, True),
    ]
    assert not any(row.error for row in rows if not row.strict_condition)
    assert all(np.isfinite(row.displacement) for row in rows)


def test_buffered_feedback_residual_passes_strict_check():
    rows = buffer_steps_diagnostic(ExperimentConfig(), b_values=[100], modes=[ResidualMode.JOINT_POS_FEEDBACK])

    strict = [row for row in rows if row.strict_condition]
    assert len(strict) == 1
    assert not strict[0].error
    assert error_rate(rows, ResidualMode.JOINT_POS_FEEDBACK, 100) == 0.0
