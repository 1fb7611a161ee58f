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
import numpy as np
import pytest

from hybrid_residual.arm.config import ArmParams
from hybrid_residual.arm.kinematics import jacobian
from hybrid_residual.arm.types import JointState, PlanarWrench
from hybrid_residual.controller.config import ControllerConfig, ImpedanceGains
from hybrid_residual.controller.impedance import ControllerSetpoint, Oscillation, impedance_torque
from hybrid_residual.exceptions import ConfigurationError


def test_no_torque_at_setpoint(arm, controller):
    state = JointState.at_rest(arm.home)

    tau = impedance_torque(ControllerSetpoint(q_set=arm.home.copy()), state, controller.gains, 0, arm)

    np.testing.assert_array_equal(tau, np.zeros(3))


def test_pd_law(arm, controller):
    state = JointState(q=arm.home.copy(), v=np.array([0.1, 0.0, -0.1]), tau_ext=np.zeros(3))
    setpoint = ControllerSetpoint(q_set=arm.home + 0.01)

    tau = impedance_torque(setpoint, state, controller.gains, 0, arm)

    np.testing.assert_allclose(tau, [0.6 - 0.8, 0.6, 0.6 + 0.8])


def test_feed_forward_wrench_through_jacobian_transpose(arm, controller):
    state = JointState.at_rest(arm.home)
    wrench = PlanarWrench(0.0, -5.0, 0.0)

    setpoint = ControllerSetpoint(q_set=arm.home.copy(), ff_wrench=wrench)

    tau = impedance_torque(setpoint, state, controller.gains, 0, arm)

    np.testing.assert_allclose(tau, jacobian(arm.home, arm).T @ wrench.as_array())


def test_oscillation_overlay():
    oscillation = Oscillation(amplitude=2.0, frequency=1.0, axis=(1.0, 0.0))

    assert oscillation.wrench(0, 0.001).is_zero()
    assert oscillation.wrench(250, 0.001).fx == pytest.approx(2.0)
    assert oscillation.wrench(750, 0.001).fx == pytest.approx(-2.0)


def test_torque_saturates(arm, controller):
    state = JointState.at_rest(arm.home)

    tau = impedance_torque(ControllerSetpoint(q_set=arm.home + 2.0), state, controller.gains, 0, arm)

    np.testing.assert_array_equal(tau, arm.torque_limits)


def test_dimension_mismatch_is_a_configuration_error(arm):
    gains = ImpedanceGains(kp=(60.0, 60.0), kd=(8.0, 8.0))
    state = JointState.at_rest(arm.home)

    with pytest.raises(ConfigurationError):
        impedance_torque(ControllerSetpoint(q_set=arm.home.copy()), state, gains, 0, arm)

    with pytest.raises(ConfigurationError):
        impedance_torque(ControllerSetpoint(q_set=np.zeros(2)), JointState.at_rest(np.zeros(2)), gains, 0, arm)


def test_controller_config_rejects_inconsistent_timing():
    with pytest.raises(ConfigurationError):
        ControllerConfig(approach_duration=1.3)

    with pytest.raises(ConfigurationError):
        ControllerConfig(buffer_steps=-1)


def test_four_joint_gains():
    arm = ArmParams(
        n_joints=4,
        link_lengths=(0.25, 0.25, 0.15, 0.05),
        joint_inertia=(0.06, 0.05, 0.04, 0.03),
        joint_damping=(0.05,) * 4,
        joint_limits=((-2.9, 2.9),) * 4,
        torque_limit=(50.0,) * 4,
        home_q=(-0.5, 1.0, 0.5, -2.5),
    )
    gains = ImpedanceGains(kp=(60.0,) * 4, kd=(8.0,) * 4)

    tau = impedance_torque(ControllerSetpoint(q_set=arm.home + 0.01), JointState.at_rest(arm.home), gains, 0, arm)

    np.testing.assert_allclose(tau, np.full(4, 0.6))
