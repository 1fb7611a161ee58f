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
from hybrid_residual.arm.config import ArmParams  # noqa: F401
from hybrid_residual.arm.dynamics import clamp_torque, step_dynamics  # noqa: F401
from hybrid_residual.arm.kinematics import (  # noqa: F401
    IKSolution,
    damped_pinv,
    forward_kinematics,
    inverse_kinematics,
    jacobian,
    pose_error,
    solve_ik,
)
from hybrid_residual.arm.types import JointState, PlanarPose, PlanarWrench, joint_state_zeros, wrap_angle  # noqa: F401
