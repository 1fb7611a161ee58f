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
import logging
from dataclasses import dataclass

import numpy as np

from hybrid_residual.arm.config import ArmParams
from hybrid_residual.arm.types import PlanarPose, wrap_angle
from hybrid_residual.exceptions import ConfigurationError, IKFailure

LOGGER = logging.getLogger(__name__)

DEFAULT_IK_TOL = 1e-6
DEFAULT_IK_MAX_ITERS = 100


def _check_dims(q: np.ndarray, params: ArmParams):
    if q.ndim != 1 or q.shape[0] != params.n_joints:
        raise ConfigurationError(f"Expected a joint vector of length {params.n_joints}, got shape {q.shape}")


def forward_kinematics(q, params: ArmParams) -> PlanarPose:
    """TCP pose: tip of the last link, orientation is the sum of joint angles."""
    q = np.asarray(q, dtype=np.float64)
    _check_dims(q, params)
    angles = np.cumsum(q)
    x = float(np.dot(params.lengths, np.cos(angles)))
    y = float(np.dot(params.lengths, np.sin(angles)))
    return PlanarPose(x, y, float(angles[-1]))


def jacobian(q, params: ArmParams) -> np.ndarray:
    """3 x n map from joint velocities to (x_dot, y_dot, phi_dot)."""
    q = np.asarray(q, dtype=np.float64)
    _check_dims(q, params)
    angles = np.cumsum(q)
    link_x = params.lengths * np.cos(angles)
    link_y = params.lengths * np.sin(angles)
    # column i collects the links distal to joint i
    distal_x = np.cumsum(link_x[::-1])[::-1]
    distal_y = np.cumsum(link_y[::-1])[::-1]
    return np.vstack([-distal_y, distal_x, np.ones_like(q)])


def damped_pinv(jac: np.ndarray, damping_lambda: float) -> np.ndarray:
    """J^T (J J^T + lambda^2 I)^-1; raises numpy.linalg.LinAlgError for lambda=0 at a singular J."""
    if damping_lambda < 0:
        raise ConfigurationError(f"damping_lambda must be >= 0, got {damping_lambda}")
    task_dim = jac.shape[0]
    gram = jac @ jac.T + (damping_lambda**2) * np.eye(task_dim)
    # gram is symmetric, so solve(gram, J)^T == J^T gram^-1
    return np.linalg.solve(gram, jac).T


def pose_error(current: PlanarPose, target: PlanarPose) -> np.ndarray:
    return np.array(
        [target.x - current.x, target.y - current.y, wrap_angle(target.phi - current.phi)],
        dtype=np.float64,
    )


@dataclass(frozen=True, eq=False)
class IKSolution:
    q: np.ndarray
    iterations: int
    residual_norm: float


def solve_ik(
    target: PlanarPose,
    seed,
    params: ArmParams,
    tol: float = DEFAULT_IK_TOL,
    max_iters: int = DEFAULT_IK_MAX_ITERS,
) -> IKSolution:
    """Damped least-squares iteration started at `seed`.

    A target already within `tol` of FK(seed) returns the seed itself after zero iterations.
    """
    q = np.asarray(seed, dtype=np.float64)
    _check_dims(q, params)
    error = pose_error(forward_kinematics(q, params), target)
    residual = float(np.linalg.norm(error))
    iterations = 0
    while residual >= tol:
        if iterations >= max_iters:
            raise IKFailure(
                f"IK did not converge after {iterations} iterations (residual {residual:.3e})",
                residual_norm=residual,
                iterations=iterations,
            )
        step = damped_pinv(jacobian(q, params), params.damping_lambda) @ error
        q = np.clip(q + step, params.lower_limits, params.upper_limits)
        iterations += 1
        error = pose_error(forward_kinematics(q, params), target)
        residual = float(np.linalg.norm(error))
    return IKSolution(q=q, iterations=iterations, residual_norm=residual)


def inverse_kinematics(
    target: PlanarPose,
    seed,
    params: ArmParams,
    tol: float = DEFAULT_IK_TOL,
    max_iters: int = DEFAULT_IK_MAX_ITERS,
) -> np.ndarray:
    return solve_ik(target, seed, params, tol=tol, max_iters=max_iters).q
