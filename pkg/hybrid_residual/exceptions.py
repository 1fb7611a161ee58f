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
from pathlib import Path
from typing import Optional

from click import ClickException


class HybridResidualException(Exception):
    """Base of all package errors.

    `log_path` points at whatever was dumped for post-mortem inspection (for example the
    optimizer state written when a loss turns non-finite); it is recorded in the command results.
    """

    def __init__(self, message: str, log_path: Optional[Path] = None):
        super().__init__(message)
        self.message = message
        self.log_path = log_path

    def __str__(self):
        return self.message


class ConfigurationError(HybridResidualException):
    pass


class IKFailure(HybridResidualException):
    """Inverse kinematics did not reach the target pose within the iteration limit."""

    def __init__(self, message: str, residual_norm: float, iterations: int):
        super().__init__(message)
        self.residual_norm = residual_norm
        self.iterations = iterations


class PlantError(HybridResidualException):
    """The arm plant was stepped with an invalid time step or a non-finite state or input."""


class UsageError(HybridResidualException):
    pass


class ResidualModeError(HybridResidualException):
    """A residual does not match the mode or action shape it is used with."""


class InferenceError(HybridResidualException):
    pass


class OptimizerError(HybridResidualException):
    pass


class HybridResidualCliException(ClickException):
    pass
