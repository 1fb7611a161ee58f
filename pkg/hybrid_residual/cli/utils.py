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
import sys

from hybrid_residual.results import State, Status

LOGGER = logging.getLogger(__name__)


def exit_cli_command(status: Status) -> None:
    """Log a failed `status` and leave the process with exit code 1, or 0 on success."""
    if status.state == State.SUCCEEDED:
        sys.exit(0)
    LOGGER.error(status.message)
    if status.log_path:
        LOGGER.error(f"State dumped to {status.log_path}")
    sys.exit(1)


def show_progress(verbose: bool) -> bool:
    """Progress bars only on an interactive terminal and never mixed with debug logs."""
    return not verbose and sys.stderr.isatty()
