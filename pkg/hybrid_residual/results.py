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
import dataclasses
import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional

import yaml

from hybrid_residual.exceptions import UsageError
from hybrid_residual.utils import Workspace
from hybrid_residual.utils.config import dataclass2dict, dict2dataclass

LOGGER = logging.getLogger(__name__)


class State(Enum):
    SUCCEEDED = "succeeded"
    FAILED = "failed"


@dataclasses.dataclass
class Status:
    state: State
    message: str
    log_path: Optional[str] = None


@dataclasses.dataclass
class CommandResult:
    status: Status
    files: List[str] = dataclasses.field(default_factory=list)


class ResultsStore:
    def __init__(self, workspace: Workspace):
        self._workspace = workspace

    def dump(self, stage: str, result: CommandResult) -> Path:
        results_path: Path = self.path_for(stage)
        LOGGER.debug(f"Saving results of {stage} stage into {results_path}")
        results_path.parent.mkdir(parents=True, exist_ok=True)
        with results_path.open("w") as results_file:
            LOGGER.debug(result)
            yaml.safe_dump(dataclass2dict(result), results_file, sort_keys=False)
        return results_path

    def load(self, stage: str) -> CommandResult:
        results_path: Path = self.path_for(stage)
        if not results_path.exists():
            raise UsageError(f"No results found for {stage}")

        with results_path.open("r") as results_file:
            result = yaml.safe_load(results_file)
        return dict2dataclass(CommandResult, result)

    def path_for(self, stage: str) -> Path:
        return self._workspace.path / f"{stage}_results.yaml"
