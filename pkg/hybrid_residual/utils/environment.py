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
"""Host and library details stored next to run results."""
import logging
import platform
from pathlib import Path
from typing import Any, Dict

import cpuinfo
import numpy as np
import psutil
import torch
import yaml

from hybrid_residual.__version__ import __version__
from hybrid_residual.utils.workspace import Workspace

LOGGER = logging.getLogger(__name__)


def _cpu() -> Dict[str, Any]:
    frequency = psutil.cpu_freq()
    return {
        "name": cpuinfo.get_cpu_info().get("brand_raw", "n/a"),
        "physical_cores": psutil.cpu_count(logical=False),
        "logical_cores": psutil.cpu_count(logical=True),
        "max_frequency_mhz": frequency.max if frequency else None,
    }


def get_env() -> Dict[str, Any]:
    """Everything needed to tell whether two runs were produced on comparable machines."""
    return {
        "host": {
            "system": platform.system(),
            "release": platform.release(),
            "memory": psutil._common.bytes2human(psutil.virtual_memory().total),
            "cpu": _cpu(),
        },
        "python_version": platform.python_version(),
        "packages": {
            "hybrid_residual": __version__,
            "numpy": str(np.__version__),
            "torch": str(torch.__version__),
        },
        "torch": {
            "threads": torch.get_num_threads(),
            "default_dtype": str(torch.get_default_dtype()),
        },
    }


class EnvironmentStore:
    def __init__(self, workspace: Workspace):
        self._workspace = workspace

    def path_for(self, stage: str) -> Path:
        return self._workspace.path / f"{stage}_environment.yaml"

    def dump(self, stage: str, environment: Dict[str, Any]) -> Path:
        path = self.path_for(stage)
        LOGGER.debug(f"Writing {stage} environment to {path}")
        with path.open("w") as environment_file:
            yaml.safe_dump(environment, environment_file, sort_keys=False)
        return path

    def load(self, stage: str) -> Dict[str, Any]:
        path = self.path_for(stage)
        if not path.exists():
            LOGGER.warning(f"No environment recorded for {stage} in {self._workspace.path}")
            return {}
        with path.open("r") as environment_file:
            return yaml.safe_load(environment_file) or {}
