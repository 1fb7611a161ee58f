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
"""Output directory of a single run or diagnostic.

Entries whose name starts with a dot (editor state, `.cache`) are treated as invisible:
they never make a directory count as used and they survive `clean`.
"""
import logging
import shutil
from pathlib import Path
from typing import List, Optional, Union

LOGGER = logging.getLogger(__name__)
DEFAULT_WORKSPACE_PATH = Path("hybrid_residual_workspace")


class Workspace:
    def __init__(self, workspace_path: Optional[Union[str, Path]] = None):
        self._path = Path(workspace_path or DEFAULT_WORKSPACE_PATH).resolve()
        self._path.mkdir(parents=True, exist_ok=True)
        LOGGER.debug(f"Using output directory {self._path}")

    @property
    def path(self) -> Path:
        return self._path

    def exists(self) -> bool:
        return self._path.is_dir()

    def entries(self) -> List[Path]:
        """Top-level run artifacts: episode logs, checkpoints, result files."""
        return sorted(p for p in self._path.iterdir() if not p.name.startswith("."))

    def empty(self) -> bool:
        return not self.entries()

    def clean(self):
        entries = self.entries()
        LOGGER.debug(f"Removing {len(entries)} entries from {self._path}")
        for entry in entries:
            if entry.is_dir() and not entry.is_symlink():
                shutil.rmtree(entry)
            else:
                entry.unlink()

    def subdir(self, name: str) -> Path:
        path = self._path / name
        path.mkdir(parents=True, exist_ok=True)
        return path
