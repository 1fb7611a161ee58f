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
from pathlib import Path
from typing import Any, Dict, Optional

import coloredlogs

LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s: %(message)s"
LOG_FILE_NAME = "run.log"

_FAINT = {"color": "white", "faint": True}


def init_logger(*, verbose: bool = False, colored_logs: bool = True):
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    if colored_logs:
        level_styles = dict(coloredlogs.DEFAULT_LEVEL_STYLES, debug=_FAINT)
        field_styles = {name: _FAINT for name in ("asctime", "name")}
        field_styles["levelname"] = dict(_FAINT, bold=True)
        coloredlogs.install(fmt=LOG_FORMAT, level=level, field_styles=field_styles, level_styles=level_styles)
    logging.getLogger("torch").setLevel(logging.WARNING)
    LOGGER.debug(f"Logger initialized with verbose={verbose}")


def add_log_file_handler(log_dir: Path, *, level: int = logging.DEBUG) -> logging.Handler:
    """Mirror all package logs into `log_dir`/run.log; returns the handler so callers can detach it."""
    log_dir.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(log_dir / LOG_FILE_NAME)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logging.getLogger().addHandler(handler)
    return handler


def remove_log_file_handler(handler: Optional[logging.Handler]):
    if handler is None:
        return
    logging.getLogger().removeHandler(handler)
    handler.close()


def log_dict(title: str, dict_: Dict[str, Any]):
    LOGGER.info(title)
    for key, value in dict_.items():
        LOGGER.info(f"\t{key} = {value}")
