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
"""CSV outputs of the harness.

Every file opens with a `# schema: <name> v<version>` comment line followed by the header row.
"""
import csv
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from hybrid_residual.core import CSV_SCHEMA_VERSION
from hybrid_residual.exceptions import ConfigurationError

LOGGER = logging.getLogger(__name__)

EPISODES_CSV = "episodes.csv"
CURRICULUM_CSV = "curriculum.csv"
UPDATES_CSV = "updates.csv"
STEPS_CSV = "steps.csv"
MACHINE_TRACE_CSV = "machine_trace.csv"
DIAGNOSTIC_CSV = "diagnostic.csv"
SUMMARY_CSV = "summary.csv"

EPISODE_COLUMNS = (
    "mode",
    "experiment",
    "seed",
    "env_id",
    "role",
    "episode",
    "success",
    "return",
    "ticks",
    "final_state",
    "pos_std",
    "ori_std",
    "ik_fallbacks",
    "clip_fraction",
)
CURRICULUM_COLUMNS = ("seed", "env_id", "episode", "pos_std", "ori_std", "success")
UPDATE_COLUMNS = (
    "seed",
    "update",
    "episode_count",
    "warmup",
    "policy_loss",
    "value_loss",
    "entropy",
    "approx_kl",
    "clip_fraction",
)
STEP_COLUMNS = ("seed", "env_id", "episode", "tick", "phase", "residual_norm", "reward")
MACHINE_TRACE_COLUMNS = ("seed", "env_id", "role", "episode", "tick", "phase")
DIAGNOSTIC_COLUMNS = ("mode", "buffer_steps", "strict_condition", "offset", "displacement", "error")
SUMMARY_COLUMNS = ("mode", "experiment", "episode", "n_seeds", "mean_success", "std_success")

SCHEMAS = {
    "episodes": EPISODE_COLUMNS,
    "curriculum": CURRICULUM_COLUMNS,
    "updates": UPDATE_COLUMNS,
    "steps": STEP_COLUMNS,
    "machine_trace": MACHINE_TRACE_COLUMNS,
    "diagnostic": DIAGNOSTIC_COLUMNS,
    "summary": SUMMARY_COLUMNS,
}


def schema_line(name: str) -> str:
    return f"# schema: {name} v{CSV_SCHEMA_VERSION}\n"


class CsvRecordWriter:
    """Append-only writer of one schema; rows are dicts keyed by the schema columns."""

    def __init__(self, path: Path, schema: str):
        if schema not in SCHEMAS:
            raise ConfigurationError(f"Unknown CSV schema: {schema}")
        self._path = Path(path)
        self._schema = schema
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._file = self._path.open("w", newline="")
        self._file.write(schema_line(schema))
        self._writer = csv.DictWriter(self._file, fieldnames=SCHEMAS[schema], lineterminator="\n")
        self._writer.writeheader()

    @property
    def path(self) -> Path:
        return self._path

    def write(self, row: Dict[str, Any]):
        self._writer.writerow({key: _format(row[key]) for key in SCHEMAS[self._schema]})

    def write_rows(self, rows: Sequence[Dict[str, Any]]):
        for row in rows:
            self.write(row)

    def close(self):
        if not self._file.closed:
            self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, _exc_type, _exc_val, _exc_tb):
        self.close()


def _format(value: Any) -> Any:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        return repr(value)
    return value


def read_records(path: Union[str, Path]) -> List[Dict[str, str]]:
    """Rows of a harness CSV, skipping the schema comment."""
    path = Path(path)
    with path.open("r", newline="") as csv_file:
        lines = [line for line in csv_file if not line.startswith("#")]
    return list(csv.DictReader(lines))


def write_records(path: Union[str, Path], schema: str, rows: Sequence[Dict[str, Any]]) -> Path:
    with CsvRecordWriter(Path(path), schema) as writer:
        writer.write_rows(rows)
    LOGGER.debug(f"Wrote {len(rows)} {schema} rows to {path}")
    return Path(path)
