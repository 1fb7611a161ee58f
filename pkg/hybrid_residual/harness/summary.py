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
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import tabulate

from hybrid_residual.exceptions import UsageError
from hybrid_residual.harness import records

LOGGER = logging.getLogger(__name__)


def export_summary(
    episode_rows: Sequence[Mapping[str, object]], output_path: Optional[Path] = None
) -> List[Dict[str, object]]:
    """Mean evaluation success per (mode, experiment, episode) across seeds.

    Each seed first contributes the mean over its evaluation environments; the std is the
    population std (ddof=0) of those per-seed means.
    """
    eval_rows = [row for row in episode_rows if str(row["role"]) == "eval"]
    if not eval_rows:
        raise UsageError("No evaluation records to summarize")

    per_seed: Dict[Tuple[str, str, int, int], List[float]] = defaultdict(list)
    for row in eval_rows:
        key = (str(row["mode"]), str(row["experiment"]), int(row["episode"]), int(row["seed"]))
        per_seed[key].append(float(row["success"]))

    per_point: Dict[Tuple[str, str, int], List[float]] = defaultdict(list)
    for (mode, experiment, episode, _seed), successes in sorted(per_seed.items()):
        per_point[(mode, experiment, episode)].append(float(np.mean(successes)))

    summary = []
    for (mode, experiment, episode), means in sorted(per_point.items()):
        summary.append(
            {
                "mode": mode,
                "experiment": experiment,
                "episode": episode,
                "n_seeds": len(means),
                "mean_success": float(np.mean(means)),
                "std_success": float(np.std(means)),
            }
        )
    if output_path is not None:
        records.write_records(output_path, "summary", summary)
    return summary


def collect_episode_records(input_dir: Union[str, Path]) -> List[Dict[str, str]]:
    """All episodes.csv rows under `input_dir` (searched recursively)."""
    paths = sorted(Path(input_dir).rglob(records.EPISODES_CSV))
    rows = []
    for path in paths:
        LOGGER.debug(f"Reading {path}")
        rows += records.read_records(path)
    if not rows:
        raise UsageError(f"No {records.EPISODES_CSV} records found under {input_dir}")
    return rows


def show_summary(summary: Sequence[Mapping[str, object]]):
    header = list(records.SUMMARY_COLUMNS)
    table = [[row[column] for column in header] for row in summary]
    print(tabulate.tabulate(table, headers=header, tablefmt="plain"))
