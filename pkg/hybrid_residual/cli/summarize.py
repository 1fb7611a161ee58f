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
from typing import Optional

import click

from hybrid_residual.cli.spec import verbose_option
from hybrid_residual.exceptions import HybridResidualCliException, HybridResidualException
from hybrid_residual.harness import records
from hybrid_residual.harness.summary import collect_episode_records, export_summary, show_summary
from hybrid_residual.log import init_logger, log_dict
from hybrid_residual.results import ResultsStore, State
from hybrid_residual.utils.environment import EnvironmentStore
from hybrid_residual.utils.workspace import Workspace

LOGGER = logging.getLogger("summarize")


def report_recorded_runs(input_dir: Path):
    """Warn about failed runs under `input_dir`; their episodes are summarized all the same."""
    for results_path in sorted(input_dir.rglob("run_results.yaml")):
        workspace = Workspace(results_path.parent)
        status = ResultsStore(workspace).load("run").status
        if status.state == State.FAILED:
            LOGGER.warning(f"Run in {workspace.path} failed: {status.message}")
        if LOGGER.isEnabledFor(logging.DEBUG):
            log_dict(f"Environment of {workspace.path}:", EnvironmentStore(workspace).load("run"))


@click.command(name="summarize", help="Aggregate evaluation success across seeds into a summary CSV.")
@verbose_option
@click.option(
    "--in",
    "input_dir",
    required=True,
    type=click.Path(file_okay=False, exists=True),
    help="Directory searched recursively for episodes.csv files.",
)
@click.option(
    "--out", "output_path", type=click.Path(dir_okay=False), help="Summary CSV path [default: <in>/summary.csv]."
)
@click.pass_context
def summarize_cmd(ctx, *, verbose: bool, input_dir: str, output_path: Optional[str]):
    init_logger(verbose=verbose)
    LOGGER.debug(f"Running '{ctx.command_path}' on {input_dir}")

    output_path = Path(output_path) if output_path else Path(input_dir) / records.SUMMARY_CSV
    report_recorded_runs(Path(input_dir))
    try:
        summary = export_summary(collect_episode_records(input_dir), output_path)
    except HybridResidualException as e:
        raise HybridResidualCliException(str(e))

    show_summary(summary)
    LOGGER.info(f"Summary saved in {output_path}")
