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
from typing import List, Optional

import click
import tabulate

from hybrid_residual.cli.spec import (
    common_options,
    load_config,
    parse_ints,
    parse_modes,
    prepare_workspace,
    save_config,
)
from hybrid_residual.cli.utils import exit_cli_command
from hybrid_residual.exceptions import HybridResidualCliException, HybridResidualException
from hybrid_residual.harness import records
from hybrid_residual.harness.diagnostic import buffer_steps_diagnostic, displacement, error_rate
from hybrid_residual.log import add_log_file_handler, init_logger, remove_log_file_handler
from hybrid_residual.results import CommandResult, ResultsStore, State, Status
from hybrid_residual.utils.environment import EnvironmentStore, get_env
from hybrid_residual.utils.timer import Timer
from hybrid_residual.validators import run_command_validators

LOGGER = logging.getLogger("diagnose-buffer")


@click.command(
    name="diagnose-buffer",
    help="Move to the pre-insert pose under a scripted residual and measure what the buffer steps leave of it.",
)
@common_options
@click.option("--b", "b_values", callback=parse_ints, help="Comma separated buffer step counts, e.g. 0,10,50,100.")
@click.option("--offset", type=float, help="Lateral offset [m] the oracle residual aims for.")
@click.option(
    "--modes", callback=parse_modes, help="Comma separated residual modes, e.g. JointEffort,JointPosFeedback."
)
@click.option("--out", "output_dir", type=click.Path(file_okay=False), help="Output directory.")
@click.pass_context
def diagnose_buffer_cmd(
    ctx,
    *,
    config_path: Optional[str],
    override_workspace: bool,
    verbose: bool,
    b_values: Optional[List[int]],
    offset: Optional[float],
    modes: Optional[List[str]],
    output_dir: Optional[str],
):
    init_logger(verbose=verbose)
    LOGGER.debug(f"Running '{ctx.command_path}' with config_path: {config_path}")

    diagnostic = {"b_values": b_values, "offset": offset, "modes": modes}
    overrides = {
        "output_dir": output_dir,
        "diagnostic": {key: value for key, value in diagnostic.items() if value is not None},
    }
    try:
        config = load_config(config_path, overrides)
        run_command_validators(ctx.command.name, config)
    except HybridResidualException as e:
        raise HybridResidualCliException(str(e))

    workspace = prepare_workspace(config.output_dir, override_workspace)
    handler = add_log_file_handler(workspace.path)
    config_file = save_config(workspace, "diagnose_buffer", config)
    output_path = workspace.path / records.DIAGNOSTIC_CSV

    timer = Timer().start()
    try:
        rows = buffer_steps_diagnostic(config, output_path=output_path)
        elapsed = timer.stop()
        cells = dict.fromkeys((row.mode, row.buffer_steps) for row in rows)
        table = [
            [
                mode.value,
                b,
                displacement(rows, mode, b),
                displacement(rows, mode, b, strict=True),
                error_rate(rows, mode, b),
            ]
            for mode, b in cells
        ]
        print(
            tabulate.tabulate(
                table,
                headers=["mode", "buffer_steps", "displacement [m]", "strict displacement [m]", "strict error rate"],
                tablefmt="plain",
                floatfmt=".5f",
            )
        )
        status = Status(State.SUCCEEDED, f"Diagnostic finished in {elapsed:.1f} s")
        LOGGER.info(status.message)
        result = CommandResult(status=status, files=[config_file.as_posix(), output_path.as_posix()])
    except HybridResidualException as e:
        status = Status(State.FAILED, message=str(e))
        result = CommandResult(status=status, files=[config_file.as_posix()])
    finally:
        remove_log_file_handler(handler)

    ResultsStore(workspace).dump("diagnose_buffer", result)
    EnvironmentStore(workspace).dump("diagnose_buffer", get_env())
    exit_cli_command(status)
