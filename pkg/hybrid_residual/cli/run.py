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

from hybrid_residual.cli.spec import common_options, load_config, parse_ints, prepare_workspace, save_config
from hybrid_residual.cli.utils import exit_cli_command, show_progress
from hybrid_residual.curriculum.config import Experiment
from hybrid_residual.exceptions import HybridResidualCliException, HybridResidualException
from hybrid_residual.harness.experiment import run_experiment, run_scratch_baseline
from hybrid_residual.log import add_log_file_handler, init_logger, log_dict, remove_log_file_handler
from hybrid_residual.residual.config import ResidualMode
from hybrid_residual.results import CommandResult, ResultsStore, State, Status
from hybrid_residual.utils.environment import EnvironmentStore, get_env
from hybrid_residual.utils.timer import Timer
from hybrid_residual.validators import run_command_validators

LOGGER = logging.getLogger("run")


@click.command(name="run", help="Train residual policies and evaluate them against the insertion task.")
@common_options
@click.option("--mode", type=click.Choice([item.value for item in ResidualMode]), help="Residual formulation.")
@click.option("--experiment", type=click.Choice([item.value for item in Experiment]), help="Uncertainty profile.")
@click.option("--seeds", callback=parse_ints, help="Comma separated list of seeds, e.g. 0,1,2.")
@click.option("--episodes", type=int, help="Training episodes per seed.")
@click.option("--no-curriculum", is_flag=True, default=False, help="Train at the evaluation difficulty.")
@click.option("--buffer-steps", type=int, help="Controller ticks that run without residual before a state exit.")
@click.option("--strict", is_flag=True, default=False, help="Send the state machine to Recovery on missed goals.")
@click.option("--scratch", is_flag=True, default=False, help="Learn joint torques from scratch in the gated phases.")
@click.option("--workers", type=int, help="Threads stepping environments in parallel.")
@click.option("--out", "output_dir", type=click.Path(file_okay=False), help="Output directory for CSV records.")
@click.pass_context
def run_cmd(
    ctx,
    *,
    config_path: Optional[str],
    override_workspace: bool,
    verbose: bool,
    mode: Optional[str],
    experiment: Optional[str],
    seeds: Optional[List[int]],
    episodes: Optional[int],
    no_curriculum: bool,
    buffer_steps: Optional[int],
    strict: bool,
    scratch: bool,
    workers: Optional[int],
    output_dir: Optional[str],
):
    init_logger(verbose=verbose)
    LOGGER.debug(f"Running '{ctx.command_path}' with config_path: {config_path}")

    overrides = {
        "mode": ResidualMode.JOINT_EFFORT.value if scratch else mode,
        "experiment": experiment,
        "seeds": seeds,
        "total_episodes": episodes,
        "curriculum_enabled": False if no_curriculum else None,
        "buffer_steps": buffer_steps,
        "strict_condition": True if strict else None,
        "scratch": True if scratch else None,
        "n_workers": workers,
        "output_dir": output_dir,
    }
    try:
        config = load_config(config_path, overrides)
        run_command_validators(ctx.command.name, config)
    except HybridResidualException as e:
        raise HybridResidualCliException(str(e))

    if verbose:
        log_dict("run args:", {key: value for key, value in config.to_dict().items() if not isinstance(value, dict)})

    workspace = prepare_workspace(config.output_dir, override_workspace)
    handler = add_log_file_handler(workspace.path)
    config_file = save_config(workspace, ctx.command.name, config)

    runner = run_scratch_baseline if config.scratch else run_experiment
    timer = Timer().start()
    try:
        run_files = runner(config, show_progress=show_progress(verbose))
        elapsed = timer.stop()
        status = Status(State.SUCCEEDED, f"Run finished in {elapsed:.1f} s")
        LOGGER.info(status.message)
        result = CommandResult(status=status, files=[config_file.as_posix()])
        result.files += [path.as_posix() for path in run_files.as_list()]
    except HybridResidualException as e:
        log_path = str(e.log_path) if e.log_path else None
        status = Status(State.FAILED, message=str(e), log_path=log_path)
        result = CommandResult(status=status, files=[config_file.as_posix()])
    finally:
        remove_log_file_handler(handler)

    ResultsStore(workspace).dump(ctx.command.name, result)
    EnvironmentStore(workspace).dump(ctx.command.name, get_env())
    exit_cli_command(status)
