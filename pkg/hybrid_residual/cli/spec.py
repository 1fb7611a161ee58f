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
"""Options and config handling shared by the commands."""
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import click

from hybrid_residual.exceptions import ConfigurationError, HybridResidualCliException
from hybrid_residual.harness.config import ExperimentConfig
from hybrid_residual.residual.config import ResidualMode
from hybrid_residual.utils.config import YamlConfigFile
from hybrid_residual.utils.enums import parse, parse_csv_list
from hybrid_residual.utils.workspace import Workspace

LOGGER = logging.getLogger(__name__)


def parse_ints(ctx, param, value):
    if value is None:
        return None
    try:
        return list(parse_csv_list(value, int))
    except ConfigurationError as e:
        raise click.BadParameter(str(e))


def parse_modes(ctx, param, value):
    if value is None:
        return None
    try:
        return [mode.value for mode in parse(parse_csv_list(value), ResidualMode)]
    except ConfigurationError as e:
        raise click.BadParameter(str(e))


def verbose_option(func):
    return click.option("-v", "--verbose", is_flag=True, default=False, help="Provide verbose logs.")(func)


def common_options(func):
    options = [
        click.option(
            "--config",
            "config_path",
            help="Path to the YAML experiment configuration. Command line flags take precedence over its values.",
            type=click.Path(dir_okay=False, exists=True),
            required=False,
        ),
        click.option(
            "--override-workspace",
            help="Clean the output directory before command execution.",
            is_flag=True,
            default=False,
        ),
        click.option("-v", "--verbose", is_flag=True, default=False, help="Provide verbose logs."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def load_config(config_path: Optional[str], overrides: Dict[str, Any]) -> ExperimentConfig:
    overrides = {key: value for key, value in overrides.items() if value is not None}
    if config_path:
        LOGGER.debug(f"Loading configuration from {config_path} with overrides {overrides}")
        return YamlConfigFile(config_path).load(ExperimentConfig, overrides)
    return ExperimentConfig.from_dict(overrides)


def prepare_workspace(output_dir: Path, override_workspace: bool) -> Workspace:
    workspace = Workspace(output_dir)
    if not workspace.empty():
        if not override_workspace:
            raise HybridResidualCliException(
                f"Output directory {workspace.path} is not empty. Use --override-workspace to clean it."
            )
        workspace.clean()
    return workspace


def save_config(workspace: Workspace, stage: str, config: ExperimentConfig) -> Path:
    config_path = workspace.path / f"{stage}_config.yaml"
    with YamlConfigFile(config_path) as config_file:
        config_file.save_config(config)
    return config_path
