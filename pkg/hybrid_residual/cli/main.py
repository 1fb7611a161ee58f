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

import click

from hybrid_residual import __version__
from hybrid_residual.cli.diagnose_buffer import diagnose_buffer_cmd
from hybrid_residual.cli.run import run_cmd
from hybrid_residual.cli.summarize import summarize_cmd

LOGGER = logging.getLogger("hybrid-residual")


@click.group(name="hybrid-residual")
@click.version_option(__version__)
def cli():
    pass


def main():
    cli.add_command(cmd=run_cmd)
    cli.add_command(cmd=diagnose_buffer_cmd)
    cli.add_command(cmd=summarize_cmd)
    cli(max_content_width=160)


if __name__ == "__main__":
    main()
