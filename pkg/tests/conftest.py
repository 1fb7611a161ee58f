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
import pytest
from click.testing import CliRunner

from hybrid_residual.arm.config import ArmParams
from hybrid_residual.controller.config import ControllerConfig
from hybrid_residual.curriculum.curriculum import CurriculumState
from hybrid_residual.harness.config import ExperimentConfig
from hybrid_residual.world.config import WorldConfig


@pytest.fixture(scope="function")
def runner(request):
    return CliRunner()


@pytest.fixture(scope="session")
def arm():
    return ArmParams()


@pytest.fixture(scope="session")
def world():
    return WorldConfig()


@pytest.fixture(scope="session")
def controller():
    return ControllerConfig()


@pytest.fixture(scope="session")
def nominal_curriculum():
    return CurriculumState(pos_std=0.0, ori_std=0.0)


@pytest.fixture(scope="function")
def tiny_experiment(tmp_path):
    """Few short episodes on a reduced network; small enough for unit tests."""
    return ExperimentConfig.from_dict(
        {
            "mode": "JointPosFeedback",
            "seeds": [0],
            "n_train_envs": 2,
            "n_eval_envs": 1,
            "total_episodes": 2,
            "eval_every": 2,
            "output_dir": str(tmp_path / "run"),
            "world": {"episode_cap_ticks": 200},
            "optim": {"epochs": 1, "minibatch_size": 8, "critic_warmup_episodes": 0},
            "policy": {"hidden_sizes": [8, 8], "window": 2},
        }
    )
