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
import tempfile

import pytest
import yaml

from hybrid_residual.__version__ import __version__
from hybrid_residual.exceptions import UsageError
from hybrid_residual.results import CommandResult, ResultsStore, State, Status
from hybrid_residual.utils.environment import EnvironmentStore, get_env
from hybrid_residual.utils.workspace import Workspace


def test_results_store_dump_and_load():
    with tempfile.TemporaryDirectory() as temp_dir:
        store = ResultsStore(Workspace(temp_dir))
        result = CommandResult(status=Status(State.FAILED, "boom", log_path="/tmp/x"), files=["episodes.csv"])

        path = store.dump("run", result)
        loaded = store.load("run")

        assert path.name == "run_results.yaml"
        assert loaded == result


def test_results_store_missing_stage():
    with tempfile.TemporaryDirectory() as temp_dir:
        with pytest.raises(UsageError):
            ResultsStore(Workspace(temp_dir)).load("run")


def test_environment_store():
    with tempfile.TemporaryDirectory() as temp_dir:
        store = EnvironmentStore(Workspace(temp_dir))
        store.dump("run", {"os": {"name": "Linux"}})

        assert store.load("run") == {"os": {"name": "Linux"}}
        assert store.load("summarize") == {}


def test_environment_describes_host_and_packages():
    environment = get_env()

    assert set(environment) == {"host", "python_version", "packages", "torch"}
    assert environment["packages"]["hybrid_residual"] == __version__
    assert environment["torch"]["threads"] >= 1


def test_environment_is_yaml_safe(tmp_path):
    environment = get_env()

    assert yaml.safe_load(yaml.safe_dump(environment)) == environment

    store = EnvironmentStore(Workspace(tmp_path))
    store.dump("run", environment)
    assert store.load("run") == environment
