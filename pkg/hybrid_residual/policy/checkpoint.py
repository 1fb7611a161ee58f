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
"""Versioned flat-binary checkpoints of a policy network.

`params.bin` holds every `state_dict` tensor as little-endian float64, concatenated in `state_dict`
order; `manifest.yaml` lists names and shapes plus the run's seed and episode count.
"""
import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import torch
import yaml

from hybrid_residual.exceptions import ConfigurationError
from hybrid_residual.policy.network import PolicyNet

LOGGER = logging.getLogger(__name__)

CHECKPOINT_FORMAT_VERSION = 1
PARAMS_FILE_NAME = "params.bin"
MANIFEST_FILE_NAME = "manifest.yaml"


def save_checkpoint(net: PolicyNet, path: Union[str, Path], seed: int, episode_count: int) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    state = net.state_dict()
    arrays = [tensor.detach().cpu().numpy().astype("<f8").reshape(-1) for tensor in state.values()]
    flat = np.concatenate(arrays) if arrays else np.zeros(0, dtype="<f8")
    flat.tofile(path / PARAMS_FILE_NAME)
    manifest = {
        "format_version": CHECKPOINT_FORMAT_VERSION,
        "dtype": "float64",
        "byte_order": "little",
        "seed": int(seed),
        "episode_count": int(episode_count),
        "layers": [{"name": name, "shape": list(tensor.shape)} for name, tensor in state.items()],
    }
    with (path / MANIFEST_FILE_NAME).open("w") as manifest_file:
        yaml.safe_dump(manifest, manifest_file, sort_keys=False)
    LOGGER.debug(f"Saved checkpoint to {path} at episode {episode_count}")
    return path


def read_manifest(path: Union[str, Path]) -> Dict[str, Any]:
    manifest_path = Path(path) / MANIFEST_FILE_NAME
    if not manifest_path.exists():
        raise ConfigurationError(f"No checkpoint manifest at {manifest_path}")
    with manifest_path.open("r") as manifest_file:
        manifest = yaml.safe_load(manifest_file)
    if manifest.get("format_version") != CHECKPOINT_FORMAT_VERSION:
        raise ConfigurationError(f"Unsupported checkpoint format version: {manifest.get('format_version')}")
    return manifest


def load_checkpoint(path: Union[str, Path], net: PolicyNet) -> Dict[str, Any]:
    """Restore `net` in place; returns the manifest."""
    path = Path(path)
    manifest = read_manifest(path)
    state = net.state_dict()
    expected = [(name, list(tensor.shape)) for name, tensor in state.items()]
    stored = [(layer["name"], list(layer["shape"])) for layer in manifest["layers"]]
    if expected != stored:
        raise ConfigurationError(f"Checkpoint layout {stored} does not match the network {expected}")

    flat = np.fromfile(path / PARAMS_FILE_NAME, dtype="<f8")
    total = sum(int(np.prod(shape)) for _, shape in stored)
    if flat.shape[0] != total:
        raise ConfigurationError(f"Checkpoint holds {flat.shape[0]} values, expected {total}")

    restored = {}
    offset = 0
    for name, shape in stored:
        size = int(np.prod(shape))
        restored[name] = torch.as_tensor(flat[offset : offset + size].reshape(shape).astype(np.float64))
        offset += size
    net.load_state_dict(restored)
    return manifest
