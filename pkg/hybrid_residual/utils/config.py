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
"""Dataclass configuration sections and their YAML files.

Sections are plain dataclasses read through dacite in strict mode: unknown keys and
values that cannot be cast are reported as `ConfigurationError`.
"""
import copy
import dataclasses
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import dacite
import yaml

from hybrid_residual.exceptions import ConfigurationError

LOGGER = logging.getLogger(__name__)

_DACITE_CASTS = [Enum, Path, tuple, float]


def _to_plain(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {field.name: _to_plain(getattr(value, field.name)) for field in dataclasses.fields(value) if field.init}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return value.as_posix()
    if isinstance(value, dict):
        return {_to_plain(key): _to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_plain(item) for item in value]
    return value


def dataclass2dict(config) -> Dict[str, Any]:
    """YAML-safe mapping of the init fields of `config`, nested sections included."""
    return _to_plain(config)


def dict2dataclass(cls, data, *, strict: bool = True):
    return dacite.from_dict(cls, data, config=dacite.Config(cast=_DACITE_CASTS, strict=strict))


@dataclasses.dataclass
class BaseConfig:
    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]], *, strict: bool = True):
        try:
            return dict2dataclass(cls, data or {}, strict=strict)
        except dacite.UnexpectedDataError as e:
            raise ConfigurationError(f"Unknown keys in {cls.__name__} configuration: {sorted(e.keys)}")
        except dacite.MissingValueError as e:
            raise ConfigurationError(f"Missing value in {cls.__name__} configuration: {e}")
        except (dacite.WrongTypeError, ValueError) as e:
            raise ConfigurationError(f"Invalid value in {cls.__name__} configuration: {e}")

    def to_dict(self) -> Dict[str, Any]:
        return dataclass2dict(self)


def merge_dicts(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively overlay `overrides` on `base`; nested sections are merged key by key."""
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_dicts(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class YamlConfigFile:
    """YAML mapping that accumulates config sections and is written back on close.

    Saving a section whose value disagrees with one already in the file is an error,
    so a run directory never holds two different settings for the same key.
    """

    def __init__(self, config_path: Union[str, Path]) -> None:
        self._config_path = Path(config_path)
        self._config_dict = self._read(self._config_path)
        self._dirty = False

    @staticmethod
    def _read(config_path: Path) -> Dict[str, Any]:
        if not config_path.exists():
            return {}
        with config_path.open("r") as config_file:
            content = yaml.safe_load(config_file)
        if content is None:
            return {}
        if not isinstance(content, dict):
            raise ConfigurationError(f"Config file {config_path} must hold a mapping, got {type(content).__name__}")
        return content

    def __enter__(self):
        return self

    def __exit__(self, _exc_type, _exc_val, _exc_tb):
        self.close()

    def save_config(self, config, fields: Optional[List[str]] = None):
        for name, value in dataclass2dict(config).items():
            if fields and name not in fields:
                continue
            if name in self._config_dict and self._config_dict[name] != value:
                raise ConfigurationError(
                    f"Cannot store {name}={value} in {self._config_path}: it already holds {self._config_dict[name]}"
                )
            self._config_dict[name] = value
            self._dirty = True
        self.close()

    def load(self, cls, overrides: Optional[Dict[str, Any]] = None):
        LOGGER.debug(f"Loading {cls.__name__} from {self._config_path}")
        return cls.from_dict(merge_dicts(self._config_dict, overrides or {}))

    def close(self):
        if not (self._dirty and self._config_dict):
            return
        self._config_path.parent.mkdir(parents=True, exist_ok=True)
        with self._config_path.open("w") as config_file:
            yaml.safe_dump(self._config_dict, config_file, sort_keys=False)
        self._dirty = False
