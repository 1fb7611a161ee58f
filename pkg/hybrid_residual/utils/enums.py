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
from enum import Enum
from typing import Any, Tuple, Type, TypeVar

from hybrid_residual.exceptions import ConfigurationError

T = TypeVar("T", bound=Enum)


def parse(value: Any, enum_type: Type[T]) -> Tuple[T, ...]:
    if value is not None:
        value = tuple(value) if isinstance(value, (tuple, list)) else (value,)
        try:
            value = tuple(enum_type(v) for v in value)
        except ValueError as e:
            choices = ", ".join(str(item.value) for item in enum_type)
            raise ConfigurationError(f"{e}; expected one of: {choices}")
        return value
    return ()


def parse_csv_list(value: str, item_type=str) -> Tuple:
    """Split a comma separated CLI value ("0,10,50") into typed items."""
    items = [item.strip() for item in value.split(",") if item.strip()]
    try:
        return tuple(item_type(item) for item in items)
    except ValueError as e:
        raise ConfigurationError(f"Could not parse '{value}' as a list: {e}")
