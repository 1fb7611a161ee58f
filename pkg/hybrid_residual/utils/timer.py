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
import time
from typing import Optional

from hybrid_residual.exceptions import UsageError


class Timer:
    """Wall-clock stopwatch for command durations; `elapsed` can be read while it is running."""

    def __init__(self):
        self._started_at: Optional[float] = None
        self._stopped_at: Optional[float] = None

    @property
    def running(self) -> bool:
        return self._started_at is not None and self._stopped_at is None

    def start(self) -> "Timer":
        if self._started_at is not None:
            raise UsageError("Timer can be started only once.")
        self._started_at = time.perf_counter()
        return self

    def stop(self) -> float:
        if not self.running:
            raise UsageError("Timer is not running.")
        self._stopped_at = time.perf_counter()
        return self.elapsed

    @property
    def elapsed(self) -> float:
        """Seconds since `start`, frozen at `stop`."""
        if self._started_at is None:
            raise UsageError("Timer has not been started.")
        end = self._stopped_at if self._stopped_at is not None else time.perf_counter()
        return end - self._started_at
