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

from hybrid_residual.exceptions import UsageError
from hybrid_residual.utils.timer import Timer


def test_timer_freezes_elapsed_at_stop():
    timer = Timer().start()
    assert timer.running
    assert timer.elapsed >= 0.0

    elapsed = timer.stop()

    assert not timer.running
    assert timer.elapsed == elapsed


def test_timer_misuse_raises():
    timer = Timer()
    with pytest.raises(UsageError):
        _ = timer.elapsed
    with pytest.raises(UsageError):
        timer.stop()

    timer.start()
    with pytest.raises(UsageError):
        timer.start()
    timer.stop()
    with pytest.raises(UsageError):
        timer.stop()
