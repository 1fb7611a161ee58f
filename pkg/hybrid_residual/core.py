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
"""Timing constants shared by the plant, the controller and the policy loop."""

# plant and impedance controller tick
CONTROL_DT = 0.001
# policy runs at 40 Hz against the 1 kHz controller
POLICY_PERIOD_TICKS = 25
EPISODE_CAP_TICKS = 6000

CSV_SCHEMA_VERSION = 1
