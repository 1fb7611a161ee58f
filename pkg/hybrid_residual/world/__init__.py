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
from hybrid_residual.world.config import ContactParams, HoleGeometry, WorldConfig  # noqa: F401
from hybrid_residual.world.contact import ContactFlags, contact_wrench, world_reaction  # noqa: F401
from hybrid_residual.world.hole import HoleSample, sample_hole  # noqa: F401
