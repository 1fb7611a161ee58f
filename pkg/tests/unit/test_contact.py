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
import numpy as np
import pytest

from hybrid_residual.arm.types import PlanarPose, PlanarWrench
from hybrid_residual.world.config import ContactParams, HoleGeometry
from hybrid_residual.world.contact import NO_CONTACT, contact_wrench, world_reaction
from hybrid_residual.world.hole import HoleSample

GEOMETRY = HoleGeometry()
HOLE = HoleSample(
    true_pose=GEOMETRY.nominal_hole_pose, nominal_pose=GEOMETRY.nominal_hole_pose, depth=GEOMETRY.hole_depth
)
DOWN = -np.pi / 2


def _wrench(x, y, velocity=(0.0, 0.0, 0.0), phi=DOWN):
    return contact_wrench(PlanarPose(x, y, phi), GEOMETRY, HOLE, np.array(velocity))


def test_free_space_has_no_contact():
    wrench, flags = _wrench(0.45, -0.15)

    assert wrench.is_zero()
    assert flags == NO_CONTACT
    assert not flags.any()


def test_resting_on_surface_pushes_back_along_normal():
    wrench, flags = _wrench(0.50, -0.201)

    # two tip corners 1 mm deep, each with half the face stiffness
    assert wrench.fy == pytest.approx(10.0, rel=1e-6)
    assert wrench.fx == pytest.approx(0.0, abs=1e-9)
    assert wrench.tz == pytest.approx(0.0, abs=1e-9)
    assert flags.surface_contact
    assert not flags.inside_hole()


def test_sliding_on_surface_meets_friction():
    wrench, flags = _wrench(0.50, -0.201, velocity=(0.01, 0.0, 0.0))

    assert flags.surface_contact
    assert wrench.fx == pytest.approx(-3.0, rel=1e-3)


def test_peg_on_hole_floor():
    wrench, flags = _wrench(0.45, -0.2305)

    assert wrench.fy == pytest.approx(5.0, rel=1e-6)
    assert flags.bottom
    assert not flags.surface_contact
    assert flags.inside_hole()


def test_peg_pressing_right_wall():
    wrench, flags = _wrench(0.451, -0.215)

    # tip corner and mouth edge both 0.6 mm into the right wall, each with half the wall stiffness
    assert wrench.fx == pytest.approx(-120.0, rel=1e-6)
    assert flags.right_wall
    assert not flags.left_wall
    assert flags.inside_hole()


def test_peg_pressing_left_wall_is_mirrored():
    right, _ = _wrench(0.451, -0.215)
    left, flags = _wrench(0.449, -0.215)

    assert flags.left_wall
    assert not flags.right_wall
    assert left.fx == pytest.approx(-right.fx, rel=1e-6)


def test_world_reaction_is_opposite():
    wrench, _ = _wrench(0.50, -0.201, velocity=(0.01, -0.002, 0.1))

    reaction = world_reaction(wrench)

    np.testing.assert_allclose((wrench + reaction).as_array(), np.zeros(3), atol=0.0)
    assert world_reaction(PlanarWrench(1.0, -2.0, 0.5)) == PlanarWrench(-1.0, 2.0, -0.5)


def test_flags_serialization():
    _, flags = _wrench(0.45, -0.2305)

    assert flags.as_dict() == {"surface_contact": False, "left_wall": False, "right_wall": False, "bottom": True}


def _tilted(lateral, depth, tilt):
    """Peg with its tip `depth` below the mouth centre shifted by `lateral`, top leaning by `tilt`."""
    return PlanarPose(0.45 + lateral, -0.20 - depth, DOWN - tilt)


def test_tilted_peg_wedges_between_both_walls():
    # 25 cos(0.3) + 10 sin(0.3) mm exceeds the 25.8 mm hole: the left tip corner meets the left wall
    # while the right mouth edge cuts into the opposite side line
    wrench, flags = contact_wrench(_tilted(-0.0015, 0.010, 0.3), GEOMETRY, HOLE, np.zeros(3))

    assert flags.left_wall and flags.right_wall
    assert not flags.surface_contact
    assert flags.inside_hole()
    c, s = np.cos(0.3), np.sin(0.3)
    k = 0.5 * ContactParams().wall_stiffness
    corner_penetration = 0.0015 + 0.0125 * c - 0.0129
    edge_penetration = 0.0125 - (0.0144 * c - 0.010 * s)
    assert wrench.fx == pytest.approx(k * corner_penetration - k * edge_penetration * c, rel=1e-6)
    assert wrench.fy == pytest.approx(k * edge_penetration * s, rel=1e-6)


def test_aligned_peg_in_mouth_is_free():
    wrench, flags = contact_wrench(_tilted(0.0, 0.010, 0.0), GEOMETRY, HOLE, np.zeros(3))

    assert flags == NO_CONTACT
    assert wrench.is_zero()


def test_walls_are_stiffer_than_the_surface():
    params = ContactParams()
    wall, _ = _wrench(0.451, -0.215)
    surface, _ = _wrench(0.50, -0.2006)

    assert params.wall_stiffness > params.stiffness
    # same 0.6 mm penetration on two contact points
    assert abs(wall.fx) / abs(surface.fy) == pytest.approx(params.wall_stiffness / params.stiffness, rel=1e-6)
