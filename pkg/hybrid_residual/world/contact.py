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
"""Penalty contact between the peg and the surface the hole is cut into.

Geometry is evaluated in the hole frame: x runs across the mouth, y points out of the hole, the
origin is the mouth centre. Solid material is {y < 0, |x| >= w/2} plus everything below the floor.
The peg is a rectangle hanging back from the TCP (the centre of its tip face) along the orientation
axis. Two kinds of contact points are checked: the peg tip corners against the solid, and the two
mouth edges against the peg side lines. The side walls are much stiffer than the surface and the floor.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from hybrid_residual.arm.types import PlanarPose, PlanarWrench
from hybrid_residual.world.config import ContactParams, HoleGeometry
from hybrid_residual.world.hole import HoleSample

SURFACE = "surface_contact"
LEFT_WALL = "left_wall"
RIGHT_WALL = "right_wall"
BOTTOM = "bottom"


@dataclass(frozen=True)
class ContactFlags:
    surface_contact: bool = False
    left_wall: bool = False
    right_wall: bool = False
    bottom: bool = False

    def any(self) -> bool:
        return self.surface_contact or self.left_wall or self.right_wall or self.bottom

    def inside_hole(self) -> bool:
        """Touching walls or floor while no tip corner rests on the surface."""
        return (self.left_wall or self.right_wall or self.bottom) and not self.surface_contact

    def as_dict(self):
        return {
            SURFACE: self.surface_contact,
            LEFT_WALL: self.left_wall,
            RIGHT_WALL: self.right_wall,
            BOTTOM: self.bottom,
        }


NO_CONTACT = ContactFlags()


class _HoleFrame:
    def __init__(self, hole: PlanarPose):
        self.ox = hole.x
        self.oy = hole.y
        # insertion axis (cos, sin) points into the hole; local y is its opposite
        self.ex = (-math.sin(hole.phi), math.cos(hole.phi))
        self.ey = (-math.cos(hole.phi), -math.sin(hole.phi))

    def to_local(self, px: float, py: float) -> Tuple[float, float]:
        dx = px - self.ox
        dy = py - self.oy
        return dx * self.ex[0] + dy * self.ex[1], dx * self.ey[0] + dy * self.ey[1]

    def to_world(self, lx: float, ly: float) -> Tuple[float, float]:
        return self.ox + lx * self.ex[0] + ly * self.ey[0], self.oy + lx * self.ex[1] + ly * self.ey[1]

    def direction_to_world(self, lx: float, ly: float) -> Tuple[float, float]:
        return lx * self.ex[0] + ly * self.ey[0], lx * self.ex[1] + ly * self.ey[1]


def _corner_penetration(
    cx: float, cy: float, half_width: float, depth: float
) -> Optional[Tuple[float, Tuple[float, float], str]]:
    """Minimum-penetration exit of a point from the solid, in hole-frame coordinates."""
    if cy >= 0.0:
        return None
    if abs(cx) >= half_width:
        up = -cy
        if cy > -depth:
            side = abs(cx) - half_width
            if side < up:
                if cx < 0.0:
                    return side, (1.0, 0.0), LEFT_WALL
                return side, (-1.0, 0.0), RIGHT_WALL
        return up, (0.0, 1.0), SURFACE
    if cy < -depth:
        return -depth - cy, (0.0, 1.0), BOTTOM
    return None


def _face_constants(flag: str, params: ContactParams) -> Tuple[float, float]:
    if flag in (LEFT_WALL, RIGHT_WALL):
        return params.wall_stiffness, params.wall_damping
    return params.stiffness, params.damping


def _contact_force(
    point: Tuple[float, float],
    normal: Tuple[float, float],
    penetration: float,
    flag: str,
    tcp: PlanarPose,
    tcp_vel: np.ndarray,
    params: ContactParams,
) -> Tuple[float, float, float]:
    rx = point[0] - tcp.x
    ry = point[1] - tcp.y
    vx = tcp_vel[0] - tcp_vel[2] * ry
    vy = tcp_vel[1] + tcp_vel[2] * rx
    penetration_rate = -(vx * normal[0] + vy * normal[1])
    stiffness, damping = _face_constants(flag, params)
    normal_force = 0.5 * (stiffness * penetration + damping * penetration_rate)
    if normal_force <= 0.0:
        return 0.0, 0.0, 0.0
    tangent = (-normal[1], normal[0])
    slip = vx * tangent[0] + vy * tangent[1]
    friction_force = -params.friction * normal_force * math.tanh(slip / params.slip_velocity)
    fx = normal_force * normal[0] + friction_force * tangent[0]
    fy = normal_force * normal[1] + friction_force * tangent[1]
    return fx, fy, rx * fy - ry * fx


def contact_wrench(
    tcp_pose: PlanarPose,
    geometry: HoleGeometry,
    hole: HoleSample,
    tcp_vel,
    params: Optional[ContactParams] = None,
) -> Tuple[PlanarWrench, ContactFlags]:
    """Wrench acting on the peg, in world axes about the TCP, plus the contact flags."""
    params = params or ContactParams()
    tcp_vel = np.asarray(tcp_vel, dtype=np.float64)
    frame = _HoleFrame(hole.true_pose)
    half_width = 0.5 * geometry.hole_width
    half_peg = 0.5 * geometry.peg_width

    axis = (math.cos(tcp_pose.phi), math.sin(tcp_pose.phi))
    side = (-axis[1], axis[0])

    fx = fy = tz = 0.0
    touched: List[str] = []

    for sign in (1.0, -1.0):
        corner = (tcp_pose.x + sign * half_peg * side[0], tcp_pose.y + sign * half_peg * side[1])
        local = frame.to_local(*corner)
        hit = _corner_penetration(local[0], local[1], half_width, geometry.hole_depth)
        if hit is None:
            continue
        penetration, local_normal, flag = hit
        normal = frame.direction_to_world(*local_normal)
        dfx, dfy, dtz = _contact_force(corner, normal, penetration, flag, tcp_pose, tcp_vel, params)
        fx, fy, tz = fx + dfx, fy + dfy, tz + dtz
        touched.append(flag)

    for edge_x, flag in ((-half_width, LEFT_WALL), (half_width, RIGHT_WALL)):
        edge = frame.to_world(edge_x, 0.0)
        rel = (edge[0] - tcp_pose.x, edge[1] - tcp_pose.y)
        along = -(rel[0] * axis[0] + rel[1] * axis[1])
        across = rel[0] * side[0] + rel[1] * side[1]
        if not (0.0 < along < geometry.peg_length and abs(across) < half_peg):
            continue
        exits = (
            (half_peg - across, (-side[0], -side[1]), flag),
            (half_peg + across, (side[0], side[1]), flag),
            (along, (-axis[0], -axis[1]), SURFACE),
        )
        penetration, normal, edge_flag = min(exits, key=lambda item: item[0])
        dfx, dfy, dtz = _contact_force(edge, normal, penetration, edge_flag, tcp_pose, tcp_vel, params)
        fx, fy, tz = fx + dfx, fy + dfy, tz + dtz
        touched.append(edge_flag)

    if not touched:
        return PlanarWrench.zero(), NO_CONTACT
    flags = ContactFlags(
        surface_contact=SURFACE in touched,
        left_wall=LEFT_WALL in touched,
        right_wall=RIGHT_WALL in touched,
        bottom=BOTTOM in touched,
    )
    return PlanarWrench(fx, fy, tz), flags


def world_reaction(wrench: PlanarWrench) -> PlanarWrench:
    """What the peg applies to the world, about the same point."""
    return -wrench
