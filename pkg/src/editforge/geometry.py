"""Axis-aligned bounding boxes and the little linear algebra the scene needs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# All stored coordinates are quantized to this many decimal digits so that
# canonical serialization is lossless and byte-stable.
COORD_DECIMALS = 6


def q6(value: float) -> float:
    """Quantize a coordinate to the canonical 1e-6 grid."""
    return round(float(value), COORD_DECIMALS)


@dataclass(frozen=True)
class AABB:
    """Closed axis-aligned box; touching boxes have zero overlap volume."""

    min_x: float
    min_y: float
    min_z: float
    max_x: float
    max_y: float
    max_z: float

    def overlap_volume(self, other: "AABB") -> float:
        dx = min(self.max_x, other.max_x) - max(self.min_x, other.min_x)
        dy = min(self.max_y, other.max_y) - max(self.min_y, other.min_y)
        dz = min(self.max_z, other.max_z) - max(self.min_z, other.min_z)
        if dx <= 0.0 or dy <= 0.0 or dz <= 0.0:
            return 0.0
        return dx * dy * dz

    def intersects(self, other: "AABB") -> bool:
        return self.overlap_volume(other) > 0.0

    def contains(self, other: "AABB") -> bool:
        return (
            self.min_x <= other.min_x
            and self.min_y <= other.min_y
            and self.min_z <= other.min_z
            and self.max_x >= other.max_x
            and self.max_y >= other.max_y
            and self.max_z >= other.max_z
        )

    def footprint_contains_xy(self, x: float, y: float) -> bool:
        return self.min_x <= x <= self.max_x and self.min_y <= y <= self.max_y

    @property
    def center_xy(self) -> tuple[float, float]:
        return ((self.min_x + self.max_x) / 2.0, (self.min_y + self.max_y) / 2.0)

    @property
    def half_extents_xy(self) -> tuple[float, float]:
        return ((self.max_x - self.min_x) / 2.0, (self.max_y - self.min_y) / 2.0)


def yaw_extents(size_x: float, size_y: float, yaw_deg: float) -> tuple[float, float]:
    """Half extents of the tight AABB of a (size_x, size_y) rectangle rotated by yaw.

    The rotated box is re-bounded exactly, not inflated, so 90/180 degree
    rotations of an axis-aligned box keep the original extents.
    """
    theta = math.radians(yaw_deg % 360.0)
    c, s = abs(math.cos(theta)), abs(math.sin(theta))
    hx = (size_x * c + size_y * s) / 2.0
    hy = (size_x * s + size_y * c) / 2.0
    return hx, hy


def aabb_from_footprint(
    x: float, y: float, z_bottom: float, hx: float, hy: float, height: float
) -> AABB:
    return AABB(x - hx, y - hy, z_bottom, x + hx, y + hy, z_bottom + height)


def camera_basis(yaw_deg: float, pitch_deg: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right / down / forward unit vectors for a z-up world.

    Yaw is measured counter-clockwise from +x; positive pitch looks up.
    The "down" axis matches screen-space v which grows downward.
    """
    y = math.radians(yaw_deg)
    p = math.radians(pitch_deg)
    forward = np.array([math.cos(p) * math.cos(y), math.cos(p) * math.sin(y), math.sin(p)])
    right = np.array([math.sin(y), -math.cos(y), 0.0])
    down = np.cross(forward, right)
    return right, down, forward


def look_angles(eye: np.ndarray, target: np.ndarray) -> tuple[float, float]:
    """Yaw and pitch (degrees) that aim a camera at ``target`` from ``eye``."""
    d = np.asarray(target, dtype=float) - np.asarray(eye, dtype=float)
    yaw = math.degrees(math.atan2(d[1], d[0])) % 360.0
    pitch = math.degrees(math.atan2(d[2], math.hypot(d[0], d[1])))
    return yaw, pitch
