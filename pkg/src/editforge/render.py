"""Deterministic software rasterizer.

Frames are produced by flat-shaded perspective projection with painter-style
back-to-front compositing guarded by an exact per-pixel depth test. All
coverage decisions happen on fixed-point (1/16 px) coordinates with integer
edge functions, so identical scenes yield bit-identical images; the only
floating-point work in the hot path is IEEE add/mul/div, which is exactly
rounded everywhere.
"""

from __future__ import annotations

import hashlib
import io
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np
from PIL import Image

from .catalog import (
    COLOR_RGB,
    GLASS_BACKGROUND_BLEND,
    MATERIAL_TINT,
    TEXTURE_BY_ID,
    TextureSpec,
)
from .geometry import camera_basis

if TYPE_CHECKING:  # pragma: no cover
    from .scene import Camera, SceneState

FP = 16  # fixed-point subpixel scale
NEAR = 0.05
_LIGHT = np.array([0.35, 0.25, 0.9])
_LIGHT = _LIGHT / np.linalg.norm(_LIGHT)


@dataclass(frozen=True)
class RenderConfig:
    resolution: int = 256
    supersampling: int = 2

    def __post_init__(self) -> None:
        if self.resolution <= 0 or self.resolution & (self.resolution - 1):
            raise ValueError("resolution must be a positive power of two")
        if self.supersampling not in (1, 2):
            raise ValueError("supersampling must be 1 or 2")


@dataclass
class FrameRef:
    chain_id: str
    step_index: int
    path: str
    digest: str


@dataclass
class _Face:
    verts: np.ndarray  # (n, 3) world coordinates
    normal: np.ndarray  # outward unit normal
    rgb: np.ndarray  # base color, 0..255 floats
    material: Optional[str]
    obj_index: int  # -1 for room planes
    texture: Optional[TextureSpec] = None
    tex_frame: Optional[tuple[np.ndarray, np.ndarray, np.ndarray]] = None  # origin, u, v


# -- mesh construction --------------------------------------------------------


def _rot_xy(points: np.ndarray, yaw_deg: float) -> np.ndarray:
    t = math.radians(yaw_deg)
    c, s = math.cos(t), math.sin(t)
    out = points.copy()
    out[:, 0] = c * points[:, 0] - s * points[:, 1]
    out[:, 1] = s * points[:, 0] + c * points[:, 1]
    return out


def _quad(a, b, c, d) -> np.ndarray:
    return np.array([a, b, c, d], dtype=float)


def _box_faces(cx, cy, z0, sx, sy, h, yaw) -> list[tuple[np.ndarray, np.ndarray]]:
    hx, hy = sx / 2.0, sy / 2.0
    corners = np.array([[-hx, -hy], [hx, -hy], [hx, hy], [-hx, hy]], dtype=float)
    corners = _rot_xy(np.c_[corners, np.zeros(4)], yaw)[:, :2] + [cx, cy]
    z1 = z0 + h
    lo = np.c_[corners, np.full(4, z0)]
    hi = np.c_[corners, np.full(4, z1)]
    faces = [
        (_quad(hi[0], hi[1], hi[2], hi[3]), np.array([0.0, 0.0, 1.0])),
        (_quad(lo[3], lo[2], lo[1], lo[0]), np.array([0.0, 0.0, -1.0])),
    ]
    for i in range(4):
        j = (i + 1) % 4
        edge = corners[j] - corners[i]
        n = np.array([edge[1], -edge[0], 0.0])
        norm = np.linalg.norm(n)
        if norm > 0:
            n /= norm
        faces.append((_quad(lo[i], lo[j], hi[j], hi[i]), n))
    return faces


def _cylinder_faces(cx, cy, z0, d, h, segments=10) -> list[tuple[np.ndarray, np.ndarray]]:
    r = d / 2.0
    ang = np.linspace(0.0, 2.0 * math.pi, segments, endpoint=False)
    ring = np.c_[cx + r * np.cos(ang), cy + r * np.sin(ang)]
    z1 = z0 + h
    faces = [
        (np.c_[ring, np.full(segments, z1)], np.array([0.0, 0.0, 1.0])),
        (np.c_[ring[::-1], np.full(segments, z0)], np.array([0.0, 0.0, -1.0])),
    ]
    for i in range(segments):
        j = (i + 1) % segments
        mid = (ring[i] + ring[j]) / 2.0 - [cx, cy]
        n = np.array([mid[0], mid[1], 0.0])
        n /= np.linalg.norm(n)
        faces.append(
            (
                _quad([*ring[i], z0], [*ring[j], z0], [*ring[j], z1], [*ring[i], z1]),
                n,
            )
        )
    return faces


def _sphere_faces(cx, cy, z0, d, stacks=4, slices=8) -> list[tuple[np.ndarray, np.ndarray]]:
    r = d / 2.0
    cz = z0 + r
    faces = []
    for i in range(stacks):
        p0 = math.pi * i / stacks - math.pi / 2.0
        p1 = math.pi * (i + 1) / stacks - math.pi / 2.0
        for j in range(slices):
            t0 = 2.0 * math.pi * j / slices
            t1 = 2.0 * math.pi * (j + 1) / slices
            ring = []
            for p, t in ((p0, t0), (p0, t1), (p1, t1), (p1, t0)):
                ring.append(
                    [
                        cx + r * math.cos(p) * math.cos(t),
                        cy + r * math.cos(p) * math.sin(t),
                        cz + r * math.sin(p),
                    ]
                )
            verts = np.array(ring)
            # drop duplicated pole vertices
            keep = [0]
            for k in range(1, len(verts)):
                if not np.allclose(verts[k], verts[keep[-1]]):
                    keep.append(k)
            if np.allclose(verts[keep[-1]], verts[keep[0]]):
                keep = keep[:-1]
            if len(keep) < 3:
                continue
            verts = verts[keep]
            n = verts.mean(axis=0) - [cx, cy, cz]
            norm = np.linalg.norm(n)
            if norm == 0:
                continue
            faces.append((verts, n / norm))
    return faces


def _composite_faces(cx, cy, z0, sx, sy, h, yaw) -> list[tuple[np.ndarray, np.ndarray]]:
    slab = max(0.04, 0.15 * h)
    faces = _box_faces(cx, cy, z0, sx, sy, slab, yaw)
    faces += _box_faces(cx, cy, z0 + slab, 0.35 * sx, 0.35 * sy, h - 2 * slab, yaw)
    faces += _box_faces(cx, cy, z0 + h - slab, sx, sy, slab, yaw)
    return faces


def object_mesh(obj) -> list[tuple[np.ndarray, np.ndarray]]:
    """World-space faces with outward normals for one scene object."""
    sx, sy, sz = (d * obj.scale for d in obj.base_size)
    x, y, z0 = obj.position
    if obj.shape == "cylinder":
        return _cylinder_faces(x, y, z0, sx, sz)
    if obj.shape == "sphere":
        return _sphere_faces(x, y, z0, sx)
    if obj.shape == "composite":
        return _composite_faces(x, y, z0, sx, sy, sz, obj.yaw)
    return _box_faces(x, y, z0, sx, sy, sz, obj.yaw)


def _shade(rgb: np.ndarray, normal: np.ndarray) -> np.ndarray:
    lam = max(0.0, float(np.dot(normal, _LIGHT)))
    return rgb * (0.55 + 0.45 * lam)


def _object_faces(state: "SceneState") -> tuple[list[_Face], list[str]]:
    ids = sorted(state.objects)
    faces: list[_Face] = []
    for idx, oid in enumerate(ids):
        obj = state.objects[oid]
        base = np.array(COLOR_RGB[obj.color], dtype=float)
        tint = np.array(MATERIAL_TINT[obj.material], dtype=float)
        for verts, normal in object_mesh(obj):
            faces.append(_Face(verts, normal, _shade(base * tint, normal), obj.material, idx))
    return faces, ids


def _room_faces(state: "SceneState") -> list[_Face]:
    room = state.room
    w, d, h = room.width, room.depth, room.height
    floor_tex = TEXTURE_BY_ID[room.floor_texture]
    wall_tex = TEXTURE_BY_ID[room.wall_texture]
    ex = np.array([1.0, 0.0, 0.0])
    ey = np.array([0.0, 1.0, 0.0])
    ez = np.array([0.0, 0.0, 1.0])
    zero = np.zeros(3)

    def plane(verts, normal, tex, origin, u_axis, v_axis):
        rgb = np.array(tex.primary, dtype=float)
        return _Face(
            np.array(verts, dtype=float),
            np.asarray(normal, dtype=float),
            _shade(rgb, np.asarray(normal, dtype=float)),
            None,
            -1,
            tex,
            (origin, u_axis, v_axis),
        )

    faces = [
        plane([[0, 0, 0], [w, 0, 0], [w, d, 0], [0, d, 0]], ez, floor_tex, zero, ex, ey),
        plane([[0, 0, h], [0, d, h], [w, d, h], [w, 0, h]], -ez, wall_tex, ez * h, ex, ey),
        plane([[0, 0, 0], [0, d, 0], [0, d, h], [0, 0, h]], ex, wall_tex, zero, ey, ez),
        plane([[w, 0, 0], [w, 0, h], [w, d, h], [w, d, 0]], -ex, wall_tex, ex * w, ey, ez),
        plane([[0, 0, 0], [0, 0, h], [w, 0, h], [w, 0, 0]], ey, wall_tex, zero, ex, ez),
        plane([[0, d, 0], [w, d, 0], [w, d, h], [0, d, h]], -ey, wall_tex, ey * d, ex, ez),
    ]
    return faces


# -- rasterization core -------------------------------------------------------


def _clip_near(pts: np.ndarray) -> np.ndarray:
    out: list[np.ndarray] = []
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        a_in, b_in = a[2] >= NEAR, b[2] >= NEAR
        if a_in:
            out.append(a)
        if a_in != b_in:
            t = (NEAR - a[2]) / (b[2] - a[2])
            out.append(a + t * (b - a))
    return np.array(out) if len(out) >= 3 else np.empty((0, 3))


def _depth_coeffs(u: np.ndarray, v: np.ndarray, w: np.ndarray):
    """Affine fit w = a*u + b*v + c through three screen points (w = 1/z)."""
    best = None
    n = len(u)
    for i in range(1, n - 1):
        det = (u[i] - u[0]) * (v[i + 1] - v[0]) - (v[i] - v[0]) * (u[i + 1] - u[0])
        if best is None or abs(det) > abs(best[0]):
            best = (det, i)
    det, i = best
    if det == 0.0:
        return None
    du1, dv1, dw1 = u[i] - u[0], v[i] - v[0], w[i] - w[0]
    du2, dv2, dw2 = u[i + 1] - u[0], v[i + 1] - v[0], w[i + 1] - w[0]
    a = (dw1 * dv2 - dw2 * dv1) / det
    b = (du1 * dw2 - du2 * dw1) / det
    c = w[0] - a * u[0] - b * v[0]
    return a, b, c


class _Raster:
    """Shared buffers for one rasterization pass."""

    def __init__(self, width: int, height: int, want_color: bool):
        self.width = width
        self.height = height
        self.wbuf = np.zeros((height, width), dtype=np.float64)
        self.ids = np.full((height, width), -1, dtype=np.int32)
        self.rgb = np.zeros((height, width, 3), dtype=np.float64) if want_color else None

    def draw(self, face: _Face, cam_info) -> None:
        right, down, forward, eye, f, cx, cy = cam_info
        rel = face.verts - eye
        cam = np.c_[rel @ right, rel @ down, rel @ forward]
        cam = _clip_near(cam)
        if len(cam) == 0:
            return
        u = cx + f * cam[:, 0] / cam[:, 2]
        v = cy + f * cam[:, 1] / cam[:, 2]
        # quantize to the fixed-point grid before any coverage decision
        ui = np.round(u * FP).astype(np.int64)
        vi = np.round(v * FP).astype(np.int64)
        area2 = int(np.sum(ui * np.roll(vi, -1) - np.roll(ui, -1) * vi))
        if area2 == 0:
            return
        if area2 < 0:
            ui, vi, cam = ui[::-1], vi[::-1], cam[::-1]
        coeffs = _depth_coeffs(ui / FP, vi / FP, 1.0 / cam[:, 2])
        if coeffs is None:
            return
        a, b, c = coeffs

        x0 = max(0, int(np.min(ui) // FP))
        x1 = min(self.width - 1, int(np.max(ui) // FP) + 1)
        y0 = max(0, int(np.min(vi) // FP))
        y1 = min(self.height - 1, int(np.max(vi) // FP) + 1)
        if x0 > x1 or y0 > y1:
            return
        px = (np.arange(x0, x1 + 1, dtype=np.int64) * FP + FP // 2)[None, :]
        py = (np.arange(y0, y1 + 1, dtype=np.int64) * FP + FP // 2)[:, None]
        inside = np.ones((y1 - y0 + 1, x1 - x0 + 1), dtype=bool)
        n = len(ui)
        for i in range(n):
            j = (i + 1) % n
            e = (ui[j] - ui[i]) * (py - vi[i]) - (vi[j] - vi[i]) * (px - ui[i])
            inside &= e >= 0
            if not inside.any():
                return
        w = a * (px / FP) + b * (py / FP) + c
        win = inside & (w > self.wbuf[y0 : y1 + 1, x0 : x1 + 1]) & (w > 0)
        if not win.any():
            return
        sub_w = self.wbuf[y0 : y1 + 1, x0 : x1 + 1]
        sub_i = self.ids[y0 : y1 + 1, x0 : x1 + 1]
        sub_w[win] = w[win]
        sub_i[win] = face.obj_index
        if self.rgb is None:
            return
        sub_rgb = self.rgb[y0 : y1 + 1, x0 : x1 + 1]
        color = np.broadcast_to(face.rgb, win.shape + (3,)).copy()
        if face.texture is not None and face.texture.pattern != "flat":
            color = self._pattern_color(face, w, px, py, cam_info, win, color)
        if face.material == "metal":
            streak = (((px + py) // (6 * FP)) % 5 == 0) & win
            color[streak] = np.minimum(color[streak] * 1.35, 255.0)
        if face.material == "glass":
            blend = GLASS_BACKGROUND_BLEND
            color = (1.0 - blend) * color + blend * sub_rgb
        sub_rgb[win] = color[win]

    def _pattern_color(self, face, w, px, py, cam_info, win, color):
        right, down, forward, eye, f, cx, cy = cam_info
        z = np.where(win, 1.0 / np.where(win, w, 1.0), 0.0)
        dx = (px / FP - cx) / f
        dy = (py / FP - cy) / f
        world = (
            eye[None, None, :]
            + z[..., None] * (dx[..., None] * right + dy[..., None] * down + forward)
        )
        origin, u_axis, v_axis = face.tex_frame
        tex = face.texture
        pu = np.floor((world - origin) @ u_axis / tex.cell).astype(np.int64)
        pv = np.floor((world - origin) @ v_axis / tex.cell).astype(np.int64)
        if tex.pattern == "checker":
            alt = (pu + pv) % 2 == 1
        else:  # stripes
            alt = pu % 2 == 1
        secondary = _shade(np.array(tex.secondary, dtype=float), face.normal)
        color[alt & win] = secondary
        return color


def _cam_info(camera: "Camera", width: int, height: int):
    right, down, forward = camera_basis(camera.yaw, camera.pitch)
    eye = np.array(camera.position, dtype=float)
    f = (width / 2.0) / math.tan(math.radians(camera.fov) / 2.0)
    return right, down, forward, eye, f, width / 2.0, height / 2.0


def _face_depth(face: _Face, eye: np.ndarray, forward: np.ndarray) -> float:
    return float((face.verts.mean(axis=0) - eye) @ forward)


def _rasterize(
    state: "SceneState",
    camera: "Camera",
    width: int,
    height: int,
    want_color: bool,
    include_room: bool,
) -> tuple[Optional[np.ndarray], np.ndarray, list[str]]:
    faces, ids = _object_faces(state)
    if include_room:
        faces = _room_faces(state) + faces
    info = _cam_info(camera, width, height)
    eye, forward = info[3], info[2]
    # backface cull, then paint far-to-near with the depth guard deciding ties
    kept = [f for f in faces if np.dot(f.normal, f.verts[0] - eye) < 0.0]
    order = sorted(range(len(kept)), key=lambda i: (-_face_depth(kept[i], eye, forward), i))
    ras = _Raster(width, height, want_color)
    for i in order:
        ras.draw(kept[i], info)
    return ras.rgb, ras.ids, ids


def render(state: "SceneState", cfg: RenderConfig = RenderConfig()) -> np.ndarray:
    """Render a scene to an (H, W, 3) uint8 array."""
    ss = cfg.supersampling
    size = cfg.resolution * ss
    rgb, _, _ = _rasterize(state, state.camera, size, size, True, True)
    img = np.clip(np.rint(rgb), 0, 255).astype(np.uint16)
    if ss > 1:
        img = img.reshape(cfg.resolution, ss, cfg.resolution, ss, 3).sum(axis=(1, 3)) // (ss * ss)
    return img.astype(np.uint8)


def render_png_bytes(state: "SceneState", cfg: RenderConfig = RenderConfig()) -> bytes:
    return encode_png(render(state, cfg))


def encode_png(img: np.ndarray) -> bytes:
    """Encode with pinned settings so equal pixels give equal bytes."""
    buf = io.BytesIO()
    Image.fromarray(img, mode="RGB").save(buf, format="PNG", compress_level=6, optimize=False)
    return buf.getvalue()


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def id_map(state: "SceneState", camera: "Camera", size: int = 128) -> tuple[np.ndarray, list[str]]:
    """Per-pixel front-most object index at probe resolution (-1 = none)."""
    _, ids, id_list = _rasterize(state, camera, size, size, False, False)
    return ids, id_list


def visible_pixel_counts(state: "SceneState", camera: "Camera", size: int = 128) -> dict[str, int]:
    ids, id_list = id_map(state, camera, size)
    counts = np.bincount(ids[ids >= 0].ravel(), minlength=len(id_list))
    return {oid: int(counts[i]) for i, oid in enumerate(id_list)}


def silhouette_mask(state: "SceneState", cfg: RenderConfig, object_id: str) -> np.ndarray:
    """Boolean mask of pixels where the object is front-most, at cfg resolution."""
    from .errors import TargetMissing

    if object_id not in state.objects:
        raise TargetMissing(f"no object {object_id!r} in scene")
    ss = cfg.supersampling
    size = cfg.resolution * ss
    _, ids, id_list = _rasterize(state, state.camera, size, size, False, True)
    idx = id_list.index(object_id)
    mask = ids == idx
    if ss > 1:
        mask = mask.reshape(cfg.resolution, ss, cfg.resolution, ss).any(axis=(1, 3))
    return mask


def project_points(camera: "Camera", points: np.ndarray, width: int, height: int) -> np.ndarray:
    """Project world points to (u, v, z_cam); z_cam <= 0 means behind the camera."""
    right, down, forward, eye, f, cx, cy = _cam_info(camera, width, height)
    rel = np.atleast_2d(points) - eye
    x = rel @ right
    y = rel @ down
    z = rel @ forward
    with np.errstate(divide="ignore", invalid="ignore"):
        u = cx + f * x / z
        v = cy + f * y / z
    return np.c_[u, v, z]
