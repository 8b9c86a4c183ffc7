"""Symbolic scene state: rooms, objects, cameras, and procedural initialization.

A scene is a small z-up world: an 8x8x3 room, a handful of primitive objects
standing on the floor (or stacked on supporters), and a perspective camera
that must keep every object adequately visible. All coordinates live on a
1e-6 grid so serialized states are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Optional

import numpy as np

from . import render
from .catalog import (
    ASSETS,
    AssetSpec,
    SUPPORTER_CATEGORIES,
    TEXTURE_IDS,
)
from .errors import CameraSearchExhausted, CatalogTooSmall
from .geometry import AABB, aabb_from_footprint, look_angles, q6, yaw_extents
from .rng import stream

if TYPE_CHECKING:  # pragma: no cover
    from .ops import EditOp

STATE_SCHEMA_VERSION = 1


@dataclass
class Room:
    width: float = 8.0
    depth: float = 8.0
    height: float = 3.0
    floor_texture: str = "concrete"
    wall_texture: str = "white_tile"


@dataclass
class Camera:
    position: tuple[float, float, float]
    yaw: float
    pitch: float
    fov: float = 60.0


@dataclass
class SceneObject:
    id: str
    label: str
    category: str
    position: tuple[float, float, float]  # AABB-bottom center
    yaw: float
    scale: float
    color: str
    material: str
    base_size: tuple[float, float, float]
    shape: str
    supporter_of: set[str] = field(default_factory=set)
    supported_by: Optional[str] = None

    @property
    def size(self) -> tuple[float, float, float]:
        return tuple(d * self.scale for d in self.base_size)

    @property
    def aabb(self) -> AABB:
        sx, sy, sz = self.size
        hx, hy = yaw_extents(sx, sy, self.yaw)
        x, y, z = self.position
        return aabb_from_footprint(x, y, z, hx, hy, sz)

    @property
    def top_z(self) -> float:
        return self.aabb.max_z

    def clone(self) -> "SceneObject":
        return replace(self, supporter_of=set(self.supporter_of))


@dataclass
class ExecutedOpRecord:
    """Undo-complete log entry for one applied operation."""

    op: "EditOp"
    affected_ids: list[str]
    prior_positions: dict[str, tuple[float, float, float]]
    prior_attributes: dict


@dataclass
class SceneConfig:
    max_objects: int = 9  # sampled on top of the mandatory supporter
    # A centered square small enough that a 60-degree camera inside the room
    # can frame any layout; 5x5 is geometrically unreachable at this fov.
    placement_region: tuple[float, float, float, float] = (2.3, 2.3, 5.7, 5.7)
    fov: float = 60.0
    placement_retries: int = 64
    camera_samples: int = 256
    min_visible_pixels: int = 50
    probe_resolution: int = 128
    frame_margin_px: int = 4  # margin used only when sampling the initial camera
    labels: Optional[tuple[str, ...]] = None  # restrict the catalog (holdout splits)

    def catalog_entries(self) -> tuple[AssetSpec, ...]:
        if self.labels is None:
            return ASSETS
        allowed = set(self.labels)
        return tuple(a for a in ASSETS if a.label in allowed)


@dataclass
class SceneState:
    room: Room
    objects: dict[str, SceneObject]
    camera: Camera
    op_log: list[ExecutedOpRecord]
    rng_cursor: dict
    initial_positions: dict[str, tuple[float, float, float]]
    config: SceneConfig
    id_counter: int = 0

    def clone(self) -> "SceneState":
        return SceneState(
            room=replace(self.room),
            objects={k: v.clone() for k, v in self.objects.items()},
            camera=replace(self.camera),
            op_log=list(self.op_log),
            rng_cursor=dict(self.rng_cursor),
            initial_positions=self.initial_positions,
            config=self.config,
            id_counter=self.id_counter,
        )

    def labels_in_scene(self) -> set[str]:
        return {o.label for o in self.objects.values()}

    def by_label(self, label: str) -> Optional[SceneObject]:
        for obj in self.objects.values():
            if obj.label == label:
                return obj
        return None

    def room_aabb(self) -> AABB:
        return AABB(0.0, 0.0, 0.0, self.room.width, self.room.depth, self.room.height)


# -- collision and support geometry -------------------------------------------


def collides(state: SceneState, box: AABB, ignore: Iterable[str] = ()) -> bool:
    skip = set(ignore)
    if not state.room_aabb().contains(box):
        return True
    return any(box.intersects(o.aabb) for oid, o in state.objects.items() if oid not in skip)


def find_free_position(
    state: SceneState,
    footprint: tuple[float, float, float],
    region: tuple[float, float, float, float],
    rng: np.random.Generator,
    retries: int = 64,
    z_bottom: float = 0.0,
    ignore: Iterable[str] = (),
) -> Optional[tuple[float, float]]:
    """Seeded rejection sampling for a collision-free (x, y); None if exhausted.

    footprint is (half_x, half_y, height) of the candidate AABB.
    """
    hx, hy, h = footprint
    x_lo, y_lo, x_hi, y_hi = region
    x_lo, x_hi = x_lo + hx, x_hi - hx
    y_lo, y_hi = y_lo + hy, y_hi - hy
    if x_lo > x_hi or y_lo > y_hi:
        return None
    for _ in range(retries):
        x = q6(rng.uniform(x_lo, x_hi))
        y = q6(rng.uniform(y_lo, y_hi))
        if not collides(state, aabb_from_footprint(x, y, z_bottom, hx, hy, h), ignore):
            return x, y
    return None


def settle_on_floor(state: SceneState, object_id: str) -> SceneState:
    """Drop the object so its bottom rests on the floor or its supporter's top."""
    obj = state.objects[object_id]
    z = 0.0
    if obj.supported_by is not None:
        z = state.objects[obj.supported_by].top_z
    obj.position = (obj.position[0], obj.position[1], q6(z))
    return state


def check_visibility(state: SceneState, camera: Camera) -> dict[str, int]:
    """Visible pixel count per object at probe resolution (painter occlusion)."""
    return render.visible_pixel_counts(state, camera, state.config.probe_resolution)


def camera_sees_all(state: SceneState, camera: Camera, margin_px: int = 0) -> bool:
    """True when every object projects fully in-frame with enough visible pixels."""
    cfg = state.config
    size = cfg.probe_resolution
    room = state.room_aabb()
    eye = camera.position
    if not (
        room.min_x < eye[0] < room.max_x
        and room.min_y < eye[1] < room.max_y
        and room.min_z < eye[2] < room.max_z
    ):
        return False
    corners = []
    for obj in state.objects.values():
        b = obj.aabb
        for x in (b.min_x, b.max_x):
            for y in (b.min_y, b.max_y):
                for z in (b.min_z, b.max_z):
                    corners.append((x, y, z))
    if not corners:
        return True
    uvz = render.project_points(camera, np.array(corners), size, size)
    if (uvz[:, 2] <= 0).any():
        return False
    lo, hi = margin_px, size - margin_px
    if (uvz[:, 0] < lo).any() or (uvz[:, 0] > hi).any():
        return False
    if (uvz[:, 1] < lo).any() or (uvz[:, 1] > hi).any():
        return False
    counts = check_visibility(state, camera)
    return all(counts[oid] >= cfg.min_visible_pixels for oid in state.objects)


# -- procedural initialization -------------------------------------------------


def _new_object(state: SceneState, spec: AssetSpec, x: float, y: float, yaw: float) -> SceneObject:
    oid = f"obj{state.id_counter}"
    state.id_counter += 1
    obj = SceneObject(
        id=oid,
        label=spec.label,
        category=spec.category,
        position=(q6(x), q6(y), 0.0),
        yaw=q6(yaw % 360.0),
        scale=1.0,
        color=spec.default_color,
        material=spec.default_material,
        base_size=spec.base_size,
        shape=spec.shape,
    )
    state.objects[oid] = obj
    return obj


def sample_camera(state: SceneState, rng: np.random.Generator) -> Camera:
    """One candidate camera aimed at the object centroid from a ring around it."""
    room = state.room
    cx, cy = room.width / 2.0, room.depth / 2.0
    angle = rng.uniform(0.0, 360.0)
    radius = rng.uniform(3.4, 5.2)
    ex = cx + radius * np.cos(np.radians(angle))
    ey = cy + radius * np.sin(np.radians(angle))
    ez = rng.uniform(1.5, 2.2)
    ex = float(np.clip(ex, 0.45, room.width - 0.45))
    ey = float(np.clip(ey, 0.45, room.depth - 0.45))
    if state.objects:
        pts = np.array([o.position for o in state.objects.values()])
        aim = pts.mean(axis=0) + [rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), 0.35]
    else:
        aim = np.array([cx, cy, 0.5])
    yaw, pitch = look_angles(np.array([ex, ey, ez]), aim)
    return Camera(
        position=(q6(ex), q6(ey), q6(ez)),
        yaw=q6(yaw),
        pitch=q6(pitch),
        fov=state.config.fov,
    )


def init_scene(config: SceneConfig, seed: int) -> SceneState:
    """Build a room, a centered supporter, up to N sampled objects, and a camera.

    Objects that cannot be placed collision-free within the retry budget are
    skipped. Identical (config, seed) pairs produce bit-identical states.
    """
    entries = config.catalog_entries()
    supporters = [a for a in entries if a.is_supporter]
    if config.max_objects < 1 or not supporters:
        raise CatalogTooSmall("need max_objects >= 1 and at least one supporter entry")
    if len(entries) < config.max_objects + 1:
        raise CatalogTooSmall(
            f"catalog has {len(entries)} labels, need {config.max_objects + 1}"
        )

    room_rng = stream(seed, "room")
    room = Room(
        floor_texture=TEXTURE_IDS[int(room_rng.integers(len(TEXTURE_IDS)))],
        wall_texture=TEXTURE_IDS[int(room_rng.integers(len(TEXTURE_IDS)))],
    )
    state = SceneState(
        room=room,
        objects={},
        camera=Camera((4.0, 1.0, 1.8), 90.0, -15.0, config.fov),
        op_log=[],
        rng_cursor={"seed": int(seed), "ops": 0},
        initial_positions={},
        config=config,
    )

    sup_rng = stream(seed, "supporter")
    sup_spec = supporters[int(sup_rng.integers(len(supporters)))]
    _new_object(state, sup_spec, room.width / 2.0, room.depth / 2.0, sup_rng.uniform(0.0, 360.0))

    label_rng = stream(seed, "labels")
    pool = [a.label for a in entries if a.label != sup_spec.label]
    picked = list(label_rng.choice(len(pool), size=config.max_objects, replace=False))
    by_label = {a.label: a for a in entries}

    for i, pick in enumerate(picked):
        spec = by_label[pool[int(pick)]]
        place_rng = stream(seed, "place", i)
        yaw = place_rng.uniform(0.0, 360.0)
        hx, hy = yaw_extents(spec.base_size[0], spec.base_size[1], yaw)
        pos = find_free_position(
            state,
            (hx, hy, spec.base_size[2]),
            config.placement_region,
            place_rng,
            retries=config.placement_retries,
        )
        if pos is None:
            continue  # placement failed, skip this object
        _new_object(state, spec, pos[0], pos[1], yaw)

    for oid, obj in state.objects.items():
        state.initial_positions[oid] = obj.position

    for attempt in range(config.camera_samples):
        cam = sample_camera(state, stream(seed, "camera", attempt))
        if camera_sees_all(state, cam, margin_px=config.frame_margin_px):
            state.camera = cam
            return state
    raise CameraSearchExhausted(f"no camera pose found in {config.camera_samples} samples")


# -- undo -----------------------------------------------------------------------


def revert(state: SceneState, record: ExecutedOpRecord) -> SceneState:
    """Restore the state that preceded ``record`` (fields restored bit-exactly)."""
    out = state.clone()
    snap = record.prior_attributes
    for oid in snap.get("removed", []):
        del out.objects[oid]
    for oid, fields in snap.get("objects", {}).items():
        restored = SceneObject(
            id=oid,
            label=fields["label"],
            category=fields["category"],
            position=tuple(fields["position"]),
            yaw=fields["yaw"],
            scale=fields["scale"],
            color=fields["color"],
            material=fields["material"],
            base_size=tuple(fields["base_size"]),
            shape=fields["shape"],
            supporter_of=set(fields["supporter_of"]),
            supported_by=fields["supported_by"],
        )
        out.objects[oid] = restored
    if "camera" in snap:
        c = snap["camera"]
        out.camera = Camera(tuple(c["position"]), c["yaw"], c["pitch"], c["fov"])
    if "room" in snap:
        r = snap["room"]
        out.room = Room(out.room.width, out.room.depth, out.room.height,
                        r["floor_texture"], r["wall_texture"])
    if "id_counter" in snap:
        out.id_counter = snap["id_counter"]
    out.op_log = out.op_log[:-1] if out.op_log and out.op_log[-1] is record else out.op_log
    out.rng_cursor = dict(state.rng_cursor)
    out.rng_cursor["ops"] = max(0, out.rng_cursor.get("ops", 0) - 1)
    return out


def object_snapshot(obj: SceneObject) -> dict:
    return {
        "label": obj.label,
        "category": obj.category,
        "position": list(obj.position),
        "yaw": obj.yaw,
        "scale": obj.scale,
        "color": obj.color,
        "material": obj.material,
        "base_size": list(obj.base_size),
        "shape": obj.shape,
        "supporter_of": sorted(obj.supporter_of),
        "supported_by": obj.supported_by,
    }


# -- canonical serialization -----------------------------------------------------


def _canon(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_canon(v) for v in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ",".join(f"{json.dumps(str(k))}:{_canon(v)}" for k, v in items) + "}"
    raise TypeError(f"cannot canonicalize {type(value)!r}")


def canonical_json(obj) -> str:
    """Sorted keys, floats fixed to 6 decimals; byte equality = semantic equality."""
    return _canon(obj)


def state_to_dict(state: SceneState) -> dict:
    return {
        "schema_version": STATE_SCHEMA_VERSION,
        "room": {
            "width": state.room.width,
            "height": state.room.height,
            "depth": state.room.depth,
            "floor_texture": state.room.floor_texture,
            "wall_texture": state.room.wall_texture,
        },
        "objects": {oid: object_snapshot(o) for oid, o in state.objects.items()},
        "camera": {
            "position": list(state.camera.position),
            "yaw": state.camera.yaw,
            "pitch": state.camera.pitch,
            "fov": state.camera.fov,
        },
        "op_log": [record_to_dict(r) for r in state.op_log],
        "rng_cursor": dict(state.rng_cursor),
        "initial_positions": {k: list(v) for k, v in state.initial_positions.items()},
        "id_counter": state.id_counter,
    }


def record_to_dict(record: ExecutedOpRecord) -> dict:
    return {
        "op": record.op.to_dict(),
        "affected_ids": list(record.affected_ids),
        "prior_positions": {k: list(v) for k, v in record.prior_positions.items()},
        "prior_attributes": record.prior_attributes,
    }


def state_to_json(state: SceneState) -> str:
    return canonical_json(state_to_dict(state))


def state_from_dict(data: dict, config: Optional[SceneConfig] = None) -> SceneState:
    from .ops import EditOp

    room = Room(
        width=data["room"]["width"],
        depth=data["room"]["depth"],
        height=data["room"]["height"],
        floor_texture=data["room"]["floor_texture"],
        wall_texture=data["room"]["wall_texture"],
    )
    objects = {}
    for oid, f in data["objects"].items():
        objects[oid] = SceneObject(
            id=oid,
            label=f["label"],
            category=f["category"],
            position=tuple(f["position"]),
            yaw=f["yaw"],
            scale=f["scale"],
            color=f["color"],
            material=f["material"],
            base_size=tuple(f["base_size"]),
            shape=f["shape"],
            supporter_of=set(f["supporter_of"]),
            supported_by=f["supported_by"],
        )
    cam = data["camera"]
    records = []
    for r in data.get("op_log", []):
        records.append(
            ExecutedOpRecord(
                op=EditOp.from_dict(r["op"]),
                affected_ids=list(r["affected_ids"]),
                prior_positions={k: tuple(v) for k, v in r["prior_positions"].items()},
                prior_attributes=r["prior_attributes"],
            )
        )
    return SceneState(
        room=room,
        objects=objects,
        camera=Camera(tuple(cam["position"]), cam["yaw"], cam["pitch"], cam["fov"]),
        op_log=records,
        rng_cursor=dict(data["rng_cursor"]),
        initial_positions={k: tuple(v) for k, v in data["initial_positions"].items()},
        config=config or SceneConfig(),
        id_counter=data["id_counter"],
    )


def state_from_json(text: str, config: Optional[SceneConfig] = None) -> SceneState:
    return state_from_dict(json.loads(text), config)
