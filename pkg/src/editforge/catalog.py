"""Built-in asset, color, material, and texture catalogs.

Assets are procedural primitives (box / cylinder / sphere / composite) with
hand-picked base sizes in meters. Labels are unique across the catalog and a
fifth of them, chosen deterministically, form the held-out benchmark split.
"""

from __future__ import annotations

from dataclasses import dataclass

COLOR_NAMES = (
    "red",
    "blue",
    "green",
    "yellow",
    "orange",
    "purple",
    "pink",
    "white",
    "black",
    "gray",
    "brown",
    "beige",
)

COLOR_RGB: dict[str, tuple[int, int, int]] = {
    "red": (200, 44, 44),
    "blue": (52, 92, 200),
    "green": (62, 158, 72),
    "yellow": (228, 208, 64),
    "orange": (234, 140, 52),
    "purple": (140, 72, 180),
    "pink": (234, 132, 178),
    "white": (240, 240, 240),
    "black": (36, 36, 36),
    "gray": (130, 130, 130),
    "brown": (138, 94, 60),
    "beige": (219, 205, 176),
}

MATERIAL_NAMES = ("wood", "metal", "plastic", "fabric", "glass")

# Per-channel multiplicative tints; glass additionally blends 40% of whatever
# is behind it, metal gets a bright diagonal streak (handled by the renderer).
MATERIAL_TINT: dict[str, tuple[float, float, float]] = {
    "wood": (0.97, 0.88, 0.76),
    "metal": (0.74, 0.79, 0.88),
    "plastic": (1.0, 1.0, 1.0),
    "fabric": (0.85, 0.85, 0.85),
    "glass": (0.6, 0.6, 0.6),
}
GLASS_BACKGROUND_BLEND = 0.4


@dataclass(frozen=True)
class TextureSpec:
    texture_id: str
    display_name: str
    pattern: str  # "flat" | "checker" | "stripes"
    primary: tuple[int, int, int]
    secondary: tuple[int, int, int] | None = None
    cell: float = 1.0  # pattern cell size in meters


TEXTURES: tuple[TextureSpec, ...] = (
    TextureSpec("wood_floor", "wood floor", "stripes", (150, 105, 66), (128, 86, 52), 0.5),
    TextureSpec("concrete", "concrete", "flat", (148, 148, 144)),
    TextureSpec("white_tile", "white tile", "checker", (235, 235, 232), (214, 214, 210), 1.0),
    TextureSpec("gray_tile", "gray tile", "checker", (150, 152, 156), (122, 124, 128), 1.0),
    TextureSpec("red_brick", "red brick", "stripes", (158, 74, 54), (134, 60, 44), 0.25),
    TextureSpec("marble", "marble", "checker", (226, 224, 218), (204, 202, 198), 2.0),
    TextureSpec("dark_slate", "dark slate", "flat", (72, 76, 82)),
    TextureSpec("sand", "sand", "flat", (212, 192, 150)),
    TextureSpec("terracotta", "terracotta", "flat", (182, 112, 74)),
    TextureSpec("blue_carpet", "blue carpet", "flat", (74, 96, 146)),
    TextureSpec("green_carpet", "green carpet", "flat", (86, 128, 92)),
    TextureSpec("checkerboard", "checkerboard", "checker", (206, 206, 206), (70, 70, 70), 1.0),
)

TEXTURE_BY_ID = {t.texture_id: t for t in TEXTURES}
TEXTURE_BY_NAME = {t.display_name: t for t in TEXTURES}
TEXTURE_IDS = tuple(t.texture_id for t in TEXTURES)

SUPPORTER_CATEGORIES = ("table", "desk", "bench", "cabinet")


@dataclass(frozen=True)
class AssetSpec:
    label: str
    category: str
    base_size: tuple[float, float, float]  # x, y, z meters at scale 1
    is_supporter: bool
    default_color: str
    default_material: str
    shape: str  # "box" | "cylinder" | "sphere" | "composite"


def _sup(label: str, category: str, size, color: str) -> AssetSpec:
    return AssetSpec(label, category, size, True, color, "wood", "composite")


def _obj(label, category, size, color, material="plastic", shape="box") -> AssetSpec:
    return AssetSpec(label, category, size, False, color, material, shape)


ASSETS: tuple[AssetSpec, ...] = (
    # supporters: 4 categories x 4 labels
    _sup("table", "table", (1.25, 0.85, 0.74), "brown"),
    _sup("coffee table", "table", (1.05, 0.65, 0.48), "brown"),
    _sup("dining table", "table", (1.55, 0.95, 0.76), "beige"),
    _sup("side table", "table", (0.6, 0.6, 0.6), "gray"),
    _sup("desk", "desk", (1.4, 0.7, 0.75), "brown"),
    _sup("writing desk", "desk", (1.2, 0.6, 0.76), "beige"),
    _sup("office desk", "desk", (1.6, 0.8, 0.74), "gray"),
    _sup("standing desk", "desk", (1.3, 0.7, 1.1), "black"),
    _sup("bench", "bench", (1.5, 0.45, 0.46), "brown"),
    _sup("wooden bench", "bench", (1.3, 0.4, 0.44), "brown"),
    _sup("piano bench", "bench", (0.95, 0.38, 0.5), "black"),
    _sup("workbench", "bench", (1.6, 0.7, 0.9), "gray"),
    _sup("cabinet", "cabinet", (0.9, 0.5, 1.0), "brown"),
    _sup("file cabinet", "cabinet", (0.5, 0.6, 1.05), "gray"),
    _sup("display cabinet", "cabinet", (1.0, 0.45, 1.3), "beige"),
    _sup("kitchen cabinet", "cabinet", (1.2, 0.6, 0.9), "white"),
    # kitchenware
    _obj("cup", "kitchenware", (0.34, 0.34, 0.32), "white", "plastic", "cylinder"),
    _obj("mixing bowl", "kitchenware", (0.45, 0.45, 0.32), "blue", "metal", "cylinder"),
    _obj("pot", "kitchenware", (0.5, 0.5, 0.4), "gray", "metal", "cylinder"),
    _obj("toaster", "kitchenware", (0.42, 0.3, 0.32), "gray", "metal"),
    _obj("kettle", "kitchenware", (0.34, 0.34, 0.4), "black", "metal", "cylinder"),
    _obj("can", "kitchenware", (0.32, 0.32, 0.4), "green", "metal", "cylinder"),
    # electronics
    _obj("speaker", "electronics", (0.4, 0.35, 0.7), "black"),
    _obj("wifi router", "electronics", (0.42, 0.34, 0.32), "white"),
    _obj("keyboard", "electronics", (0.55, 0.34, 0.32), "black"),
    _obj("monitor", "electronics", (0.65, 0.34, 0.55), "black"),
    _obj("mouse", "electronics", (0.34, 0.32, 0.32), "gray"),
    _obj("tablet", "electronics", (0.45, 0.34, 0.32), "black"),
    # decor
    _obj("vase", "decor", (0.35, 0.35, 0.6), "blue", "glass", "cylinder"),
    _obj("frame", "decor", (0.5, 0.32, 0.62), "beige", "wood"),
    _obj("candle", "decor", (0.34, 0.34, 0.45), "white", "plastic", "cylinder"),
    _obj("clock", "decor", (0.42, 0.34, 0.45), "black", "plastic", "cylinder"),
    _obj("mirror", "decor", (0.6, 0.28, 0.9), "gray", "glass"),
    _obj("lamp", "decor", (0.4, 0.4, 0.95), "yellow", "metal", "composite"),
    # toys
    _obj("basketball", "toys", (0.38, 0.38, 0.38), "orange", "fabric", "sphere"),
    _obj("teddy bear", "toys", (0.42, 0.35, 0.55), "brown", "fabric"),
    _obj("toy car", "toys", (0.5, 0.34, 0.32), "red", "plastic"),
    _obj("rubik cube", "toys", (0.34, 0.34, 0.34), "yellow", "plastic"),
    _obj("chess board", "toys", (0.5, 0.5, 0.32), "white", "wood"),
    _obj("shoe", "toys", (0.45, 0.34, 0.32), "red", "fabric"),
    # tools
    _obj("hatchet", "tools", (0.6, 0.32, 0.32), "gray", "metal"),
    _obj("hammer", "tools", (0.5, 0.32, 0.32), "black", "metal"),
    _obj("screwdriver", "tools", (0.45, 0.32, 0.32), "orange", "metal"),
    _obj("wrench", "tools", (0.45, 0.32, 0.32), "gray", "metal"),
    _obj("bench vice", "tools", (0.5, 0.35, 0.42), "blue", "metal"),
    _obj("drill", "tools", (0.42, 0.34, 0.35), "green", "metal"),
    # stationery
    _obj("book", "stationery", (0.42, 0.34, 0.32), "blue", "plastic"),
    _obj("notebook", "stationery", (0.4, 0.34, 0.32), "green", "plastic"),
    _obj("pen holder", "stationery", (0.34, 0.34, 0.36), "black", "plastic", "cylinder"),
    _obj("stapler", "stationery", (0.42, 0.32, 0.32), "red", "plastic"),
    _obj("tissue box", "stationery", (0.42, 0.34, 0.32), "white", "plastic"),
    _obj("folder", "stationery", (0.45, 0.34, 0.32), "yellow", "plastic"),
    # sports
    _obj("dumbbell", "sports", (0.5, 0.34, 0.32), "black", "metal"),
    _obj("tennis racket", "sports", (0.75, 0.35, 0.32), "green", "plastic"),
    _obj("yoga mat", "sports", (1.45, 0.5, 0.32), "purple", "fabric"),
    _obj("football", "sports", (0.36, 0.36, 0.36), "white", "fabric", "sphere"),
    _obj("skateboard", "sports", (1.2, 0.42, 0.32), "red", "wood"),
    _obj("helmet", "sports", (0.4, 0.35, 0.35), "blue", "plastic", "sphere"),
    # plants & food
    _obj("potted plant", "plants", (0.55, 0.55, 0.85), "green", "plastic", "composite"),
    _obj("flower pot", "plants", (0.4, 0.4, 0.42), "brown", "plastic", "cylinder"),
    _obj("grapefruit", "plants", (0.34, 0.34, 0.34), "orange", "fabric", "sphere"),
    _obj("yellow onion", "plants", (0.34, 0.34, 0.34), "yellow", "fabric", "sphere"),
    _obj("tangerine", "plants", (0.34, 0.34, 0.34), "orange", "fabric", "sphere"),
    _obj("pomegranate", "plants", (0.36, 0.36, 0.36), "red", "fabric", "sphere"),
)

ASSET_BY_LABEL = {a.label: a for a in ASSETS}

assert len(ASSET_BY_LABEL) == len(ASSETS) == 64, "catalog labels must be unique"


def holdout_labels() -> tuple[str, ...]:
    """Deterministic 20% benchmark split: every fifth label in sorted order.

    The split lands on 13 labels and always contains at least one supporter.
    """
    labels = sorted(ASSET_BY_LABEL)
    held = tuple(labels[i] for i in range(2, len(labels), 5))
    if not any(ASSET_BY_LABEL[h].is_supporter for h in held):  # pragma: no cover
        held = held + ("side table",)
    return held


def training_labels() -> tuple[str, ...]:
    held = set(holdout_labels())
    return tuple(a.label for a in ASSETS if a.label not in held)
