"""Synthetic aircraft silhouettes with known dimensions.

Used as a ground-truth oracle: every generated mask comes with the exact
physical length of the shape it was rasterised from.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from airtype import kernels
from airtype.catalog import DEFAULT_CATALOG, Catalog
from airtype.errors import InvalidParameterError, TooSmallError
from airtype.maskio import DetectionRecord, Mask, SceneManifest, manifest_to_dict, save_bitmap
from airtype.photogrammetry import (
    REFERENCE_CAMERA,
    CameraModel,
    GroundResolution,
    ResizeScale,
    altitude_for_gsd,
    meters_to_px,
)

SHAPES = ("rectangle", "stylized-plane")
DEFAULT_ASPECT = {"rectangle": 0.1, "stylized-plane": 0.9}

# Outline of the stylized plane in units of its length, nose at +x.
_FUSELAGE_HALF_WIDTH = 0.07
_CAP = 0.5 * _FUSELAGE_HALF_WIDTH  # blunt caps keep the tip pixels close to the true tip
_CAP_STEPS = 12


@dataclass(frozen=True)
class SilhouetteSpec:
    shortcut: str
    length_m: float
    aspect_ratio: Optional[float] = None  # wingspan (or width) / length
    rotation_deg: float = 0.0
    shape_kind: str = "stylized-plane"
    seed: int = 0

    def __post_init__(self):
        if self.shape_kind not in SHAPES:
            raise InvalidParameterError("shape_kind", self.shape_kind, f"must be one of {SHAPES}")
        if not math.isfinite(self.length_m) or self.length_m <= 0:
            raise InvalidParameterError("length_m", self.length_m)
        if self.aspect_ratio is None:
            object.__setattr__(self, "aspect_ratio", DEFAULT_ASPECT[self.shape_kind])
        if not 0 < self.aspect_ratio <= 1:
            raise InvalidParameterError("aspect_ratio", self.aspect_ratio, "must be in (0, 1]")
        if not 0 <= self.rotation_deg < 360:
            raise InvalidParameterError("rotation_deg", self.rotation_deg, "must be in [0, 360)")


@dataclass(frozen=True)
class Placement:
    spec: SilhouetteSpec
    center: tuple  # (x, y) in processed-image pixel coordinates
    crop_fraction: float = 0.0


@dataclass(frozen=True)
class SynthScene:
    gsd: GroundResolution
    width_px: int
    height_px: int
    placements: tuple = ()
    resize_scale: ResizeScale = ResizeScale()
    camera: CameraModel = REFERENCE_CAMERA


def silhouette_outline(spec: SilhouetteSpec) -> np.ndarray:
    """Polygon vertices in metres, centred on the origin, nose towards +x."""
    a = spec.aspect_ratio
    if spec.shape_kind == "rectangle":
        hw = a / 2
        unit = np.array([[0.5, -hw], [0.5, hw], [-0.5, hw], [-0.5, -hw]])
        return unit * spec.length_m

    f = _FUSELAGE_HALF_WIDTH
    span = a / 2
    stab = max(0.35 * span, f + 0.02)
    # tip chord shrinks for very wide spans so tip-to-tip never beats nose-to-tail
    chord = min(0.08, 0.5 * math.sqrt(1.0 - a * a))
    # elliptical caps from the tip (angle 0) to the fuselage side (angle pi/2)
    t = np.linspace(0.0, math.pi / 2, _CAP_STEPS + 1)
    nose = [(0.5 - _CAP + _CAP * math.cos(u), f * math.sin(u)) for u in t]
    tail = [(-0.5 + _CAP - _CAP * math.cos(u), f * math.sin(u)) for u in t[::-1]]
    upper = nose + [
        (0.10, f), (-0.12, span), (-0.12 - chord, span), (-0.08, f),  # wing
        (-0.30, f), (-0.40, stab), (-0.45, stab), (-0.40, f),  # tailplane
    ] + tail
    lower = [(x, -y) for x, y in upper[-2:0:-1]]
    return np.array(upper + lower) * spec.length_m


def _rotation(deg: float):
    quarter = {0.0: (1.0, 0.0), 90.0: (0.0, 1.0), 180.0: (-1.0, 0.0), 270.0: (0.0, -1.0)}
    if deg in quarter:
        return quarter[deg]
    r = math.radians(deg)
    return math.cos(r), math.sin(r)


def placed_outline(spec: SilhouetteSpec, gsd: GroundResolution, scale: ResizeScale, center) -> np.ndarray:
    """Outline in pixel coordinates after scaling, rotation and translation."""
    px_per_m = meters_to_px(1.0, gsd, scale)
    pts = silhouette_outline(spec) * px_per_m
    c, s = _rotation(float(spec.rotation_deg))
    x = pts[:, 0] * c - pts[:, 1] * s + center[0]
    y = pts[:, 0] * s + pts[:, 1] * c + center[1]
    return np.column_stack((x, y))


def min_resolvable_gsd_cm(length_m: float, scale: ResizeScale = ResizeScale()) -> float:
    """Largest GSD at which ``length_m`` still spans two processed pixels."""
    return length_m * 100.0 / (2.0 * scale.linear_factor)


def rasterize(
    spec: SilhouetteSpec,
    gsd: GroundResolution,
    scale: ResizeScale,
    center,
    image_size,
    allow_crop: bool = False,
) -> Mask:
    """Pixels whose centres fall inside the placed silhouette."""
    width, height = image_size
    length_px = meters_to_px(spec.length_m, gsd, scale)
    limit = min_resolvable_gsd_cm(spec.length_m, scale)
    if length_px < 2:
        raise TooSmallError(
            f"{spec.shortcut}: {spec.length_m} m spans {length_px:.2f} px at {gsd.cm_per_px} cm/px; "
            f"need gsd <= {limit:.4g} cm/px",
            limit,
        )
    poly = placed_outline(spec, gsd, scale, center)
    if not allow_crop:
        lo, hi = poly.min(axis=0), poly.max(axis=0)
        if lo[0] < 0 or lo[1] < 0 or hi[0] > width or hi[1] > height:
            raise InvalidParameterError(
                "center", tuple(center), f"silhouette does not fit in {width}x{height} image"
            )
    grid = kernels.fill_polygon(poly[:, 0], poly[:, 1], width, height)
    mask = Mask.from_grid(grid)
    if len(mask) < 2:
        raise TooSmallError(
            f"{spec.shortcut}: silhouette rasterises to {len(mask)} px at {gsd.cm_per_px} cm/px; "
            f"need gsd <= {limit:.4g} cm/px",
            limit,
        )
    return mask


def polygon_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def build_scene(
    types: Optional[Sequence[str]] = None,
    count: int = 10,
    gsd_cm: float = 30.0,
    seed: int = 7,
    catalog: Catalog = DEFAULT_CATALOG,
    shape_kind: str = "stylized-plane",
    resize_scale: float = 1.0,
    length_m: Optional[float] = None,
    length_offsets: Optional[dict] = None,
    crop_fraction: float = 0.0,
    crop_count: int = 1,
    image_size: Optional[tuple] = None,
) -> SynthScene:
    """Seeded scene of ``count`` silhouettes per type, one per image.

    Rotations are uniform in [0, 360) and centres get sub-pixel jitter.
    ``length_m`` overrides every type's length; ``length_offsets`` adds metres
    per shortcut (ground truth is unchanged). The first ``crop_count``
    placements are pushed ``crop_fraction`` of their extent off the right edge.
    """
    gsd = GroundResolution(gsd_cm)
    scale = ResizeScale(resize_scale)
    if not 0 <= crop_fraction < 1:
        raise InvalidParameterError("crop_fraction", crop_fraction, "must be in [0, 1)")
    types = list(catalog.shortcuts if types is None else types)
    offsets = length_offsets or {}
    rng = np.random.default_rng(seed)
    specs = []
    for shortcut in types:
        base = catalog[shortcut].actual_length_m if length_m is None else length_m
        for _ in range(count):
            specs.append(
                SilhouetteSpec(
                    shortcut=shortcut,
                    length_m=base + offsets.get(shortcut, 0.0),
                    rotation_deg=float(rng.uniform(0.0, 360.0)) % 360.0,
                    shape_kind=shape_kind,
                    seed=int(rng.integers(0, 2**31)),
                )
            )
    if image_size is None:
        longest = max((meters_to_px(s.length_m, gsd, scale) for s in specs), default=2.0)
        side = int(math.ceil(longest * 1.1)) + 8
        image_size = (side, side)
    width, height = image_size
    placements = []
    for k, s in enumerate(specs):
        jitter = np.random.default_rng(s.seed).uniform(-0.5, 0.5, size=2)
        center = (width / 2 + float(jitter[0]), height / 2 + float(jitter[1]))
        crop = crop_fraction if k < crop_count else 0.0
        if crop > 0:
            poly = placed_outline(s, gsd, scale, (0.0, 0.0))
            extent = poly[:, 0].max() - poly[:, 0].min()
            center = (width - poly[:, 0].max() + crop * extent, center[1])
        placements.append(Placement(s, center, crop))
    return SynthScene(gsd, width, height, tuple(placements), scale)


def render_scene(scene: SynthScene) -> list[tuple[str, Mask, str]]:
    """``(image_id, mask, ground_truth)`` for every placement, in order."""
    out = []
    seen = {}
    for p in scene.placements:
        k = seen.get(p.spec.shortcut, 0)
        seen[p.spec.shortcut] = k + 1
        image_id = f"{p.spec.shortcut}_{k:03d}"
        mask = rasterize(p.spec, scene.gsd, scene.resize_scale, p.center,
                         (scene.width_px, scene.height_px), allow_crop=p.crop_fraction > 0)
        out.append((image_id, mask, p.spec.shortcut))
    return out


def scene_manifest(scene: SynthScene) -> SceneManifest:
    flight = altitude_for_gsd(scene.camera, scene.gsd)
    records = tuple(
        DetectionRecord(image_id, mask, gt, scene.resize_scale) for image_id, mask, gt in render_scene(scene)
    )
    return SceneManifest(scene.camera, flight, records)


def generate_manifest(scene: SynthScene, out_dir) -> tuple[SceneManifest, Path]:
    """Write ``masks/*.pgm`` and ``manifest.json`` under ``out_dir``."""
    out_dir = Path(out_dir)
    manifest = scene_manifest(scene)
    mask_dir = out_dir / "masks"
    mask_dir.mkdir(parents=True, exist_ok=True)
    refs = {}
    for rec in manifest.records:
        rel = Path("masks") / f"{rec.image_id}.pgm"
        save_bitmap(rec.mask, out_dir / rel)
        refs[rec.image_id] = rel.as_posix()
    doc = manifest_to_dict(manifest, refs)
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return manifest, path


def with_rotation(spec: SilhouetteSpec, rotation_deg: float) -> SilhouetteSpec:
    return replace(spec, rotation_deg=rotation_deg % 360.0)
