"""Instance masks, their serialisations (RLE, PGM) and scene manifests."""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from airtype import kernels
from airtype.catalog import Catalog
from airtype.errors import (
    DimensionOverflowError,
    InvalidParameterError,
    MalformedHeaderError,
    MalformedRLEError,
    ManifestError,
    MaskFileNotFoundError,
    MaskIOError,
)
from airtype.photogrammetry import CameraModel, FlightParams, ResizeScale

MAX_PIXELS = 1 << 28


class Mask:
    """Foreground pixel set of one detection, with processed-image dimensions.

    Pixels are stored as an ``(N, 2)`` int64 array of unique ``(x, y)`` pairs in
    row-major order. Out-of-bounds pixels are kept (``validate`` reports them)
    but cannot be rasterised.
    """

    __slots__ = ("width_px", "height_px", "coords")

    def __init__(self, width_px: int, height_px: int, pixels: Iterable = ()):
        for name, v in (("width_px", width_px), ("height_px", height_px)):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v <= 0:
                raise InvalidParameterError(name, v, "must be a positive integer")
        self.width_px = int(width_px)
        self.height_px = int(height_px)
        arr = np.asarray(pixels if isinstance(pixels, np.ndarray) else list(pixels), dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if len(arr):
            arr = np.unique(arr, axis=0)
            arr = arr[np.lexsort((arr[:, 0], arr[:, 1]))]
        self.coords = arr

    @classmethod
    def from_grid(cls, grid) -> "Mask":
        """Mask from a ``(height, width)`` array; nonzero cells are foreground."""
        g = np.asarray(grid)
        if g.ndim != 2:
            raise InvalidParameterError("grid", g.shape, "must be 2-D")
        ys, xs = np.nonzero(g)
        m = cls.__new__(cls)
        m.height_px, m.width_px = int(g.shape[0]), int(g.shape[1])
        if m.width_px <= 0 or m.height_px <= 0:
            raise InvalidParameterError("grid", g.shape, "must be non-empty")
        m.coords = np.column_stack((xs, ys)).astype(np.int64)
        return m

    @property
    def pixels(self) -> frozenset:
        return frozenset(map(tuple, self.coords.tolist()))

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        if not isinstance(other, Mask):
            return NotImplemented
        return (
            self.width_px == other.width_px
            and self.height_px == other.height_px
            and np.array_equal(self.coords, other.coords)
        )

    def __repr__(self):
        return f"Mask({self.width_px}x{self.height_px}, {len(self)} px)"

    def out_of_bounds(self) -> np.ndarray:
        c = self.coords
        bad = (c[:, 0] < 0) | (c[:, 0] >= self.width_px) | (c[:, 1] < 0) | (c[:, 1] >= self.height_px)
        return c[bad]

    def touches_border(self) -> bool:
        c = self.coords
        if not len(c):
            return False
        return bool(
            (c[:, 0] == 0).any()
            or (c[:, 1] == 0).any()
            or (c[:, 0] == self.width_px - 1).any()
            or (c[:, 1] == self.height_px - 1).any()
        )

    def to_grid(self) -> np.ndarray:
        if len(self.out_of_bounds()):
            raise InvalidParameterError("pixels", "out of bounds", "mask has pixels outside the image")
        g = np.zeros((self.height_px, self.width_px), dtype=np.uint8)
        g[self.coords[:, 1], self.coords[:, 0]] = 1
        return g


# -- run-length codec ---------------------------------------------------------


def decode_rle(counts, width: int, height: int) -> Mask:
    """Row-major runs, background first: ``[bg, fg, bg, ...]``."""
    try:
        c = [int(v) for v in counts]
    except (TypeError, ValueError):
        raise MalformedRLEError(f"counts must be integers, got {counts!r}") from None
    if any(v < 0 for v in c):
        raise MalformedRLEError("negative run length")
    if sum(c) != width * height:
        raise MalformedRLEError(f"runs sum to {sum(c)}, expected {width}x{height}={width * height}")
    return Mask.from_grid(kernels.rle_decode(np.asarray(c, dtype=np.int64), width, height))


def encode_rle(mask: Mask) -> list[int]:
    return [int(v) for v in kernels.rle_encode(mask.to_grid())]


# -- PGM ------------------------------------------------------------------------

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _pgm_header(data: bytes, path):
    pos = 0
    tokens = []
    for _ in range(4):
        m = _TOKEN.match(data, pos)
        if not m:
            raise MalformedHeaderError(f"{path}: truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise MalformedHeaderError(f"{path}: not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise MalformedHeaderError(f"{path}: non-integer header field") from None
    if width <= 0 or height <= 0 or not 0 < maxval < 65536:
        raise MalformedHeaderError(f"{path}: bad dimensions {width}x{height} / maxval {maxval}")
    if width * height > MAX_PIXELS:
        raise DimensionOverflowError(f"{path}: {width}x{height} exceeds {MAX_PIXELS} pixels")
    return magic, width, height, maxval, pos


def load_bitmap(path) -> Mask:
    """Read a P2/P5 PGM; any value > 0 is foreground."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise MaskFileNotFoundError(f"mask file not found: {path}") from None
    except OSError as exc:
        raise MaskIOError(f"cannot read {path}: {exc}") from exc
    magic, width, height, maxval, pos = _pgm_header(data, path)
    n = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates header and raster
        raster = data[pos + 1:]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        if len(raster) < n * dtype.itemsize:
            raise MalformedHeaderError(f"{path}: raster truncated")
        values = np.frombuffer(raster, dtype=dtype, count=n)
    else:
        parts = data[pos:].split()
        if len(parts) < n:
            raise MalformedHeaderError(f"{path}: raster truncated")
        try:
            values = np.array([int(t) for t in parts[:n]], dtype=np.int64)
        except ValueError:
            raise MalformedHeaderError(f"{path}: non-integer sample") from None
    return Mask.from_grid(values.reshape(height, width) > 0)


def save_bitmap(mask: Mask, path, binary: bool = True) -> None:
    grid = mask.to_grid() * 255
    header = f"{'P5' if binary else 'P2'}\n{mask.width_px} {mask.height_px}\n255\n".encode()
    if binary:
        body = grid.astype(np.uint8).tobytes()
    else:
        body = "\n".join(" ".join(map(str, row)) for row in grid.tolist()).encode() + b"\n"
    Path(path).write_bytes(header + body)


# -- manifests ------------------------------------------------------------------


@dataclass(frozen=True)
class DetectionRecord:
    image_id: str
    mask: Mask
    ground_truth_type: Optional[str] = None
    resize_scale: ResizeScale = ResizeScale()


@dataclass(frozen=True)
class SceneManifest:
    camera: CameraModel
    flight: FlightParams
    records: tuple = ()


@dataclass(frozen=True)
class Finding:
    code: str
    severity: str  # "error" | "warning"
    message: str
    image_id: Optional[str] = None

    def to_dict(self):
        return {"code": self.code, "severity": self.severity, "message": self.message, "image_id": self.image_id}


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ManifestError(f"{where}.{key}" if where else key, "missing")
    return obj[key]


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ManifestError(where, f"expected a finite number, got {value!r}")
    return value


def parse_manifest(doc: dict, base_dir=".") -> SceneManifest:
    """Build a manifest from its JSON document; mask paths resolve against ``base_dir``."""
    if not isinstance(doc, dict):
        raise ManifestError("manifest", "top level must be a JSON object")
    cam = _require(doc, "camera", "")
    cam_fields = {}
    for key in ("sensor_width_mm", "sensor_height_mm", "focal_length_mm", "image_width_px", "image_height_px"):
        cam_fields[key] = _number(_require(cam, key, "camera"), f"camera.{key}")
    try:
        camera = CameraModel(**cam_fields)
    except InvalidParameterError as exc:
        raise ManifestError(f"camera.{exc.field}", str(exc)) from exc
    try:
        flight = FlightParams(_number(_require(doc, "altitude_m", ""), "altitude_m"))
    except InvalidParameterError as exc:
        raise ManifestError("altitude_m", str(exc)) from exc

    raw_records = _require(doc, "records", "")
    if not isinstance(raw_records, list):
        raise ManifestError("records", "must be a list")
    base_dir = Path(base_dir)
    records = []
    for i, rec in enumerate(raw_records):
        where = f"records[{i}]"
        image_id = _require(rec, "image_id", where)
        if not isinstance(image_id, str) or not image_id:
            raise ManifestError(f"{where}.image_id", "must be a non-empty string")
        mask_spec = _require(rec, "mask", where)
        if isinstance(mask_spec, dict) and "path" in mask_spec:
            try:
                mask = load_bitmap(base_dir / mask_spec["path"])
            except MaskIOError as exc:
                raise ManifestError(f"{where}.mask.path", str(exc)) from exc
        elif isinstance(mask_spec, dict) and "rle" in mask_spec:
            rle = mask_spec["rle"]
            try:
                w = int(_number(_require(rle, "width", f"{where}.mask.rle"), f"{where}.mask.rle.width"))
                h = int(_number(_require(rle, "height", f"{where}.mask.rle"), f"{where}.mask.rle.height"))
                mask = decode_rle(_require(rle, "counts", f"{where}.mask.rle"), w, h)
            except (MalformedRLEError, InvalidParameterError) as exc:
                raise ManifestError(f"{where}.mask.rle", str(exc)) from exc
        else:
            raise ManifestError(f"{where}.mask", "needs 'path' or 'rle'")
        gt = rec.get("ground_truth")
        if gt is not None and not isinstance(gt, str):
            raise ManifestError(f"{where}.ground_truth", "must be a string")
        try:
            scale = ResizeScale(_number(rec.get("resize_scale", 1.0), f"{where}.resize_scale"))
        except InvalidParameterError as exc:
            raise ManifestError(f"{where}.resize_scale", str(exc)) from exc
        records.append(DetectionRecord(image_id, mask, gt, scale))
    return SceneManifest(camera, flight, tuple(records))


def load_manifest(path) -> SceneManifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ManifestError("manifest", f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ManifestError("manifest", f"invalid JSON: {exc}") from exc
    return parse_manifest(doc, path.parent)


def manifest_to_dict(manifest: SceneManifest, mask_refs=None) -> dict:
    """Serialise a manifest. ``mask_refs`` maps image_id to a mask path; other
    records are written inline as RLE."""
    mask_refs = mask_refs or {}
    cam = manifest.camera
    records = []
    for r in manifest.records:
        if r.image_id in mask_refs:
            mask_doc = {"path": str(mask_refs[r.image_id])}
        else:
            mask_doc = {"rle": {"width": r.mask.width_px, "height": r.mask.height_px, "counts": encode_rle(r.mask)}}
        rec = {"image_id": r.image_id, "mask": mask_doc}
        if r.ground_truth_type is not None:
            rec["ground_truth"] = r.ground_truth_type
        rec["resize_scale"] = r.resize_scale.linear_factor
        records.append(rec)
    return {
        "camera": {
            "sensor_width_mm": cam.sensor_width_mm,
            "sensor_height_mm": cam.sensor_height_mm,
            "focal_length_mm": cam.focal_length_mm,
            "image_width_px": cam.image_width_px,
            "image_height_px": cam.image_height_px,
        },
        "altitude_m": manifest.flight.altitude_m,
        "records": records,
    }


def validate(manifest: SceneManifest, catalog: Catalog) -> list[Finding]:
    """Inspect every record and return findings; never raises, never mutates."""
    findings = []
    for r in manifest.records:
        m = r.mask
        if len(m) == 0:
            findings.append(Finding("empty-detection", "error", "mask has no foreground pixels", r.image_id))
        oob = m.out_of_bounds()
        if len(oob):
            x, y = oob[0].tolist()
            findings.append(
                Finding(
                    "out-of-bounds",
                    "error",
                    f"{len(oob)} pixel(s) outside {m.width_px}x{m.height_px}, e.g. ({x}, {y})",
                    r.image_id,
                )
            )
        if r.ground_truth_type is not None and r.ground_truth_type not in catalog:
            findings.append(
                Finding("unknown-type", "error", f"ground truth {r.ground_truth_type!r} not in catalog", r.image_id)
            )
        if m.touches_border():
            findings.append(
                Finding("border-touching", "warning", "mask touches the image border; aircraft may be cropped", r.image_id)
            )
    return findings
