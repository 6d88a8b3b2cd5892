"""Aircraft type identification from nadir drone instance masks.

Pipeline: ground sample distance from the camera model, mask length from the
farthest pair of pixels, nearest-length match against a fleet catalog.
"""
__version__ = "0.1.0"

from airtype.catalog import DEFAULT_CATALOG, AircraftSpec, Catalog, load_catalog
from airtype.evaluate import (
    EvaluationReport,
    build_confusion,
    detected_length_avg,
    evaluate_scene,
    length_accuracy_pct,
)
from airtype.geometry import DiameterResult, HullPolygon, Point, convex_hull, farthest_pair, pixel_count
from airtype.identify import Identification, Measurement, classify, estimate_area, estimate_length, identify_record
from airtype.kernels import BACKEND
from airtype.maskio import (
    DetectionRecord,
    Mask,
    SceneManifest,
    decode_rle,
    encode_rle,
    load_bitmap,
    load_manifest,
    save_bitmap,
    validate,
)
from airtype.photogrammetry import (
    CameraModel,
    FlightParams,
    GroundResolution,
    ResizeScale,
    compute_gsd,
    meters_to_px,
    px_to_meters,
)
