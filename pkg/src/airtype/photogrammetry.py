"""Ground sample distance and pixel/metre conversion for nadir imagery."""
from __future__ import annotations

import math
from dataclasses import dataclass

from airtype.errors import InvalidParameterError


def _check_positive(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidParameterError(name, value, "must be a number")
    if not math.isfinite(value) or value <= 0:
        raise InvalidParameterError(name, value)


@dataclass(frozen=True)
class CameraModel:
    sensor_width_mm: float
    sensor_height_mm: float
    focal_length_mm: float
    image_width_px: int
    image_height_px: int

    def __post_init__(self):
        _check_positive("sensor_width_mm", self.sensor_width_mm)
        _check_positive("sensor_height_mm", self.sensor_height_mm)
        _check_positive("focal_length_mm", self.focal_length_mm)
        for name in ("image_width_px", "image_height_px"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
                raise InvalidParameterError(name, value, "must be a positive integer")


@dataclass(frozen=True)
class FlightParams:
    altitude_m: float

    def __post_init__(self):
        _check_positive("altitude_m", self.altitude_m)


@dataclass(frozen=True)
class GroundResolution:
    cm_per_px: float

    def __post_init__(self):
        _check_positive("cm_per_px", self.cm_per_px)

    @property
    def m_per_px(self) -> float:
        return self.cm_per_px / 100.0


@dataclass(frozen=True)
class ResizeScale:
    """Linear ratio original-width / processed-width (15 for a 1:15 reduction)."""

    linear_factor: float = 1.0

    def __post_init__(self):
        _check_positive("linear_factor", self.linear_factor)
        if self.linear_factor < 1:
            raise InvalidParameterError("linear_factor", self.linear_factor, "must be >= 1")


# DJI-class 1" sensor; width 4608 px as used in the worked GSD example.
REFERENCE_CAMERA = CameraModel(
    sensor_width_mm=12.75,
    sensor_height_mm=8.5,
    focal_length_mm=10.6,
    image_width_px=4608,
    image_height_px=3072,
)


def compute_gsd(camera: CameraModel, flight: FlightParams) -> GroundResolution:
    """Ground sample distance in cm/px: W_s * h * 100 / (FL * W_I)."""
    cm = (camera.sensor_width_mm * flight.altitude_m * 100.0) / (
        camera.focal_length_mm * camera.image_width_px
    )
    if not math.isfinite(cm) or cm <= 0:
        raise InvalidParameterError("gsd", cm, "computed GSD is not finite and positive")
    return GroundResolution(cm)


def altitude_for_gsd(camera: CameraModel, gsd: GroundResolution) -> FlightParams:
    """Inverse of :func:`compute_gsd` for a fixed camera."""
    h = gsd.cm_per_px * camera.focal_length_mm * camera.image_width_px / (
        camera.sensor_width_mm * 100.0
    )
    return FlightParams(h)


def px_to_meters(dist_px: float, gsd: GroundResolution, scale: ResizeScale = ResizeScale()) -> float:
    if not math.isfinite(dist_px) or dist_px < 0:
        raise InvalidParameterError("dist_px", dist_px, "must be finite and >= 0")
    return dist_px * scale.linear_factor * gsd.m_per_px


def meters_to_px(meters: float, gsd: GroundResolution, scale: ResizeScale = ResizeScale()) -> float:
    if not math.isfinite(meters) or meters < 0:
        raise InvalidParameterError("meters", meters, "must be finite and >= 0")
    return meters / (scale.linear_factor * gsd.m_per_px)
