"""Physical measurement of a detection and nearest-length type matching."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from airtype import geometry
from airtype.catalog import AircraftSpec, Catalog
from airtype.errors import (
    AirtypeError,
    ConfigurationError,
    EmptyDetectionError,
    InvalidParameterError,
    RecordError,
)
from airtype.geometry import DiameterResult
from airtype.maskio import DetectionRecord, Finding, Mask
from airtype.photogrammetry import (
    CameraModel,
    FlightParams,
    GroundResolution,
    ResizeScale,
    compute_gsd,
    px_to_meters,
)

DEFAULT_LOW_CONFIDENCE = 0.25


@dataclass(frozen=True)
class Measurement:
    length_m: float
    area_m2: float
    diameter: DiameterResult
    pixel_count: int


@dataclass(frozen=True)
class Identification:
    measurement: Optional[Measurement]
    predicted: AircraftSpec
    abs_error_m: float
    runner_up: Optional[AircraftSpec] = None
    margin_m: Optional[float] = None
    findings: tuple = ()

    @property
    def low_confidence(self) -> bool:
        return any(f.code == "low-confidence" for f in self.findings)


def estimate_area(mask: Mask, gsd: GroundResolution, scale: ResizeScale = ResizeScale()) -> float:
    """Ground area covered by the mask: pixels times the area of one pixel."""
    n = geometry.pixel_count(mask)
    if n == 0:
        raise EmptyDetectionError()
    # one processed pixel spans px_to_meters(1) metres on each axis
    side_m = px_to_meters(1.0, gsd, scale)
    return n * side_m * side_m


def estimate_length(mask: Mask, gsd: GroundResolution, scale: ResizeScale = ResizeScale()) -> Measurement:
    n = geometry.pixel_count(mask)
    if n == 0:
        raise EmptyDetectionError()
    diam = geometry.mask_diameter(mask)
    return Measurement(
        length_m=px_to_meters(diam.dist_px, gsd, scale),
        area_m2=estimate_area(mask, gsd, scale),
        diameter=diam,
        pixel_count=n,
    )


def classify(
    length_m: float,
    catalog: Catalog,
    low_confidence: float = DEFAULT_LOW_CONFIDENCE,
    measurement: Optional[Measurement] = None,
) -> Identification:
    """Pick the catalog entry whose length is nearest ``length_m``.

    Ties go to the shorter aircraft, then to the smaller shortcut.
    """
    if catalog is None or len(catalog) == 0:
        raise ConfigurationError("catalog is empty")
    if not length_m >= 0:
        raise InvalidParameterError("length_m", length_m, "must be >= 0")
    ranked = sorted(catalog, key=lambda s: (abs(length_m - s.actual_length_m), s.actual_length_m, s.shortcut))
    best = ranked[0]
    err = abs(length_m - best.actual_length_m)
    runner_up = ranked[1] if len(ranked) > 1 else None
    margin = abs(length_m - runner_up.actual_length_m) - err if runner_up else None
    findings = ()
    if err > low_confidence * best.actual_length_m:
        findings = (
            Finding(
                "low-confidence",
                "warning",
                f"length {length_m:.2f} m is {err:.2f} m from nearest type {best.shortcut}",
            ),
        )
    return Identification(measurement, best, err, runner_up, margin, findings)


def identify_record(
    record: DetectionRecord,
    camera: CameraModel,
    flight: FlightParams,
    catalog: Catalog,
    low_confidence: float = DEFAULT_LOW_CONFIDENCE,
) -> Identification:
    """GSD, then length and area, then nearest-length match for one record.

    Errors are re-raised as :class:`RecordError` carrying the image_id.
    """
    try:
        gsd = compute_gsd(camera, flight)
        try:
            m = estimate_length(record.mask, gsd, record.resize_scale)
        except EmptyDetectionError:
            raise EmptyDetectionError(image_id=record.image_id) from None
        ident = classify(m.length_m, catalog, low_confidence, measurement=m)
    except AirtypeError as exc:
        raise RecordError(record.image_id, exc) from exc
    findings = tuple(
        Finding(f.code, f.severity, f.message, record.image_id) for f in ident.findings
    )
    return Identification(m, ident.predicted, ident.abs_error_m, ident.runner_up, ident.margin_m, findings)
