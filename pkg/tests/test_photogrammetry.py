import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from airtype.errors import InvalidParameterError
from airtype.photogrammetry import (
    REFERENCE_CAMERA,
    CameraModel,
    FlightParams,
    GroundResolution,
    ResizeScale,
    altitude_for_gsd,
    compute_gsd,
    meters_to_px,
    px_to_meters,
)


def cam(ws=12.75, fl=10.6, wi=4608):
    return CameraModel(ws, 8.5, fl, wi, 3072)


def test_gsd_worked_example():
    # 12.75 mm * 120 m * 100 / (10.6 mm * 4608 px)
    assert compute_gsd(cam(), FlightParams(120)).cm_per_px == pytest.approx(3.13, abs=0.01)


def test_gsd_factors_cancel():
    assert compute_gsd(cam(10, 10, 1000), FlightParams(10)).cm_per_px == pytest.approx(1.0, rel=1e-15)


def test_gsd_double_altitude():
    assert compute_gsd(cam(), FlightParams(240)).cm_per_px == pytest.approx(6.26, abs=0.01)


@pytest.mark.parametrize("field", ["sensor_width_mm", "focal_length_mm", "image_width_px"])
@pytest.mark.parametrize("bad", [0, -1, math.nan, math.inf])
def test_camera_rejects_bad_fields(field, bad):
    kwargs = dict(sensor_width_mm=12.75, sensor_height_mm=8.5, focal_length_mm=10.6,
                  image_width_px=4608, image_height_px=3072)
    kwargs[field] = bad
    with pytest.raises(InvalidParameterError) as exc:
        CameraModel(**kwargs)
    assert exc.value.field == field


@pytest.mark.parametrize("alt", [0, -5, math.nan])
def test_altitude_must_be_positive(alt):
    with pytest.raises(InvalidParameterError, match="altitude_m"):
        FlightParams(alt)


def test_resize_scale_at_least_one():
    with pytest.raises(InvalidParameterError):
        ResizeScale(0.5)


@pytest.mark.parametrize(
    "px, gsd, scale, expected",
    [(100, 100, 1, 100.0), (100, 3.13, 1, 3.13), (10, 10, 15, 15.0)],
)
def test_px_to_meters(px, gsd, scale, expected):
    assert px_to_meters(px, GroundResolution(gsd), ResizeScale(scale)) == pytest.approx(expected, rel=1e-12)


def test_px_to_meters_rejects_negative():
    with pytest.raises(InvalidParameterError):
        px_to_meters(-1, GroundResolution(1))


pos = st.floats(0.01, 1e4, allow_nan=False)


@given(h=pos)
def test_gsd_linear_in_altitude(h):
    one = compute_gsd(REFERENCE_CAMERA, FlightParams(h)).cm_per_px
    two = compute_gsd(REFERENCE_CAMERA, FlightParams(2 * h)).cm_per_px
    assert two == pytest.approx(2 * one, rel=1e-15)


@given(ws=pos, fl=pos, h=pos)
def test_gsd_invariant_to_joint_sensor_focal_doubling(ws, fl, h):
    a = compute_gsd(cam(ws, fl), FlightParams(h)).cm_per_px
    b = compute_gsd(cam(2 * ws, 2 * fl), FlightParams(h)).cm_per_px
    assert a == pytest.approx(b, rel=1e-14)


@given(d=st.floats(0, 1e5), g=pos, s=st.floats(1, 100), k=st.floats(0.5, 4))
def test_px_to_meters_linear(d, g, s, k):
    base = px_to_meters(d, GroundResolution(g), ResizeScale(s))
    assert px_to_meters(d * k, GroundResolution(g), ResizeScale(s)) == pytest.approx(base * k, rel=1e-12, abs=1e-300)
    assert px_to_meters(d, GroundResolution(g * k), ResizeScale(s)) == pytest.approx(base * k, rel=1e-12, abs=1e-300)
    if s * k >= 1:
        assert px_to_meters(d, GroundResolution(g), ResizeScale(s * k)) == pytest.approx(base * k, rel=1e-12, abs=1e-300)


@given(d=st.floats(1e-6, 1e6), g=pos, s=st.floats(1, 100))
def test_meters_round_trip(d, g, s):
    gsd, scale = GroundResolution(g), ResizeScale(s)
    assert meters_to_px(px_to_meters(d, gsd, scale), gsd, scale) == pytest.approx(d, rel=1e-9)


def test_altitude_for_gsd_inverts():
    h = altitude_for_gsd(REFERENCE_CAMERA, GroundResolution(30.0))
    assert compute_gsd(REFERENCE_CAMERA, h).cm_per_px == pytest.approx(30.0, rel=1e-12)
