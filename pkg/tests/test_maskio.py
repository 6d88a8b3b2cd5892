import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from airtype.catalog import DEFAULT_CATALOG
from airtype.errors import (
    DimensionOverflowError,
    MalformedHeaderError,
    MalformedRLEError,
    ManifestError,
    MaskFileNotFoundError,
)
from airtype.maskio import (
    DetectionRecord,
    Mask,
    SceneManifest,
    decode_rle,
    encode_rle,
    load_bitmap,
    load_manifest,
    manifest_to_dict,
    parse_manifest,
    save_bitmap,
    validate,
)
from airtype.photogrammetry import REFERENCE_CAMERA, FlightParams


def test_decode_examples():
    assert decode_rle([0, 4], 2, 2).pixels == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert len(decode_rle([4], 2, 2)) == 0
    # row-major indices 1 and 2 -> (1, 0) and (0, 1)
    assert decode_rle([1, 2, 1], 2, 2).pixels == {(1, 0), (0, 1)}


@pytest.mark.parametrize("counts", [[1, 2], [5], [2, -1, 3], ["a"]])
def test_decode_rejects_malformed(counts):
    with pytest.raises(MalformedRLEError):
        decode_rle(counts, 2, 2)


def test_encode_examples():
    assert encode_rle(Mask(2, 2)) == [4]
    assert encode_rle(Mask(2, 2, [(0, 0), (1, 0), (0, 1), (1, 1)])) == [0, 4]


@settings(max_examples=50)
@given(arrays(np.uint8, (64, 64), elements=st.integers(0, 1)))
def test_rle_round_trip_64(grid):
    m = Mask.from_grid(grid)
    counts = encode_rle(m)
    assert all(c > 0 for c in counts[1:])
    assert decode_rle(counts, 64, 64) == m


def test_mask_dedups_and_orders_row_major():
    m = Mask(4, 4, [(3, 0), (0, 1), (3, 0), (1, 0)])
    assert m.coords.tolist() == [[1, 0], [3, 0], [0, 1]]
    assert m == Mask.from_grid(m.to_grid())


def write_pgm(path, data: bytes):
    path.write_bytes(data)
    return path


def test_load_center_pixel_p2(tmp_path):
    p = write_pgm(tmp_path / "a.pgm", b"P2\n# comment\n3 3\n255\n0 0 0\n0 255 0\n0 0 0\n")
    assert load_bitmap(p).pixels == {(1, 1)}


def test_load_p5_and_16bit(tmp_path):
    p = write_pgm(tmp_path / "b.pgm", b"P5 2 1 255\n" + bytes([0, 7]))
    assert load_bitmap(p).pixels == {(1, 0)}
    p = write_pgm(tmp_path / "c.pgm", b"P5\n2 1\n65535\n" + bytes([0, 0, 1, 0]))
    assert load_bitmap(p).pixels == {(1, 0)}


def test_all_zero_pgm_is_empty_and_flagged(tmp_path):
    p = write_pgm(tmp_path / "z.pgm", b"P2\n2 2\n255\n0 0 0 0\n")
    m = load_bitmap(p)
    assert len(m) == 0
    scene = SceneManifest(REFERENCE_CAMERA, FlightParams(100), (DetectionRecord("z", m),))
    assert [f.code for f in validate(scene, DEFAULT_CATALOG)] == ["empty-detection"]


def test_load_errors(tmp_path):
    with pytest.raises(MaskFileNotFoundError):
        load_bitmap(tmp_path / "missing.pgm")
    with pytest.raises(MalformedHeaderError):
        load_bitmap(write_pgm(tmp_path / "h.pgm", b"P6\n1 1\n255\n\x00\x00\x00"))
    with pytest.raises(MalformedHeaderError):
        load_bitmap(write_pgm(tmp_path / "t.pgm", b"P5\n4 4\n255\n\x00"))
    with pytest.raises(MalformedHeaderError):
        load_bitmap(write_pgm(tmp_path / "s.pgm", b"P2\n3"))
    with pytest.raises(DimensionOverflowError):
        load_bitmap(write_pgm(tmp_path / "o.pgm", b"P5\n100000 100000\n255\n"))


@pytest.mark.parametrize("binary", [True, False])
@settings(max_examples=20, deadline=None)
@given(arrays(np.uint8, (7, 9), elements=st.integers(0, 1)))
def test_bitmap_round_trip(tmp_path_factory, binary, grid):
    p = tmp_path_factory.mktemp("bmp") / "m.pgm"
    m = Mask.from_grid(grid)
    save_bitmap(m, p, binary=binary)
    assert load_bitmap(p) == m


def test_rectangle_pixel_count_from_synth_pgm(tmp_path):
    from airtype.synth import SilhouetteSpec, rasterize
    from airtype.photogrammetry import GroundResolution, ResizeScale

    # 10 m x 1 m rectangle at 10 cm/px centred on a pixel corner: 100 x 10 px
    spec = SilhouetteSpec("R", 10.0, aspect_ratio=0.1, shape_kind="rectangle")
    m = rasterize(spec, GroundResolution(10), ResizeScale(), (60, 20), (120, 40))
    save_bitmap(m, tmp_path / "r.pgm")
    assert len(load_bitmap(tmp_path / "r.pgm")) == 100 * 10


def scene(*records):
    return SceneManifest(REFERENCE_CAMERA, FlightParams(100), tuple(records))


def test_validate_findings():
    ok = DetectionRecord("ok", Mask(10, 10, [(4, 4), (5, 5)]), "CM2")
    unknown = DetectionRecord("u", Mask(10, 10, [(4, 4)]), "XYZ")
    oob = DetectionRecord("o", Mask(10, 10, [(10, 3), (4, 4)]))
    border = DetectionRecord("b", Mask(10, 10, [(0, 3), (4, 4)]))
    s = scene(ok, unknown, oob, border)
    found = {(f.image_id, f.code) for f in validate(s, DEFAULT_CATALOG)}
    assert found == {("u", "unknown-type"), ("o", "out-of-bounds"), ("b", "border-touching")}
    assert validate(s, DEFAULT_CATALOG) == validate(s, DEFAULT_CATALOG)


def test_manifest_round_trip_inline_and_path(tmp_path):
    m1 = Mask(6, 5, [(1, 1), (2, 1), (3, 2)])
    save_bitmap(m1, tmp_path / "m1.pgm")
    doc = {
        "camera": {"sensor_width_mm": 12.75, "sensor_height_mm": 8.5, "focal_length_mm": 10.6,
                   "image_width_px": 4608, "image_height_px": 3072},
        "altitude_m": 120,
        "records": [
            {"image_id": "a", "mask": {"path": "m1.pgm"}, "ground_truth": "CM2", "resize_scale": 15},
            {"image_id": "b", "mask": {"rle": {"width": 2, "height": 2, "counts": [1, 2, 1]}}},
        ],
    }
    (tmp_path / "manifest.json").write_text(json.dumps(doc))
    man = load_manifest(tmp_path / "manifest.json")
    assert man.records[0].mask == m1
    assert man.records[0].resize_scale.linear_factor == 15
    assert man.records[1].ground_truth_type is None
    assert man.records[1].resize_scale.linear_factor == 1.0
    again = parse_manifest(manifest_to_dict(man), tmp_path)
    assert again == man


@pytest.mark.parametrize(
    "mutate, field",
    [
        (lambda d: d.pop("camera"), "camera"),
        (lambda d: d["camera"].update(focal_length_mm=0), "camera.focal_length_mm"),
        (lambda d: d.update(altitude_m="high"), "altitude_m"),
        (lambda d: d["records"][0].pop("mask"), "records[0].mask"),
        (lambda d: d["records"][0]["mask"]["rle"].update(counts=[3]), "records[0].mask.rle"),
        (lambda d: d["records"][0].update(resize_scale=0.5), "records[0].resize_scale"),
        (lambda d: d["records"][0].update(mask={"path": "nope.pgm"}), "records[0].mask.path"),
    ],
)
def test_manifest_errors_name_the_field(tmp_path, mutate, field):
    doc = {
        "camera": {"sensor_width_mm": 12.75, "sensor_height_mm": 8.5, "focal_length_mm": 10.6,
                   "image_width_px": 4608, "image_height_px": 3072},
        "altitude_m": 120,
        "records": [{"image_id": "a", "mask": {"rle": {"width": 2, "height": 2, "counts": [4]}}}],
    }
    mutate(doc)
    with pytest.raises(ManifestError) as exc:
        parse_manifest(doc, tmp_path)
    assert exc.value.field == field
