import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubepad.errors import DimensionMismatchError, InvalidRotationError
from cubepad.frames import CubeMapFrame, PlanarFrame
from cubepad.geometry import Face, LayoutKind, direction_to_face_coord, layout_table, rotate_face_stack
from cubepad.projection import (
    cubemap_to_equirect,
    direction_to_equirect,
    equirect_to_cubemap,
    equirect_to_direction,
    face_pixel_directions,
    gen_synthetic,
    pack_layout,
    render_cubemap,
    rotation_matrix,
    unpack_layout,
)
from cubepad.resample import BorderMode, sample_lanczos
from helpers import random_cube


def constant_frame(w, value, bitdepth=8):
    h = w // 2
    return PlanarFrame(np.full((h, w), value), np.full((h // 2, w // 2), value),
                       np.full((h // 2, w // 2), value), bitdepth)


def test_equirect_centre_looks_forward():
    # W even: the centre column pair straddles lon 0; m = W/2 - 0.5 is exact
    d = equirect_to_direction(511.5, 255.5, 1024, 512)
    np.testing.assert_allclose(d, [0, 0, -1], atol=1e-15)


def test_equirect_three_quarters_looks_right():
    d = equirect_to_direction(3 * 1024 / 4 - 0.5, 255.5, 1024, 512)
    np.testing.assert_allclose(d, [1, 0, 0], atol=1e-15)


def test_equirect_poles():
    np.testing.assert_allclose(equirect_to_direction(0, -0.5, 64, 32), [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(equirect_to_direction(7, 31.5, 64, 32), [0, -1, 0], atol=1e-15)


def test_equirect_round_trip(rng):
    w, h = 1024, 512
    m = rng.integers(0, w, 10_000)
    n = rng.integers(0, h, 10_000)
    d = equirect_to_direction(m, n, w, h)
    np.testing.assert_allclose(np.linalg.norm(d, axis=-1), 1.0, atol=1e-15)
    m2, n2 = direction_to_equirect(d, w, h)
    np.testing.assert_allclose(m2, m, atol=1e-9)
    np.testing.assert_allclose(n2, n, atol=1e-9)


def test_face_pixel_directions_hit_own_face():
    d = face_pixel_directions(8)
    fc = direction_to_face_coord(d, 8)
    for f in Face:
        assert np.all(fc.face[f] == f)
    np.testing.assert_allclose(fc.u[0, 0, :], np.arange(8) - 3.5)
    np.testing.assert_allclose(fc.v[0, :, 0], 3.5 - np.arange(8))


@pytest.mark.parametrize("value", [0, 77, 255])
def test_constant_preserved_exactly(value):
    cm = equirect_to_cubemap(constant_frame(256, value), 64)
    for p in (cm.y, cm.cb, cm.cr):
        assert np.all(p == value)
    back = cubemap_to_equirect(cm, 256)
    for p in back.planes:
        assert np.all(p == value)


@pytest.mark.parametrize("pattern", ["bands", "harmonic"])
def test_cubemap_matches_analytic_render(pattern):
    # Oracle: evaluate the pattern directly at each face pixel direction.
    cm = equirect_to_cubemap(gen_synthetic(1024, pattern=pattern), 256)
    ref = render_cubemap(pattern, 256)
    for got, want in zip((cm.y, cm.cb, cm.cr), (ref.y, ref.cb, ref.cr)):
        assert np.max(np.abs(got.astype(int) - want)) <= 2


def test_right_face_pixel_is_lanczos3_at_its_direction(rng):
    src = PlanarFrame(rng.integers(0, 256, (64, 128)), rng.integers(0, 256, (32, 64)),
                      rng.integers(0, 256, (32, 64)), 8)
    a = 32
    cm = equirect_to_cubemap(src, a)
    d = face_pixel_directions(a)[Face.RIGHT, a // 2, a // 2]
    m, n = direction_to_equirect(d / np.linalg.norm(d), 128, 64)
    want = sample_lanczos(src.y, m, n, 3, BorderMode.WRAP_HORIZONTAL)
    assert cm.y[Face.RIGHT, a // 2, a // 2] == int(np.floor(want + 0.5))


def test_equirect_rejects_bad_dims():
    with pytest.raises(DimensionMismatchError):
        equirect_to_cubemap(PlanarFrame(np.zeros((32, 48)), np.zeros((16, 24)), np.zeros((16, 24))), 16)
    with pytest.raises(DimensionMismatchError):
        cubemap_to_equirect(CubeMapFrame(np.zeros((6, 8, 8)), np.zeros((6, 4, 4)), np.zeros((6, 4, 4))), 30)


@pytest.mark.parametrize("kind", list(LayoutKind))
@pytest.mark.parametrize("bitdepth", [8, 10])
def test_pack_unpack_bit_exact(kind, bitdepth, rng):
    cube = random_cube(rng, 24, bitdepth)
    layout = layout_table(kind)
    packed = pack_layout(cube, layout)
    assert packed.y.shape == (24 * layout.rows, 24 * layout.cols)
    back = unpack_layout(packed, layout)
    for p, q in zip((cube.y, cube.cb, cube.cr), (back.y, back.cb, back.cr)):
        assert np.array_equal(p, q)


def test_4x3_frame_size_for_1184_faces():
    cube = CubeMapFrame(np.zeros((6, 1184, 1184)), np.zeros((6, 592, 592)), np.zeros((6, 592, 592)))
    packed = pack_layout(cube, layout_table("4x3"))
    assert (packed.width, packed.height) == (4736, 3552)


def test_4x3_unused_tiles_gray_and_3x2_has_none():
    cube = CubeMapFrame(np.zeros((6, 8, 8)), np.zeros((6, 4, 4)), np.zeros((6, 4, 4)), 10)
    p43 = pack_layout(cube, layout_table("4x3"))
    assert np.count_nonzero(p43.y == 512) == 6 * 64
    assert np.all(p43.y[0:8, 0:8] == 512)
    p32 = pack_layout(cube, layout_table("3x2"))
    assert not np.any(p32.y == 512)


def test_unpack_rejects_wrong_size():
    frame = PlanarFrame(np.zeros((24, 30)), np.zeros((12, 15)), np.zeros((12, 15)))
    with pytest.raises(DimensionMismatchError):
        unpack_layout(frame, layout_table("4x3"))


def test_gen_quarter_turn_about_y_is_column_roll():
    w = 512
    base = gen_synthetic(w, pattern="harmonic")
    turned = gen_synthetic(w, rotation_matrix([0, 1, 0], 90), pattern="harmonic")
    # f(R d) with R a +90 deg yaw shifts content by a quarter of the width
    diff = np.abs(np.roll(base.y, w // 4, axis=1).astype(int) - turned.y)
    assert diff.max() <= 1
    assert np.mean(diff == 0) > 0.999


def test_gen_small_rotation_changes_edges_most():
    w = 512
    base = gen_synthetic(w, pattern="checker").y.astype(float)
    moved = gen_synthetic(w, rotation_matrix([0.3, 1.0, 0.5], 0.5), pattern="checker").y.astype(float)
    gy, gx = np.gradient(base)
    grad = np.hypot(gx, gy)
    diff = np.abs(moved - base)
    strong = grad >= np.quantile(grad, 0.9)
    weak = grad <= np.quantile(grad, 0.5)
    assert diff[strong].mean() > 5 * diff[weak].mean()


def test_gen_rejects_bad_rotation():
    with pytest.raises(InvalidRotationError):
        gen_synthetic(64, np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(InvalidRotationError):
        gen_synthetic(64, np.eye(3) * 2)
    with pytest.raises(InvalidRotationError):
        rotation_matrix([0, 0, 0], 10)


def test_projection_commutes_with_quarter_turn():
    rot = rotation_matrix([0, 1, 0], 90)
    base = equirect_to_cubemap(gen_synthetic(512, pattern="harmonic"), 64)
    turned = equirect_to_cubemap(gen_synthetic(512, rot, pattern="harmonic"), 64)
    # content f(R d) on the cube equals the old faces read at R d
    moved = rotate_face_stack(base.y, np.rint(rot.T))
    diff = np.abs(moved.astype(int) - turned.y)
    assert diff.max() <= 1
    assert np.mean(diff == 0) > 0.999


@given(st.floats(-180, 180), st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 1e-3))
@settings(max_examples=50, deadline=None)
def test_rotation_matrix_is_proper(deg, axis):
    r = rotation_matrix(axis, deg)
    np.testing.assert_allclose(r @ r.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(r) == pytest.approx(1.0)
    np.testing.assert_allclose(r @ axis, axis, atol=1e-12)


def test_round_trip_psnr_and_range():
    src = gen_synthetic(256, pattern="harmonic", bitdepth=10)
    back = cubemap_to_equirect(equirect_to_cubemap(src, 64), 256)
    assert back.bitdepth == 10
    assert back.y.max() <= 1023
    err = np.mean((back.y.astype(float) - src.y) ** 2)
    assert 10 * np.log10(1023 ** 2 / err) > 40
