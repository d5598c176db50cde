import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdslgen.errors import InvalidParameterError
from fdslgen.raster import Canvas
from fdslgen.rcdb import (
    RcdbParams,
    build_rings,
    corrupt_contours,
    first_polygon,
    generate_radial_contour,
    layout_radial_contour,
    next_polygon,
    restrict_vertex_band,
    sample_class_params,
)
from fdslgen.seeds import Seed, derive_seed


def small_params(**overrides):
    base = dict(num_polygons=3, num_vertices=6, radius=5.0, line_width=0.05,
                resize=(1.0, 1.0), noise_scale=(1.0, 1.0))
    base.update(overrides)
    return RcdbParams(**base)


# --- first_polygon -----------------------------------------------------------

def test_square_vertices_exact():
    ring = first_polygon(4, 1.0, (1.0, 1.0))
    expected = np.array([[1, 0], [0, 1], [-1, 0], [0, -1], [1, 0]], dtype=float)
    assert np.array_equal(ring.vertices, expected)


def test_stretched_triangle_matches_hand_evaluation():
    ring = first_polygon(3, 2.0, (1.0, 2.0))
    v1 = ring.vertices[1]
    assert abs(v1[0] - (-1.0)) < 1e-12
    assert abs(v1[1] - 2.0 * math.sqrt(3.0)) < 1e-12


def test_zero_radius_collapses_to_origin():
    ring = first_polygon(7, 0.0, (2.0, 3.0))
    assert np.array_equal(ring.vertices, np.zeros((8, 2)))


def test_too_few_vertices_rejected():
    with pytest.raises(InvalidParameterError):
        first_polygon(2, 1.0, (1.0, 1.0))


def test_rotational_equivariance_quarter_turn():
    ring = first_polygon(4, 1.0, (1.0, 1.0))
    rotated = np.column_stack([-ring.vertices[:4, 1], ring.vertices[:4, 0]])
    shifted = np.roll(ring.vertices[:4], -1, axis=0)
    assert np.array_equal(rotated, shifted)


# --- next_polygon ------------------------------------------------------------

def test_zero_noise_displaces_by_line_width():
    prev = first_polygon(5, 3.0, (1.0, 1.5))
    ring = next_polygon(prev, l_w=0.25, lam=(0.0, 0.0), noise_column=np.ones(5))
    for j in range(5):
        ang = 2.0 * math.pi * j / 5
        disp = ring.vertices[j] - prev.vertices[j]
        assert abs(disp[0] - 0.25 * math.cos(ang)) < 1e-12
        assert abs(disp[1] - 0.25 * math.sin(ang)) < 1e-12


def test_zero_growth_is_identity():
    prev = first_polygon(6, 2.0, (1.0, 1.0))
    ring = next_polygon(prev, l_w=0.0, lam=(0.0, 0.0), noise_column=np.ones(6))
    assert np.array_equal(ring.vertices, prev.vertices)


def test_unit_noise_x_only_hand_case():
    # n=4, lam=(1,0), eps=1, l_w=0: vertex j moves by cos(2*pi*j/4) in x only.
    prev = first_polygon(4, 1.0, (1.0, 1.0))
    ring = next_polygon(prev, l_w=0.0, lam=(1.0, 0.0), noise_column=np.ones(4))
    disp = ring.vertices[:4] - prev.vertices[:4]
    assert np.array_equal(disp, np.array([[1, 0], [0, 0], [-1, 0], [0, 0]], dtype=float))


def test_noise_column_length_mismatch_rejected():
    prev = first_polygon(4, 1.0, (1.0, 1.0))
    with pytest.raises(InvalidParameterError):
        next_polygon(prev, 0.1, (1.0, 1.0), noise_column=np.ones(5))


def test_closure_preserved():
    prev = first_polygon(9, 2.0, (1.1, 2.2))
    ring = next_polygon(prev, 0.3, (1.7, 0.4), noise_column=np.linspace(-1, 1, 9))
    assert np.array_equal(ring.vertices[0], ring.vertices[9])
    assert ring.n == 9
    assert ring.index == 2


@settings(max_examples=30, deadline=None)
@given(n=st.integers(3, 60), big_n=st.integers(2, 12),
       l_w=st.floats(0.001, 0.1), seed=st.integers(0, 2**32))
def test_zero_noise_rings_grow_monotonically(n, big_n, l_w, seed):
    params = small_params(num_polygons=big_n, num_vertices=n, radius=1.0,
                          line_width=l_w, noise_scale=(0.0, 0.0))
    rings = build_rings(params, Seed(seed))
    for prev, cur in zip(rings, rings[1:]):
        r_prev = np.linalg.norm(prev.vertices[:n], axis=1)
        r_cur = np.linalg.norm(cur.vertices[:n], axis=1)
        assert np.all(r_cur > r_prev)


def test_vertex_count_conserved_across_rings():
    params = small_params(num_polygons=8, num_vertices=17)
    rings = build_rings(params, Seed(4))
    assert len(rings) == 8
    for ring in rings:
        assert ring.vertices.shape == (18, 2)
        assert np.array_equal(ring.vertices[0], ring.vertices[17])


# --- class parameter sampling -------------------------------------------------

def test_sampled_params_respect_ranges():
    for c in range(500):
        p = sample_class_params(derive_seed(5, c, 0, 1))
        assert 1 <= p.num_polygons <= 200
        assert 3 <= p.num_vertices <= 502
        assert 0.0 <= p.radius <= 100.0
        assert 0.0 <= p.line_width <= 0.1
        assert all(1.0 <= v <= 4.0 for v in p.resize)
        assert all(0.0 <= v <= 4.0 for v in p.noise_scale)


def test_sampling_deterministic():
    s = derive_seed(9, 3, 0, 1)
    assert sample_class_params(s) == sample_class_params(s)


def test_vertex_band_restricts_draws():
    band = restrict_vertex_band(403, 502)
    for c in range(200):
        p = sample_class_params(derive_seed(1, c, 0, 1), vertex_band=band)
        assert 403 <= p.num_vertices <= 502


def test_point_band_pins_vertex_count():
    band = restrict_vertex_band(5, 5)
    for c in range(20):
        assert sample_class_params(derive_seed(2, c, 0, 1), vertex_band=band).num_vertices == 5


def test_inverted_band_rejected():
    with pytest.raises(InvalidParameterError):
        restrict_vertex_band(100, 50)
    with pytest.raises(InvalidParameterError):
        restrict_vertex_band(2, 10)


def test_out_of_range_params_rejected():
    with pytest.raises(InvalidParameterError):
        small_params(num_polygons=201)
    with pytest.raises(InvalidParameterError):
        small_params(noise_scale=(4.5, 1.0))


# --- rendering ----------------------------------------------------------------

def oracle_render(layout, size):
    """Full-canvas capsule coverage of every ring edge, vectorised over pixels."""
    ys, xs = np.mgrid[0:size, 0:size]
    px = xs + 0.5
    py = ys + 0.5
    img = np.zeros((size, size), dtype=np.uint8)
    hw = layout.stroke_px * 0.5
    for ring in layout.rings_px:
        for j in range(ring.shape[0] - 1):
            x0, y0 = ring[j]
            x1, y1 = ring[j + 1]
            if (x1, y1) < (x0, y0):
                x0, y0, x1, y1 = x1, y1, x0, y0
            dx = x1 - x0
            dy = y1 - y0
            len2 = dx * dx + dy * dy
            ex = px - x0
            ey = py - y0
            if len2 > 0.0:
                t = np.clip((ex * dx + ey * dy) / len2, 0.0, 1.0)
            else:
                t = np.zeros_like(ex)
            qx = ex - t * dx
            qy = ey - t * dy
            img[qx * qx + qy * qy <= hw * hw] = 255
    return img


@pytest.mark.parametrize("case", range(5))
def test_single_ring_matches_pixel_oracle(case):
    seed = derive_seed(7, case, 0, 2)
    params = replace(sample_class_params(derive_seed(7, case, 0, 1)),
                     num_polygons=1, num_vertices=int(3 + case * 7))
    canvas = generate_radial_contour(params, seed, canvas_size=128)
    layout = layout_radial_contour(params, seed, canvas_size=128)
    assert np.array_equal(canvas.pixels, oracle_render(layout, 128))


def test_generation_deterministic():
    params = small_params()
    seed = derive_seed(11, 0, 0, 2)
    a = generate_radial_contour(params, seed, canvas_size=128)
    b = generate_radial_contour(params, seed, canvas_size=128)
    assert np.array_equal(a.pixels, b.pixels)


def test_table_extremes_smoke():
    params = RcdbParams(num_polygons=200, num_vertices=502, radius=100.0,
                        line_width=0.1, resize=(4.0, 4.0), noise_scale=(4.0, 4.0))
    canvas = generate_radial_contour(params, Seed(0), canvas_size=256)
    assert canvas.foreground_count() > 0


def test_zero_radius_grows_into_drawable_shape():
    params = small_params(num_polygons=3, radius=0.0, line_width=0.05)
    canvas = generate_radial_contour(params, Seed(3), canvas_size=64)
    assert canvas.foreground_count() > 0


def test_pointlike_shape_missing_every_pixel_center_raises():
    # Exact point geometry (r=0, single ring, no growth) with a center that
    # lands in a pixel-corner pocket: 1 px stroke covers no pixel center.
    params = RcdbParams(num_polygons=1, num_vertices=6, radius=0.0, line_width=0.0,
                        resize=(1.0, 1.0), noise_scale=(0.0, 0.0))
    from fdslgen.errors import DegenerateImageError

    with pytest.raises(DegenerateImageError):
        generate_radial_contour(params, Seed(0), canvas_size=64)
    # A center near a pixel center draws the single dot instead.
    assert generate_radial_contour(params, Seed(1), canvas_size=64).foreground_count() == 1


# --- corruption ----------------------------------------------------------------

def rendered_case(seed_val=0):
    params = sample_class_params(derive_seed(13, seed_val, 0, 1))
    return generate_radial_contour(params, derive_seed(13, seed_val, 0, 2), canvas_size=256)


def test_zero_lines_is_identity():
    canvas = rendered_case()
    out = corrupt_contours(canvas, Seed(5), line_count=0)
    assert np.array_equal(out.pixels, canvas.pixels)
    assert out.pixels is not canvas.pixels


def test_thousand_lines_reduce_foreground():
    canvas = rendered_case(1)
    out = corrupt_contours(canvas, Seed(5), line_count=1000)
    assert out.foreground_count() < canvas.foreground_count()
    assert out.foreground_count() > 0


def test_corruption_only_erases():
    canvas = rendered_case(2)
    out = corrupt_contours(canvas, Seed(9), line_count=200)
    fg_in = canvas.pixels != canvas.background
    fg_out = out.pixels != canvas.background
    assert not np.any(fg_out & ~fg_in)


def test_double_corruption_is_subset():
    canvas = rendered_case(3)
    once = corrupt_contours(canvas, Seed(21), line_count=500)
    twice = corrupt_contours(once, Seed(21), line_count=500)
    fg_once = once.pixels != canvas.background
    fg_twice = twice.pixels != canvas.background
    assert not np.any(fg_twice & ~fg_once)
