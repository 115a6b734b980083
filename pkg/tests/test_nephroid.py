import cmath
import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subord_verify.errors import AmbiguityError
from subord_verify.nephroid import (
    BoundaryCurve,
    PlanePoint,
    boundary_distance,
    contains,
    d1,
    nephroid_implicit,
    phi_ne,
    sample_boundary,
    write_curve_csv,
)

angles = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)


def test_phi_ne_values():
    assert phi_ne(0) == 1
    assert phi_ne(1) == pytest.approx(5 / 3)
    assert phi_ne(-1) == pytest.approx(1 / 3)
    assert phi_ne(1j) == pytest.approx(1 + 4j / 3)


def test_phi_ne_derivative_vanishes_at_cusps():
    # 1 - z^2 = 0 at z = +-1, the cusps of the boundary curve
    h = 1e-6
    for z in (1.0, -1.0):
        slope = (phi_ne(z + h) - phi_ne(z - h)) / (2 * h)
        assert abs(slope) < 1e-9


def test_implicit_examples():
    assert nephroid_implicit(PlanePoint(1, 0)) == pytest.approx(-64 / 729)
    assert nephroid_implicit(PlanePoint(5 / 3, 0)) == pytest.approx(0, abs=1e-15)
    assert nephroid_implicit(PlanePoint.from_complex(phi_ne(1j))) == pytest.approx(0, abs=1e-14)


@given(angles)
def test_implicit_vanishes_on_boundary(t):
    w = phi_ne(cmath.exp(1j * t))
    assert abs(nephroid_implicit(PlanePoint.from_complex(w))) < 1e-12


def test_plane_point_round_trip():
    assert PlanePoint.from_complex(0.5 - 2j).to_complex() == 0.5 - 2j


def test_sample_boundary_quarter_points():
    # theta in {0, pi/2, pi, 3pi/2} = every fourth sample of n = 16
    pts = sample_boundary(16).points[::4]
    expected = [5 / 3, 1 + 4j / 3, 1 / 3, 1 - 4j / 3]
    assert np.allclose(pts, expected, atol=1e-15)


def test_sample_boundary_minimum_size():
    with pytest.raises(ValueError):
        sample_boundary(4)


def test_sample_boundary_on_curve_and_symmetric():
    curve = sample_boundary(4096)
    assert max(abs(nephroid_implicit(p)) for p in curve.plane_points()) < 1e-12
    pts = curve.points
    # point(2 pi - theta) = conj(point(theta))
    assert np.allclose(pts[1:][::-1], np.conj(pts[1:]), atol=1e-14)


def test_refined_sampling_is_denser_near_cusps():
    curve = sample_boundary(256, refine_cusps=True)
    near = np.abs(curve.thetas - math.pi) < 0.05
    coarse = sample_boundary(256)
    assert near.sum() > 4 * (np.abs(coarse.thetas - math.pi) < 0.05).sum()
    assert np.all(np.diff(curve.thetas) > 0)


def test_boundary_curve_is_immutable_and_validated():
    curve = sample_boundary(16)
    with pytest.raises(ValueError):
        curve.points[0] = 0
    with pytest.raises(ValueError):
        BoundaryCurve(np.array([0.0, 0.0]), np.array([1j, 2j]))
    with pytest.raises(ValueError):
        BoundaryCurve(np.array([0.0, 1.0]), np.array([1j]))


def test_curve_csv():
    curve = sample_boundary(16)
    text = curve.to_csv()
    lines = text.splitlines()
    assert lines[0] == "theta,u,v"
    assert lines[1] == "0,1.6666666666666667,0"
    assert len(lines) == 17
    buf = io.StringIO()
    write_curve_csv(buf, curve.thetas, curve.points)
    assert buf.getvalue() == text


def test_d1_examples():
    assert d1(0) == pytest.approx(4 / 9)
    assert d1(math.pi / 2) == pytest.approx(16 / 9)


def test_d1_is_squared_distance():
    rng = np.random.default_rng(3)
    t = rng.uniform(0, 2 * np.pi, 100)
    assert np.max(np.abs(d1(t) - np.abs(phi_ne(np.exp(1j * t)) - 1) ** 2)) < 1e-12


@given(angles)
def test_d1_symmetries(t):
    assert d1(t) == pytest.approx(d1(-t), abs=1e-15)
    assert d1(t) == pytest.approx(d1(math.pi - t), abs=1e-15)
    assert 4 / 9 - 1e-15 <= d1(t) <= 16 / 9 + 1e-15


def test_contains_examples():
    assert contains(PlanePoint(1, 0))
    assert not contains(PlanePoint(2, 0))
    assert contains(PlanePoint(0.4, 0))
    assert contains(1 + 1.3j)
    assert not contains(1 + 1.34j)


def test_contains_near_boundary_is_ambiguous():
    with pytest.raises(AmbiguityError):
        contains(phi_ne(cmath.exp(0.3j)))
    with pytest.raises(AmbiguityError):
        contains(5 / 3 - 1e-11)


def test_cusp_tip_neighbourhood():
    # just inside the cusp tip at 1/3, and just outside it (the cusp is thin)
    assert contains(1 / 3 + 1e-7)
    assert not contains(1 / 3 - 1e-4)
    assert boundary_distance(1 / 3 - 1e-4) == pytest.approx(4 / 3 * 1e-6, rel=1e-3)


def test_interior_images_are_inside():
    for r in np.linspace(0.03, 0.99, 32):
        for t in np.linspace(0, 2 * np.pi, 32, endpoint=False):
            assert contains(phi_ne(r * cmath.exp(1j * t)))


@given(st.floats(min_value=0.0, max_value=0.99), angles)
def test_contains_agrees_with_univalent_image(r, t):
    w = phi_ne(r * cmath.exp(1j * t))
    if boundary_distance(w) < 1e-8:
        return
    assert contains(w)


@given(st.floats(min_value=1.001, max_value=1.5), angles)
def test_radial_scaling_about_centre(s, t):
    # the region is star-shaped about (1, 0): pushing a boundary point away
    # from the centre leaves the region, pulling it in stays inside
    edge = phi_ne(cmath.exp(1j * t)) - 1
    for w, inside in ((1 + s * edge, False), (1 + edge / s, True)):
        if boundary_distance(w) < 1e-8:
            continue
        assert contains(w) is inside
