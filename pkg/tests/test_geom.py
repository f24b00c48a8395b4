import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spaceform_blaschke.errors import (
    AntipodalError,
    CollinearError,
    DegenerateError,
    InvalidPoint,
    NoCircumcircle,
    NotATriangle,
)
from spaceform_blaschke.geom import ModelKind, PolarFrame, SpaceForm, det3
from spaceform_blaschke.lambda_trig import gcos, gcot, gsin

LAMS = [-1.0, 0.0, 1.0]
ALL_LAMS = [-4.0, -1.0, -0.25, 0.0, 0.25, 1.0, 4.0]


def random_points(sf, rng, n, r_max=1.0):
    frame = sf.canonical_frame()
    scale = 1.0 / max(1.0, sf.scale)
    return sf.polar_point(frame, rng.uniform(0, r_max * scale, n), rng.uniform(0, 2 * np.pi, n))


def acos_distance(sf, p, q):
    # textbook formulas, used only as an oracle
    if sf.flat:
        return float(np.linalg.norm(np.asarray(q) - p))
    x = sf.lam * float(sf.inner(p, q))
    if sf.lam > 0:
        return math.acos(min(1.0, max(-1.0, x))) / sf.scale
    return math.acosh(max(1.0, x)) / sf.scale


def test_kind():
    assert SpaceForm(2.0).kind is ModelKind.SPHERICAL
    assert SpaceForm(0.0).kind is ModelKind.FLAT
    assert SpaceForm(-0.5).kind is ModelKind.HYPERBOLIC
    with pytest.raises(ValueError):
        SpaceForm(math.nan)


@pytest.mark.parametrize(
    "lam, p, q, d",
    [
        (1.0, (1, 0, 0), (0, 1, 0), math.pi / 2),
        (0.0, (0, 0), (3, 4), 5.0),
        (-1.0, (1, 0, 0), (math.cosh(1), math.sinh(1), 0), 1.0),
        (4.0, (0.5, 0, 0), (0, 0, -0.5), math.pi / 4),
    ],
)
def test_distance_examples(lam, p, q, d):
    sf = SpaceForm(lam)
    assert sf.distance(np.array(p, float), np.array(q, float)) == pytest.approx(d, rel=1e-14)


@pytest.mark.parametrize("lam", LAMS)
def test_invalid_points(lam):
    sf = SpaceForm(lam)
    if sf.flat:
        with pytest.raises(InvalidPoint):
            sf.check_point(np.array([0.0, math.nan]))
        with pytest.raises(InvalidPoint):
            sf.check_point(np.zeros(3))
        return
    with pytest.raises(InvalidPoint):
        sf.check_point(np.array([2.0, 0.0, 0.0]))
    with pytest.raises(InvalidPoint):
        sf.check_point(np.array([math.nan, 0.0, 0.0]))
    if lam < 0:
        with pytest.raises(InvalidPoint):
            sf.check_point(np.array([-1.0, 0.0, 0.0]))


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_distance_matches_acos_form(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(1)
    P = random_points(sf, rng, 200, 1.4)
    Q = random_points(sf, rng, 200, 1.4)
    d = sf.distance(P, Q)
    ref = np.array([acos_distance(sf, p, q) for p, q in zip(P, Q)])
    # the acos form loses digits near 0; compare at a generous level
    np.testing.assert_allclose(d, ref, atol=1e-7)
    assert np.all(sf.distance(P, P) == 0)
    np.testing.assert_allclose(d, sf.distance(Q, P), rtol=1e-15)


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_triangle_inequality(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(2)
    A, B, C = (random_points(sf, rng, 300, 1.5) for _ in range(3))
    assert np.all(sf.distance(A, C) <= sf.distance(A, B) + sf.distance(B, C) + 1e-10)


def test_exp_examples():
    sf = SpaceForm(-1.0)
    p = np.array([1.0, 0.0, 0.0])
    np.testing.assert_allclose(sf.exp_map(p, np.array([0.0, 1.0, 0.0])), [math.cosh(1), math.sinh(1), 0], rtol=1e-15)
    for lam in LAMS:
        sf = SpaceForm(lam)
        b = sf.base_point()
        np.testing.assert_array_equal(sf.exp_map(b, np.zeros(sf.dim)), b)
        np.testing.assert_array_equal(sf.log_map(b, b), np.zeros(sf.dim))
    np.testing.assert_allclose(SpaceForm(0).log_map(np.zeros(2), np.array([3.0, 4.0])), [3, 4])


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_exp_log_round_trip(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(3)
    P = random_points(sf, rng, 200, 1.4)
    Q = random_points(sf, rng, 200, 1.4)
    V = sf.log_map(P, Q)
    np.testing.assert_allclose(sf.norm(V), sf.distance(P, Q), atol=1e-10)
    np.testing.assert_allclose(sf.exp_map(P, V), Q, atol=1e-9)
    if not sf.flat:
        # tangent to the quadric at the base
        assert np.max(np.abs(sf.inner(V, P))) < 1e-10
        sf.check_point(sf.exp_map(P, V))
        # and the other way: log(exp(v)) = v for short tangent vectors
        W = sf.project_tangent(P, rng.normal(size=P.shape)) * 0.3
        np.testing.assert_allclose(sf.log_map(P, sf.exp_map(P, W)), W, atol=1e-9)


def test_log_antipodal():
    sf = SpaceForm(1.0)
    with pytest.raises(AntipodalError):
        sf.log_map(np.array([1.0, 0, 0]), np.array([-1.0, 0, 0]))
    with pytest.raises(AntipodalError):
        sf.midpoint(np.array([0, 1.0, 0]), np.array([0, -1.0, 0]))


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_midpoint(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(4)
    P = random_points(sf, rng, 100, 1.4)
    Q = random_points(sf, rng, 100, 1.4)
    M = sf.midpoint(P, Q)
    half = sf.distance(P, Q) / 2
    np.testing.assert_allclose(sf.distance(M, P), half, atol=1e-10)
    np.testing.assert_allclose(sf.distance(M, Q), half, atol=1e-10)
    np.testing.assert_allclose(sf.midpoint(P, P), P, atol=1e-15)
    if sf.flat:
        np.testing.assert_allclose(sf.midpoint(np.zeros(2), np.array([2.0, 0])), [1, 0])


def test_angle_at_examples():
    sf = SpaceForm(0)
    o = np.zeros(2)
    assert sf.angle_at(o, np.array([1.0, 0]), np.array([0, 1.0])) == pytest.approx(math.pi / 2)
    assert sf.angle_at(o, np.array([1.0, 0]), np.array([-1.0, 0])) == pytest.approx(math.pi)
    with pytest.raises(DegenerateError):
        sf.angle_at(o, o, np.array([1.0, 0]))


@pytest.mark.parametrize(
    "lam, sides, expected",
    [
        (0.0, (1.0, 1.0, 1.0), math.pi / 3),
        (1.0, (math.pi / 2,) * 3, math.pi / 2),
        (-1.0, (1.0, 1.0, 1.0), math.acos(math.cosh(1) / (math.cosh(1) + 1))),
        (0.0, (5.0, 3.0, 4.0), math.pi / 2),
    ],
)
def test_cosine_law_examples(lam, sides, expected):
    assert SpaceForm(lam).cosine_law_angle(*sides) == pytest.approx(expected, rel=1e-13)


def test_cosine_law_hyperbolic_value():
    # cosh(1) / (cosh(1) + 1)
    assert math.cos(SpaceForm(-1.0).cosine_law_angle(1.0, 1.0, 1.0)) == pytest.approx(0.6067761335, abs=1e-10)


@pytest.mark.parametrize("sides", [(3.0, 1.0, 1.0), (0.0, 1.0, 1.0), (1.0, -1.0, 1.0)])
def test_cosine_law_rejects(sides):
    with pytest.raises(NotATriangle):
        SpaceForm(0).cosine_law_angle(*sides)


def test_cosine_law_rejects_antipodal_side():
    with pytest.raises(NotATriangle):
        SpaceForm(1.0).cosine_law_angle(math.pi, 1.0, 1.0)


def _cos_form(lam, a, b, c):
    # the law of cosines written with cosines, as an oracle
    if lam == 0:
        return math.acos((b * b + c * c - a * a) / (2 * b * c))
    x = (gcos(lam, a) - gcos(lam, b) * gcos(lam, c)) / (lam * gsin(lam, b) * gsin(lam, c))
    return math.acos(max(-1.0, min(1.0, x)))


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_cosine_law_matches_angle_at_and_sines(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(5)
    for _ in range(200):
        p, q, r = random_points(sf, rng, 3, 1.4)
        a, b, c = sf.distance(q, r), sf.distance(p, r), sf.distance(p, q)
        if min(a, b, c) < 1e-3 or abs(sf.orientation(p, q, r)) < 1e-6:
            continue
        A = sf.cosine_law_angle(a, b, c)
        B = sf.cosine_law_angle(b, c, a)
        assert A == pytest.approx(float(sf.angle_at(p, q, r)), abs=1e-9)
        assert A == pytest.approx(_cos_form(lam, a, b, c), abs=1e-7)
        # law of sines
        assert math.sin(A) / gsin(lam, a) == pytest.approx(math.sin(B) / gsin(lam, b), abs=1e-9)


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_rotate90_and_signed_angle(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(6)
    P = random_points(sf, rng, 50, 1.2)
    V = sf.project_tangent(P, rng.normal(size=P.shape))
    J = sf.rotate90(P, V)
    np.testing.assert_allclose(sf.norm(J), sf.norm(V), rtol=1e-12)
    assert np.max(np.abs(sf.inner(J, V))) < 1e-12
    np.testing.assert_allclose(sf.signed_angle(P, V, J), np.pi / 2, atol=1e-12)
    np.testing.assert_allclose(sf.rotate90(P, J), -V, atol=1e-12)
    ang = rng.uniform(-3, 3, len(P))
    np.testing.assert_allclose(sf.signed_angle(P, V, sf.rotate(P, V, ang)), ang, atol=1e-12)
    if not sf.flat:
        assert np.max(np.abs(sf.inner(J, P))) < 1e-12


@pytest.mark.parametrize("lam", LAMS)
def test_orientation_sign_convention(lam):
    sf = SpaceForm(lam)
    frame = sf.canonical_frame()
    pts = sf.polar_point(frame, np.full(3, 0.5), np.array([0.0, 2.0, 4.0]))
    assert sf.orientation(*pts) > 0
    assert sf.orientation(pts[0], pts[2], pts[1]) < 0
    if not sf.flat:
        assert det3(frame.center, frame.e1, frame.e2) > 0


def test_circumcircle_examples():
    sf = SpaceForm(0)
    c, r = sf.circumcircle3(np.zeros(2), np.array([2.0, 0]), np.array([1.0, 1]))
    np.testing.assert_allclose(c, [1, 0], atol=1e-15)
    assert r == pytest.approx(1.0)
    s = 1.7
    c, r = sf.circumcircle3(np.zeros(2), np.array([s, 0]), np.array([s / 2, s * math.sqrt(3) / 2]))
    assert r == pytest.approx(s / math.sqrt(3))
    with pytest.raises(CollinearError):
        sf.circumcircle3(np.zeros(2), np.array([1.0, 1]), np.array([2.0, 2]))


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_circumcircle_equidistant(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(7)
    count = 0
    for _ in range(300):
        pts = random_points(sf, rng, 3, 1.2)
        try:
            c, r = sf.circumcircle3(*pts)
        except NoCircumcircle:
            assert lam < 0
            continue
        count += 1
        assert np.max(np.abs(sf.distance(c, pts) - r)) <= 1e-9
        if lam > 0:
            assert r < math.pi / (2 * sf.scale)
    assert count > 200


def test_no_circumcircle_on_hyperbolic_equidistant_curve():
    # points at height 1 above a geodesic lie on an equidistant curve
    sf = SpaceForm(-1.0)
    h = 1.0
    pts = np.array([[math.cosh(h) * math.cosh(t), math.cosh(h) * math.sinh(t), math.sinh(h)] for t in (-1, 0, 1.5)])
    with pytest.raises(NoCircumcircle):
        sf.circumcircle3(*pts)
    # its geodesic curvature is tanh(h), below 1
    assert abs(sf.three_point_curvature(*pts)) == pytest.approx(math.tanh(h), rel=1e-12)


def test_three_point_curvature_on_circles():
    for lam in ALL_LAMS:
        sf = SpaceForm(lam)
        frame = sf.canonical_frame()
        rho = 0.6 / max(1.0, sf.scale)
        pts = sf.polar_point(frame, np.full(3, rho), np.array([0.1, 1.0, 2.5]))
        assert sf.three_point_curvature(*pts) == pytest.approx(gcot(lam, rho), rel=1e-11)
        assert sf.three_point_curvature(*pts[::-1]) == pytest.approx(-gcot(lam, rho), rel=1e-11)


def test_polar_point_examples():
    sf = SpaceForm(0)
    np.testing.assert_allclose(sf.polar_point(sf.canonical_frame(), 2.0, math.pi / 2), [0, 2], atol=1e-15)
    for lam in LAMS:
        sf = SpaceForm(lam)
        f = sf.canonical_frame()
        np.testing.assert_array_equal(sf.polar_point(f, 0.0, 1.3), f.center)


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_frames_orthonormal(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(8)
    for p in random_points(sf, rng, 20, 1.3):
        f = sf.tangent_frame(p)
        assert isinstance(f, PolarFrame)
        G = np.array([[sf.inner(a, b) for b in (f.e1, f.e2)] for a in (f.e1, f.e2)])
        np.testing.assert_allclose(G, np.eye(2), atol=1e-10)
        if not sf.flat:
            assert abs(sf.inner(f.e1, p)) < 1e-10 and abs(sf.inner(f.e2, p)) < 1e-10
            assert det3(p, f.e1, f.e2) > 0


@pytest.mark.parametrize("lam", ALL_LAMS)
def test_polar_round_trip(lam):
    sf = SpaceForm(lam)
    rng = np.random.default_rng(9)
    centre = random_points(sf, rng, 1, 1.0)[0]
    f = sf.tangent_frame(centre)
    r = rng.uniform(0.01, 1.2 / max(1, sf.scale), 100)
    phi = rng.uniform(-3.1, 3.1, 100)
    q = sf.polar_point(f, r, phi)
    np.testing.assert_allclose(sf.distance(centre, q), r, atol=1e-10)
    rr, pp = sf.polar_coords(f, q)
    np.testing.assert_allclose(rr, r, atol=1e-10)
    np.testing.assert_allclose(pp, phi, atol=1e-9)


@pytest.mark.parametrize("lam", LAMS)
def test_polar_velocity_by_finite_differences(lam):
    sf = SpaceForm(lam)
    f = sf.canonical_frame()

    def r(phi):
        return 0.4 + 0.1 * np.sin(3 * phi)

    def dr(phi):
        return 0.3 * np.cos(3 * phi)

    phi = np.linspace(-3, 3, 13)
    h = 1e-6
    fd = (sf.polar_point(f, r(phi + h), phi + h) - sf.polar_point(f, r(phi - h), phi - h)) / (2 * h)
    np.testing.assert_allclose(sf.polar_velocity(f, r(phi), dr(phi), phi), fd, atol=1e-8)


finite = st.floats(-1.2, 1.2)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(ALL_LAMS), finite, finite, finite, finite)
def test_outputs_stay_on_quadric(lam, a, b, c, d):
    sf = SpaceForm(lam)
    f = sf.canonical_frame()
    s = 1.0 / max(1.0, sf.scale)
    p = sf.polar_point(f, abs(a) * s, b * 3)
    q = sf.polar_point(f, abs(c) * s, d * 3)
    for x in (p, q, sf.midpoint(p, q), sf.exp_map(p, 0.7 * sf.log_map(p, q))):
        sf.check_point(x)
