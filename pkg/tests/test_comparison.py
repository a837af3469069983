"""Comparison triangles, side-point separations, and the straightening audit."""

import math
import random

import pytest

from lorcomp.comparison import (
    ComparisonSeparation,
    SidePoint,
    comparison_angle,
    comparison_tau,
    corresponding_side_point,
    make_comparison_triangle,
    straightening_check,
)
from lorcomp.errors import (
    NotCausallyRelated,
    OffsetOutOfRange,
    ShapeViolation,
    SizeBoundViolation,
)
from lorcomp.flat import realize_triangle_flat, segment_point, tangent_angle_flat, tau_flat
from lorcomp.kernel import (
    CurvatureParam,
    HingeShape,
    Orientation,
    SignedAngle,
    TriangleShape,
    angle_from_sides,
    one_sided_x,
    side_from_hinge,
)

K0 = CurvatureParam(0.0)
KN1 = CurvatureParam(-1.0)


class _FlatSpace:
    """Minimal tau/le oracle over flat coordinates, for comparison_angle tests."""

    def tau(self, p, q):
        return tau_flat(p, q)

    def le(self, p, q):
        if p == q:
            return True
        dt = q[0] - p[0]
        dx2 = sum((b - a) ** 2 for a, b in zip(p[1:], q[1:]))
        return dt >= 0 and dt * dt >= dx2


def test_make_comparison_triangle_angles():
    tri = make_comparison_triangle(K0, 1.0, 1.0, 2.0)
    assert tri.angle_p1.omega == tri.angle_p2.omega == tri.angle_p3.omega == 0.0
    assert (tri.angle_p1.sigma, tri.angle_p2.sigma, tri.angle_p3.sigma) == (-1, 1, -1)

    tri = make_comparison_triangle(K0, 1.0, 1.0, 3.0)
    assert tri.angle_p1.omega == pytest.approx(math.acosh(1.5), abs=1e-12)

    tri = make_comparison_triangle(KN1, 0.4, 0.4, 1.2)
    # round trip through the hinge solve at each vertex
    s = side_from_hinge(KN1, HingeShape(0.4, 1.2, tri.angle_p1))
    assert s.tau == pytest.approx(0.4, abs=1e-12)
    s = side_from_hinge(KN1, HingeShape(0.4, 0.4, tri.angle_p2))
    assert s.tau == pytest.approx(1.2, abs=1e-12)
    # continuity toward the flat angles
    tri_eps = make_comparison_triangle(CurvatureParam(-1e-10), 0.4, 0.4, 1.2)
    tri_flat = make_comparison_triangle(K0, 0.4, 0.4, 1.2)
    assert tri_eps.angle_p1.omega == pytest.approx(tri_flat.angle_p1.omega, abs=1e-6)

    with pytest.raises(ShapeViolation):
        make_comparison_triangle(K0, 1.0, 1.0, 1.5)
    with pytest.raises(SizeBoundViolation):
        make_comparison_triangle(KN1, 1.0, 1.0, 3.2)


def test_side_points():
    tri = make_comparison_triangle(K0, 1.0, 1.0, 3.0)
    assert corresponding_side_point(tri, "13", 0.0) == SidePoint("13", 0.0)
    assert corresponding_side_point(tri, "23", 1.0) == SidePoint("23", 1.0)
    assert corresponding_side_point(tri, "13", 1.5).offset == 1.5
    with pytest.raises(OffsetOutOfRange):
        corresponding_side_point(tri, "12", 1.5)


def test_comparison_tau_examples():
    tri = make_comparison_triangle(K0, 1.0, 1.0, 3.0)
    # middle vertex against the midpoint of the long side: spacelike
    q1 = corresponding_side_point(tri, "12", 1.0)  # the vertex p2
    q2 = corresponding_side_point(tri, "13", 1.5)
    sep = comparison_tau(tri, q1, q2)
    assert sep == ComparisonSeparation(0.0, Orientation.NONE)

    # past vertex against the midpoint of a future side of length 2
    tri = make_comparison_triangle(K0, 1.0, 2.0, 4.0)
    q1 = corresponding_side_point(tri, "12", 0.0)  # the vertex p1
    q2 = corresponding_side_point(tri, "23", 1.0)
    sep = comparison_tau(tri, q1, q2)
    assert sep.value == pytest.approx(math.sqrt(7.5), abs=1e-12)
    assert sep.orientation is Orientation.FIRST_BEFORE_SECOND

    tri = make_comparison_triangle(K0, 1.0, 1.0, 2.0)
    q1 = corresponding_side_point(tri, "12", 0.5)
    q2 = corresponding_side_point(tri, "23", 0.5)
    sep = comparison_tau(tri, q1, q2)
    assert sep.value == pytest.approx(1.0, abs=1e-12)
    assert sep.orientation is Orientation.FIRST_BEFORE_SECOND


def _flat_side_point(real, side, offset, lengths):
    a12, a23, a13 = lengths
    ends = {"12": (real.p1, real.p2, a12), "23": (real.p2, real.p3, a23),
            "13": (real.p1, real.p3, a13)}
    p, q, ln = ends[side]
    if offset <= 0:
        return p
    if offset >= ln:
        return q
    return segment_point(p, q, offset / ln)


def test_comparison_tau_matches_coordinates_flat():
    """Every side pair agrees with the coordinate oracle at k = 0."""
    rng = random.Random(123)
    for _ in range(2000):
        a12 = rng.uniform(0.1, 1.0)
        a23 = rng.uniform(0.1, 1.0)
        a13 = (a12 + a23) * rng.uniform(1.001, 1.8)
        tri = make_comparison_triangle(K0, a12, a23, a13)
        real = realize_triangle_flat(TriangleShape(a12, a23, a13))
        lengths = (a12, a23, a13)
        s1 = rng.choice(("12", "23", "13"))
        s2 = rng.choice(("12", "23", "13"))
        o1 = rng.choice((0.0, rng.uniform(0, tri.side_length(s1)), tri.side_length(s1)))
        o2 = rng.choice((0.0, rng.uniform(0, tri.side_length(s2)), tri.side_length(s2)))
        sep = comparison_tau(tri, SidePoint(s1, o1), SidePoint(s2, o2))
        x1 = _flat_side_point(real, s1, o1, lengths)
        x2 = _flat_side_point(real, s2, o2, lengths)
        want_fwd = tau_flat(x1, x2)
        want_bwd = tau_flat(x2, x1)
        assert sep.value == pytest.approx(max(want_fwd, want_bwd), abs=1e-10)
        if sep.value > 1e-9:
            want = (Orientation.FIRST_BEFORE_SECOND if want_fwd > 0
                    else Orientation.SECOND_BEFORE_FIRST)
            assert sep.orientation is want


def test_comparison_tau_vertex_cases_match_one_sided():
    rng = random.Random(321)
    for _ in range(10_000):
        k = CurvatureParam(rng.uniform(-1.5, 1.5))
        a12 = rng.uniform(0.1, 0.6)
        a23 = rng.uniform(0.1, 0.6)
        a13 = (a12 + a23) * rng.uniform(1.0, 1.5)
        if k.k < 0 and a13 >= k.diameter - 1e-3:
            continue
        tri = make_comparison_triangle(k, a12, a23, a13)
        o = rng.uniform(0.0, a23)
        sep = comparison_tau(tri, SidePoint("12", 0.0), SidePoint("23", o))
        want = one_sided_x(k, 1, a12, o, a23 - o, a13)
        assert sep.value == pytest.approx(want.value, abs=1e-10)
        o = rng.uniform(0.0, a12)
        sep = comparison_tau(tri, SidePoint("13", tri.a13), SidePoint("12", o))
        want = one_sided_x(k, 2, o, a12 - o, a23, a13)
        assert sep.value == pytest.approx(want.value, abs=1e-10)
        o = rng.uniform(0.0, a13)
        sep = comparison_tau(tri, SidePoint("23", 0.0), SidePoint("13", o))
        want = one_sided_x(k, 3, a12, a23, o, a13 - o)
        assert sep.value == pytest.approx(want.value, abs=1e-10)


def test_vertex_angle_monotone_in_longest_side():
    rng = random.Random(8)
    h = 1e-4
    for _ in range(200):
        k = CurvatureParam(rng.uniform(-1.5, 1.5))
        a12 = rng.uniform(0.1, 0.5)
        a23 = rng.uniform(0.1, 0.5)
        a13 = (a12 + a23) * rng.uniform(1.05, 1.4)
        if k.k < 0 and a13 + h >= k.diameter - 1e-6:
            continue
        t0 = make_comparison_triangle(k, a12, a23, a13)
        t1 = make_comparison_triangle(k, a12, a23, a13 + h)
        assert t1.angle_p1.omega > t0.angle_p1.omega
        assert t1.angle_p2.omega > t0.angle_p2.omega
        assert t1.angle_p3.omega > t0.angle_p3.omega


def test_comparison_angle_minkowski():
    sp = _FlatSpace()
    ang = comparison_angle(sp, (0.0, 0.0), (1.0, 0.0), (2.0, 0.0), K0)
    assert (ang.omega, ang.sigma) == (0.0, -1)

    ang = comparison_angle(sp, (0.0, 0.0), (1.0, 0.0), (2.375, 1.28086), K0)
    assert ang.sigma == -1
    assert ang.omega == pytest.approx(0.60319, abs=1e-5)

    ang = comparison_angle(sp, (0.0, 0.0), (-1.0, 0.0), (2.0, 0.0), K0)
    assert (ang.omega, ang.sigma) == (0.0, 1)

    with pytest.raises(NotCausallyRelated):
        comparison_angle(sp, (0.0, 0.0), (1.0, 0.0), (0.5, 3.0), K0)


def test_comparison_angle_symmetric():
    sp = _FlatSpace()
    rng = random.Random(77)
    for _ in range(200):
        x = (0.0, 0.0)
        y = (rng.uniform(0.5, 2.0), rng.uniform(-0.4, 0.4))
        z = (rng.uniform(2.5, 4.0), rng.uniform(-0.4, 0.4))
        k = CurvatureParam(rng.uniform(-0.3, 0.3))
        a1 = comparison_angle(sp, x, y, z, k)
        a2 = comparison_angle(sp, x, z, y, k)
        assert a1.omega == pytest.approx(a2.omega, abs=1e-12)
        assert a1.sigma == a2.sigma


def _flat_straightening_config(rng):
    """Random plane configuration p << m << q <= r with p, r on opposite
    sides of the segment [m q] and the straightened side long enough."""
    m = (0.0, 0.0)
    q = (rng.uniform(0.6, 1.6), 0.0)
    q = (q[0], rng.uniform(-0.5, 0.5) * q[0] * 0.7)
    # p strictly below m, on a definite side of the line m-q
    while True:
        p = (-rng.uniform(0.4, 1.5), rng.uniform(-1.0, 1.0))
        if tau_flat(p, m) > 1e-3:
            break
    # r in the causal future of q, on the opposite side of the line m-q from p
    d = q  # line through m with direction q
    side = lambda z: d[0] * z[1] - d[1] * z[0]
    if side(p) == 0.0:
        return None
    step = (rng.uniform(0.0, 1.5), rng.uniform(-1.0, 1.0))
    if step[0] * step[0] - step[1] * step[1] < 0.0:
        return None
    r = (q[0] + step[0], q[1] + step[1])
    if side(r) == 0.0 or side(p) * side(r) > 0:
        return None
    t_pm, t_mq, t_qr, t_mr = tau_flat(p, m), tau_flat(m, q), tau_flat(q, r), tau_flat(m, r)
    t_pq = tau_flat(p, q)
    if min(t_pm, t_mq) <= 1e-3 or t_mr <= 0:
        return None
    if t_pq + t_qr > t_pm + t_mr - 1e-9:
        return None
    ang_pmq = tangent_angle_flat(tuple(a - b for a, b in zip(p, m)),
                                 tuple(a - b for a, b in zip(q, m)))
    ang_qmr = tangent_angle_flat(tuple(a - b for a, b in zip(q, m)),
                                 tuple(a - b for a, b in zip(r, m)))
    assert ang_pmq.sigma == +1 and ang_qmr.sigma == -1
    return (t_pm, t_mq, t_qr, t_mr, ang_pmq.omega, ang_qmr.omega, t_pq)


def test_straightening_flat_configurations():
    rng = random.Random(2024)
    checked = 0
    while checked < 2000:
        cfg = _flat_straightening_config(rng)
        if cfg is None:
            continue
        t_pm, t_mq, t_qr, t_mr, w1, w2, t_pq = cfg
        res = straightening_check(K0, t_pm, t_mq, t_qr, t_mr, w1, w2)
        assert res.consistent, (cfg, res)
        checked += 1


def test_straightening_collinear_equality():
    # p, m, r on the time axis, q off axis: both orders are equalities
    p, m, q, r = (-1.0, 0.0), (0.0, 0.0), (1.0, 0.3), (2.0, 0.0)
    w1 = tangent_angle_flat((-1.0, 0.0), (1.0, 0.3)).omega
    w2 = tangent_angle_flat((1.0, 0.3), (2.0, 0.0)).omega
    res = straightening_check(K0, tau_flat(p, m), tau_flat(m, q), tau_flat(q, r),
                              tau_flat(m, r), w1, w2)
    assert res.consistent
    assert res.lhs_order == "="
    assert res.rhs_order == "="
    assert res.straightened_tau == pytest.approx(tau_flat(m, q), abs=1e-9)


def test_straightening_degenerate_q_near_r():
    """r approaches q along a null direction.  The straightening hypothesis
    forces p, m, q toward collinearity in this limit, so start there."""
    p, m, q = (-1.0, 0.0), (0.0, 0.0), (1.5, 0.0)
    for eps in (0.5, 0.1, 0.01, 1e-4):
        r = (q[0] + eps, q[1] + eps)  # null step off the axis
        w1 = tangent_angle_flat((-1.0, 0.0), q).omega
        w2 = tangent_angle_flat(q, tuple(a - b for a, b in zip(r, m))).omega
        res = straightening_check(K0, tau_flat(p, m), tau_flat(m, q), tau_flat(q, r),
                                  tau_flat(m, r), w1, w2)
        assert res.consistent
