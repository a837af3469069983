"""Minkowski cone: structure maps, embedding oracle, utility bounds."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorcomp.cone import (
    CircleBase,
    ConePoint,
    FiniteMetricBase,
    LineBase,
    VERTEX,
    cone_chron,
    cone_d,
    cone_le,
    cone_space,
    cone_tau,
    cone_utility_bounds,
    load_metric_base,
    save_metric_base,
    vertex_direction_angle,
)
from lorcomp.errors import MalformedInput, ParseError, PreconditionViolation
from lorcomp.flat import embed_cone_over_line, tau_flat

LINE = LineBase(span=1.0)


class _PairBase(FiniteMetricBase):
    def __init__(self, d):
        super().__init__([[0.0, d], [d, 0.0]], name=f"pair({d})")


def test_cone_d_examples():
    assert cone_d(ConePoint(1.0, 0.3), ConePoint(1.0, 0.3), LINE) == 0.0
    assert cone_d(VERTEX, ConePoint(3.0, 0.5), LINE) == 3.0
    base = _PairBase(math.pi / 2)
    assert cone_d(ConePoint(1.0, 0), ConePoint(2.0, 1), base) == pytest.approx(
        math.sqrt(5.0), abs=1e-12)
    # beyond pi the metric degenerates to the sum of levels
    far = _PairBase(3.5)
    assert cone_d(ConePoint(1.0, 0), ConePoint(2.0, 1), far) == 3.0


def test_cone_tau_examples():
    assert cone_tau(ConePoint(1.0, 0.2), ConePoint(2.0, 0.2), LINE) == pytest.approx(
        1.0, abs=1e-12)
    t = cone_tau(ConePoint(1.0, 0.0), ConePoint(2.0, 0.5), LINE)
    assert t == pytest.approx(math.sqrt(5.0 - 4.0 * math.cosh(0.5)), abs=1e-12)
    assert t == pytest.approx(0.69964, abs=1e-5)
    assert cone_tau(ConePoint(1.0, 0.0), ConePoint(2.0, 1.0), LINE) == 0.0


def test_cone_le_examples():
    assert cone_le(VERTEX, ConePoint(5.0, -0.3), LINE)
    assert not cone_le(ConePoint(2.0, 0.0), ConePoint(1.0, 0.0), LINE)
    # exact null boundary: levels (1, e) at base distance 1
    assert cone_le(ConePoint(1.0, 0.0), ConePoint(math.e, 1.0), LINE)
    assert not cone_chron(ConePoint(1.0, 0.0), ConePoint(math.e, 1.0), LINE)
    # nobody precedes the vertex
    assert not cone_le(ConePoint(0.5, 0.0), VERTEX, LINE)


def test_cone_tau_matches_flat_embedding():
    rng = random.Random(31)
    for _ in range(5000):
        p = ConePoint(rng.uniform(0.05, 2.0), rng.uniform(-1.0, 1.0))
        q = ConePoint(rng.uniform(0.05, 2.0), rng.uniform(-1.0, 1.0))
        want = tau_flat(embed_cone_over_line(p.t, p.y), embed_cone_over_line(q.t, q.y))
        assert cone_tau(p, q, LINE) == pytest.approx(want, abs=1e-12)


def test_chron_implies_le_and_reverse_triangle():
    rng = random.Random(13)
    space = cone_space(LINE)
    pts = space.sample_points(400, seed=77)
    for i in range(0, 399, 3):
        p, q, r = pts[i], pts[i + 1], pts[i + 2]
        if cone_tau(p, q, LINE) > 0:
            assert cone_le(p, q, LINE)
        if cone_le(p, q, LINE) and cone_le(q, r, LINE):
            lhs = cone_tau(p, r, LINE)
            rhs = cone_tau(p, q, LINE) + cone_tau(q, r, LINE)
            assert lhs >= rhs - 1e-10


def test_ray_additivity_exact():
    assert cone_tau(ConePoint(0.25, 0.7), ConePoint(1.75, 0.7), LINE) == 1.5
    assert cone_tau(VERTEX, ConePoint(1.3, -0.2), LINE) == 1.3


def test_vertex_is_chronologically_isolated():
    space = cone_space(LINE)
    for p in space.sample_points(10_000, seed=99):
        assert not cone_chron(p, VERTEX, LINE)


def test_utility_bounds_examples():
    p, q = ConePoint(1.0, 0.0), ConePoint(math.e, 1.0)
    b1, b2 = cone_utility_bounds(p, q, LINE)
    assert b1 == pytest.approx(1.0, abs=1e-12)  # attained on the null boundary
    assert LINE.dist(p.y, q.y) <= b1 + 1e-12

    b1, b2 = cone_utility_bounds(ConePoint(1.0, 0.4), ConePoint(2.0, 0.4), LINE)
    assert b1 == pytest.approx(math.log(2.0), abs=1e-12)

    p, q = ConePoint(1.0, 0.0), ConePoint(2.0, 0.5)
    b1, b2 = cone_utility_bounds(p, q, LINE)
    assert b2 == pytest.approx(1.0 + 2.0 * 0.5, abs=1e-12)
    assert cone_d(p, q, LINE) <= b2

    with pytest.raises(PreconditionViolation):
        cone_utility_bounds(ConePoint(2.0, 0.0), ConePoint(1.0, 0.0), LINE)
    with pytest.raises(PreconditionViolation):
        cone_utility_bounds(VERTEX, ConePoint(1.0, 0.0), LINE)


def test_utility_bounds_hold_on_sampled_causal_pairs():
    rng = random.Random(55)
    hits = 0
    while hits < 2000:
        p = ConePoint(rng.uniform(0.05, 2.0), rng.uniform(-1.5, 1.5))
        q = ConePoint(rng.uniform(0.05, 2.0), rng.uniform(-1.5, 1.5))
        if not cone_le(p, q, LINE):
            continue
        b1, b2 = cone_utility_bounds(p, q, LINE)
        assert LINE.dist(p.y, q.y) <= b1 + 1e-9
        assert cone_d(p, q, LINE) <= b2 + 1e-9
        hits += 1


def test_causal_polyline_length_bound():
    """The cone-metric length of causal polylines from the vertex up to level
    t stays below 4t."""
    rng = random.Random(21)
    for _ in range(1000):
        steps = rng.randrange(2, 9)
        levels = sorted(rng.uniform(0.05, 2.0) for _ in range(steps))
        y = rng.uniform(-1.0, 1.0)
        pts = [VERTEX, ConePoint(levels[0], y)]
        for nxt in levels[1:]:
            prev = pts[-1]
            room = math.log(nxt) - math.log(prev.t)
            y = prev.y + rng.uniform(-room, room)
            pts.append(ConePoint(nxt, y))
        total = 0.0
        for a, b in zip(pts, pts[1:]):
            assert cone_le(a, b, LINE)
            total += cone_d(a, b, LINE)
        assert total <= 4.0 * pts[-1].t + 1e-9


def test_vertex_direction_angle():
    assert vertex_direction_angle(0.4, 0.4, LINE) == 0.0
    assert vertex_direction_angle(0.0, 0.5, LINE) == pytest.approx(0.5, abs=1e-9)
    circle = CircleBase(circumference=2.0)
    assert vertex_direction_angle(0.0, 1.0, circle) == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(y1=st.floats(-2.0, 2.0), y2=st.floats(-2.0, 2.0))
def test_vertex_direction_angle_is_base_distance(y1, y2):
    assert vertex_direction_angle(y1, y2, LINE) == pytest.approx(
        abs(y1 - y2), abs=1e-6)


def test_vertex_directions_metric_on_triples():
    rng = random.Random(9)
    circle = CircleBase(2.0)
    for _ in range(100):
        a, b, c = (rng.uniform(0, 2.0) for _ in range(3))
        ab = vertex_direction_angle(a, b, circle)
        bc = vertex_direction_angle(b, c, circle)
        ac = vertex_direction_angle(a, c, circle)
        assert ab == pytest.approx(vertex_direction_angle(b, a, circle), abs=1e-12)
        assert ac <= ab + bc + 1e-9


def test_cone_space_geodesics_realize():
    space = cone_space(LINE)
    rng = random.Random(3)
    done = 0
    while done < 300:
        p = ConePoint(rng.uniform(0.3, 1.9), rng.uniform(-1, 1))
        q = ConePoint(rng.uniform(0.3, 1.9), rng.uniform(-1, 1))
        if not space.chron(p, q):
            continue
        g = space.geodesic(p, q)
        s = rng.uniform(0, g.length)
        t = rng.uniform(s, g.length)
        assert space.tau(g.at(s), g.at(t)) == pytest.approx(t - s, abs=1e-9)
        done += 1
    # rays from the vertex realize the level
    g = space.geodesic(VERTEX, ConePoint(1.2, 0.4))
    assert g.at(0.7) == ConePoint(0.7, 0.4)


def test_finite_metric_base_io():
    base = _PairBase(0.8)
    again = load_metric_base(save_metric_base(base))
    assert again.matrix == base.matrix
    with pytest.raises(ParseError):
        load_metric_base(b'{"n": 2, "dist": [[0, 1], [2, 0]]}')  # asymmetric
    with pytest.raises(ParseError):
        load_metric_base(b'{"n": 2, "dist": [[0, 1]]}')
    with pytest.raises(MalformedInput):
        FiniteMetricBase([[0.0, 5.0], [5.0, 0.1]])
