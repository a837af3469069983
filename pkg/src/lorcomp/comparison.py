"""Comparison triangles by side lengths, points on their sides, and signed angles.

A comparison triangle lives in the curvature-k model plane and is determined
up to isometry by its three side lengths (a12, a23, a13) with a12 + a23 <=
a13.  Side points are named by the side they sit on, with offsets measured
from the side's past vertex; separations between side points are computed
purely from side-length trigonometry, so the same code serves every k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    InfiniteTau,
    NotCausallyRelated,
    OffsetOutOfRange,
    PreconditionViolation,
    ShapeViolation,
)
from .kernel import (
    CurvatureParam,
    HingeShape,
    Orientation,
    SignedAngle,
    TriangleShape,
    angle_from_sides,
    one_sided_x,
    side_from_hinge,
)

SIDES = ("12", "23", "13")

# (past vertex, future vertex) of each named side
_SIDE_ENDS = {"12": (1, 2), "23": (2, 3), "13": (1, 3)}

# order-comparison dead band separating rounding from geometry
_EQ_TOL = 1e-9


@dataclass(frozen=True)
class SidePoint:
    """A point on a named triangle side, offset from the side's past vertex."""

    side: str
    offset: float

    def __post_init__(self):
        if self.side not in SIDES:
            raise PreconditionViolation(f"side must be one of {SIDES}, got {self.side!r}")


@dataclass(frozen=True)
class ComparisonSeparation:
    """Model-plane time separation between two side points, with time order."""

    value: float
    orientation: Orientation

    def flip(self) -> "ComparisonSeparation":
        return ComparisonSeparation(self.value, self.orientation.flipped())


@dataclass(frozen=True)
class ComparisonTriangle:
    k: CurvatureParam
    a12: float
    a23: float
    a13: float
    angle_p1: SignedAngle
    angle_p2: SignedAngle
    angle_p3: SignedAngle

    def side_length(self, side: str) -> float:
        return {"12": self.a12, "23": self.a23, "13": self.a13}[side]

    def angle_at(self, vertex: int) -> SignedAngle:
        return (self.angle_p1, self.angle_p2, self.angle_p3)[vertex - 1]


def _vertex_angle(k: CurvatureParam, legs: tuple[float, float], opposite: float,
                  sigma: int) -> SignedAngle:
    # a zero leg forces a collinear realization; the angle there is 0 by convention
    if legs[0] <= 0 or legs[1] <= 0:
        return SignedAngle(0.0, sigma)
    return angle_from_sides(k, TriangleShape(legs[0], legs[1], opposite), sigma)


def make_comparison_triangle(k: CurvatureParam, a12: float, a23: float,
                             a13: float) -> ComparisonTriangle:
    """Build the comparison triangle and its three vertex angles.

    Signs: -1 at the past endpoint p1 and future endpoint p3, +1 at p2.
    """
    for name, v in (("a12", a12), ("a23", a23), ("a13", a13)):
        if not math.isfinite(v) or v < 0:
            raise ShapeViolation(f"{name} must be finite and >= 0, got {v}")
    if a12 + a23 > a13 + 1e-12 * max(1.0, a13):
        raise ShapeViolation(f"reverse triangle inequality fails: {a12} + {a23} > {a13}")
    if k.k < 0 and a13 >= k.diameter - 1e-12:
        from .errors import SizeBoundViolation

        raise SizeBoundViolation(f"longest side {a13} reaches the diameter for k={k.k}")
    return ComparisonTriangle(
        k=k,
        a12=a12,
        a23=a23,
        a13=a13,
        angle_p1=_vertex_angle(k, (a12, a13), a23, -1),
        angle_p2=_vertex_angle(k, (a12, a23), a13, +1),
        angle_p3=_vertex_angle(k, (a23, a13), a12, -1),
    )


def corresponding_side_point(tri: ComparisonTriangle, side: str,
                             distance_from_past_vertex: float) -> SidePoint:
    """Name a point on a side by its distance from the side's past vertex."""
    length = tri.side_length(side)
    d = distance_from_past_vertex
    tol = 1e-12 * max(1.0, length)
    if d < -tol or d > length + tol:
        raise OffsetOutOfRange(f"offset {d} outside [0, {length}] on side {side}")
    return SidePoint(side, min(max(d, 0.0), length))


def _as_vertex(tri: ComparisonTriangle, q: SidePoint) -> int | None:
    """Vertex index (1..3) when q sits exactly at a side endpoint, else None."""
    past, future = _SIDE_ENDS[q.side]
    if q.offset == 0.0:
        return past
    if q.offset == tri.side_length(q.side):
        return future
    return None


def _vertex_offset_on(side: str, vertex: int, tri: ComparisonTriangle) -> float | None:
    past, future = _SIDE_ENDS[side]
    if vertex == past:
        return 0.0
    if vertex == future:
        return tri.side_length(side)
    return None


def _same_side_tau(o1: float, o2: float) -> ComparisonSeparation:
    if o1 < o2:
        return ComparisonSeparation(o2 - o1, Orientation.FIRST_BEFORE_SECOND)
    if o2 < o1:
        return ComparisonSeparation(o1 - o2, Orientation.SECOND_BEFORE_FIRST)
    return ComparisonSeparation(0.0, Orientation.NONE)


def _vertex_to_side(tri: ComparisonTriangle, vertex: int,
                    q: SidePoint) -> ComparisonSeparation:
    """Vertex against a point on the opposite side, via the one-sided solves."""
    k, a12, a23, a13 = tri.k, tri.a12, tri.a23, tri.a13
    o = q.offset
    if vertex == 1 and q.side == "23":
        r = one_sided_x(k, 1, a12, o, a23 - o, a13)
        return ComparisonSeparation(r.value, Orientation.FIRST_BEFORE_SECOND)
    if vertex == 3 and q.side == "12":
        r = one_sided_x(k, 2, o, a12 - o, a23, a13)
        return ComparisonSeparation(r.value, Orientation.SECOND_BEFORE_FIRST)
    if vertex == 2 and q.side == "13":
        r = one_sided_x(k, 3, a12, a23, o, a13 - o)
        orient = r.orientation if r.value > 0 else Orientation.NONE
        return ComparisonSeparation(r.value, orient)
    raise PreconditionViolation(f"vertex p{vertex} is not opposite side {q.side}")


def _cross_side_tau(tri: ComparisonTriangle, q1: SidePoint,
                    q2: SidePoint) -> ComparisonSeparation:
    """Points on two distinct sides: hinge at the shared vertex."""
    pair = {q1.side, q2.side}
    if pair == {"12", "23"}:
        shared = 2
    elif pair == {"12", "13"}:
        shared = 1
    else:
        shared = 3

    def leg(q: SidePoint) -> float:
        past, _future = _SIDE_ENDS[q.side]
        return q.offset if shared == past else tri.side_length(q.side) - q.offset

    u1, u2 = leg(q1), leg(q2)
    angle = tri.angle_at(shared)
    solved = side_from_hinge(tri.k, HingeShape(u1, u2, angle))
    if not solved.causal or solved.tau <= 0.0:
        return ComparisonSeparation(0.0, Orientation.NONE)
    if shared == 2:
        # q1 on side 12 sits before p2, q2 on side 23 after it (or vice versa)
        first_before = q1.side == "12"
    elif shared == 1:
        # both legs point to the future of p1: the nearer point comes first
        first_before = u1 < u2
    else:
        # both legs point to the past of p3: the farther point comes first
        first_before = u1 > u2
    orient = Orientation.FIRST_BEFORE_SECOND if first_before else Orientation.SECOND_BEFORE_FIRST
    return ComparisonSeparation(solved.tau, orient)


def comparison_tau(tri: ComparisonTriangle, q1: SidePoint,
                   q2: SidePoint) -> ComparisonSeparation:
    """Time separation between two side points of the comparison triangle.

    Same side: offset difference.  Vertex against the opposite side: the
    matching one-sided solve.  Two interior points on distinct sides: hinge at
    the shared vertex.  A non-causal solve yields (0, none).
    """
    if q1.side == q2.side:
        return _same_side_tau(q1.offset, q2.offset)
    v1, v2 = _as_vertex(tri, q1), _as_vertex(tri, q2)
    # a vertex may also lie on the other point's side: reduce to the same side
    if v1 is not None:
        o = _vertex_offset_on(q2.side, v1, tri)
        if o is not None:
            return _same_side_tau(o, q2.offset)
    if v2 is not None:
        o = _vertex_offset_on(q1.side, v2, tri)
        if o is not None:
            return _same_side_tau(q1.offset, o)
    if v1 is not None and v2 is not None:
        if v1 == v2:
            return ComparisonSeparation(0.0, Orientation.NONE)
        length = tri.side_length({frozenset((1, 2)): "12", frozenset((2, 3)): "23",
                                  frozenset((1, 3)): "13"}[frozenset((v1, v2))])
        if length == 0.0:
            return ComparisonSeparation(0.0, Orientation.NONE)
        orient = Orientation.FIRST_BEFORE_SECOND if v1 < v2 else Orientation.SECOND_BEFORE_FIRST
        return ComparisonSeparation(length, orient)
    if v1 is not None:
        return _vertex_to_side(tri, v1, q2)
    if v2 is not None:
        return _vertex_to_side(tri, v2, q1).flip()
    return _cross_side_tau(tri, q1, q2)


def comparison_angle(space, x, y, z, k: CurvatureParam) -> SignedAngle:
    """Signed comparison angle at x of the point triple (x, y, z) in a space.

    Both y and z must be chronologically related to x (either order); y and z
    must be at least causally related.  The sign is -1 when x is the past or
    future endpoint of the configuration, +1 when it sits in the middle.
    """
    txy, tyx = space.tau(x, y), space.tau(y, x)
    txz, tzx = space.tau(x, z), space.tau(z, x)
    tyz, tzy = space.tau(y, z), space.tau(z, y)
    for t in (txy, tyx, txz, tzx, tyz, tzy):
        if math.isinf(t):
            raise InfiniteTau("infinite time separation in the triple")
    a = max(txy, tyx)
    b = max(txz, tzx)
    c = max(tyz, tzy)
    if a <= 0 or b <= 0:
        raise NotCausallyRelated("x must be chronologically related to both y and z")
    if c <= 0 and not (space.le(y, z) or space.le(z, y)):
        raise NotCausallyRelated("y and z are not causally related")
    x_is_past = txy > 0 and txz > 0
    x_is_future = tyx > 0 and tzx > 0
    sigma = -1 if (x_is_past or x_is_future) else 1
    return angle_from_sides(k, TriangleShape(a, b, c), sigma)


def _order(delta: float, tol: float) -> str:
    if delta > tol:
        return ">"
    if delta < -tol:
        return "<"
    return "="


@dataclass(frozen=True)
class StraighteningResult:
    consistent: bool
    lhs_order: str  # angle toward the past leg vs angle toward the future leg
    rhs_order: str  # tau(m, q) vs tau(m', q') in the straightened triangle
    straightened_tau: float


def straightening_check(k: CurvatureParam, t_pm: float, t_mq: float, t_qr: float,
                        t_mr: float, angle_pmq: float,
                        angle_qmr: float) -> StraighteningResult:
    """Audit the shoulder-straightening equivalence on configuration data.

    The configuration is a chain p << m << q <= r described by the four
    separations and the two angles at m.  The check rebuilds the straightened
    triangle with sides (tau(p,q), tau(q,r), tau(p,m) + tau(m,r)), places m'
    at offset tau(p,m) on the long side, and verifies that the order between
    the two angles at m matches the (reversed) order between tau(m,q) and
    tau(m',q'): a strictly larger angle toward p goes with a strictly shorter
    interior side, and equality with equality.
    """
    if t_pm <= 0 or t_mq <= 0:
        raise PreconditionViolation("need p << m << q: positive t_pm and t_mq")
    if t_qr < 0 or t_mr < t_mq + t_qr - 1e-12 * max(1.0, t_mr):
        raise PreconditionViolation("need t_qr >= 0 and t_mr >= t_mq + t_qr")
    t_pq = side_from_hinge(k, HingeShape(t_pm, t_mq, SignedAngle(angle_pmq, +1))).tau
    straight = t_pm + t_mr
    if t_pq + t_qr > straight + 1e-9 * max(1.0, straight):
        raise PreconditionViolation(
            f"straightened side too short: tau(p,q)+tau(q,r)={t_pq + t_qr} > {straight}"
        )
    if k.k < 0 and t_pq + t_qr >= k.diameter:
        raise PreconditionViolation("tau(p,q) + tau(q,r) must stay below the diameter")
    # rounding in the hinge solve may overshoot the hypothesis by a few ulp
    t_pq = min(t_pq, straight - t_qr)
    solved = one_sided_x(k, 3, t_pq, t_qr, t_pm, t_mr)
    x = solved.value
    d_angle = angle_pmq - angle_qmr
    d_tau = x - t_mq
    lhs = _order(d_angle, _EQ_TOL)
    rhs = _order(t_mq - x, _EQ_TOL)
    consistent = (
        d_angle * d_tau > 0
        or abs(d_angle) <= _EQ_TOL
        or abs(d_tau) <= _EQ_TOL * max(1.0, t_mq)
    )
    return StraighteningResult(consistent, lhs, rhs, x)
