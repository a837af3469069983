"""Explicit coordinate geometry in n-dimensional Minkowski space.

Points are plain tuples with the first coordinate time, signature (-,+,...,+).
These closed forms are the brute-force oracle behind the curved-side solvers
and the backbone of the built-in example spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DimensionMismatch, NotChronological, NotTimelike, ShapeViolation
from .kernel import CurvatureParam, SignedAngle, TriangleShape, angle_from_sides

Vec = tuple[float, ...]


class CausalClass(Enum):
    CHRONOLOGICAL = "chronological"
    NULL = "null"
    SPACELIKE_OR_REVERSE = "spacelike-or-reverse"


def _delta(p: Vec, q: Vec) -> Vec:
    if len(p) != len(q):
        raise DimensionMismatch(f"points of dimension {len(p)} and {len(q)}")
    return tuple(qi - pi for pi, qi in zip(p, q))


def minkowski_inner(u: Vec, v: Vec) -> float:
    if len(u) != len(v):
        raise DimensionMismatch(f"vectors of dimension {len(u)} and {len(v)}")
    return -u[0] * v[0] + sum(ui * vi for ui, vi in zip(u[1:], v[1:]))


def interval2(p: Vec, q: Vec) -> float:
    """Signed interval -g(q-p, q-p); positive for timelike separation."""
    d = _delta(p, q)
    if len(d) == 2:
        # factored form keeps near-null pairs accurate
        return (d[0] - d[1]) * (d[0] + d[1])
    return -minkowski_inner(d, d)


def tau_flat(p: Vec, q: Vec) -> float:
    """Time separation sqrt(dt^2 - |dx|^2) when q is in the causal future of p, else 0."""
    if q[0] <= p[0] and q != p:
        if len(p) != len(q):
            raise DimensionMismatch(f"points of dimension {len(p)} and {len(q)}")
        return 0.0
    i2 = interval2(p, q)
    return math.sqrt(i2) if i2 > 0 else 0.0


def causal_rel_flat(p: Vec, q: Vec) -> CausalClass:
    d = _delta(p, q)
    i2 = -minkowski_inner(d, d)
    if d[0] > 0 and i2 > 0:
        return CausalClass.CHRONOLOGICAL
    if d[0] >= 0 and i2 == 0:
        return CausalClass.NULL
    return CausalClass.SPACELIKE_OR_REVERSE


@dataclass(frozen=True)
class FlatTriangleRealization:
    """A causal triangle placed in the 2-dimensional plane, p2 at x >= 0."""

    p1: Vec
    p2: Vec
    p3: Vec

    def points(self) -> tuple[Vec, Vec, Vec]:
        return (self.p1, self.p2, self.p3)


def realize_triangle_flat(tri: TriangleShape) -> FlatTriangleRealization:
    """Place sides (a, b, c) = (p1p2, p2p3, p1p3) with p1 at the origin, p3 on the time axis.

    Needs the reverse triangle inequality a + b <= c and c > 0; degenerate
    shapes come out collinear (p2 on the axis).
    """
    a, b, c = tri.sides()
    slack = 1e-12 * max(1.0, c)
    if a + b > c + slack:
        raise ShapeViolation(f"reverse triangle inequality fails: {a} + {b} > {c}")
    if c <= 0:
        raise ShapeViolation(f"longest side must be positive, got {c}")
    t = (c * c + a * a - b * b) / (2.0 * c)
    # t^2 - a^2 in factored form: accurate for nearly degenerate shapes
    x2 = (c - a - b) * (c - a + b) * (c + a - b) * (c + a + b) / (4.0 * c * c)
    x = math.sqrt(x2) if x2 > 0 else 0.0
    return FlatTriangleRealization(p1=(0.0, 0.0), p2=(t, x), p3=(c, 0.0))


def segment_point(p: Vec, q: Vec, fraction: float) -> Vec:
    """Affine interpolation; realizes tau proportionally along the segment."""
    if tau_flat(p, q) <= 0:
        raise NotChronological(f"{p} must chronologically precede {q}")
    return tuple(pi + fraction * (qi - pi) for pi, qi in zip(p, q))


def tangent_angle_flat(u: Vec, v: Vec) -> SignedAngle:
    """Hyperbolic angle arcosh(|g(u,v)| / (|u| |v|)) between timelike vectors.

    The sign is the sign of g(u, v): -1 for equal time orientation, +1 for
    opposite.
    """
    nu2 = -minkowski_inner(u, u)
    nv2 = -minkowski_inner(v, v)
    if nu2 <= 0 or nv2 <= 0:
        raise NotTimelike(f"vectors must be timelike, got {u}, {v}")
    g = minkowski_inner(u, v)
    carg = abs(g) / math.sqrt(nu2 * nv2)
    return SignedAngle(math.acosh(max(carg, 1.0)), -1 if g < 0 else 1)


def embed_cone_over_line(t: float, y: float) -> Vec:
    """Identify the cone point (t, y) over the real line with t*(cosh y, sinh y)."""
    if t < 0:
        raise NotChronological(f"cone level must be >= 0, got {t}")
    if t == 0:
        return (0.0, 0.0)
    return (t * math.cosh(y), t * math.sinh(y))


def angle_at_point(x: Vec, y: Vec, z: Vec, k: CurvatureParam | None = None) -> SignedAngle:
    """Comparison angle at x of the flat point triple (x, y, z) via side lengths.

    Convenience wrapper: measures the three taus in coordinates and solves the
    vertex angle (at curvature k, default 0).
    """
    a = max(tau_flat(x, y), tau_flat(y, x))
    b = max(tau_flat(x, z), tau_flat(z, x))
    c = max(tau_flat(y, z), tau_flat(z, y))
    past = tau_flat(x, y) > 0 and tau_flat(x, z) > 0
    future = tau_flat(y, x) > 0 and tau_flat(z, x) > 0
    sigma = -1 if (past or future) else 1
    return angle_from_sides(k or CurvatureParam(0.0), TriangleShape(a, b, c), sigma)
