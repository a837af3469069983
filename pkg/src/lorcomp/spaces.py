"""Lorentzian pre-length spaces: abstraction, built-in examples, finite tables.

A :class:`SpaceHandle` exposes the five structure maps (tau, causal "le",
chronological "chron", background metric "dist", geodesics) plus seeded
samplers confined to a declared comparison neighborhood.  Points are opaque:
coordinate tuples for the analytic built-ins, integer indices for tabulated
spaces.  All algorithms in the package touch points only through a handle.

Built-ins:

* ``minkowski_diamond(dim, radius)``: flat space sampled inside a causal
  diamond; the reference space with curvature bounded below and above by 0.
* ``half_minkowski``: the closed half plane x >= 0; flat, but geodesics that
  run into the boundary cannot be prolonged.
* ``causal_funnel``: a past half-line glued to the causal wedge of its
  endpoint, with the path-length time separation; timelike realizers branch
  at the vertex and no lower curvature bound holds across it.
* ``tilted_cone_exterior``: the conical set x^2 >= t*y in 3 dimensions with
  the ambient time separation restricted to it (not intrinsic).
* ``cone_over(...)``: Minkowski cones, provided by :mod:`lorcomp.cone`.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from .errors import (
    BadParams,
    MalformedInput,
    NoGeodesicCapability,
    NoProlongation,
    NotChronological,
    NotUniquelyGeodesic,
    OutOfDomain,
    ParseError,
    UnknownBuiltin,
)
from .flat import interval2, tau_flat
from .report import CheckReport, Violation

FUTURE = "future"
PAST = "past"

_REJECTION_CAP = 200_000


class TimelikeCurve:
    """A timelike curve parametrized by tau-arclength on [0, length].

    For future orientation and t1 < t2 the point at t1 chronologically
    precedes the point at t2; for past orientation the relation is reversed.
    """

    def __init__(self, fn, length, orientation=FUTURE, is_realizer=True, grid=None):
        self._fn = fn
        self.length = float(length)
        self.orientation = orientation
        self.is_realizer = is_realizer
        if grid is None:
            n = 8
            grid = tuple(self.length * i / n for i in range(n + 1))
        self.grid = tuple(grid)

    def at(self, t: float):
        if t < -1e-12 or t > self.length + 1e-9 * max(1.0, self.length):
            raise OutOfDomain(f"parameter {t} outside [0, {self.length}]")
        return self._fn(min(max(t, 0.0), self.length))

    def restricted(self, length: float) -> "TimelikeCurve":
        return TimelikeCurve(self._fn, min(length, self.length), self.orientation,
                             self.is_realizer)


@dataclass(frozen=True)
class Direction:
    """Equivalence class of timelike geodesics at a base point.

    ``key`` identifies the class after the zero-angle quotient (built-ins use
    the unit velocity or the cone base point); ``curve`` is a representative
    distance realizer parametrized by tau-arclength from the base point.
    """

    base: object
    orientation: str
    key: tuple
    curve: TimelikeCurve


class SpaceHandle:
    """Base class for Lorentzian pre-length spaces."""

    name = "abstract"
    has_geodesics = False
    strictly_timelike_geodesic = False
    finite = False
    lower_bound: float | None = None
    upper_bound: float | None = None
    scale = 1.0

    # -- structure maps -----------------------------------------------------

    def tau(self, p, q) -> float:
        raise NotImplementedError

    def le(self, p, q) -> bool:
        raise NotImplementedError

    def chron(self, p, q) -> bool:
        return self.tau(p, q) > 0.0

    def dist(self, p, q) -> float:
        raise NotImplementedError

    def geodesic(self, p, q) -> TimelikeCurve:
        raise NoGeodesicCapability(f"{self.name} provides no geodesics")

    # -- samplers (deterministic per seed) ----------------------------------

    def _rng(self, seed: int, tag: str) -> random.Random:
        return random.Random(f"{self.name}:{seed}:{tag}")

    def sample_points(self, n: int, seed: int) -> list:
        raise NotImplementedError

    def sample_triangles(self, n: int, seed: int) -> list[tuple]:
        """Chronological triples p1 << p2 << p3 inside the neighborhood."""
        rng = self._rng(seed, "triangles")
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError(f"triangle sampling stalled in {self.name}")
            p1, p2, p3 = self._propose_triple(rng)
            if self.chron(p1, p2) and self.chron(p2, p3):
                out.append((p1, p2, p3))
        return out

    def _propose_triple(self, rng):
        pts = self._propose_points(rng, 3)
        return tuple(sorted(pts, key=lambda p: p[0]))

    def _propose_points(self, rng, n):
        raise NotImplementedError

    def sample_realizer_pairs(self, n: int, seed: int, orientation: str = FUTURE):
        """(x, alpha, beta) with both curves distance realizers starting at x.

        ``orientation`` is ``'future'`` for two future-directed curves or
        ``'mixed'`` for one future and one past.
        """
        raise NotImplementedError

    # -- optional capabilities ----------------------------------------------

    def fan_through(self, x, spreads, halflen) -> list[TimelikeCurve]:
        """Realizers through x on [-halflen, halflen] shifted to [0, 2*halflen].

        Used by the branching detector; curves are returned with x at
        parameter ``halflen``.
        """
        raise NoGeodesicCapability(f"{self.name} provides no through-fans")

    def prolong_future(self, p, x, length: float) -> TimelikeCurve:
        """Continue the realizer p -> x beyond x as a future curve from x."""
        raise NoProlongation(f"{self.name} cannot prolong geodesics")

    def direction_curve(self, x, y, min_length: float) -> TimelikeCurve:
        """A realizer from x through y, extended to min_length when possible."""
        if not self.chron(x, y):
            raise NotChronological("direction_curve needs x << y")
        base = self.geodesic(x, y)
        if base.length >= min_length:
            return base
        try:
            ext = self.prolong_future(x, y, min_length - base.length)
        except NoProlongation:
            return base
        split = base.length

        def fn(t):
            return base.at(t) if t <= split else ext.at(t - split)

        return TimelikeCurve(fn, split + ext.length, base.orientation)

    def direction_key(self, x, y) -> tuple:
        raise NotImplementedError

    def named_curve(self, spec: str, length: float | None = None) -> TimelikeCurve:
        raise BadParams(f"{self.name} has no named curves")

    def base_point(self):
        """Canonical base point for CLI angle probes."""
        raise BadParams(f"{self.name} has no canonical base point")

    def point_json(self, p):
        if isinstance(p, tuple):
            return list(p)
        return p


# ---------------------------------------------------------------------------
# Flat coordinate spaces.
# ---------------------------------------------------------------------------


def _norm2(v) -> float:
    return math.sqrt(sum(x * x for x in v))


def _minkowski_unit(delta):
    """Normalize a timelike coordinate difference to |g| = 1."""
    i2 = interval2((0.0,) * len(delta), delta)
    if i2 <= 0:
        raise NotChronological(f"difference {delta} is not timelike")
    n = math.sqrt(i2)
    return tuple(x / n for x in delta)


def _straight_curve(x, velocity, length, orientation=FUTURE):
    fn = lambda t: tuple(xi + t * vi for xi, vi in zip(x, velocity))
    return TimelikeCurve(fn, length, orientation)


class _FlatLikeSpace(SpaceHandle):
    """Shared machinery for spaces whose points are Minkowski coordinates."""

    dim = 2

    def tau(self, p, q) -> float:
        return tau_flat(p, q)

    def le(self, p, q) -> bool:
        if p == q:
            return True
        dt = q[0] - p[0]
        if dt < 0:
            return False
        return interval2(p, q) >= 0

    def dist(self, p, q) -> float:
        return _norm2(tuple(b - a for a, b in zip(p, q)))

    def contains(self, p) -> bool:
        return True

    def geodesic(self, p, q) -> TimelikeCurve:
        t = self.tau(p, q)
        if t <= 0:
            raise NotChronological(f"{p} must chronologically precede {q}")
        v = _minkowski_unit(tuple(b - a for a, b in zip(p, q)))
        return _straight_curve(p, v, t)

    def direction_key(self, x, y) -> tuple:
        # the traversal velocity from x toward y; past-pointing for past pairs
        if self.chron(x, y) or self.chron(y, x):
            return _minkowski_unit(tuple(b - a for a, b in zip(x, y)))
        raise NotChronological("direction key needs chronologically related points")

    def _ray_length_inside(self, x, velocity, cap: float) -> float:
        """Largest t <= cap with x + t*velocity still in the space."""
        lo, hi = 0.0, cap
        if self.contains(tuple(xi + cap * vi for xi, vi in zip(x, velocity))):
            return cap
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self.contains(tuple(xi + mid * vi for xi, vi in zip(x, velocity))):
                lo = mid
            else:
                hi = mid
        return lo

    def prolong_future(self, p, x, length: float) -> TimelikeCurve:
        v = _minkowski_unit(tuple(b - a for a, b in zip(p, x)))
        usable = self._ray_length_inside(x, v, length)
        if usable <= 1e-9:
            raise NoProlongation(f"geodesic through {x} leaves {self.name} immediately")
        return _straight_curve(x, v, usable)

    def direction_curve(self, x, y, min_length: float) -> TimelikeCurve:
        if self.chron(x, y):
            orient = FUTURE
        elif self.chron(y, x):
            orient = PAST
        else:
            raise NotChronological("direction_curve needs chronologically related points")
        v = _minkowski_unit(tuple(b - a for a, b in zip(x, y)))
        usable = self._ray_length_inside(x, v, max(min_length, self.tau(x, y), self.tau(y, x)))
        return _straight_curve(x, v, usable, orient)

    def _ray_velocity(self, rapidity: float, past: bool = False):
        v = [math.cosh(rapidity), math.sinh(rapidity)] + [0.0] * (self.dim - 2)
        if past:
            v = [-c for c in v]
        return tuple(v)

    def named_curve(self, spec: str, length: float | None = None) -> TimelikeCurve:
        """``ray:<rapidity>`` or ``ray:<rapidity>:past`` from the base point."""
        parts = spec.split(":")
        if parts[0] != "ray" or len(parts) not in (2, 3):
            raise BadParams(f"unknown curve spec {spec!r} for {self.name}")
        try:
            chi = float(parts[1])
        except ValueError as e:
            raise BadParams(f"bad rapidity in {spec!r}") from e
        past = len(parts) == 3 and parts[2] == "past"
        x = self.base_point()
        v = self._ray_velocity(chi, past)
        cap = length if length is not None else 0.5 * self.scale
        usable = self._ray_length_inside(x, v, cap)
        if usable <= 0:
            raise BadParams(f"curve {spec!r} leaves {self.name} immediately")
        return _straight_curve(x, v, usable, PAST if past else FUTURE)

    def fan_through(self, x, spreads, halflen) -> list[TimelikeCurve]:
        out = []
        for chi in spreads:
            v = self._ray_velocity(chi)
            back = self._ray_length_inside(x, tuple(-c for c in v), halflen)
            fwd = self._ray_length_inside(x, v, halflen)
            L = min(back, fwd, halflen)
            # the curve runs [0, 2L] with x at parameter L
            fn = (lambda vv, LL: lambda t: tuple(
                xi + (t - LL) * vi for xi, vi in zip(x, vv)))(v, L)
            out.append(TimelikeCurve(fn, 2 * L, FUTURE))
        return out


class MinkowskiDiamond(_FlatLikeSpace):
    """Flat space of the given dimension, sampled inside a causal diamond."""

    has_geodesics = True
    strictly_timelike_geodesic = True
    lower_bound = 0.0
    upper_bound = 0.0

    def __init__(self, dim: int = 2, radius: float = 1.0):
        if dim < 2 or dim > 4:
            raise BadParams(f"dimension must be 2..4, got {dim}")
        if not (radius > 0 and math.isfinite(radius)):
            raise BadParams(f"radius must be positive, got {radius}")
        self.dim = dim
        self.radius = radius
        self.scale = radius
        self.name = f"minkowski_diamond(dim={dim},radius={radius:g})"
        self._bottom = (-radius,) + (0.0,) * (dim - 1)
        self._top = (radius,) + (0.0,) * (dim - 1)

    def contains(self, p) -> bool:
        return tau_flat(self._bottom, p) > 0 and tau_flat(p, self._top) > 0

    def base_point(self):
        return (0.0,) * self.dim

    def _propose_points(self, rng, n):
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError("point sampling stalled")
            p = tuple(rng.uniform(-self.radius, self.radius) for _ in range(self.dim))
            if self.contains(p):
                out.append(p)
        return out

    def sample_points(self, n: int, seed: int) -> list:
        return self._propose_points(self._rng(seed, "points"), n)

    def sample_realizer_pairs(self, n: int, seed: int, orientation: str = FUTURE):
        rng = self._rng(seed, f"pairs:{orientation}")
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError("realizer-pair sampling stalled")
            x, y, z = self._propose_points(rng, 3)
            if orientation == FUTURE:
                if self.chron(x, y) and self.chron(x, z):
                    out.append((x, self.geodesic(x, y), self.geodesic(x, z)))
            else:
                if self.chron(x, y) and self.chron(z, x):
                    past = _straight_curve(
                        x, _minkowski_unit(tuple(b - a for a, b in zip(x, z))),
                        self.tau(z, x), PAST)
                    out.append((x, self.geodesic(x, y), past))
        return out


class HalfMinkowski(_FlatLikeSpace):
    """The closed half plane x >= 0 with the induced flat structure."""

    has_geodesics = True
    strictly_timelike_geodesic = True
    lower_bound = 0.0
    upper_bound = 0.0
    dim = 2

    def __init__(self, radius: float = 1.0):
        if not (radius > 0 and math.isfinite(radius)):
            raise BadParams(f"radius must be positive, got {radius}")
        self.radius = radius
        self.scale = radius
        self.name = f"half_minkowski(radius={radius:g})"
        self._center = (0.0, radius)

    def contains(self, p) -> bool:
        if p[1] < 0:
            return False
        return abs(p[0]) + abs(p[1] - self.radius) < self.radius

    def base_point(self):
        return self._center

    def _propose_points(self, rng, n):
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError("point sampling stalled")
            p = (rng.uniform(-self.radius, self.radius), rng.uniform(0.0, 2 * self.radius))
            if self.contains(p):
                out.append(p)
        return out

    def sample_points(self, n: int, seed: int) -> list:
        return self._propose_points(self._rng(seed, "points"), n)

    sample_realizer_pairs = MinkowskiDiamond.sample_realizer_pairs

    def prolong_future(self, p, x, length: float) -> TimelikeCurve:
        v = _minkowski_unit(tuple(b - a for a, b in zip(p, x)))
        # the half plane itself bounds prolongation, not the sampling diamond
        t_cap = length
        if v[1] < 0:
            t_cap = min(t_cap, x[1] / (-v[1]))
        if t_cap <= 1e-9:
            raise NoProlongation("geodesic runs into the boundary x = 0")
        return _straight_curve(x, v, t_cap)


class CausalFunnel(SpaceHandle):
    """A past half-line (the stem) glued to the causal wedge of its endpoint.

    Time separation is path length through the vertex, which makes every
    stem-plus-ray concatenation a distance realizer: realizers branch.
    """

    has_geodesics = True
    strictly_timelike_geodesic = False
    dim = 2

    def __init__(self, depth: float = 1.0, height: float = 1.0):
        if depth <= 0 or height <= 0:
            raise BadParams("depth and height must be positive")
        self.depth = depth
        self.height = height
        self.scale = min(depth, height)
        self.name = f"causal_funnel(depth={depth:g},height={height:g})"

    @staticmethod
    def _on_stem(p) -> bool:
        return p[1] == 0.0 and p[0] <= 0.0

    @staticmethod
    def _in_wedge(p) -> bool:
        return p[0] >= abs(p[1])

    def contains(self, p) -> bool:
        return self._on_stem(p) or self._in_wedge(p)

    def tau(self, p, q) -> float:
        p_stem = self._on_stem(p) and p[0] < 0.0
        q_stem = self._on_stem(q) and q[0] < 0.0
        if p_stem and q_stem:
            return max(q[0] - p[0], 0.0)
        if p_stem:
            # every causal path from the stem enters the wedge at the vertex
            return -p[0] + tau_flat((0.0, 0.0), q)
        if q_stem:
            return 0.0
        return tau_flat(p, q)

    def le(self, p, q) -> bool:
        p_stem = self._on_stem(p) and p[0] < 0.0
        q_stem = self._on_stem(q) and q[0] < 0.0
        if p_stem and q_stem:
            return p[0] <= q[0]
        if p_stem:
            return True
        if q_stem:
            return p == q
        if p == q:
            return True
        dt = q[0] - p[0]
        return dt >= 0 and interval2(p, q) >= 0

    def dist(self, p, q) -> float:
        return _norm2((q[0] - p[0], q[1] - p[1]))

    def base_point(self):
        return (0.0, 0.0)

    def geodesic(self, p, q) -> TimelikeCurve:
        t = self.tau(p, q)
        if t <= 0:
            raise NotChronological(f"{p} must chronologically precede {q}")
        p_stem = self._on_stem(p) and p[0] < 0.0
        if not p_stem or (self._on_stem(q) and q[0] <= 0.0):
            # entirely inside the wedge, or entirely on the stem
            v = _minkowski_unit((q[0] - p[0], q[1] - p[1]))
            return _straight_curve(p, v, t)
        split = -p[0]
        t0 = tau_flat((0.0, 0.0), q)
        if t0 <= 0:
            raise NoGeodesicCapability("no timelike realizer to the wedge boundary")
        w = _minkowski_unit(q)

        def fn(u):
            if u <= split:
                return (p[0] + u, 0.0)
            return tuple((u - split) * wi for wi in w)

        return TimelikeCurve(fn, t, FUTURE)

    def prolong_future(self, p, x, length: float) -> TimelikeCurve:
        if self._on_stem(p) and p[0] < 0.0 and self._on_stem(x):
            v = (1.0, 0.0)
        else:
            v = _minkowski_unit((x[0] - p[0], x[1] - p[1]))
        end = tuple(xi + length * vi for xi, vi in zip(x, v))
        if not self._in_wedge(end) and not self._on_stem(end):
            raise NoProlongation("prolongation leaves the funnel")
        return _straight_curve(x, v, length)

    def named_curve(self, spec: str, length: float | None = None) -> TimelikeCurve:
        """``ray:<rapidity>`` future from the vertex, or ``stem`` past from it."""
        cap = length if length is not None else 0.5 * self.scale
        if spec == "stem":
            return _straight_curve((0.0, 0.0), (-1.0, 0.0), min(cap, self.depth), PAST)
        parts = spec.split(":")
        if parts[0] == "ray" and len(parts) == 2:
            chi = float(parts[1])
            v = (math.cosh(chi), math.sinh(chi))
            usable = min(cap, self.height / v[0])
            return _straight_curve((0.0, 0.0), v, usable, FUTURE)
        raise BadParams(f"unknown curve spec {spec!r} for {self.name}")

    def _propose_points(self, rng, n):
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError("point sampling stalled")
            if rng.random() < 0.4:
                out.append((rng.uniform(-self.depth, -1e-3), 0.0))
            else:
                t = rng.uniform(1e-3, self.height)
                x = rng.uniform(-t, t)
                if abs(x) < t:
                    out.append((t, x))
        return out

    def sample_points(self, n: int, seed: int) -> list:
        return self._propose_points(self._rng(seed, "points"), n)

    def _propose_triple(self, rng):
        # bias toward vertex-spanning triangles, which witness the branching
        if rng.random() < 0.7:
            p1 = (rng.uniform(-self.depth, -0.05), 0.0)
            p2, p3 = self._wedge_pair(rng)
            return (p1, p2, p3)
        pts = self._propose_points(rng, 3)
        return tuple(sorted(pts, key=lambda p: p[0]))

    def _wedge_pair(self, rng):
        tries = 0
        while True:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError("wedge-pair sampling stalled")
            t2 = rng.uniform(0.05, 0.5 * self.height)
            x2 = rng.uniform(-t2, t2) * 0.9
            t3 = rng.uniform(t2, self.height)
            x3 = rng.uniform(-t3, t3) * 0.9
            p2, p3 = (t2, x2), (t3, x3)
            if tau_flat(p2, p3) > 0:
                return p2, p3

    def sample_realizer_pairs(self, n: int, seed: int, orientation: str = FUTURE):
        rng = self._rng(seed, f"pairs:{orientation}")
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError("realizer-pair sampling stalled")
            x = (rng.uniform(-self.depth, -0.05), 0.0)
            p2, p3 = self._wedge_pair(rng)
            if orientation == FUTURE:
                out.append((x, self.geodesic(x, p2), self.geodesic(x, p3)))
            else:
                z = (rng.uniform(-self.depth, x[0] - 1e-3), 0.0)
                past = _straight_curve(x, (-1.0, 0.0), x[0] - z[0], PAST)
                out.append((x, self.geodesic(x, p2), past))
        return out

    def fan_through(self, x, spreads, halflen) -> list[TimelikeCurve]:
        if x != (0.0, 0.0):
            raise NoGeodesicCapability("funnel fans are provided at the vertex only")
        out = []
        L = min(halflen, self.depth, self.height / math.cosh(max(abs(s) for s in spreads)))
        for chi in spreads:
            v = (math.cosh(chi), math.sinh(chi))

            def fn(u, v=v, L=L):
                t = u - L
                if t <= 0:
                    return (t, 0.0)
                return (t * v[0], t * v[1])

            out.append(TimelikeCurve(fn, 2 * L, FUTURE))
        return out


class TiltedConeExterior(SpaceHandle):
    """The set x^2 >= t*y in 3-dimensional flat space with restricted tau.

    Not intrinsic: the ambient time separation is generally not realized by a
    curve inside the set.  Straight segments are served as geodesics only
    when they stay inside.
    """

    has_geodesics = True
    strictly_timelike_geodesic = False
    dim = 3

    def __init__(self, radius: float = 1.0):
        if radius <= 0:
            raise BadParams("radius must be positive")
        self.radius = radius
        self.scale = radius
        self.name = f"tilted_cone_exterior(radius={radius:g})"

    @staticmethod
    def contains(p) -> bool:
        t, x, y = p
        return x * x >= t * y

    def tau(self, p, q) -> float:
        return tau_flat(p, q)

    def le(self, p, q) -> bool:
        if p == q:
            return True
        dt = q[0] - p[0]
        return dt >= 0 and interval2(p, q) >= 0

    def dist(self, p, q) -> float:
        return _norm2(tuple(b - a for a, b in zip(p, q)))

    def base_point(self):
        return (0.0, 0.0, 0.0)

    def _segment_inside(self, p, q) -> bool:
        # x(u)^2 - t(u)*y(u) is a quadratic in u; check its minimum on [0, 1]
        dt, dx, dy = (q[i] - p[i] for i in range(3))
        A = dx * dx - dt * dy
        B = 2 * p[1] * dx - p[0] * dy - p[2] * dt
        C = p[1] * p[1] - p[0] * p[2]
        vals = [C, A + B + C]
        if A > 0 and 0 < -B / (2 * A) < 1:
            u = -B / (2 * A)
            vals.append(A * u * u + B * u + C)
        elif A < 0:
            pass  # concave: endpoint minimum already covered
        return min(vals) >= -1e-12

    def geodesic(self, p, q) -> TimelikeCurve:
        t = self.tau(p, q)
        if t <= 0:
            raise NotChronological(f"{p} must chronologically precede {q}")
        if not self._segment_inside(p, q):
            raise NoGeodesicCapability(
                "the ambient segment leaves the set; restricted tau is not realized"
            )
        v = _minkowski_unit(tuple(b - a for a, b in zip(p, q)))
        return _straight_curve(p, v, t)

    def named_curve(self, spec: str, length: float | None = None) -> TimelikeCurve:
        """``ray:<vx>:<vy>`` from the origin, with vx^2 >= vy and timelike."""
        parts = spec.split(":")
        if parts[0] != "ray" or len(parts) != 3:
            raise BadParams(f"unknown curve spec {spec!r} for {self.name}")
        vx, vy = float(parts[1]), float(parts[2])
        if vx * vx < vy:
            raise BadParams("ray leaves the set: need vx^2 >= vy")
        n2 = 1.0 - vx * vx - vy * vy
        if n2 <= 0:
            raise BadParams("ray must be timelike: need vx^2 + vy^2 < 1")
        n = math.sqrt(n2)
        v = (1.0 / n, vx / n, vy / n)
        cap = length if length is not None else 0.5 * self.scale
        return _straight_curve((0.0, 0.0, 0.0), v, cap)

    def _propose_points(self, rng, n):
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > _REJECTION_CAP:
                raise RuntimeError("point sampling stalled")
            p = (rng.uniform(-self.radius, self.radius),
                 rng.uniform(-self.radius, self.radius),
                 rng.uniform(-self.radius, self.radius))
            if self.contains(p):
                out.append(p)
        return out

    def sample_points(self, n: int, seed: int) -> list:
        return self._propose_points(self._rng(seed, "points"), n)


# ---------------------------------------------------------------------------
# Finite tabulated spaces.
# ---------------------------------------------------------------------------


@dataclass
class FiniteSpaceTable:
    """Point count, tau matrix, causal matrix, optional coordinates."""

    n: int
    tau: list[list[float]]
    le: list[list[bool]]
    coords: list[list[float]] | None = None
    name: str = "finite"

    def require_wellformed(self):
        if self.n <= 0:
            raise MalformedInput(f"need n > 0, got {self.n}")
        for mat, label in ((self.tau, "tau"), (self.le, "le")):
            if len(mat) != self.n or any(len(row) != self.n for row in mat):
                raise MalformedInput(f"{label} must be {self.n}x{self.n}")
        if self.coords is not None and len(self.coords) != self.n:
            raise MalformedInput("coords must have one row per point")


class TableSpace(SpaceHandle):
    """SpaceHandle over a finite table; points are integer indices."""

    finite = True

    def __init__(self, table: FiniteSpaceTable):
        table.require_wellformed()
        self.table = table
        self.name = table.name
        taus = [v for row in table.tau for v in row if math.isfinite(v)]
        self.scale = max(taus) if taus and max(taus) > 0 else 1.0

    def tau(self, p, q) -> float:
        return self.table.tau[p][q]

    def le(self, p, q) -> bool:
        return bool(self.table.le[p][q])

    def dist(self, p, q) -> float:
        if self.table.coords is not None:
            return _norm2(tuple(b - a for a, b in zip(self.table.coords[p],
                                                      self.table.coords[q])))
        return 0.0 if p == q else 1.0

    def sample_points(self, n: int, seed: int) -> list:
        rng = self._rng(seed, "points")
        return [rng.randrange(self.table.n) for _ in range(n)]

    def point_json(self, p):
        return int(p)


def validate_finite_space(table: FiniteSpaceTable) -> CheckReport:
    """List every axiom breach: reflexivity and transitivity of the causal
    relation, positivity structure of tau, and the reverse triangle
    inequality over causal chains."""
    table.require_wellformed()
    tol = 1e-9
    violations = []

    def bad(kind, chain, lhs, rhs):
        violations.append(Violation(
            witness={"kind": kind, "chain": list(chain)}, lhs=lhs, rhs=rhs,
            gap=lhs - rhs))

    n, tau, le = table.n, table.tau, table.le
    for i in range(n):
        for j in range(n):
            if tau[i][j] < 0:
                bad("negative-tau", (i, j), tau[i][j], 0.0)
        if tau[i][i] > 0:
            bad("chronology-reflexive", (i,), tau[i][i], 0.0)
        if not le[i][i]:
            bad("le-not-reflexive", (i,), 0.0, 1.0)
    for i in range(n):
        for j in range(n):
            if tau[i][j] > 0 and not le[i][j]:
                bad("chron-not-causal", (i, j), tau[i][j], 0.0)
            if not le[i][j]:
                continue
            for m in range(n):
                if le[j][m] and not le[i][m]:
                    bad("le-not-transitive", (i, j, m), 1.0, 0.0)
                if le[j][m] and tau[i][m] < tau[i][j] + tau[j][m] - tol:
                    bad("reverse-triangle", (i, j, m), tau[i][j] + tau[j][m], tau[i][m])
    verdict = "fail" if violations else "pass"
    return CheckReport(
        space=table.name, k=0.0, bound="none", variant="axioms",
        samples=n * n * n, admissible=n * n * n, seed=0, tolerance=tol,
        violations=violations, verdict=verdict)


def load_finite_space(data: bytes | str) -> FiniteSpaceTable:
    """Parse the finite-space JSON document; errors carry a location."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(str(e), location="document") from e
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", location="document")
    known = {"n", "tau", "le", "coords", "meta"}
    extra = set(doc) - known
    if extra:
        raise ParseError(f"unknown keys {sorted(extra)}", location="document")
    for key in ("n", "tau", "le"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", location="document")
    n = doc["n"]
    if not isinstance(n, int) or n <= 0:
        raise ParseError("n must be a positive integer", location="n")

    def matrix(key, cast, check):
        rows = doc[key]
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"must be a list of {n} rows", location=key)
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(f"row must have {n} entries", location=f"{key}[{i}]")
            vals = []
            for j, v in enumerate(row):
                if not check(v):
                    raise ParseError(f"bad value {v!r}", location=f"{key}[{i}][{j}]")
                vals.append(cast(v))
            out.append(vals)
        return out

    tau = matrix("tau", float, lambda v: isinstance(v, (int, float)) and v >= 0)
    le = matrix("le", lambda v: bool(v), lambda v: v in (0, 1, True, False))
    coords = None
    if "coords" in doc and doc["coords"] is not None:
        rows = doc["coords"]
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"must be a list of {n} rows", location="coords")
        coords = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or not all(
                    isinstance(v, (int, float)) for v in row):
                raise ParseError("rows must be lists of numbers", location=f"coords[{i}]")
            coords.append([float(v) for v in row])
    name = "finite"
    if "meta" in doc:
        if not isinstance(doc["meta"], dict) or "name" not in doc["meta"]:
            raise ParseError("meta must be an object with a name", location="meta")
        name = str(doc["meta"]["name"])
    return FiniteSpaceTable(n=n, tau=tau, le=le, coords=coords, name=name)


def save_finite_space(table: FiniteSpaceTable) -> bytes:
    table.require_wellformed()
    doc = {
        "n": table.n,
        "tau": [[float(v) for v in row] for row in table.tau],
        "le": [[1 if v else 0 for v in row] for row in table.le],
        "meta": {"name": table.name},
    }
    if table.coords is not None:
        doc["coords"] = [[float(v) for v in row] for row in table.coords]
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()


def table_from_samples(space: SpaceHandle, n: int, seed: int) -> FiniteSpaceTable:
    """Tabulate tau and le over sampled points of any space."""
    pts = space.sample_points(n, seed)
    tau = [[space.tau(p, q) for q in pts] for p in pts]
    le = [[space.le(p, q) for q in pts] for p in pts]
    coords = None
    if pts and isinstance(pts[0], tuple):
        coords = [list(p) for p in pts]
    return FiniteSpaceTable(n=len(pts), tau=tau, le=le, coords=coords,
                            name=f"samples({space.name})")


# ---------------------------------------------------------------------------
# Logarithm and exponential on uniquely geodesic built-ins.
# ---------------------------------------------------------------------------


def log_at(space: SpaceHandle, x, y) -> tuple[float, Direction]:
    """(tau, direction class) of the unique realizer between x and y.

    Future variant when x << y, past variant when y << x.
    """
    if not space.strictly_timelike_geodesic:
        raise NotUniquelyGeodesic(f"{space.name} is not flagged uniquely geodesic")
    if space.chron(x, y):
        orient, r = FUTURE, space.tau(x, y)
    elif space.chron(y, x):
        orient, r = PAST, space.tau(y, x)
    else:
        raise NotChronological("log needs chronologically related points")
    curve = space.direction_curve(x, y, min_length=max(2.0 * r, 0.5 * space.scale))
    return r, Direction(base=x, orientation=orient, key=space.direction_key(x, y),
                        curve=curve)


def exp_at(space: SpaceHandle, x, r: float, direction: Direction):
    """Point at tau-arclength r along the direction's representative."""
    if r < 0:
        raise OutOfDomain(f"radius must be >= 0, got {r}")
    if direction.base != x:
        raise OutOfDomain("direction is based at a different point")
    if r == 0:
        return x
    if r > direction.curve.length + 1e-9:
        raise OutOfDomain(f"radius {r} beyond the representative's domain "
                          f"{direction.curve.length}")
    return direction.curve.at(r)


# ---------------------------------------------------------------------------
# Factory.
# ---------------------------------------------------------------------------


def make_builtin(name: str, **params) -> SpaceHandle:
    """Construct a built-in space by name.

    Names: ``minkowski_diamond(dim, radius)``, ``causal_funnel``,
    ``half_minkowski``, ``tilted_cone_exterior``, ``cone_over`` (with
    ``base='line'|'circle'|'finite'`` and base parameters).
    """
    try:
        if name == "minkowski_diamond":
            return MinkowskiDiamond(int(params.pop("dim", 2)),
                                    float(params.pop("radius", 1.0)))
        if name == "half_minkowski":
            return HalfMinkowski(float(params.pop("radius", 1.0)))
        if name == "causal_funnel":
            return CausalFunnel(float(params.pop("depth", 1.0)),
                                float(params.pop("height", 1.0)))
        if name == "tilted_cone_exterior":
            return TiltedConeExterior(float(params.pop("radius", 1.0)))
        if name == "cone_over":
            from .cone import cone_space_from_params

            return cone_space_from_params(**params)
    except (TypeError, ValueError) as e:
        raise BadParams(f"bad parameters for {name}: {e}") from e
    raise UnknownBuiltin(f"no built-in space named {name!r}")


def geodesic(space: SpaceHandle, p, q) -> TimelikeCurve:
    """Future directed timelike distance realizer from p to q."""
    if not space.has_geodesics:
        raise NoGeodesicCapability(f"{space.name} has no geodesic capability")
    return space.geodesic(p, q)
