"""Minkowski cone over a metric space.

Points are pairs (t, y) of a nonnegative level and a base point, with every
(0, y) identified to the single vertex.  Structure maps:

    d_c((s,y),(t,y')) = sqrt(s^2 + t^2 - 2*s*t*cos d(y,y'))   for d <= pi,
                        s + t                                  for d >= pi,
    (s,y) <= (t,y')  iff  s^2 + t^2 - 2*s*t*cosh d(y,y') >= 0 and s <= t,
    tau((s,y),(t,y')) = sqrt(s^2 + t^2 - 2*s*t*cosh d(y,y'))  when related,

with the chronological relation induced by tau > 0.  The cone over the real
line embeds isometrically onto the chronological future of the origin in the
flat plane, which supplies geodesics and an independent oracle.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from .errors import BadParams, MalformedInput, NotChronological, ParseError, \
    PreconditionViolation
from .flat import embed_cone_over_line
from .kernel import CurvatureParam, TriangleShape, angle_from_sides
from .spaces import (
    FUTURE,
    PAST,
    SpaceHandle,
    TimelikeCurve,
    _REJECTION_CAP,
)

_BOUNDARY_SLACK = 1e-12


@dataclass(frozen=True)
class ConePoint:
    """Cone level t >= 0 over a base point; every (0, y) is the vertex."""

    t: float
    y: object = 0.0

    def __post_init__(self):
        if self.t < 0 or not math.isfinite(self.t):
            raise PreconditionViolation(f"cone level must be finite and >= 0, got {self.t}")

    @property
    def is_vertex(self) -> bool:
        return self.t == 0.0

    def __eq__(self, other):
        if not isinstance(other, ConePoint):
            return NotImplemented
        if self.t == 0.0 and other.t == 0.0:
            return True
        return self.t == other.t and self.y == other.y

    def __hash__(self):
        return hash(0.0) if self.t == 0.0 else hash((self.t, self.y))


VERTEX = ConePoint(0.0)


# ---------------------------------------------------------------------------
# Metric bases.
# ---------------------------------------------------------------------------


class MetricBase:
    name = "base"

    def dist(self, y1, y2) -> float:
        raise NotImplementedError

    def sample(self, rng: random.Random):
        raise NotImplementedError

    def parse_point(self, text: str):
        return float(text)


class LineBase(MetricBase):
    """The real line; the cone over it is flat."""

    def __init__(self, span: float = 1.0):
        if span <= 0:
            raise BadParams("span must be positive")
        self.span = span
        self.name = f"line(span={span:g})"

    def dist(self, y1, y2) -> float:
        return abs(float(y1) - float(y2))

    def sample(self, rng):
        return rng.uniform(-self.span, self.span)


class CircleBase(MetricBase):
    """Circle of a given circumference with the wraparound metric."""

    def __init__(self, circumference: float = 2.0):
        if circumference <= 0:
            raise BadParams("circumference must be positive")
        self.circumference = circumference
        self.name = f"circle(circumference={circumference:g})"

    def dist(self, y1, y2) -> float:
        m = abs(float(y1) - float(y2)) % self.circumference
        return min(m, self.circumference - m)

    def sample(self, rng):
        return rng.uniform(0.0, self.circumference)


class FiniteMetricBase(MetricBase):
    """Metric given by an explicit symmetric distance matrix."""

    def __init__(self, matrix: list[list[float]], name: str = "finite-metric"):
        n = len(matrix)
        if n == 0 or any(len(row) != n for row in matrix):
            raise MalformedInput("distance matrix must be square and nonempty")
        tol = 1e-12
        for i in range(n):
            if abs(matrix[i][i]) > tol:
                raise MalformedInput(f"nonzero self-distance at {i}")
            for j in range(n):
                if matrix[i][j] < 0:
                    raise MalformedInput(f"negative distance at ({i},{j})")
                if abs(matrix[i][j] - matrix[j][i]) > tol:
                    raise MalformedInput(f"asymmetric distance at ({i},{j})")
                for m in range(n):
                    if matrix[i][j] > matrix[i][m] + matrix[m][j] + tol:
                        raise MalformedInput(
                            f"triangle inequality fails on ({i},{m},{j})")
        self.matrix = [[float(v) for v in row] for row in matrix]
        self.n = n
        self.name = name

    def dist(self, y1, y2) -> float:
        return self.matrix[int(y1)][int(y2)]

    def sample(self, rng):
        return rng.randrange(self.n)

    def parse_point(self, text: str):
        return int(text)


def load_metric_base(data: bytes | str) -> FiniteMetricBase:
    """Parse the finite metric JSON document {"n": int, "dist": [[float]]}."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(str(e), location="document") from e
    if not isinstance(doc, dict) or set(doc) - {"n", "dist"}:
        raise ParseError("document must hold exactly the keys n and dist",
                         location="document")
    n = doc.get("n")
    rows = doc.get("dist")
    if not isinstance(n, int) or n <= 0:
        raise ParseError("n must be a positive integer", location="n")
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"dist must be an {n}x{n} matrix", location="dist")
    try:
        return FiniteMetricBase([[float(v) for v in row] for row in rows])
    except MalformedInput as e:
        raise ParseError(str(e), location="dist") from e


def save_metric_base(base: FiniteMetricBase) -> bytes:
    return (json.dumps({"n": base.n, "dist": base.matrix}, sort_keys=True,
                       indent=2) + "\n").encode()


# ---------------------------------------------------------------------------
# Cone structure maps.
# ---------------------------------------------------------------------------


def _qform(p: ConePoint, q: ConePoint, base: MetricBase) -> float:
    if p.is_vertex:
        return q.t * q.t
    if q.is_vertex:
        return p.t * p.t
    return p.t * p.t + q.t * q.t - 2.0 * p.t * q.t * math.cosh(base.dist(p.y, q.y))


def cone_d(p: ConePoint, q: ConePoint, base: MetricBase) -> float:
    """The cone metric; distance to the vertex is the level."""
    if p.is_vertex:
        return q.t
    if q.is_vertex:
        return p.t
    d = base.dist(p.y, q.y)
    if d >= math.pi:
        return p.t + q.t
    v = p.t * p.t + q.t * q.t - 2.0 * p.t * q.t * math.cos(d)
    return math.sqrt(v) if v > 0 else 0.0


def cone_le(p: ConePoint, q: ConePoint, base: MetricBase) -> bool:
    """Causal relation; the null boundary counts as related.

    The boundary slack is relative to the squared levels, so the test is
    scale-free like the cone itself.
    """
    scale = p.t * p.t + q.t * q.t
    if p.t > q.t * (1.0 + _BOUNDARY_SLACK):
        return False
    return _qform(p, q, base) >= -_BOUNDARY_SLACK * scale


def cone_tau(p: ConePoint, q: ConePoint, base: MetricBase) -> float:
    """Time separation; 0 when the pair is not causally related."""
    if not cone_le(p, q, base):
        return 0.0
    v = _qform(p, q, base)
    return math.sqrt(v) if v > 0 else 0.0


def cone_chron(p: ConePoint, q: ConePoint, base: MetricBase) -> bool:
    scale = p.t * p.t + q.t * q.t
    return p.t <= q.t and _qform(p, q, base) > _BOUNDARY_SLACK * scale


def cone_utility_bounds(p: ConePoint, q: ConePoint,
                        base: MetricBase) -> tuple[float, float]:
    """Upper bounds (log ratio of levels, level gap plus swept arc).

    The base distance of a causal pair is at most the first value; the cone
    metric distance is at most the second.
    """
    if not cone_le(p, q, base):
        raise PreconditionViolation("bounds need a causally related pair p <= q")
    if p.t <= 0:
        raise PreconditionViolation("bound needs a positive starting level")
    d = base.dist(p.y, q.y)
    if d > math.pi:
        raise PreconditionViolation(f"arc bound needs base distance <= pi, got {d}")
    bound1 = math.log(q.t) - math.log(p.t)
    bound2 = (q.t - p.t) + q.t * d
    return bound1, bound2


def vertex_direction_angle(y1, y2, base: MetricBase) -> float:
    """Limit comparison angle at the vertex between the rays over y1 and y2.

    Evaluated over shrinking chronologically related level pairs; the cone
    time separation is built exactly so this equals the base distance.
    """
    d = base.dist(y1, y2)
    if d == 0.0:
        return 0.0
    lam = 1.25 * math.exp(d)
    k0 = CurvatureParam(0.0)
    omega = 0.0
    for j in range(6):
        s = 1e-3 * 0.5 ** j
        t = lam * s
        c = cone_tau(ConePoint(s, y1), ConePoint(t, y2), base)
        omega = angle_from_sides(k0, TriangleShape(s, t, c), -1).omega
    return omega


# ---------------------------------------------------------------------------
# The cone as a space.
# ---------------------------------------------------------------------------


def _unembed(T: float, X: float) -> ConePoint:
    t2 = (T - X) * (T + X)
    if t2 <= 0:
        if T == 0.0 and X == 0.0:
            return VERTEX
        raise NotChronological(f"point ({T}, {X}) outside the open cone")
    return ConePoint(math.sqrt(t2), math.atanh(X / T))


class ConeSpace(SpaceHandle):
    """SpaceHandle over the Minkowski cone of a metric base.

    The sampler is confined to the truncated cone t_lo < t < t_hi; the vertex
    itself remains a valid point for the structure maps.
    """

    def __init__(self, base: MetricBase, t_lo: float = 0.25, t_hi: float = 2.0):
        if not (0 < t_lo < t_hi) or not math.isfinite(t_hi):
            raise BadParams(f"need 0 < t_lo < t_hi, got ({t_lo}, {t_hi})")
        self.base = base
        self.t_lo = t_lo
        self.t_hi = t_hi
        self.scale = t_hi - t_lo
        self.name = f"cone_over({base.name})"
        self._flat = isinstance(base, LineBase)
        self.has_geodesics = self._flat
        self.strictly_timelike_geodesic = self._flat
        if self._flat:
            self.lower_bound = 0.0
            self.upper_bound = 0.0

    # -- structure maps -----------------------------------------------------

    def tau(self, p, q) -> float:
        return cone_tau(p, q, self.base)

    def le(self, p, q) -> bool:
        return cone_le(p, q, self.base)

    def chron(self, p, q) -> bool:
        return cone_chron(p, q, self.base)

    def dist(self, p, q) -> float:
        return cone_d(p, q, self.base)

    def base_point(self):
        return VERTEX

    # -- geodesics ----------------------------------------------------------

    def _ray(self, y, t0: float, t1: float, orientation=FUTURE) -> TimelikeCurve:
        if orientation == FUTURE:
            fn = lambda u: ConePoint(t0 + u, y)
        else:
            fn = lambda u: ConePoint(t0 - u, y)
        return TimelikeCurve(fn, abs(t1 - t0), orientation)

    def geodesic(self, p: ConePoint, q: ConePoint) -> TimelikeCurve:
        t = self.tau(p, q)
        if t <= 0:
            raise NotChronological(f"{p} must chronologically precede {q}")
        if p.is_vertex:
            return self._ray(q.y, 0.0, q.t)
        if not p.is_vertex and not q.is_vertex and self.base.dist(p.y, q.y) == 0.0:
            return self._ray(p.y, p.t, q.t)
        if not self._flat:
            from .errors import NoGeodesicCapability

            raise NoGeodesicCapability(
                f"{self.name} serves geodesics along rays only")
        ep = embed_cone_over_line(p.t, float(p.y))
        eq = embed_cone_over_line(q.t, float(q.y))

        def fn(u):
            if u <= 0:
                return p
            f = u / t
            return _unembed(ep[0] + f * (eq[0] - ep[0]), ep[1] + f * (eq[1] - ep[1]))

        return TimelikeCurve(fn, t, FUTURE)

    def prolong_future(self, p: ConePoint, x: ConePoint, length: float) -> TimelikeCurve:
        aligned = p.is_vertex or x.is_vertex or self.base.dist(p.y, x.y) == 0.0
        if aligned and not x.is_vertex:
            return self._ray(x.y, x.t, x.t + length)
        if not self._flat:
            from .errors import NoProlongation

            raise NoProlongation(f"{self.name} prolongs along rays only")
        ep = embed_cone_over_line(p.t, float(p.y))
        ex = embed_cone_over_line(x.t, float(x.y))
        t = self.tau(p, x)
        if t <= 0:
            raise NotChronological("prolongation needs p << x")
        v = ((ex[0] - ep[0]) / t, (ex[1] - ep[1]) / t)

        def fn(u):
            return _unembed(ex[0] + u * v[0], ex[1] + u * v[1])

        return TimelikeCurve(fn, length, FUTURE)

    def direction_curve(self, x: ConePoint, y: ConePoint, min_length: float) -> TimelikeCurve:
        if self.chron(x, y):
            orient = FUTURE
        elif self.chron(y, x):
            orient = PAST
        else:
            raise NotChronological("direction_curve needs chronologically related points")
        if orient == FUTURE and x.is_vertex:
            return self._ray(y.y, 0.0, max(min_length, y.t))
        aligned = y.is_vertex or self.base.dist(x.y, y.y) == 0.0
        if aligned:
            if orient == FUTURE:
                return self._ray(x.y, x.t, max(x.t + min_length, y.t))
            # past rays terminate at the vertex
            return self._ray(x.y, x.t, max(x.t - min(min_length, x.t), 0.0), PAST)
        if not self._flat:
            from .errors import NoGeodesicCapability

            raise NoGeodesicCapability(f"{self.name} serves directions along rays only")
        ex = embed_cone_over_line(x.t, float(x.y))
        ey = embed_cone_over_line(y.t, float(y.y))
        t = max(self.tau(x, y), self.tau(y, x))
        v = ((ey[0] - ex[0]) / t, (ey[1] - ex[1]) / t)
        # cap a past-running representative where it exits the open cone
        cap = max(min_length, t)
        if orient == PAST:
            lo, hi = 0.0, cap
            inside = lambda u: (lambda T, X: T > abs(X))(ex[0] + u * v[0], ex[1] + u * v[1])
            if inside(cap):
                lo = cap
            else:
                for _ in range(80):
                    mid = 0.5 * (lo + hi)
                    lo, hi = (mid, hi) if inside(mid) else (lo, mid)
            cap = lo
        fn = lambda u: x if u <= 0 else _unembed(ex[0] + u * v[0], ex[1] + u * v[1])
        return TimelikeCurve(fn, cap, orient)

    def direction_key(self, x: ConePoint, y: ConePoint) -> tuple:
        if x.is_vertex:
            return ("ray", y.y)
        if self._flat:
            ex = embed_cone_over_line(x.t, float(x.y))
            ey = embed_cone_over_line(y.t, float(y.y))
            d = (ey[0] - ex[0], ey[1] - ex[1])
            n2 = (d[0] - d[1]) * (d[0] + d[1])
            if n2 <= 0:
                raise NotChronological("direction key needs related points")
            n = math.sqrt(abs(n2))
            return (d[0] / n, d[1] / n)
        return ("ray", y.y)

    def named_curve(self, spec: str, length: float | None = None) -> TimelikeCurve:
        """``ray:<base point>`` future from the vertex."""
        parts = spec.split(":")
        if parts[0] != "ray" or len(parts) != 2:
            raise BadParams(f"unknown curve spec {spec!r} for {self.name}")
        y = self.base.parse_point(parts[1])
        cap = length if length is not None else self.t_hi
        return self._ray(y, 0.0, cap)

    # -- samplers -----------------------------------------------------------

    def _propose_points(self, rng, n):
        return [ConePoint(rng.uniform(self.t_lo, self.t_hi), self.base.sample(rng))
                for _ in range(n)]

    def sample_points(self, n: int, seed: int) -> list:
        return self._propose_points(self._rng(seed, "points"), n)

    def _propose_triple(self, rng):
        pts = self._propose_points(rng, 3)
        return tuple(sorted(pts, key=lambda p: p.t))

    def sample_realizer_pairs(self, n: int, seed: int, orientation: str = FUTURE):
        if not self._flat:
            from .errors import NoGeodesicCapability

            raise NoGeodesicCapability(f"{self.name} has no realizer pairs")
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
                    fwd = self.geodesic(z, x)
                    L = fwd.length
                    past = TimelikeCurve(lambda u, f=fwd, L=L: f.at(L - u), L, PAST)
                    out.append((x, self.geodesic(x, y), past))
        return out

    def point_json(self, p: ConePoint):
        return [p.t, p.y]


def cone_space(base: MetricBase, t_lo: float = 0.25, t_hi: float = 2.0) -> ConeSpace:
    """Wrap the Minkowski cone over a metric base as a space handle."""
    return ConeSpace(base, t_lo, t_hi)


def cone_space_from_params(base: str = "line", t_lo: float = 0.25,
                           t_hi: float = 2.0, **params) -> ConeSpace:
    if base == "line":
        b = LineBase(float(params.pop("span", 1.0)))
    elif base == "circle":
        b = CircleBase(float(params.pop("circumference", 2.0)))
    elif base == "finite":
        path = params.pop("path", None)
        if path is None:
            raise BadParams("finite base needs a path to its JSON matrix")
        with open(path, "rb") as f:
            b = load_metric_base(f.read())
    else:
        raise BadParams(f"unknown cone base {base!r}")
    if params:
        raise BadParams(f"unknown cone parameters {sorted(params)}")
    return ConeSpace(b, float(t_lo), float(t_hi))
