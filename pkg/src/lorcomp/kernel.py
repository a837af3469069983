"""Scalar trigonometry of the two-dimensional Lorentzian model planes.

A constant-curvature plane is parametrized by its curvature ``k`` with scale
``s = sqrt(|k|)``.  Time separations in a causal triangle with legs ``a, b``
adjacent to a vertex, opposite side ``c``, hyperbolic vertex angle ``omega``
and vertex sign ``sigma`` obey

    k = 0:   a^2 + b^2 = c^2 - 2*a*b*sigma*cosh(omega)
    k < 0:   cos(s*c)  = cos(s*a)*cos(s*b)   - sigma*cosh(omega)*sin(s*a)*sin(s*b)
    k > 0:   cosh(s*c) = cosh(s*a)*cosh(s*b) + sigma*cosh(omega)*sinh(s*a)*sinh(s*b)

``sigma`` is -1 when the vertex is the past or future endpoint of the
configuration and +1 when it is the middle vertex.  The three rows join up to
a single analytic family, which this module exploits through the "modified
cosine" helpers ``_md``/``_md2``/``_sn``: all solvers are written once against
that family, so values vary continuously across k = 0.

Everything here is pure binary64 arithmetic on scalars; no global state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    DegenerateLeg,
    NotRealizable,
    PreconditionViolation,
    SizeBoundViolation,
)

# Absolute guard absorbing rounding in degenerate configurations: cosh
# arguments in [1 - COSH_CLAMP, 1] clamp to 1, arccos arguments overshooting
# [-1, 1] by at most ARC_CLAMP clamp to the boundary.
COSH_CLAMP = 1e-12
ARC_CLAMP = 1e-12
# A solved side this close to the finite diameter is rejected.
DIAMETER_MARGIN = 1e-12
# Below this magnitude the curved corrections are far under one ulp of the
# flat terms; routing through the flat branch avoids underflow in s^2.
_FLAT_K = 1e-30


class Orientation(Enum):
    """Time orientation of an ordered point pair."""

    FIRST_BEFORE_SECOND = "first-precedes-second"
    SECOND_BEFORE_FIRST = "second-precedes-first"
    NONE = "none"

    def flipped(self) -> "Orientation":
        if self is Orientation.FIRST_BEFORE_SECOND:
            return Orientation.SECOND_BEFORE_FIRST
        if self is Orientation.SECOND_BEFORE_FIRST:
            return Orientation.FIRST_BEFORE_SECOND
        return Orientation.NONE


@dataclass(frozen=True)
class CurvatureParam:
    """Curvature ``k`` with derived scale ``s = sqrt(|k|)`` and timelike diameter."""

    k: float
    s: float = field(init=False)
    diameter: float = field(init=False)

    def __post_init__(self):
        if not math.isfinite(self.k):
            raise PreconditionViolation(f"curvature must be finite, got {self.k}")
        s = math.sqrt(abs(self.k))
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "diameter", math.pi / s if self.k < 0 else math.inf)


def diameter_of(k: CurvatureParam) -> float:
    """Finite timelike diameter pi/sqrt(-k) for k < 0, +inf otherwise."""
    return k.diameter


@dataclass(frozen=True)
class SignedAngle:
    """Nonnegative hyperbolic angle with vertex sign.

    ``sigma`` is -1 at a past or future endpoint and +1 at a middle vertex.
    """

    omega: float
    sigma: int

    def __post_init__(self):
        if self.omega < 0 or math.isnan(self.omega):
            raise PreconditionViolation(f"omega must be >= 0, got {self.omega}")
        if self.sigma not in (-1, 1):
            raise PreconditionViolation(f"sigma must be -1 or +1, got {self.sigma}")

    @property
    def signed(self) -> float:
        return self.sigma * self.omega


@dataclass(frozen=True)
class TriangleShape:
    """Three causal-triangle side lengths.

    In vertex-relative labeling (as consumed by :func:`angle_from_sides`)
    ``a`` and ``b`` are the legs adjacent to the vertex and ``c`` is the side
    opposite it.  In canonical labeling ``(a12, a23, a13)`` the reverse
    triangle inequality ``a + b <= c`` makes ``c`` the longest side.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise PreconditionViolation(f"side {name} must be finite and >= 0, got {v}")

    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class HingeShape:
    """Two legs meeting at a vertex with a signed angle between them."""

    a: float
    b: float
    angle: SignedAngle

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise DegenerateLeg(f"hinge legs must be positive, got {self.a}, {self.b}")


@dataclass(frozen=True)
class SolvedSide:
    """Outcome of a hinge solve for the side opposite the angle.

    A sigma = -1 hinge may close up spacelike; that is reported as data, not
    an error: ``tau`` is then 0, ``causal`` is False and ``margin`` holds the
    positive spacelike slack of the extended law of cosines.
    """

    tau: float
    causal: bool
    margin: float | None = None


@dataclass(frozen=True)
class OneSidedResult:
    """Distance between an off-vertex side point and the opposite vertex."""

    value: float
    orientation: Orientation
    causal: bool


# ---------------------------------------------------------------------------
# Modified-cosine family.  _md(k, x) equals x^2/2 + k*x^4/24 + ... for every
# sign of k; the law of cosines reads _md(c) = _md2(a, b) + sigma*cosh(omega)
# * _sn(a)*_sn(b) uniformly in k.
# ---------------------------------------------------------------------------


def _md(k: CurvatureParam, x: float) -> float:
    if abs(k.k) < _FLAT_K:
        return 0.5 * x * x
    s = k.s
    if k.k < 0:
        h = math.sin(0.5 * s * x)
    else:
        h = math.sinh(0.5 * s * x)
    return 2.0 * h * h / (s * s)


def _md2(k: CurvatureParam, a: float, b: float) -> float:
    # ordered so the value is exactly symmetric in (a, b)
    if a < b:
        a, b = b, a
    if abs(k.k) < _FLAT_K:
        return 0.5 * (a * a + b * b)
    s = k.s
    if k.k < 0:
        ha = math.sin(0.5 * s * a)
        hb = math.sin(0.5 * s * b)
        return (2.0 * ha * ha + math.cos(s * a) * 2.0 * hb * hb) / (s * s)
    ha = math.sinh(0.5 * s * a)
    hb = math.sinh(0.5 * s * b)
    return (2.0 * ha * ha + math.cosh(s * a) * 2.0 * hb * hb) / (s * s)


def _sn(k: CurvatureParam, x: float) -> float:
    if abs(k.k) < _FLAT_K:
        return x
    if k.k < 0:
        return math.sin(k.s * x) / k.s
    return math.sinh(k.s * x) / k.s


def _inv_md(k: CurvatureParam, v: float) -> float:
    """Solve _md(k, x) = v for x >= 0.  Caller checks v >= 0 and size bounds."""
    if v < 0:
        if v < -COSH_CLAMP:
            raise PreconditionViolation(f"negative modified-cosine value {v}")
        v = 0.0
    if abs(k.k) < _FLAT_K:
        return math.sqrt(2.0 * v)
    s = k.s
    h2 = 0.5 * s * s * v
    if k.k < 0:
        if h2 > 1.0:
            if h2 - 1.0 > ARC_CLAMP:
                raise SizeBoundViolation(
                    f"solved side exceeds the model diameter (sin^2 argument {h2})"
                )
            h2 = 1.0
        return 2.0 * math.asin(math.sqrt(h2)) / s
    return 2.0 * math.asinh(math.sqrt(h2)) / s


def _check_size_bounds(k: CurvatureParam, *lengths: float) -> None:
    if k.k < 0:
        dk = k.diameter
        for x in lengths:
            if x >= dk - DIAMETER_MARGIN:
                raise SizeBoundViolation(
                    f"length {x} reaches the model diameter {dk} for k={k.k}"
                )


# ---------------------------------------------------------------------------
# Solvers.
# ---------------------------------------------------------------------------


def angle_from_sides(k: CurvatureParam, tri: TriangleShape, sigma: int) -> SignedAngle:
    """Hyperbolic angle at a vertex with legs ``tri.a, tri.b`` and opposite side ``tri.c``.

    The opposite side may be 0 (null).  Raises DegenerateLeg if a leg is 0,
    SizeBoundViolation if a side reaches the finite diameter, NotRealizable if
    the solved cosh argument falls below 1 beyond the clamp.
    """
    if sigma not in (-1, 1):
        raise PreconditionViolation(f"sigma must be -1 or +1, got {sigma}")
    a, b, c = tri.a, tri.b, tri.c
    if a <= 0 or b <= 0:
        raise DegenerateLeg(f"vertex legs must be positive, got {a}, {b}")
    _check_size_bounds(k, a, b, c)
    carg = sigma * (_md(k, c) - _md2(k, a, b)) / (_sn(k, a) * _sn(k, b))
    if carg < 1.0:
        if carg < 1.0 - COSH_CLAMP:
            raise NotRealizable(
                f"no causal triangle with legs ({a}, {b}), opposite {c}, "
                f"sigma {sigma} at k={k.k}: cosh argument {carg}"
            )
        carg = 1.0
    return SignedAngle(math.acosh(carg), sigma)


def side_from_hinge(k: CurvatureParam, hinge: HingeShape) -> SolvedSide:
    """Side opposite the hinge angle.

    For sigma = +1 the side is the longest of the triangle, c >= a + b.  For
    sigma = -1 the far endpoints may fail to be causally related; that outcome
    is returned (tau 0, causal False) with the extended-law spacelike margin.
    """
    a, b = hinge.a, hinge.b
    sigma, omega = hinge.angle.sigma, hinge.angle.omega
    _check_size_bounds(k, a, b)
    v = _md2(k, a, b) + sigma * math.cosh(omega) * _sn(k, a) * _sn(k, b)
    if sigma > 0:
        return SolvedSide(tau=_inv_md(k, v), causal=True)
    margin = -(k.s * k.s) * v if abs(k.k) >= _FLAT_K else -2.0 * v
    if v < 0:
        # spacelike beyond the clamp; at the null boundary report tau = 0, causal
        scale = max(1.0, abs(_md2(k, a, b)))
        if v < -COSH_CLAMP * scale:
            return SolvedSide(tau=0.0, causal=False, margin=margin)
        v = 0.0
    return SolvedSide(tau=_inv_md(k, v), causal=True, margin=margin)


def extended_loc_margin(k: CurvatureParam, a: float, b: float, omega: float) -> float:
    """Signed slack of the spacelike-side inequality for legs a, b and angle omega.

    Positive means the far endpoints are not causally related, 0 means null
    related, negative means the configuration closes up causally.  The k = 0
    form is 2*a*b*cosh(omega) - a^2 - b^2; the curved forms are normalized as
    in the corresponding inequalities (1 - cos/cosh combination).
    """
    if a <= 0 or b <= 0:
        raise DegenerateLeg(f"legs must be positive, got {a}, {b}")
    _check_size_bounds(k, a, b, a + b)
    v = _md2(k, a, b) - math.cosh(omega) * _sn(k, a) * _sn(k, b)
    return -(k.s * k.s) * v if abs(k.k) >= _FLAT_K else -2.0 * v


def _one_sided_md(k: CurvatureParam, case: int, a: float, b: float, c: float, d: float) -> float:
    """Modified-cosine value of the one-sided distance x for the given case."""
    if case == 1:
        # triangle (a, b+c, d), point on the (b+c) side at distance b from the middle vertex
        return _md2(k, a, b) - (_md2(k, a, b + c) - _md(k, d)) * _sn(k, b) / _sn(k, b + c)
    if case == 2:
        # time reversal of case 1 with a and c swapped
        return _md2(k, c, b) - (_md2(k, c, b + a) - _md(k, d)) * _sn(k, b) / _sn(k, b + a)
    if case == 3:
        # triangle (a, b, c+d), point on the longest side at distance c from its past vertex
        return _md2(k, a, c) - (_md2(k, a, c + d) - _md(k, b)) * _sn(k, c) / _sn(k, c + d)
    raise PreconditionViolation(f"case must be 1, 2 or 3, got {case}")


def _one_sided_check(k: CurvatureParam, case: int, a: float, b: float, c: float, d: float) -> None:
    for name, v in (("a", a), ("b", b), ("c", c), ("d", d)):
        if not math.isfinite(v) or v < 0:
            raise PreconditionViolation(f"{name} must be finite and >= 0, got {v}")
    slack = 1e-12 * max(1.0, a + b + c + d)
    if case in (1, 2):
        if a + b + c > d + slack:
            raise PreconditionViolation(f"need a+b+c <= d, got {a}+{b}+{c} > {d}")
        if case == 1 and b + c <= 0:
            raise PreconditionViolation("need b+c > 0 in case 1")
        if case == 2 and a + b <= 0:
            raise PreconditionViolation("need a+b > 0 in case 2")
        _check_size_bounds(k, d)
    elif case == 3:
        if a + b > c + d + slack:
            raise PreconditionViolation(f"need a+b <= c+d, got {a}+{b} > {c}+{d}")
        if c + d <= 0:
            raise PreconditionViolation("need c+d > 0 in case 3")
        _check_size_bounds(k, c + d)
    else:
        raise PreconditionViolation(f"case must be 1, 2 or 3, got {case}")


def one_sided_x(
    k: CurvatureParam, case: int, a: float, b: float, c: float, d: float
) -> OneSidedResult:
    """Distance between the off-vertex side point q and the opposite vertex.

    Case 1: q sits on the future side of a triangle (a, b+c, d); x = tau from
    the past vertex, which always precedes q.  Case 2 is the time reversal.
    Case 3: q sits on the longest side of a triangle (a, b, c+d); x is the
    separation between q and the middle vertex in whichever time order is
    realized, and the result may be non-causal (value 0, causal False).
    """
    _one_sided_check(k, case, a, b, c, d)
    v = _one_sided_md(k, case, a, b, c, d)
    if case == 1:
        return OneSidedResult(_inv_md(k, v), Orientation.FIRST_BEFORE_SECOND, True)
    if case == 2:
        return OneSidedResult(_inv_md(k, v), Orientation.SECOND_BEFORE_FIRST, True)
    scale = max(1.0, abs(_md2(k, a, c)))
    if v < -COSH_CLAMP * scale:
        return OneSidedResult(0.0, Orientation.NONE, False)
    x = _inv_md(k, max(v, 0.0))
    if x <= 0.0:
        return OneSidedResult(0.0, Orientation.NONE, True)
    # middle vertex precedes q exactly when its past-vertex leg is the shorter one
    orient = Orientation.FIRST_BEFORE_SECOND if a < c else Orientation.SECOND_BEFORE_FIRST
    return OneSidedResult(x, orient, True)


def flat_limit_gap(
    k: CurvatureParam, case: int, a: float, b: float, c: float, d: float
) -> float:
    """|x^2(k) - x^2(0)| for identical one-sided inputs."""
    _one_sided_check(k, case, a, b, c, d)
    flat = CurvatureParam(0.0)
    x2_flat = 2.0 * _one_sided_md(flat, case, a, b, c, d)
    if abs(k.k) < _FLAT_K:
        return 0.0
    xk = _inv_md(k, _one_sided_md(k, case, a, b, c, d))
    return abs(xk * xk - x2_flat)
