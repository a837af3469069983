"""Upper angles between timelike curves, direction spaces, angle audits.

The upper angle between two timelike curves issuing from a common point is a
limit superior of comparison angles over shrinking parameter pairs restricted
to causally related curve points.  No finite procedure can certify a limsup
for arbitrary curves, so the estimator walks geometric parameter shells
(s, t) = (s0 * rho^i, s0 * rho^j), takes the supremum over the final shells,
and reports a convergence flag with the shell spread; callers must treat
``converged = False`` as "no value asserted".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    EmptyDomain,
    GeometryError,
    MixedOrientation,
    PreconditionViolation,
)
from .kernel import CurvatureParam, TriangleShape, angle_from_sides
from .report import CheckReport, Violation
from .spaces import SpaceHandle, TimelikeCurve

ANGLE_TOL = 1e-4
TRIANGLE_SLACK = 1e-6
ZERO_CLASS_TOL = 1e-3


@dataclass(frozen=True)
class AngleScheme:
    """Shell discretization for the limit-superior estimate.

    ``s0`` defaults to one eighth of the space's neighborhood scale.  Shell j
    collects parameter pairs with min exponent j; the estimate is the
    supremum over the last ``m`` populated shells, converged when their
    suprema agree within ``tol``.  Values climbing beyond ``ceiling`` are
    reported as the infinite marker.
    """

    s0: float | None = None
    rho: float = 0.5
    j_max: int = 24
    m: int = 3
    tol: float = ANGLE_TOL
    ceiling: float = 50.0

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise PreconditionViolation(f"rho must be in (0,1), got {self.rho}")
        if self.j_max < self.m or self.m < 1:
            raise PreconditionViolation("need j_max >= m >= 1")
        if self.s0 is not None and self.s0 <= 0:
            raise PreconditionViolation("s0 must be positive")


@dataclass
class AngleEstimate:
    value: float
    sigma: int
    shells: list[tuple[float, float, float]]
    converged: bool
    spread: float


def _start_point(space: SpaceHandle, alpha: TimelikeCurve, beta: TimelikeCurve):
    xa, xb = alpha.at(0.0), beta.at(0.0)
    if space.dist(xa, xb) > 1e-9:
        raise PreconditionViolation("curves must start at the same point")
    return xa


def _estimate(space: SpaceHandle, alpha: TimelikeCurve, beta: TimelikeCurve,
              k: CurvatureParam, scheme: AngleScheme) -> AngleEstimate:
    x = _start_point(space, alpha, beta)
    sigma = -1 if alpha.orientation == beta.orientation else +1
    s0 = scheme.s0 if scheme.s0 is not None else space.scale / 8.0
    params_a = [(i, s0 * scheme.rho ** i) for i in range(scheme.j_max + 1)
                if s0 * scheme.rho ** i <= alpha.length]
    params_b = [(j, s0 * scheme.rho ** j) for j in range(scheme.j_max + 1)
                if s0 * scheme.rho ** j <= beta.length]
    pts_a = [(i, s, alpha.at(s)) for i, s in params_a]
    pts_b = [(j, t, beta.at(t)) for j, t in params_b]
    admissible: list[tuple[int, int, float, float, float]] = []
    for i, s, pa in pts_a:
        for j, t, pb in pts_b:
            if not (space.le(pa, pb) or space.le(pb, pa)):
                continue
            a = max(space.tau(x, pa), space.tau(pa, x))
            b = max(space.tau(x, pb), space.tau(pb, x))
            c = max(space.tau(pa, pb), space.tau(pb, pa))
            if a <= 0.0 or b <= 0.0:
                continue
            if math.isinf(a) or math.isinf(b) or math.isinf(c):
                continue
            if k.k < 0 and max(a, b, c) >= k.diameter - 1e-12:
                continue
            try:
                omega = angle_from_sides(k, TriangleShape(a, b, c), sigma).omega
            except GeometryError:
                continue
            admissible.append((i, j, s, t, omega))
    if not admissible:
        raise EmptyDomain(
            "no causally related parameter pairs in range; for curves of equal "
            "time orientation shrink s0 or raise j_max")
    # both parameters must shrink together: restrict the shells to the
    # tightest diagonal band the causal relation admits, so one deep sample
    # cannot masquerade as a converged tail
    band = min(abs(i - j) for i, j, *_ in admissible) + 1
    shells: dict[int, float] = {}
    samples: list[tuple[float, float, float]] = []
    for i, j, s, t, omega in admissible:
        samples.append((s, t, omega))
        if abs(i - j) <= band:
            shell = min(i, j)
            shells[shell] = max(shells.get(shell, 0.0), omega)
    idx = sorted(shells)
    last = idx[-scheme.m:]
    vals = [shells[i] for i in last]
    value = max(vals)
    spread = max(vals) - min(vals)
    converged = len(last) >= scheme.m and spread < scheme.tol
    # still climbing past the ceiling: report the infinite marker, never a
    # large finite value that the next shell would overtake
    if value > scheme.ceiling and not converged:
        value = math.inf
    return AngleEstimate(value=value, sigma=sigma, shells=samples,
                         converged=converged, spread=spread)


def estimate_upper_angle(space: SpaceHandle, alpha: TimelikeCurve,
                         beta: TimelikeCurve,
                         scheme: AngleScheme | None = None) -> AngleEstimate:
    """Estimate the upper angle between two curves at their common start."""
    return _estimate(space, alpha, beta, CurvatureParam(0.0), scheme or AngleScheme())


@dataclass
class KScanReport:
    estimates: dict[float, AngleEstimate]
    deviations: dict[float, float]


def k_independence_report(space: SpaceHandle, alpha: TimelikeCurve,
                          beta: TimelikeCurve, k_list: list[float],
                          scheme: AngleScheme | None = None) -> KScanReport:
    """Per-curvature angle estimates; all converge to the same upper angle."""
    scheme = scheme or AngleScheme()
    estimates = {k: _estimate(space, alpha, beta, CurvatureParam(k), scheme)
                 for k in k_list}
    base = estimates.get(0.0) or _estimate(space, alpha, beta, CurvatureParam(0.0),
                                           scheme)
    deviations = {k: abs(e.value - base.value) for k, e in estimates.items()}
    return KScanReport(estimates=estimates, deviations=deviations)


@dataclass
class DirectionSpace:
    """Finite set of directions at a point, metrized by the upper angle."""

    representatives: list[TimelikeCurve]
    angle_matrix: list[list[float]]
    classes: list[list[int]]
    axiom_violations: list[Violation] = field(default_factory=list)

    def class_of(self, index: int) -> int:
        for c, members in enumerate(self.classes):
            if index in members:
                return c
        raise IndexError(index)

    def to_metric_base(self):
        """Export the zero-angle quotient as a finite metric base.

        Tiny triangle-inequality overshoots from estimation are repaired by
        shortest paths before the base validates itself.
        """
        from .cone import FiniteMetricBase

        reps = [members[0] for members in self.classes]
        n = len(reps)
        m = [[0.0 if i == j else self.angle_matrix[reps[i]][reps[j]]
              for j in range(n)] for i in range(n)]
        for mid in range(n):
            for i in range(n):
                for j in range(n):
                    if m[i][j] > m[i][mid] + m[mid][j]:
                        m[i][j] = m[i][mid] + m[mid][j]
        for i in range(n):
            for j in range(n):
                m[i][j] = m[j][i] = min(m[i][j], m[j][i])
        return FiniteMetricBase(m, name="directions")


def direction_space(space: SpaceHandle, x, geodesics: list[TimelikeCurve],
                    tol_zero: float = ZERO_CLASS_TOL,
                    scheme: AngleScheme | None = None) -> DirectionSpace:
    """Pairwise angle matrix and zero-angle quotient for curves at x."""
    if not geodesics:
        raise PreconditionViolation("need at least one geodesic")
    orientations = {g.orientation for g in geodesics}
    if len(orientations) > 1:
        raise MixedOrientation("directions need a common time orientation")
    for g in geodesics:
        if space.dist(g.at(0.0), x) > 1e-9:
            raise PreconditionViolation("every geodesic must start at x")
    scheme = scheme or AngleScheme()
    n = len(geodesics)
    matrix = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            est = estimate_upper_angle(space, geodesics[i], geodesics[j], scheme)
            matrix[i][j] = matrix[j][i] = est.value
    # zero-angle quotient: union-find over the thresholded matrix
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] < tol_zero:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = sorted(groups.values())
    violations = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                lhs = matrix[i][j]
                rhs = matrix[i][m] + matrix[m][j]
                if lhs > rhs + TRIANGLE_SLACK:
                    violations.append(Violation(
                        witness={"kind": "triangle-inequality", "triple": [i, m, j]},
                        lhs=lhs, rhs=rhs, gap=lhs - rhs))
    return DirectionSpace(representatives=list(geodesics), angle_matrix=matrix,
                          classes=classes, axiom_violations=violations)


def _covered(space: SpaceHandle, middle: str, outer1: str, outer2: str) -> bool:
    """Is the triple configuration covered by a triangle-inequality theorem?"""
    if outer1 == outer2 == middle:
        return True
    if outer1 != outer2:
        # the middle curve shares its orientation with one outer curve
        return middle in (outer1, outer2)
    # both outer curves oppose the middle: needs a lower curvature bound
    return space.lower_bound is not None


def angle_triangle_audit(space: SpaceHandle, x, curves: list[TimelikeCurve],
                         scheme: AngleScheme | None = None,
                         seed: int = 0) -> CheckReport:
    """Check the angle triangle inequality on every curve triple at x.

    Configurations covered by a theorem drive the verdict; violations in
    uncovered configurations (both outer orientations opposing the middle in
    a space without a declared lower curvature bound) are recorded under
    ``notes['findings']``.
    """
    scheme = scheme or AngleScheme()
    n = len(curves)
    est = {}
    skipped = 0
    for i in range(n):
        for j in range(i + 1, n):
            e = estimate_upper_angle(space, curves[i], curves[j], scheme)
            est[(i, j)] = est[(j, i)] = e
    samples = 0
    admissible = 0
    violations = []
    findings = []
    for i in range(n):
        for l in range(i + 1, n):
            for j in range(n):
                if j in (i, l):
                    continue
                samples += 1
                e_il, e_ij, e_jl = est[(i, l)], est[(i, j)], est[(j, l)]
                if not (e_il.converged and e_ij.converged and e_jl.converged):
                    skipped += 1
                    continue
                admissible += 1
                lhs = e_il.value
                rhs = e_ij.value + e_jl.value
                if lhs <= rhs + TRIANGLE_SLACK:
                    continue
                witness = {
                    "triple": [i, j, l],
                    "orientations": [curves[i].orientation, curves[j].orientation,
                                     curves[l].orientation],
                }
                record = Violation(witness=witness, lhs=lhs, rhs=rhs, gap=lhs - rhs)
                if _covered(space, curves[j].orientation, curves[i].orientation,
                            curves[l].orientation):
                    violations.append(record)
                else:
                    findings.append(record.to_json())
    notes = {"skipped_nonconverged": skipped}
    if findings:
        notes["findings"] = findings
    return CheckReport.conclude(
        space=space.name, k=0.0, bound="none", variant="angle-triangle",
        samples=samples, admissible=admissible, seed=seed,
        tolerance=TRIANGLE_SLACK, violations=violations, notes=notes,
        min_admissible=1)


def angle_along_geodesic_check(space: SpaceHandle, p, x, beta: TimelikeCurve,
                               scheme: AngleScheme | None = None,
                               seed: int = 0) -> CheckReport:
    """At an interior point of a geodesic, the angles toward its future and
    past halves agree.

    The geodesic through x is given by its past anchor p << x; the future
    half is the space's prolongation (NoProlongation propagates where the
    space ends, as on the half-plane boundary).
    """
    scheme = scheme or AngleScheme()
    if not space.chron(p, x):
        raise PreconditionViolation("need p << x")
    r = space.tau(p, x)
    alpha_minus = space.direction_curve(x, p, min_length=r)
    alpha_plus = space.prolong_future(p, x, r)
    e_plus = _estimate(space, beta, alpha_plus, CurvatureParam(0.0), scheme)
    e_minus = _estimate(space, beta, alpha_minus, CurvatureParam(0.0), scheme)
    gap = abs(e_plus.value - e_minus.value)
    violations = []
    if gap >= ANGLE_TOL:
        violations.append(Violation(
            witness={"kind": "angle-asymmetry-along-geodesic",
                     "forward": e_plus.value, "backward": e_minus.value},
            lhs=e_plus.value, rhs=e_minus.value, gap=gap))
    return CheckReport.conclude(
        space=space.name, k=0.0, bound="none", variant="angle-along-geodesic",
        samples=1, admissible=1 if (e_plus.converged and e_minus.converged) else 0,
        seed=seed, tolerance=ANGLE_TOL, violations=violations,
        notes={"forward": e_plus.value, "backward": e_minus.value},
        min_admissible=1)
