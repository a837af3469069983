"""Curvature-bound checkers and cross-audits over sampled configurations.

Two independent routes to the same bounds are implemented and cross-audited:

* triangle comparison: time separations between points on the sides of
  sampled timelike triangles against the matching separations in the
  curvature-k model plane;
* monotonicity comparison: the signed comparison angle theta(s, t) along two
  realizers from a common point must be monotone in each parameter.

Tolerances separate rounding from geometry: tau-level inequalities carry an
absolute 1e-9 slack, angle-mediated checks carry 1e-4 (they inherit the
limit-estimation error).  Samples that fail size bounds, produce non-finite
separations, or whose angles do not converge are skipped and counted; a
verdict is inconclusive when fewer than 100 admissible configurations remain.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .angles import AngleScheme, estimate_upper_angle
from .comparison import (
    SidePoint,
    comparison_tau,
    make_comparison_triangle,
)
from .errors import EmptyGrid, GeometryError, NoSamplerCapability
from .kernel import (
    CurvatureParam,
    HingeShape,
    Orientation,
    SignedAngle,
    TriangleShape,
    angle_from_sides,
    side_from_hinge,
)
from .report import CheckReport, Violation
from .spaces import FUTURE, SpaceHandle, TimelikeCurve

TAU_TOL = 1e-9
ANGLE_TOL = 1e-4

BELOW = "below"
ABOVE = "above"


@dataclass(frozen=True)
class SamplerConfig:
    samples: int = 300
    seed: int = 0
    pairs_per_triangle: int = 4
    grid: int = 5
    min_admissible: int = 100
    jobs: int = 1
    collect: bool = False  # keep one trace row per comparison (CSV export)
    scheme: AngleScheme = field(default_factory=lambda: AngleScheme(j_max=12))


def _require_sampler(space: SpaceHandle, what: str):
    if not space.has_geodesics:
        raise NoSamplerCapability(f"{space.name} cannot run the {what} checker")


def _map_ordered(fn, items, jobs: int):
    """Apply fn preserving order; results are merged by index, so the output
    does not depend on the degree of parallelism."""
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _sides_of(space, p1, p2, p3):
    a12 = space.tau(p1, p2)
    a23 = space.tau(p2, p3)
    a13 = space.tau(p1, p3)
    return a12, a23, a13


def _size_ok(k: CurvatureParam, *lengths) -> bool:
    return k.k >= 0 or max(lengths) < k.diameter - 1e-9


def check_triangle_comparison(space: SpaceHandle, k: float, bound: str,
                              config: SamplerConfig | None = None) -> CheckReport:
    """Sample timelike triangles and compare side-point separations with the
    model plane; ``below`` demands tau <= model value, ``above`` the reverse.

    The induced causal implication is audited alongside: below a lower bound,
    chronologically related side points must stay chronologically related in
    the model.
    """
    config = config or SamplerConfig()
    _require_sampler(space, "triangle-comparison")
    kp = CurvatureParam(k)
    triangles = space.sample_triangles(config.samples, config.seed)

    def evaluate(args):
        idx, (p1, p2, p3) = args
        rng = random.Random(f"{space.name}:{config.seed}:offsets:{idx}")
        violations = []
        rows = []
        a12, a23, a13 = _sides_of(space, p1, p2, p3)
        if not all(map(math.isfinite, (a12, a23, a13))) or not _size_ok(kp, a13):
            return 0, 1, violations, rows
        try:
            tri = make_comparison_triangle(kp, a12, a23, a13)
            sides = {
                "12": space.geodesic(p1, p2),
                "23": space.geodesic(p2, p3),
                "13": space.geodesic(p1, p3),
            }
        except GeometryError:
            return 0, 1, violations, rows
        lengths = {"12": a12, "23": a23, "13": a13}
        for _ in range(config.pairs_per_triangle):
            s1, s2 = rng.choice(
                [("12", "23"), ("12", "13"), ("23", "13"), ("12", "12"),
                 ("23", "23"), ("13", "13")])
            o1 = _sample_offset(rng, lengths[s1])
            o2 = _sample_offset(rng, lengths[s2])
            x1 = sides[s1].at(min(o1, sides[s1].length))
            x2 = sides[s2].at(min(o2, sides[s2].length))
            try:
                sep = comparison_tau(tri, SidePoint(s1, min(o1, lengths[s1])),
                                     SidePoint(s2, min(o2, lengths[s2])))
            except GeometryError:
                continue
            model_fwd = sep.value if sep.orientation is Orientation.FIRST_BEFORE_SECOND else 0.0
            model_bwd = sep.value if sep.orientation is Orientation.SECOND_BEFORE_FIRST else 0.0
            for lhs, rhs, tag in ((space.tau(x1, x2), model_fwd, "fwd"),
                                  (space.tau(x2, x1), model_bwd, "bwd")):
                if math.isinf(lhs):
                    continue
                witness = _witness(space, "separation", (p1, p2, p3),
                                   (a12, a23, a13), s1, o1, s2, o2, tag)
                if config.collect:
                    rows.append((witness, lhs, rhs, lhs - rhs))
                bad = (lhs > rhs + TAU_TOL) if bound == BELOW else (rhs > lhs + TAU_TOL)
                if bad:
                    violations.append(Violation(witness=witness, lhs=lhs, rhs=rhs,
                                                gap=abs(lhs - rhs)))
                # causal implication: chronology must transfer to the model
                breach = ((bound == BELOW and lhs > TAU_TOL and rhs <= TAU_TOL)
                          or (bound == ABOVE and rhs > TAU_TOL and lhs <= TAU_TOL))
                if breach:
                    w = dict(witness)
                    w["kind"] = "causal-implication"
                    violations.append(Violation(witness=w, lhs=lhs, rhs=rhs,
                                                gap=abs(lhs - rhs)))
        return 1, 0, violations, rows

    results = _map_ordered(evaluate, list(enumerate(triangles)), config.jobs)
    admissible = sum(r[0] for r in results)
    skipped = sum(r[1] for r in results)
    violations = [v for r in results for v in r[2]]
    report = CheckReport.conclude(
        space=space.name, k=k, bound=bound, variant="triangle",
        samples=len(triangles), admissible=admissible, seed=config.seed,
        tolerance=TAU_TOL, violations=violations,
        notes={"skipped": skipped}, min_admissible=config.min_admissible)
    report.sample_rows = [row for r in results for row in r[3]]
    return report


def _sample_offset(rng, length: float) -> float:
    u = rng.random()
    if u < 0.15:
        return 0.0
    if u > 0.85:
        return length
    return rng.random() * length


def _witness(space, kind, points, sides, s1, o1, s2, o2, direction):
    return {
        "kind": kind,
        "points": [space.point_json(p) for p in points],
        "sides": list(sides),
        "q1": {"side": s1, "offset": o1},
        "q2": {"side": s2, "offset": o2},
        "direction": direction,
    }


# ---------------------------------------------------------------------------
# Monotonicity comparison.
# ---------------------------------------------------------------------------


def _pair_theta(space, kp, x, alpha, beta, s, t, sigma):
    """Signed comparison angle of the hinge points (alpha(s), beta(t)), or
    None when the pair is not admissible."""
    pa, pb = alpha.at(s), beta.at(t)
    if not (space.le(pa, pb) or space.le(pb, pa)):
        return None
    a = max(space.tau(x, pa), space.tau(pa, x))
    b = max(space.tau(x, pb), space.tau(pb, x))
    c = max(space.tau(pa, pb), space.tau(pb, pa))
    if a <= 0 or b <= 0 or not all(map(math.isfinite, (a, b, c))):
        return None
    if not _size_ok(kp, a, b, c):
        return None
    try:
        return sigma * angle_from_sides(kp, TriangleShape(a, b, c), sigma).omega
    except GeometryError:
        return None


def _monotone_breaches(values: list[list], rows, cols, direction: int):
    """Indices of consecutive defined grid cells where the required
    monotonicity fails; direction +1 demands nondecreasing."""
    bad = []
    for i in range(rows):
        prev = None
        for j in range(cols):
            v = values[i][j]
            if v is None:
                continue
            if prev is not None and direction * (v - prev[0]) < -TAU_TOL:
                bad.append((("row", i), prev[1], j, prev[0], v))
            prev = (v, j)
    for j in range(cols):
        prev = None
        for i in range(rows):
            v = values[i][j]
            if v is None:
                continue
            if prev is not None and direction * (v - prev[0]) < -TAU_TOL:
                bad.append((("col", j), prev[1], i, prev[0], v))
            prev = (v, i)
    return bad


def check_monotonicity(space: SpaceHandle, k: float, bound: str,
                       variant: str = "general",
                       config: SamplerConfig | None = None) -> CheckReport:
    """Monotonicity of the signed comparison angle along realizer pairs.

    ``general`` evaluates theta(s, t) on a monotone grid over sampled
    realizer pairs of both orientation mixes and demands it nondecreasing
    (below) or nonincreasing (above) in each variable.  ``future`` and
    ``past`` restrict to the corner comparison of sampled triangles: interior
    side points against the far vertices at the past (future) endpoint.
    """
    config = config or SamplerConfig()
    _require_sampler(space, "monotonicity")
    kp = CurvatureParam(k)
    direction = +1 if bound == BELOW else -1
    skipped = 0
    admissible = 0
    violations = []
    produced_any = False
    if variant == "general":
        half = config.samples // 2
        sampled = space.sample_realizer_pairs(half, config.seed, orientation=FUTURE)
        try:
            sampled += space.sample_realizer_pairs(config.samples - half,
                                                   config.seed, orientation="mixed")
        except GeometryError:
            pass  # spaces without past sampling still audit the future part
        for x, alpha, beta in sampled:
            sigma = -1 if alpha.orientation == beta.orientation else +1
            g = config.grid
            svals = [alpha.length * (i + 1) / g for i in range(g)]
            tvals = [beta.length * (j + 1) / g for j in range(g)]
            theta = [[_pair_theta(space, kp, x, alpha, beta, s, t, sigma)
                      for t in tvals] for s in svals]
            defined = sum(v is not None for row in theta for v in row)
            if defined == 0:
                skipped += 1
                continue
            produced_any = True
            admissible += 1
            for axis, i0, i1, v0, v1 in _monotone_breaches(theta, g, g, direction):
                violations.append(Violation(
                    witness={"kind": "theta-monotonicity", "axis": list(axis),
                             "from": i0, "to": i1,
                             "x": space.point_json(x), "sigma": sigma},
                    lhs=v0, rhs=v1, gap=abs(v1 - v0)))
    elif variant in ("future", "past"):
        for (p1, p2, p3) in space.sample_triangles(config.samples, config.seed):
            a12, a23, a13 = _sides_of(space, p1, p2, p3)
            if not all(map(math.isfinite, (a12, a23, a13))) or not _size_ok(kp, a13):
                skipped += 1
                continue
            if variant == "future":
                x, legs = p1, (space.geodesic(p1, p2), space.geodesic(p1, p3))
            else:
                x, legs = p3, (space.geodesic(p1, p3), space.geodesic(p2, p3))
            corner = _corner_angle(space, kp, x, p2 if variant == "future" else p1,
                                   p3 if variant == "future" else p2)
            if corner is None:
                skipped += 1
                continue
            produced_any = True
            admissible += 1
            g = config.grid
            for i in range(1, g + 1):
                for j in range(1, g + 1):
                    if variant == "future":
                        y = legs[0].at(a12 * i / g)
                        z = legs[1].at(a13 * j / g)
                    else:
                        y = legs[0].at(a13 * (1 - i / (g + 1)))
                        z = legs[1].at(a23 * (1 - j / (g + 1)))
                    inner = _corner_angle(space, kp, x, y, z)
                    if inner is None:
                        continue
                    bad = (inner < corner - ANGLE_TOL) if bound == BELOW else \
                        (inner > corner + ANGLE_TOL)
                    if bad:
                        violations.append(Violation(
                            witness={"kind": f"{variant}-monotonicity",
                                     "x": space.point_json(x),
                                     "inner": [i, j]},
                            lhs=inner, rhs=corner, gap=abs(inner - corner)))
    else:
        raise GeometryError(f"unknown monotonicity variant {variant!r}")
    if not produced_any:
        raise EmptyGrid("no admissible grid cells in any sampled configuration")
    tol = TAU_TOL if variant == "general" else ANGLE_TOL
    notes = {"skipped": skipped, "variant": variant}
    if not space.strictly_timelike_geodesic:
        notes["assumption"] = ("strict timelike geodesic connectedness of the "
                               "sampling neighborhood is assumed, not certified")
    return CheckReport.conclude(
        space=space.name, k=k, bound=bound, variant=f"monotonicity-{variant}",
        samples=config.samples, admissible=admissible, seed=config.seed,
        tolerance=tol, violations=violations, notes=notes,
        min_admissible=config.min_admissible)


def _corner_angle(space, kp, x, y, z):
    """Unsigned comparison angle at x, or None when inadmissible."""
    a = max(space.tau(x, y), space.tau(y, x))
    b = max(space.tau(x, z), space.tau(z, x))
    c = max(space.tau(y, z), space.tau(z, y))
    if a <= 0 or b <= 0 or not all(map(math.isfinite, (a, b, c))):
        return None
    if c <= 0 and not (space.le(y, z) or space.le(z, y)):
        return None
    if not _size_ok(kp, a, b, c):
        return None
    sigma = -1  # both legs share their orientation as seen from x here
    try:
        return angle_from_sides(kp, TriangleShape(a, b, c), sigma).omega
    except GeometryError:
        return None


# ---------------------------------------------------------------------------
# Hinge comparison.
# ---------------------------------------------------------------------------


def hinge_check(space: SpaceHandle, k: float, bound: str,
                config: SamplerConfig | None = None) -> CheckReport:
    """Compare hinge endpoints against the model hinge with the estimated angle.

    Below a lower bound the actual separation dominates the model value;
    above, it is dominated.  Hinges whose angle estimate does not converge are
    skipped and counted.
    """
    config = config or SamplerConfig()
    _require_sampler(space, "hinge")
    kp = CurvatureParam(k)
    skipped = 0
    admissible = 0
    violations = []
    half = config.samples // 2
    pairs = space.sample_realizer_pairs(half, config.seed, orientation=FUTURE)
    try:
        pairs += space.sample_realizer_pairs(config.samples - half, config.seed,
                                             orientation="mixed")
    except GeometryError:
        pass
    for x, alpha, beta in pairs:
        ea, eb = alpha.at(alpha.length), beta.at(beta.length)
        A = max(space.tau(x, ea), space.tau(ea, x))
        B = max(space.tau(x, eb), space.tau(eb, x))
        if A <= 0 or B <= 0 or not _size_ok(kp, A, B, A + B):
            skipped += 1
            continue
        est = estimate_upper_angle(space, alpha, beta, config.scheme)
        if not est.converged or math.isinf(est.value):
            skipped += 1
            continue
        sigma = est.sigma
        try:
            solved = side_from_hinge(kp, HingeShape(A, B, SignedAngle(est.value, sigma)))
        except GeometryError:
            skipped += 1
            continue
        admissible += 1
        actual = max(space.tau(ea, eb), space.tau(eb, ea))
        model = solved.tau
        bad = (actual < model - ANGLE_TOL) if bound == BELOW else \
            (actual > model + ANGLE_TOL)
        if bad:
            violations.append(Violation(
                witness={"kind": "hinge", "x": space.point_json(x),
                         "legs": [A, B], "angle": est.value, "sigma": sigma},
                lhs=actual, rhs=model, gap=abs(actual - model)))
    return CheckReport.conclude(
        space=space.name, k=k, bound=bound, variant="hinge",
        samples=len(pairs), admissible=admissible, seed=config.seed,
        tolerance=ANGLE_TOL, violations=violations,
        notes={"skipped": skipped}, min_admissible=config.min_admissible)


# ---------------------------------------------------------------------------
# Equivalence audit and branching detection.
# ---------------------------------------------------------------------------


@dataclass
class EquivalenceCell:
    k: float
    bound: str
    triangle: CheckReport
    monotonicity: CheckReport

    @property
    def agree(self) -> bool:
        return self.triangle.verdict == self.monotonicity.verdict

    def to_json(self) -> dict:
        doc = {
            "k": self.k,
            "bound": self.bound,
            "triangle": self.triangle.verdict,
            "monotonicity": self.monotonicity.verdict,
            "agree": self.agree,
        }
        if not self.agree:
            src = self.triangle if self.triangle.violations else self.monotonicity
            if src.violations:
                doc["witness"] = min(src.violations, key=lambda v: v.gap).to_json()
        return doc


def equivalence_audit(space: SpaceHandle, k_list, bounds=(BELOW, ABOVE),
                      config: SamplerConfig | None = None) -> list[EquivalenceCell]:
    """Run both checkers on identical seeds; their verdicts must agree."""
    config = config or SamplerConfig()
    cells = []
    for k in k_list:
        for bound in bounds:
            cells.append(EquivalenceCell(
                k=k, bound=bound,
                triangle=check_triangle_comparison(space, k, bound, config),
                monotonicity=check_monotonicity(space, k, bound, "general", config)))
    return cells


@dataclass(frozen=True)
class FanConfig:
    count: int = 6
    spread: float = 0.25
    halflen: float = 0.4
    seed: int = 0


@dataclass
class BranchFlag:
    pair: tuple[int, int]
    split_param: float
    separation_angle: float


@dataclass
class BranchReport:
    space: str
    curves: int
    flags: list[BranchFlag]
    seed: int

    @property
    def branching(self) -> bool:
        return bool(self.flags)

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "curves": self.curves,
            "seed": self.seed,
            "branching": self.branching,
            "flags": [{"pair": list(f.pair), "split_param": f.split_param,
                       "separation_angle": f.separation_angle} for f in self.flags],
        }


def branching_detect(space: SpaceHandle, x, fan: FanConfig | None = None) -> BranchReport:
    """Flag realizer pairs through x that coincide on an initial segment of
    positive length and then separate.

    A space that passed below-bound checks must produce zero flags; the
    cross-reference lives in the acceptance audit.
    """
    fan = fan or FanConfig()
    spreads = [fan.spread * i / max(fan.count - 1, 1) for i in range(fan.count)]
    curves = space.fan_through(x, spreads, fan.halflen)
    grid_n = 48
    flags = []
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            a, b = curves[i], curves[j]
            L = min(a.length, b.length)
            params = [L * g / grid_n for g in range(grid_n + 1)]
            dists = [space.dist(a.at(t), b.at(t)) for t in params]
            split = None
            for g, d in enumerate(dists):
                if d < 1e-9:
                    split = g
                else:
                    break
            if split is None or split == 0:
                continue  # no shared initial segment
            if not any(d > 1e-6 for d in dists[split:]):
                continue  # never separates
            t0 = params[split]
            tail_a = TimelikeCurve(lambda u, c=a, t0=t0: c.at(t0 + u), L - t0,
                                   a.orientation)
            tail_b = TimelikeCurve(lambda u, c=b, t0=t0: c.at(t0 + u), L - t0,
                                   b.orientation)
            try:
                angle = estimate_upper_angle(space, tail_a, tail_b,
                                             AngleScheme(s0=(L - t0) / 4, j_max=10)).value
            except GeometryError:
                angle = math.nan
            flags.append(BranchFlag(pair=(i, j), split_param=t0,
                                    separation_angle=angle))
    return BranchReport(space=space.name, curves=len(curves), flags=flags,
                        seed=fan.seed)
