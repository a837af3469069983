"""Command-line front end: formula evaluation, space construction, audits.

Exit codes: 0 pass, 1 fail verdict (or branch found), 2 usage/IO error,
3 inconclusive.  Identical (argv, seed) produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import cone as cone_mod
from .angles import (
    AngleScheme,
    direction_space,
    estimate_upper_angle,
    k_independence_report,
)
from .curvature import (
    FanConfig,
    SamplerConfig,
    branching_detect,
    check_monotonicity,
    check_triangle_comparison,
    equivalence_audit,
    hinge_check,
)
from .errors import GeometryError, ParseError
from .kernel import (
    CurvatureParam,
    HingeShape,
    SignedAngle,
    TriangleShape,
    angle_from_sides,
    extended_loc_margin,
    one_sided_x,
    side_from_hinge,
)
from .report import CheckReport, Violation, dumps_report
from .spaces import (
    TableSpace,
    load_finite_space,
    make_builtin,
    save_finite_space,
    table_from_samples,
    validate_finite_space,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_VERDICT_EXIT = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}


def _write_report(args, doc) -> None:
    if getattr(args, "report", None):
        Path(args.report).write_text(dumps_report(doc))


def _write_csv(args, report: CheckReport) -> None:
    if not getattr(args, "csv", None):
        return
    with open(args.csv, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["index", "kind", "lhs", "rhs", "gap", "witness"])
        for i, (witness, lhs, rhs, gap) in enumerate(report.sample_rows):
            w.writerow([i, witness.get("kind", ""), repr(lhs), repr(rhs), repr(gap),
                        json.dumps(witness, sort_keys=True)])


def _space_from_args(args):
    name = args.space
    if name.endswith(".json") or Path(name).exists():
        return TableSpace(load_finite_space(Path(name).read_bytes()))
    params = {}
    for key in ("dim", "radius", "depth", "height", "base", "span",
                "circumference", "t_lo", "t_hi"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    if getattr(args, "base_path", None):
        params["path"] = args.base_path
    return make_builtin(name, **params)


def _scheme_from_args(args) -> AngleScheme:
    kw = {}
    if getattr(args, "s0", None) is not None:
        kw["s0"] = args.s0
    for flag, field in (("rho", "rho"), ("j_max", "j_max"), ("shells", "m"),
                        ("tol", "tol")):
        v = getattr(args, flag, None)
        if v is not None:
            kw[field] = v
    return AngleScheme(**kw)


def _sampler_from_args(args) -> SamplerConfig:
    kw = {"seed": args.seed, "samples": args.samples}
    for flag, field in (("pairs", "pairs_per_triangle"), ("grid", "grid"),
                        ("min_admissible", "min_admissible"), ("jobs", "jobs")):
        v = getattr(args, flag, None)
        if v is not None:
            kw[field] = v
    if getattr(args, "csv", None):
        kw["collect"] = True
    return SamplerConfig(**kw)


def _base_from_args(args) -> cone_mod.MetricBase:
    if args.base == "line":
        return cone_mod.LineBase(args.span if args.span is not None else 1.0)
    if args.base == "circle":
        return cone_mod.CircleBase(
            args.circumference if args.circumference is not None else 2.0)
    if args.base == "finite":
        if not args.base_path:
            raise GeometryError("finite base needs --base-path")
        return cone_mod.load_metric_base(Path(args.base_path).read_bytes())
    raise GeometryError(f"unknown base {args.base!r}")


# ---------------------------------------------------------------------------
# Command handlers.
# ---------------------------------------------------------------------------


def _cmd_loc_solve(args) -> int:
    ang = angle_from_sides(CurvatureParam(args.k),
                           TriangleShape(args.a, args.b, args.c), args.sigma)
    print(f"omega = {ang.omega!r} (sigma {ang.sigma:+d})")
    _write_report(args, {"omega": ang.omega, "sigma": ang.sigma})
    return EXIT_PASS


def _cmd_loc_hinge(args) -> int:
    solved = side_from_hinge(CurvatureParam(args.k),
                             HingeShape(args.a, args.b,
                                        SignedAngle(args.omega, args.sigma)))
    print(f"side = {solved.tau!r} causal = {solved.causal}"
          + (f" margin = {solved.margin!r}" if solved.margin is not None else ""))
    _write_report(args, {"side": solved.tau, "causal": solved.causal,
                         "margin": solved.margin})
    return EXIT_PASS


def _cmd_loc_one_sided(args) -> int:
    r = one_sided_x(CurvatureParam(args.k), args.case, args.a, args.b, args.c, args.d)
    print(f"x = {r.value!r} orientation = {r.orientation.value} causal = {r.causal}")
    _write_report(args, {"x": r.value, "orientation": r.orientation.value,
                         "causal": r.causal})
    return EXIT_PASS


def _cmd_loc_extended(args) -> int:
    m = extended_loc_margin(CurvatureParam(args.k), args.a, args.b, args.omega)
    print(f"margin = {m!r}")
    _write_report(args, {"margin": m})
    return EXIT_PASS


def _cmd_angle_estimate(args) -> int:
    space = _space_from_args(args)
    scheme = _scheme_from_args(args)
    alpha = space.named_curve(args.curve_a, length=args.length)
    beta = space.named_curve(args.curve_b, length=args.length)
    est = estimate_upper_angle(space, alpha, beta, scheme)
    print(f"angle = {est.value!r} sigma = {est.sigma:+d} converged = {est.converged}"
          f" spread = {est.spread!r}")
    _write_report(args, {"space": space.name, "angle": est.value, "sigma": est.sigma,
                         "converged": est.converged, "spread": est.spread})
    return EXIT_PASS if est.converged else EXIT_INCONCLUSIVE


def _cmd_angle_kscan(args) -> int:
    space = _space_from_args(args)
    scheme = _scheme_from_args(args)
    alpha = space.named_curve(args.curve_a, length=args.length)
    beta = space.named_curve(args.curve_b, length=args.length)
    ks = [float(v) for v in args.k.split(",")]
    rep = k_independence_report(space, alpha, beta, ks, scheme)
    doc = {"space": space.name, "estimates": {}, "deviations": {}}
    ok = True
    for k in ks:
        est = rep.estimates[k]
        ok = ok and est.converged
        print(f"k={k:g}: angle = {est.value!r} converged = {est.converged} "
              f"deviation = {rep.deviations[k]!r}")
        doc["estimates"][f"{k:g}"] = {"angle": est.value, "converged": est.converged}
        doc["deviations"][f"{k:g}"] = rep.deviations[k]
    _write_report(args, doc)
    return EXIT_PASS if ok else EXIT_INCONCLUSIVE


def _cmd_angle_directions(args) -> int:
    space = _space_from_args(args)
    scheme = _scheme_from_args(args)
    curves = [space.named_curve(spec.strip(), length=args.length)
              for spec in args.curves.split(",")]
    ds = direction_space(space, space.base_point(), curves,
                         tol_zero=args.tol_zero, scheme=scheme)
    print(f"{len(ds.classes)} direction classes over {len(curves)} curves")
    for row in ds.angle_matrix:
        print("  " + " ".join(f"{v:.6f}" for v in row))
    doc = {"space": space.name, "classes": ds.classes,
           "matrix": ds.angle_matrix,
           "axiom_violations": [v.to_json() for v in ds.axiom_violations]}
    _write_report(args, doc)
    return EXIT_FAIL if ds.axiom_violations else EXIT_PASS


def _cmd_cone_value(args) -> int:
    base = _base_from_args(args)
    p = cone_mod.ConePoint(args.s, base.parse_point(str(args.y)))
    q = cone_mod.ConePoint(args.t, base.parse_point(str(args.y2)))
    if args.what == "tau":
        v = cone_mod.cone_tau(p, q, base)
    else:
        v = cone_mod.cone_d(p, q, base)
    print(f"{args.what} = {v!r}")
    _write_report(args, {args.what: v, "base": base.name})
    return EXIT_PASS


def _cmd_cone_audit(args) -> int:
    base = _base_from_args(args)
    report = cone_audit(base, samples=args.samples, seed=args.seed)
    print(f"cone audit on {base.name}: {report.verdict} "
          f"({len(report.violations)} violations / {report.admissible} admissible)")
    _write_report(args, report.to_json())
    _write_csv(args, report)
    return _VERDICT_EXIT[report.verdict]


def _cmd_check_curvature(args) -> int:
    space = _space_from_args(args)
    report = check_triangle_comparison(space, args.k, args.bound,
                                       _sampler_from_args(args))
    _summarize(report)
    _write_report(args, report.to_json())
    _write_csv(args, report)
    return _VERDICT_EXIT[report.verdict]


def _cmd_check_monotonicity(args) -> int:
    space = _space_from_args(args)
    report = check_monotonicity(space, args.k, args.bound, args.variant,
                                _sampler_from_args(args))
    _summarize(report)
    _write_report(args, report.to_json())
    _write_csv(args, report)
    return _VERDICT_EXIT[report.verdict]


def _cmd_check_hinge(args) -> int:
    space = _space_from_args(args)
    report = hinge_check(space, args.k, args.bound, _sampler_from_args(args))
    _summarize(report)
    _write_report(args, report.to_json())
    _write_csv(args, report)
    return _VERDICT_EXIT[report.verdict]


def _cmd_check_equivalence(args) -> int:
    space = _space_from_args(args)
    ks = [float(v) for v in args.k.split(",")]
    bounds = [b.strip() for b in args.bounds.split(",")]
    cells = equivalence_audit(space, ks, bounds, _sampler_from_args(args))
    all_agree = True
    inconclusive = False
    for c in cells:
        print(f"k={c.k:g} {c.bound}: triangle={c.triangle.verdict} "
              f"monotonicity={c.monotonicity.verdict} agree={c.agree}")
        all_agree = all_agree and c.agree
        inconclusive = inconclusive or "inconclusive" in (
            c.triangle.verdict, c.monotonicity.verdict)
    _write_report(args, {"space": space.name,
                         "cells": [c.to_json() for c in cells]})
    if not all_agree:
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE if inconclusive else EXIT_PASS


def _cmd_check_branching(args) -> int:
    space = _space_from_args(args)
    x = space.base_point()
    fan = FanConfig(count=args.count, spread=args.spread, halflen=args.halflen,
                    seed=args.seed)
    report = branching_detect(space, x, fan)
    if report.branching:
        worst = max(f.separation_angle for f in report.flags)
        print(f"branching found: {len(report.flags)} pairs, "
              f"max separation angle {worst!r}")
    else:
        print("no branching found")
    _write_report(args, report.to_json())
    return EXIT_FAIL if report.branching else EXIT_PASS


def _cmd_check_axioms(args) -> int:
    if args.infile:
        table = load_finite_space(Path(args.infile).read_bytes())
    else:
        space = _space_from_args(args)
        table = table_from_samples(space, args.points, args.seed)
    report = validate_finite_space(table)
    _summarize(report)
    _write_report(args, report.to_json())
    return _VERDICT_EXIT[report.verdict]


def _cmd_space_validate(args) -> int:
    table = load_finite_space(Path(args.infile).read_bytes())
    report = validate_finite_space(table)
    _summarize(report)
    _write_report(args, report.to_json())
    return _VERDICT_EXIT[report.verdict]


def _cmd_space_convert(args) -> int:
    table = load_finite_space(Path(args.infile).read_bytes())
    Path(args.outfile).write_bytes(save_finite_space(table))
    print(f"wrote {args.outfile}")
    return EXIT_PASS


def _summarize(report: CheckReport) -> None:
    print(f"{report.variant} on {report.space} (k={report.k:g}, {report.bound}): "
          f"{report.verdict} with {len(report.violations)} violations over "
          f"{report.admissible}/{report.samples} admissible samples")


def cone_audit(base: cone_mod.MetricBase, samples: int = 1000,
               seed: int = 0) -> CheckReport:
    """Property bundle for one cone: causality structure, reverse triangle,
    ray additivity, utility bounds, and (line base) the flat-embedding oracle."""
    import random

    from .flat import embed_cone_over_line, tau_flat

    rng = random.Random(f"cone-audit:{base.name}:{seed}")
    violations = []
    flat = isinstance(base, cone_mod.LineBase)
    admissible = 0
    for i in range(samples):
        p = cone_mod.ConePoint(rng.uniform(0.05, 2.0), base.sample(rng))
        q = cone_mod.ConePoint(rng.uniform(0.05, 2.0), base.sample(rng))
        r = cone_mod.ConePoint(rng.uniform(0.05, 2.0), base.sample(rng))
        admissible += 1
        tau_pq = cone_mod.cone_tau(p, q, base)
        wit = {"p": [p.t, p.y], "q": [q.t, q.y], "r": [r.t, r.y]}
        if tau_pq > 0 and not cone_mod.cone_le(p, q, base):
            violations.append(Violation(dict(wit, kind="chron-not-causal"),
                                        tau_pq, 0.0, tau_pq))
        if cone_mod.cone_le(p, q, base) and cone_mod.cone_le(q, r, base):
            lhs = cone_mod.cone_tau(p, r, base)
            rhs = tau_pq + cone_mod.cone_tau(q, r, base)
            if lhs < rhs - 1e-10:
                violations.append(Violation(dict(wit, kind="reverse-triangle"),
                                            lhs, rhs, rhs - lhs))
        if cone_mod.cone_le(p, q, base):
            b1, b2 = cone_mod.cone_utility_bounds(p, q, base)
            d = base.dist(p.y, q.y)
            if d > b1 + 1e-9:
                violations.append(Violation(dict(wit, kind="log-ratio-bound"),
                                            d, b1, d - b1))
            dc = cone_mod.cone_d(p, q, base)
            if dc > b2 + 1e-9:
                violations.append(Violation(dict(wit, kind="arc-bound"),
                                            dc, b2, dc - b2))
        if flat:
            want = tau_flat(embed_cone_over_line(p.t, p.y),
                            embed_cone_over_line(q.t, q.y))
            if abs(tau_pq - want) > 1e-12:
                violations.append(Violation(dict(wit, kind="embedding-oracle"),
                                            tau_pq, want, abs(tau_pq - want)))
        ray_t = cone_mod.cone_tau(cone_mod.ConePoint(p.t, p.y),
                                  cone_mod.ConePoint(p.t + 0.5, p.y), base)
        if abs(ray_t - 0.5) > 1e-12:
            violations.append(Violation(dict(wit, kind="ray-additivity"),
                                        ray_t, 0.5, abs(ray_t - 0.5)))
        y2 = base.sample(rng)
        angle = cone_mod.vertex_direction_angle(p.y, y2, base)
        if abs(angle - base.dist(p.y, y2)) > 1e-6:
            violations.append(Violation(dict(wit, kind="vertex-direction"),
                                        angle, base.dist(p.y, y2),
                                        abs(angle - base.dist(p.y, y2))))
    return CheckReport.conclude(
        space=f"cone_over({base.name})", k=0.0, bound="none", variant="cone-audit",
        samples=samples, admissible=admissible, seed=seed, tolerance=1e-9,
        violations=violations)


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _add_space_flags(p: argparse.ArgumentParser):
    p.add_argument("--space", required=True,
                   help="built-in name or path to a finite-space JSON table")
    p.add_argument("--dim", type=int)
    p.add_argument("--radius", type=float)
    p.add_argument("--depth", type=float)
    p.add_argument("--height", type=float)
    p.add_argument("--base", help="cone base: line, circle, or finite")
    p.add_argument("--span", type=float)
    p.add_argument("--circumference", type=float)
    p.add_argument("--base-path", dest="base_path")
    p.add_argument("--t-lo", dest="t_lo", type=float)
    p.add_argument("--t-hi", dest="t_hi", type=float)


def _add_scheme_flags(p: argparse.ArgumentParser):
    p.add_argument("--s0", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--j-max", dest="j_max", type=int)
    p.add_argument("--shells", type=int, help="number of final shells (m)")
    p.add_argument("--tol", type=float)
    p.add_argument("--length", type=float, help="probe curve length")


def _add_output_flags(p: argparse.ArgumentParser, csv_too=False):
    p.add_argument("--report", help="write a JSON report to this path")
    if csv_too:
        p.add_argument("--csv", help="write per-sample CSV rows to this path")
    p.add_argument("--config", help="JSON file overriding flags")


def _add_sampler_flags(p: argparse.ArgumentParser):
    p.add_argument("--samples", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--min-admissible", dest="min_admissible", type=int)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lorcomp",
        description="Numerical synthetic Lorentzian comparison geometry")
    groups = ap.add_subparsers(dest="group", required=True)

    loc = groups.add_parser("loc", help="model-plane trigonometry").add_subparsers(
        dest="command", required=True)
    p = loc.add_parser("solve", help="angle from two legs and the opposite side")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--sigma", type=int, required=True, choices=(-1, 1))
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_loc_solve)
    p = loc.add_parser("hinge", help="side opposite a hinge angle")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--sigma", type=int, required=True, choices=(-1, 1))
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_loc_hinge)
    p = loc.add_parser("one-sided", help="off-vertex side point distances")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--case", type=int, required=True, choices=(1, 2, 3))
    for name in "abcd":
        p.add_argument(f"--{name}", type=float, required=True)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_loc_one_sided)
    p = loc.add_parser("extended", help="spacelike margin of a hinge")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_loc_extended)

    ang = groups.add_parser("angle", help="angles between curves").add_subparsers(
        dest="command", required=True)
    p = ang.add_parser("estimate", help="upper angle between two named curves")
    _add_space_flags(p)
    p.add_argument("--curve-a", dest="curve_a", required=True)
    p.add_argument("--curve-b", dest="curve_b", required=True)
    _add_scheme_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_angle_estimate)
    p = ang.add_parser("kscan", help="per-curvature angle estimates")
    _add_space_flags(p)
    p.add_argument("--curve-a", dest="curve_a", required=True)
    p.add_argument("--curve-b", dest="curve_b", required=True)
    p.add_argument("--k", required=True, help="comma-separated curvatures")
    _add_scheme_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_angle_kscan)
    p = ang.add_parser("directions", help="direction space of named curves")
    _add_space_flags(p)
    p.add_argument("--curves", required=True, help="comma-separated curve specs")
    p.add_argument("--tol-zero", dest="tol_zero", type=float, default=1e-3)
    _add_scheme_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_angle_directions)

    cne = groups.add_parser("cone", help="Minkowski cones").add_subparsers(
        dest="command", required=True)
    for what in ("tau", "d"):
        p = cne.add_parser(what, help=f"cone {what} between two points")
        p.add_argument("--base", default="line")
        p.add_argument("--span", type=float)
        p.add_argument("--circumference", type=float)
        p.add_argument("--base-path", dest="base_path")
        p.add_argument("--s", type=float, required=True)
        p.add_argument("--y", required=True)
        p.add_argument("--t", type=float, required=True)
        p.add_argument("--y2", required=True)
        _add_output_flags(p)
        p.set_defaults(fn=_cmd_cone_value, what=what)
    p = cne.add_parser("audit", help="cone property bundle")
    p.add_argument("--base", default="line")
    p.add_argument("--span", type=float)
    p.add_argument("--circumference", type=float)
    p.add_argument("--base-path", dest="base_path")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p, csv_too=True)
    p.set_defaults(fn=_cmd_cone_audit)

    chk = groups.add_parser("check", help="curvature and structure audits").add_subparsers(
        dest="command", required=True)
    p = chk.add_parser("curvature", help="triangle-comparison curvature checker")
    _add_space_flags(p)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--bound", required=True, choices=("below", "above"))
    _add_sampler_flags(p)
    _add_output_flags(p, csv_too=True)
    p.set_defaults(fn=_cmd_check_curvature)
    p = chk.add_parser("monotonicity", help="angle-monotonicity checker")
    _add_space_flags(p)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--bound", required=True, choices=("below", "above"))
    p.add_argument("--variant", default="general",
                   choices=("general", "future", "past"))
    _add_sampler_flags(p)
    _add_output_flags(p, csv_too=True)
    p.set_defaults(fn=_cmd_check_monotonicity)
    p = chk.add_parser("hinge", help="hinge-comparison checker")
    _add_space_flags(p)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--bound", required=True, choices=("below", "above"))
    _add_sampler_flags(p)
    _add_output_flags(p, csv_too=True)
    p.set_defaults(fn=_cmd_check_hinge)
    p = chk.add_parser("equivalence", help="triangle vs monotonicity verdicts")
    _add_space_flags(p)
    p.add_argument("--k", required=True, help="comma-separated curvatures")
    p.add_argument("--bounds", default="below,above")
    _add_sampler_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_check_equivalence)
    p = chk.add_parser("branching", help="realizer branching detector")
    _add_space_flags(p)
    p.add_argument("--count", type=int, default=6)
    p.add_argument("--spread", type=float, default=0.25)
    p.add_argument("--halflen", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_check_branching)
    p = chk.add_parser("axioms", help="pre-length axioms on sampled points")
    _add_space_flags(p)
    p.add_argument("--in", dest="infile", help="finite-space JSON instead of sampling")
    p.add_argument("--points", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_check_axioms)

    spc = groups.add_parser("space", help="finite-space documents").add_subparsers(
        dest="command", required=True)
    p = spc.add_parser("validate", help="axioms of a finite-space document")
    p.add_argument("--in", dest="infile", required=True)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_space_validate)
    p = spc.add_parser("convert", help="normalize a finite-space document")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(fn=_cmd_space_convert)

    return ap


def _apply_config(args) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict):
        raise GeometryError("config must be a JSON object")
    known = set(vars(args))
    unknown = set(doc) - known
    if unknown:
        raise GeometryError(f"unknown config keys {sorted(unknown)}")
    for key, value in doc.items():
        setattr(args, key, value)


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        _apply_config(args)
        return args.fn(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
