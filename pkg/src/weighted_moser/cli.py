"""Command-line front end: every toolkit operation as a subcommand.

Reports are JSON by default (top-level ``schema: 1``, config embedded) or a
flat CSV table with ``--format csv``.  Exit codes: 0 success, 2 precondition
or input-file violation, 3 non-convergence of an optimizer run.  Identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds, candidates, optimizer, rearrange, transforms
from .profiles import (
    FOUR_PI,
    HalfLineProfile,
    InvalidProfileError,
    PreconditionError,
    QuadratureSpec,
    RadialProfile,
    WeightExponent,
    dirichlet_norm_halfline,
    dirichlet_norm_radial,
    evaluate_profile,
    halfline_functional,
    read_profile,
)

SCHEMA = 1
EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_NOT_CONVERGED = 3


def _profile_record(p) -> dict:
    rec = {
        "grid": [float(x) for x in p.grid],
        "values": [float(v) for v in p.values],
    }
    if isinstance(p, HalfLineProfile):
        rec["tail_value"] = float(p.tail_value)
    return rec


def _render(report: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True, allow_nan=True) + "\n"
    else:
        text = _to_csv(report)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}{k}." if prefix else f"{k}.", obj[k], rows)
        return
    key = prefix[:-1]
    if isinstance(obj, list):
        rows.append((key, ";".join(str(x) for x in obj)))
    else:
        rows.append((key, str(obj)))


def _to_csv(report: dict) -> str:
    if "rows" in report and isinstance(report["rows"], list):
        rows = report["rows"]
        keys = sorted({k for row in rows for k in row})
        lines = [",".join(keys)]
        lines.extend(",".join(str(row.get(k, "")) for k in keys) for row in rows)
        return "\n".join(lines) + "\n"
    flat: list = []
    _flatten("", report, flat)
    return "key,value\n" + "\n".join(f"{k},{v}" for k, v in flat) + "\n"


def _base_report(command: str, args: argparse.Namespace) -> dict:
    cfg = {}
    for name in ("alpha", "gamma_factor", "grid", "tmax", "tol"):
        if hasattr(args, name):
            cfg[name.replace("_", "-")] = getattr(args, name)
    return {"schema": SCHEMA, "command": command, "config": cfg}


def _optimizer_config(args: argparse.Namespace) -> optimizer.OptimizerConfig:
    kwargs = {}
    if getattr(args, "grid", None) is not None:
        kwargs["grid_nodes"] = args.grid
    if getattr(args, "tmax", None) is not None:
        kwargs["t_max"] = args.tmax
    if getattr(args, "tol", None) is not None:
        kwargs["value_tol"] = args.tol
    return optimizer.OptimizerConfig(**kwargs)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_evaluate(args) -> tuple[dict, int]:
    profile = read_profile(args.profile)
    weight = WeightExponent(args.alpha)
    gamma = args.gamma_factor * FOUR_PI
    report = _base_report("evaluate", args)
    if isinstance(profile, HalfLineProfile):
        report["kind"] = "halfline"
        report["dirichlet_norm_squared"] = dirichlet_norm_halfline(profile)
        report["halfline_integral"] = halfline_functional(profile, weight)
        report["functional_value"] = math.pi * weight.epsilon * (
            report["halfline_integral"] - 1.0
        )
    else:
        report["kind"] = "radial"
        rep = evaluate_profile(profile, weight, gamma)
        report["dirichlet_norm_squared"] = rep.dirichlet
        report["functional_value"] = rep.exp_integral
    return report, EXIT_OK


def _cmd_rearrange(args) -> tuple[dict, int]:
    sample = rearrange.read_polar_sample(args.sample)
    weight = WeightExponent(args.alpha)
    star = rearrange.mu_rearrange_general(sample, weight, shells=args.shells)
    ps = rearrange.polya_szego_check(sample, weight, shells=args.shells)
    report = _base_report("rearrange", args)
    report["star_radius"] = weight.star_radius
    report["polya_szego"] = ps.to_dict()
    report["rearranged_profile"] = _profile_record(star)
    return report, EXIT_OK


def _cmd_transform(args) -> tuple[dict, int]:
    profile = read_profile(args.profile)
    if not isinstance(profile, RadialProfile):
        raise PreconditionError("transform expects a radial profile file (header 'r,u')")
    weight = WeightExponent(args.alpha)
    report = _base_report("transform", args)
    ssw = transforms.ssw_functional_identity(profile, weight)
    report["ssw_identity"] = {
        "lhs": ssw.lhs, "rhs": ssw.rhs,
        "abs_diff": ssw.abs_diff, "rel_diff": ssw.rel_diff,
    }
    v = transforms.ssw_transform(profile, weight)
    report["norm_u"] = dirichlet_norm_radial(profile)
    report["norm_v"] = dirichlet_norm_radial(v)
    if profile.values[-1] == 0.0:
        pipe = transforms.full_pipeline_identity(profile, weight)
        report["pipeline_identity"] = {
            "lhs": pipe.lhs, "rhs": pipe.rhs,
            "abs_diff": pipe.abs_diff, "rel_diff": pipe.rel_diff,
        }
    return report, EXIT_OK


def _cmd_candidate(args) -> tuple[dict, int]:
    weight = WeightExponent(args.alpha)
    value = candidates.candidate_value(weight)
    report = _base_report("candidate", args)
    report.update(value.to_dict())
    report["concentration_bound"] = bounds.concentration_upper_bound(weight)
    report["beats_bound"] = value.functional > report["concentration_bound"]
    if args.report != "pieces":
        report.pop("pieces")
    return report, EXIT_OK


def _cmd_optimize(args) -> tuple[dict, int]:
    weight = WeightExponent(args.alpha)
    gamma = args.gamma_factor * FOUR_PI
    result = optimizer.maximize_radial(weight, gamma, _optimizer_config(args))
    report = _base_report("optimize", args)
    report.update(result.to_dict())
    report["profile"] = _profile_record(result.profile)
    return report, EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def _cmd_sweep(args) -> tuple[dict, int]:
    alphas = [float(a) for a in args.alphas.split(",") if a.strip() != ""]
    if not alphas:
        raise PreconditionError("sweep requires a non-empty --alphas list")
    gamma = args.gamma_factor * FOUR_PI
    cfg = _optimizer_config(args)
    rows = []
    for a in alphas:
        row: dict = {"alpha": a}
        try:
            weight = WeightExponent(a)
            result = optimizer.maximize_radial(weight, gamma, cfg)
            identity = bounds.radial_identity_check(weight, cfg)
            row["optimizer_value"] = result.value
            row["converged"] = result.converged
            row["concentration"] = result.concentration
            row["candidate_value"] = candidates.candidate_value(weight).functional
            row["bound"] = bounds.concentration_upper_bound(weight)
            row["identity_gap"] = identity.rel_gap
        except (PreconditionError, InvalidProfileError) as exc:
            row["error"] = str(exc)
        rows.append(row)
    report = _base_report("sweep", args)
    report["rows"] = rows
    return report, EXIT_OK


def _cmd_threshold(args) -> tuple[dict, int]:
    est = bounds.alpha_star_estimate(tol=args.tol if args.tol is not None else 1e-4)
    report = _base_report("threshold", args)
    report.update(est.to_dict())
    return report, EXIT_OK


def _cmd_verify(args) -> tuple[dict, int]:
    checks = []

    def check(name: str, passed: bool, detail: str) -> None:
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    cand = candidates.carleson_chang_candidate()
    norm = dirichlet_norm_halfline(cand)
    check("candidate_unit_norm", abs(norm - 1.0) < 1e-6, f"norm^2 = {norm:.12f}")

    gauss = candidates.gauss_integral()
    check("gauss_integral_bounds", gauss > 2.906 and gauss > 2.723, f"value = {gauss:.6f}")

    tent = RadialProfile(np.linspace(0.0, 1.0, 65), np.linspace(1.0, 0.0, 65))
    pipe = transforms.full_pipeline_identity(tent, WeightExponent(0.5))
    check("pipeline_identity_tent", pipe.rel_diff < 1e-6, f"rel_diff = {pipe.rel_diff:.3e}")

    weight = WeightExponent(1.5)
    v = transforms.ssw_transform(tent, weight)
    back = transforms.ssw_inverse(v, weight)
    rt = float(np.max(np.abs(back(tent.grid) - tent.values)))
    check("ssw_round_trip", rt < 1e-12, f"max node error = {rt:.3e}")

    sample = rearrange.PolarSample.from_function(
        lambda x, y: np.maximum(1.0 - 2.0 * np.hypot(x - 0.3, y), 0.0), nr=64, ntheta=32
    )
    w1 = WeightExponent(1.0)
    lhs = rearrange.mu_integral(sample, w1, lambda t: t * t)
    star = rearrange.mu_rearrange_general(sample, w1, shells=512)
    rhs = rearrange.disk_integral(star, lambda t: t * t)
    rel = abs(lhs - rhs) / max(abs(lhs), 1e-300)
    check("rearrangement_equimeasurable", rel < 1e-3, f"rel error = {rel:.3e}")

    report = _base_report("verify", args)
    report["checks"] = checks
    report["all_passed"] = all(c["passed"] for c in checks)
    return report, EXIT_OK if report["all_passed"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, alpha: bool = True, gamma: bool = False,
                opt: bool = False) -> None:
    if alpha:
        sub.add_argument("--alpha", type=float, default=0.0, help="weight exponent alpha")
    if gamma:
        sub.add_argument("--gamma-factor", type=float, default=1.0,
                         help="gamma as a multiple of 4*pi (default 1)")
    if opt:
        sub.add_argument("--grid", type=int, default=None, help="optimizer grid nodes")
        sub.add_argument("--tmax", type=float, default=None, help="half-line truncation")
        sub.add_argument("--tol", type=float, default=None, help="value tolerance")
    sub.add_argument("--output", default=None, help="write the report to this path")
    sub.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weighted-moser",
        description="Weighted critical-exponential functional toolkit",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("evaluate", help="Dirichlet norm and functional value of a profile")
    p.add_argument("--profile", required=True, help="profile CSV (header 'r,u' or 't,w')")
    _add_common(p, gamma=True)
    p.set_defaults(func=_cmd_evaluate)

    p = subs.add_parser("rearrange", help="weighted rearrangement of a polar sample")
    p.add_argument("--sample", required=True, help="polar sample file (header 'nr,ntheta')")
    p.add_argument("--shells", type=int, default=rearrange.DEFAULT_SHELLS)
    _add_common(p)
    p.set_defaults(func=_cmd_rearrange)

    p = subs.add_parser("transform", help="substitution and pipeline identity checks")
    p.add_argument("--profile", required=True, help="radial profile CSV (header 'r,u')")
    _add_common(p)
    p.set_defaults(func=_cmd_transform)

    p = subs.add_parser("candidate", help="closed-form candidate value and bound comparison")
    p.add_argument("--report", choices=("pieces",), default=None,
                   help="'pieces' includes the piece decomposition")
    _add_common(p)
    p.set_defaults(func=_cmd_candidate)

    p = subs.add_parser("optimize", help="projected-ascent maximization of the radial problem")
    _add_common(p, gamma=True, opt=True)
    p.set_defaults(func=_cmd_optimize)

    p = subs.add_parser("sweep", help="one optimizer/candidate/bound row per alpha")
    p.add_argument("--alphas", required=True, help="comma-separated alpha grid")
    _add_common(p, alpha=False, gamma=True, opt=True)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("threshold", help="candidate-beats-bound threshold estimate")
    p.add_argument("--tol", type=float, default=1e-4)
    _add_common(p, alpha=False)
    p.set_defaults(func=_cmd_threshold)

    p = subs.add_parser("verify", help="self-check bundle of identities and properties")
    _add_common(p, alpha=False)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except (PreconditionError, InvalidProfileError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    _render(report, args.format, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
