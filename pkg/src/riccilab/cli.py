"""Command-line front end: every verification as a subcommand.

Exit codes: 0 success, 1 verification failure (a residual over tolerance),
2 usage or domain error.  stdout carries only the requested format; stderr
carries diagnostics.  Floats print with 15 significant digits.  The LAB_TOL
environment variable overrides the default tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import acceptance, catalog, radii
from .bound import ricci_upper_bound
from .errors import BracketingError, DomainError, SingularityError
from .geometry import SpaceFormParams, is_hopf, shape_state_n2
from .polyalg import verify_factorization
from .twohopf import (TwoHopfState, TwoHopfSystem, trajectory_to_csv,
                      trajectory_to_json)

_DIRECTIONS = {"xi": [1.0, 0.0, 0.0], "e2": [0.0, 1.0, 0.0], "e3": [0.0, 0.0, 1.0]}


def _default_tol() -> float:
    env = os.environ.get("LAB_TOL")
    if env is not None:
        try:
            return float(env)
        except ValueError:
            print(f"warning: ignoring malformed LAB_TOL={env!r}", file=sys.stderr)
    return 1e-9


def fnum(x: float):
    """Float rounded for output: 15 significant digits."""
    if x is None or isinstance(x, bool):
        return x
    if math.isnan(x):
        return None
    return float(f"{x:.15g}")


def _jsonify(obj):
    if isinstance(obj, float):
        return fnum(obj)
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, path: str | None):
    _emit(json.dumps(_jsonify(payload), indent=2) + "\n", path)


def _family_param(args) -> object:
    if args.family == "TanProfile2Hopf":
        return (args.s, args.d)
    if args.family == "CH2_A0_horosphere":
        return None
    if args.param is None:
        raise DomainError(f"{args.family} requires --param")
    return args.param


def _cmd_models(args) -> int:
    if args.action == "list":
        if args.format == "json":
            _emit_json({"families": list(catalog.FAMILIES)}, args.output)
        else:
            _emit("\n".join(catalog.FAMILIES) + "\n", args.output)
        return 0
    param = _family_param(args)
    spec = catalog.spectrum(args.family, param, args.c)
    state = catalog.shape_state(args.family, param, args.c)
    hopf, delta = is_hopf(state, tol=args.tol)
    payload = {
        "family": spec.family,
        "c": spec.c,
        "params": dict(spec.params),
        "curvatures": [{"name": cur.name, "value": cur.value,
                        "multiplicity": cur.multiplicity, "phi_type": cur.phi_type}
                       for cur in spec.curvatures],
        "matrix": state.a_matrix.tolist(),
        "hopf": hopf,
        "hopf_delta": delta if hopf else None,
        "hopf_residual": (catalog.hopf_residual(args.family, param, args.c)
                          if args.family in catalog.HOPF_FAMILIES else None),
    }
    if args.format == "json":
        _emit_json(payload, args.output)
    else:
        lines = [f"family: {payload['family']}  c = {args.c:.15g}  params = {payload['params']}"]
        for cur in spec.curvatures:
            lines.append(f"  {cur.name} = {cur.value:.15g}  "
                         f"(multiplicity {cur.multiplicity}, {cur.phi_type})")
        for row in state.a_matrix:
            lines.append("  [" + "  ".join(f"{v:.15g}" for v in row) + "]")
        if payload["hopf_residual"] is not None:
            lines.append(f"  hopf residual = {payload['hopf_residual']:.15g}")
        lines.append(f"  hopf: {hopf}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_check_bound(args) -> int:
    if args.matrix is not None:
        entries = np.array(args.matrix, dtype=float).reshape(3, 3)
        if np.max(np.abs(entries - entries.T)) > 1e-12:
            raise DomainError("--matrix must be symmetric (within 1e-12)")
        state = shape_state_n2(entries)
    else:
        if args.family is None:
            raise DomainError("provide either --family or --matrix")
        state = catalog.shape_state(args.family, _family_param(args), args.c)
    sf = SpaceFormParams(2, args.c)
    report = ricci_upper_bound(state, sf, _DIRECTIONS[args.direction], tol=args.tol)
    payload = {"ric": report.ric, "bound": report.bound, "gap": report.gap,
               "equality": report.equality, "mu": report.mu, "traceB": report.traceB}
    if args.format == "text":
        _emit("".join(f"{k} = {fnum(v)}\n" for k, v in payload.items()), args.output)
    else:
        _emit_json(payload, args.output)
    return 1 if report.gap < -args.tol else 0


def _cmd_solve_radius(args) -> int:
    problem = radii.RootProblem(args.equation, args.c)
    r = radii.solve(problem, tol=min(args.tol, 1e-12))
    res = radii.residual(problem, r)
    payload = {"equation": args.equation, "c": args.c, "radius": r,
               "scaled_root": math.sqrt(abs(args.c)) * r, "residual": res}
    if args.format == "text":
        _emit(f"radius = {r:.15g}  (scaled root {payload['scaled_root']:.15g}, "
              f"residual {res:.3g})\n", args.output)
    else:
        _emit_json(payload, args.output)
    return 0 if abs(res) <= args.tol else 1


def _cmd_integrate(args) -> int:
    if args.beta0 == 0.0:
        raise DomainError("beta must be nonzero (the frame equations divide by beta)")
    system = TwoHopfSystem(args.c)
    initial = TwoHopfState.constant_alpha(args.alpha, args.beta0, args.gamma0,
                                          s=args.span[0])
    traj = system.integrate(initial, (args.span[0], args.span[1]), step=args.step)
    if args.format == "json":
        _emit_json(trajectory_to_json(traj), args.output)
    else:
        _emit(trajectory_to_csv(traj), args.output)
    summary = ", ".join(f"{k}={fnum(v)}" for k, v in traj.residual_summary.items())
    print(f"stop_reason={traj.stop_reason} samples={len(traj.states)} {summary}",
          file=sys.stderr)
    finite = [v for v in traj.residual_summary.values() if not math.isnan(v)]
    return 1 if finite and max(finite) > args.res_tol else 0


def _cmd_eliminate(args) -> int:
    report = verify_factorization()
    payload = report.to_json_dict()
    shown = False
    for flag, key in (("show_f", "f"), ("show_g", "g"), ("show_p", "p")):
        if getattr(args, flag):
            _emit(payload[key] + "\n", None)
            shown = True
    if args.report:
        _emit_json(payload, args.report)
    elif not shown:
        _emit_json(payload, args.output)
    return 0 if payload["f_divides"] else 1


def _cmd_verify_all(args) -> int:
    results = acceptance.run_all()
    if args.format == "json":
        _emit_json({"criteria": [{"number": r.number, "name": r.name,
                                  "passed": r.passed, "detail": r.detail,
                                  "seconds": r.seconds} for r in results],
                    "all_passed": all(r.passed for r in results)}, args.output)
    else:
        lines = [acceptance.format_line(r) for r in results]
        total = sum(1 for r in results if r.passed)
        lines.append(f"{total}/{len(results)} criteria passed")
        _emit("\n".join(lines) + "\n", args.output)
    return 0 if all(r.passed for r in results) else 1


def _add_common(parser, formats=("text", "json")):
    parser.add_argument("--format", choices=formats, default=formats[0])
    parser.add_argument("--output", help="write stdout payload to this path")
    parser.add_argument("--tol", type=float, default=_default_tol(),
                        help="tolerance for geometric predicates (env LAB_TOL)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riccilab",
        description="Verification lab for the Ricci bound of real hypersurfaces "
                    "in complex space forms")
    sub = parser.add_subparsers(dest="command", required=True)

    p_models = sub.add_parser("models", help="list families or show one model")
    p_models.add_argument("action", choices=("list", "show"))
    p_models.add_argument("family", nargs="?", choices=catalog.FAMILIES)
    p_models.add_argument("--param", type=float, help="radius r, parameter u, or beta")
    p_models.add_argument("--s", type=float, default=0.0, help="arc parameter (TanProfile2Hopf)")
    p_models.add_argument("--d", type=float, default=0.0, help="phase (TanProfile2Hopf)")
    p_models.add_argument("--c", type=float, required=False, default=None,
                          help="holomorphic curvature quarter (nonzero)")
    _add_common(p_models)
    p_models.set_defaults(func=_cmd_models)

    p_bound = sub.add_parser("check-bound", help="evaluate the Ricci bound in one direction")
    p_bound.add_argument("--family", choices=catalog.FAMILIES)
    p_bound.add_argument("--param", type=float)
    p_bound.add_argument("--s", type=float, default=0.0)
    p_bound.add_argument("--d", type=float, default=0.0)
    p_bound.add_argument("--matrix", type=float, nargs=9,
                         help="9 entries of a symmetric 3x3 shape operator, row major")
    p_bound.add_argument("--direction", choices=sorted(_DIRECTIONS), default="xi")
    p_bound.add_argument("--c", type=float, required=True)
    _add_common(p_bound, formats=("json", "text"))
    p_bound.set_defaults(func=_cmd_check_bound)

    p_radius = sub.add_parser("solve-radius", help="solve one radius equation")
    p_radius.add_argument("--equation", choices=sorted(radii.EQUATIONS), required=True)
    p_radius.add_argument("--c", type=float, required=True)
    _add_common(p_radius, formats=("json", "text"))
    p_radius.set_defaults(func=_cmd_solve_radius)

    p_int = sub.add_parser("integrate", help="integrate the 2-Hopf structure system")
    p_int.add_argument("--alpha", type=float, required=True)
    p_int.add_argument("--beta0", type=float, required=True)
    p_int.add_argument("--gamma0", type=float, required=True)
    p_int.add_argument("--c", type=float, required=True)
    p_int.add_argument("--span", type=float, nargs=2, required=True, metavar=("S0", "S1"))
    p_int.add_argument("--step", type=float, default=1e-3)
    p_int.add_argument("--res-tol", type=float, default=1e-4,
                       help="failure threshold for the residual summary")
    _add_common(p_int, formats=("csv", "json"))
    p_int.set_defaults(func=_cmd_integrate)

    p_elim = sub.add_parser("eliminate", help="run the exact elimination chain")
    p_elim.add_argument("--report", help="write the JSON report to this path")
    p_elim.add_argument("--show-f", action="store_true", dest="show_f")
    p_elim.add_argument("--show-g", action="store_true", dest="show_g")
    p_elim.add_argument("--show-p", action="store_true", dest="show_p")
    _add_common(p_elim, formats=("json",))
    p_elim.set_defaults(func=_cmd_eliminate)

    p_all = sub.add_parser("verify-all", help="run the full acceptance suite")
    _add_common(p_all)
    p_all.set_defaults(func=_cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "models":
        if args.action == "show" and args.family is None:
            parser.error("models show requires a family name")
        if args.action == "show" and args.c is None:
            parser.error("models show requires --c")
    try:
        return args.func(args)
    except (DomainError, SingularityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BracketingError as exc:
        print(f"bracketing error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
