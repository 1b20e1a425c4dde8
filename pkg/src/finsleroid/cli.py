"""Command-line front end: evaluate scalars and tensors, sample geodesics
to JSON/CSV, and run the verification suite with a machine-readable report.

Exit codes: 0 success, 1 numerical-domain or check failure, 2 usage error.
JSON keys are snake_case and stable; floats are emitted in the shortest
round-trippable form, identically in JSON and CSV.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import MetricContext, make_parameter, scalar_bundle
from .errors import FinsleroidError, OnAxisError, OutOfRangeError
from .geodesics import geodesic_point, in_segment, solve_chord
from .quasimap import mu_map
from .tensors import cartan_tensor, metric_tensor
from .verify import RunConfig, parse_metric_spec, report_to_json, run_verify

__all__ = ["main"]


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.split(",") if x != ""])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}") from exc


def _context(args, dim: int) -> MetricContext:
    return MetricContext(dim, parse_metric_spec(args.metric, dim))


def _jsonify(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def cmd_eval(args) -> int:
    par = make_parameter(args.g)
    vec = args.vector
    dim = args.dim if args.dim is not None else vec.size
    if vec.size != dim:
        print(f"error: vector has {vec.size} components, dimension is {dim}", file=sys.stderr)
        return 2
    ctx = _context(args, dim)
    sb = scalar_bundle(par, ctx, vec)
    gm = metric_tensor(par, ctx, vec)
    det_g = float(np.linalg.det(gm))
    det_identity = sb.J ** (2 * dim) * float(np.linalg.det(ctx.r_ab))
    try:
        ct = cartan_tensor(par, ctx, vec)
        cartan = {
            "c_vec_lower": ct.c_vec_lower,
            "c_vec_upper": ct.c_vec_upper,
            "c_p_c_p": float(ct.c_vec_lower @ ct.c_vec_upper),
        }
    except OnAxisError:
        cartan = None

    payload = {
        "g": par.g,
        "h": par.h,
        "dim": dim,
        "vector": vec,
        "q": sb.q,
        "b_form": sb.B,
        "phi": sb.phi,
        "j": sb.J,
        "k": sb.K,
        "metric_tensor": gm,
        "det_metric": det_g,
        "det_identity": det_identity,
        "cartan": cartan,
    }
    if args.format == "json":
        print(json.dumps(_jsonify(payload), indent=2))
    else:
        for key in ("q", "b_form", "phi", "j", "k", "det_metric", "det_identity"):
            print(f"{key:13s} = {payload[key]!r}")
        print("metric_tensor =")
        for row in gm:
            print("   " + "  ".join(repr(float(x)) for x in row))
        if cartan is None:
            print("cartan        = (undefined on the axis or plane)")
        else:
            print(f"c_p_c_p       = {cartan['c_p_c_p']!r}")
    return 0


def cmd_geodesic(args) -> int:
    par = make_parameter(args.g)
    t1, t2 = args.t1, args.t2
    if t1.size != t2.size:
        print("error: endpoint dimensions differ", file=sys.stderr)
        return 2
    ctx = _context(args, t1.size)
    chord = solve_chord(par, ctx, t1, t2)
    svals = np.linspace(0.0, chord.delta_s, args.samples + 1)
    pts = geodesic_point(chord, svals)
    flags = in_segment(chord, svals, slack=1e-12)
    rows = []
    for i, s in enumerate(svals):
        row = {"s": float(s), "t": pts[i], "in_segment": bool(flags[i])}
        if args.pullback:
            row["r"] = mu_map(par, ctx, pts[i])
        rows.append(row)
    meta = {
        "g": par.g,
        "a": chord.a,
        "b": chord.b,
        "delta_s": chord.delta_s,
        "alpha": chord.alpha,
        "s_end": chord.s_end,
    }
    if args.format == "json":
        print(json.dumps(_jsonify({"chord": meta, "samples": rows}), indent=2))
    else:
        n = t1.size
        for key, val in meta.items():
            print(f"# {key}={float(val)!r}")
        header = ["s"] + [f"t{i + 1}" for i in range(n)]
        if args.pullback:
            header += [f"r{i + 1}" for i in range(n)]
        header.append("in_segment")
        print(",".join(header))
        for row in rows:
            cells = [repr(row["s"])] + [repr(float(x)) for x in row["t"]]
            if args.pullback:
                cells += [repr(float(x)) for x in row["r"]]
            cells.append("1" if row["in_segment"] else "0")
            print(",".join(cells))
    return 0


def cmd_verify(args) -> int:
    config = RunConfig(
        g=args.g, dim=args.dim, metric=args.metric, seed=args.seed, trials=args.trials, tol=args.tol
    )
    report = run_verify(config)
    print(report_to_json(report))
    if not report["overall_pass"]:
        failing = [c["id"] for c in report["checks"] if not c["pass"]]
        print("failing checks: " + ", ".join(failing), file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finsleroid",
        description="Finsleroid-space kernels: scalar/tensor evaluation, geodesic sampling, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate the scalar bundle and tensors at one vector")
    p_eval.add_argument("--g", type=float, required=True, help="characteristic parameter in (-2, 2)")
    p_eval.add_argument("--dim", type=int, default=None, help="dimension (defaults to the vector length)")
    p_eval.add_argument("--metric", default="identity", help="identity | diag:v1,v2,... | file:PATH")
    p_eval.add_argument("--vector", type=_parse_vector, required=True, help="comma-separated components")
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    p_eval.set_defaults(func=cmd_eval)

    p_geo = sub.add_parser("geodesic", help="sample the geodesic chord between two image vectors")
    p_geo.add_argument("--g", type=float, required=True)
    p_geo.add_argument("--metric", default="identity")
    p_geo.add_argument("--t1", type=_parse_vector, required=True)
    p_geo.add_argument("--t2", type=_parse_vector, required=True)
    p_geo.add_argument("--samples", type=int, default=16, help="number of segments (emits samples+1 rows)")
    p_geo.add_argument("--pullback", action="store_true", help="also emit the original-space coordinates")
    p_geo.add_argument("--format", choices=("json", "csv"), default="json")
    p_geo.set_defaults(func=cmd_geodesic)

    p_ver = sub.add_parser("verify", help="run the full identity-check suite")
    p_ver.add_argument("--g", type=float, required=True)
    p_ver.add_argument("--dim", type=int, default=3)
    p_ver.add_argument("--metric", default="identity")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--trials", type=int, default=200)
    p_ver.add_argument("--tol", type=float, default=1e-9)
    p_ver.add_argument("--format", choices=("json",), default="json")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OutOfRangeError as exc:
        # invalid input, as opposed to a numerical-domain failure
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FinsleroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
