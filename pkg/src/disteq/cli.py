"""Command-line front end.

Subcommands map one-to-one onto the library modules: equilibrium solves on
curves, clouds, polygon grids and graphs, the energy maximizer, magnitude,
and the verification experiments. Results are written as JSON (one file per
run, validating against schemas/results.schema.json), CSV tables, and SVG
renderings colored by the computed measure.

Exit codes: 0 on success, 1 for input or validation problems, 2 when the
mathematics refuses (singular system, no positive normalization, iteration
budget exhausted); code 2 also writes diagnostics.json to the output
directory.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .curves import SupportCurve, sample_uniform_parameter
from .energy import boundary_support_fraction, maximize_energy
from .equilibrium import solve_equilibrium, solve_magnitude
from .errors import MATH_ERRORS, DisteqError
from .graphs import graph_curvature, graph_to_metric_space, read_edge_list
from .spaces import (
    from_curve,
    from_point_cloud,
    from_polygon_grid,
    read_point_cloud_csv,
    read_polygon_csv,
)
from .svgplot import render_svg
from .verify import curvature_measure_variation, curvature_sweep, flat_curve_demo

FORMATS = ("csv", "json", "svg")
# commands with no planar coordinates to draw
NO_SVG = ("graph", "sweep", "prop3")


def _jsonify(obj):
    """Make a value JSON-clean: numpy to native, non-finite floats to null."""
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if np.isfinite(f) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _load_curve(path) -> SupportCurve:
    return SupportCurve.from_json(path)


def _equilibrium_payload(space, rhs, extra_params, extra_result, title):
    sol = solve_equilibrium(space, rhs=rhs)
    result = {
        "r": sol.r,
        "residual": sol.residual,
        "variation": sol.variation,
        "min_mass": sol.min_mass,
        "is_probability": sol.is_probability,
        "status": sol.status,
        "masses": sol.masses,
        "densities": sol.densities,
    }
    result.update(extra_result)
    header = ["index", "x", "y", "weight", "mass", "density"]
    rows = [
        [i, space.coords[i, 0], space.coords[i, 1], space.weights[i],
         sol.masses[i], sol.densities[i]]
        for i in range(space.n)
    ]
    payload = {
        "params": extra_params,
        "result": result,
        "table": (header, rows),
        "svg": (space.coords, sol.densities, title),
    }
    if sol.status == "not_converged":
        payload["unresolved"] = {
            "error": "NotConverged",
            "message": f"equilibrium residual {sol.residual:.3e} above tolerance",
        }
    return payload


def _cmd_curve(args):
    curve = _load_curve(args.spec)
    space = from_curve(curve, args.n)
    samples = sample_uniform_parameter(curve, args.n)
    payload = _equilibrium_payload(
        space,
        args.rhs,
        {"spec": args.spec, "n": args.n, "rhs": args.rhs},
        {"length": float(2.0 * np.pi * curve.cos_coeffs[0])},
        "equilibrium density",
    )
    header, rows = payload["table"]
    header = header + ["curvature"]
    rows = [row + [samples.curvature[i]] for i, row in enumerate(rows)]
    payload["table"] = (header, rows)
    return payload


def _cmd_cloud(args):
    space = from_point_cloud(read_point_cloud_csv(args.points))
    return _equilibrium_payload(
        space,
        args.rhs,
        {"points": args.points, "rhs": args.rhs},
        {"n_points": space.n},
        "equilibrium density",
    )


def _cmd_polygon(args):
    space = from_polygon_grid(read_polygon_csv(args.vertices), args.spacing)
    boundary = space.boundary_mask
    payload = _equilibrium_payload(
        space,
        args.rhs,
        {"vertices": args.vertices, "spacing": args.spacing, "rhs": args.rhs},
        {"n_points": space.n, "n_boundary": int(boundary.sum())},
        "equilibrium density",
    )
    masses = np.asarray(payload["result"]["masses"])
    payload["result"]["boundary_mass"] = float(masses[boundary].sum())
    header, rows = payload["table"]
    header = header + ["boundary"]
    rows = [row + [bool(boundary[i])] for i, row in enumerate(rows)]
    payload["table"] = (header, rows)
    return payload


def _cmd_graph(args):
    g = read_edge_list(args.edges)
    cur = graph_curvature(g)
    labels = g.labels if g.labels else tuple(str(i) for i in range(g.n))
    return {
        "params": {"edges": args.edges},
        "result": {
            "n_vertices": g.n,
            "n_edges": len(g.edges),
            "curvature": cur.values,
            "total": cur.total,
        },
        "table": (
            ["vertex", "label", "curvature"],
            [[i, labels[i], cur.values[i]] for i in range(g.n)],
        ),
        "svg": None,
    }


def _cmd_energy(args):
    if (args.points is None) == (args.spec is None):
        raise ValueError("energy: pass exactly one of --points or --spec")
    if args.points is not None:
        space = from_point_cloud(read_point_cloud_csv(args.points))
        source = {"points": args.points}
    else:
        space = from_curve(_load_curve(args.spec), args.n)
        source = {"spec": args.spec, "n": args.n}
    res = maximize_energy(space, max_iters=args.max_iters, tol=args.tol, seed=args.seed)
    in_support = np.zeros(space.n, dtype=bool)
    in_support[res.support] = True
    payload = {
        "params": {**source, "max_iters": args.max_iters, "tol": args.tol,
                   "seed": args.seed},
        "result": {
            "energy": res.energy,
            "optimality_gap": res.optimality_gap,
            "iterations": res.iterations,
            "converged": res.converged,
            "support_size": int(res.support.size),
            "measure": res.measure,
        },
        "table": (
            ["index", "x", "y", "mass", "in_support"],
            [
                [i, space.coords[i, 0], space.coords[i, 1], res.measure[i],
                 bool(in_support[i])]
                for i in range(space.n)
            ],
        ),
        "svg": (space.coords, res.measure, "energy maximizer"),
    }
    if not res.converged:
        payload["unresolved"] = {
            "error": "NotConverged",
            "message": (
                f"energy maximizer gap {res.optimality_gap:.3e} above "
                f"tolerance {args.tol:g} after {res.iterations} iterations"
            ),
        }
    return payload


def _cmd_magnitude(args):
    if (args.points is None) == (args.edges is None):
        raise ValueError("magnitude: pass exactly one of --points or --edges")
    if args.points is not None:
        space = from_point_cloud(read_point_cloud_csv(args.points))
        params = {"points": args.points}
    else:
        space = graph_to_metric_space(read_edge_list(args.edges))
        params = {"edges": args.edges}
    res = solve_magnitude(space)
    if space.coords is not None:
        svg = (space.coords, res.weights, "magnitude weights")
        rows = [
            [i, space.coords[i, 0], space.coords[i, 1], res.weights[i]]
            for i in range(space.n)
        ]
        header = ["index", "x", "y", "weight"]
    else:
        svg = None
        rows = [[i, res.weights[i]] for i in range(space.n)]
        header = ["index", "weight"]
    return {
        "params": params,
        "result": {"n_points": space.n, "magnitude": res.magnitude,
                   "weights": res.weights},
        "table": (header, rows),
        "svg": svg,
    }


def _cmd_sweep(args):
    if args.harmonic < 2:
        raise ValueError(f"sweep: harmonic {args.harmonic} < 2")
    if args.steps < 1:
        raise ValueError(f"sweep: steps {args.steps} < 1")
    k = args.harmonic

    def family(a):
        coeffs = np.zeros(k + 1)
        coeffs[0] = 1.0
        coeffs[k] = a
        return SupportCurve(coeffs)

    a_values = np.linspace(0.0, args.a_max, args.steps)
    rep = curvature_sweep(family, a_values, args.n)
    records = [
        {
            "a": r.a,
            "roundness_min": r.roundness_min,
            "roundness_max": r.roundness_max,
            "min_mass": r.min_mass,
            "is_probability": r.is_probability,
            "error": r.error,
        }
        for r in rep.records
    ]
    return {
        "params": {"harmonic": k, "a_max": args.a_max, "steps": args.steps,
                   "n": args.n},
        "result": {"records": records,
                   "sign_change_estimate": rep.sign_change_estimate},
        "table": (
            ["a", "roundness_min", "roundness_max", "min_mass",
             "is_probability", "error"],
            [[r.a, r.roundness_min, r.roundness_max, r.min_mass,
              r.is_probability, r.error] for r in rep.records],
        ),
        "svg": None,
    }


def _cmd_prop3(args):
    rep = curvature_measure_variation(_load_curve(args.spec), args.n)
    result = {
        "variation": rep.variation,
        "bound": rep.bound,
        "passes": rep.passes,
        "samples": rep.samples,
        "mean": rep.mean,
        "constant_used": rep.constant_used,
        "note": rep.note,
    }
    return {
        "params": {"spec": args.spec, "n": args.n},
        "result": result,
        "table": (
            ["variation", "bound", "passes", "samples", "mean", "constant_used"],
            [[rep.variation, rep.bound, rep.passes, rep.samples, rep.mean,
              rep.constant_used]],
        ),
        "svg": None,
    }


def _cmd_demo_flat(args):
    rep = flat_curve_demo(n=args.n, kappa_target=args.kappa_target)
    samples = sample_uniform_parameter(rep.curve, args.n)
    sol = solve_equilibrium(from_curve(rep.curve, args.n))
    return {
        "params": {"n": args.n, "kappa_target": args.kappa_target},
        "result": {
            "kappa_target": rep.kappa_target,
            "kappa_achieved": rep.kappa_achieved,
            "annulus_requested": list(rep.annulus_requested),
            "annulus_achieved": list(rep.annulus_achieved),
            "annulus_relaxed": rep.annulus_relaxed,
            "peak_order": rep.peak_order,
            "min_mass": rep.min_mass,
            "is_probability": rep.is_probability,
            "flat_parameter": rep.flat_parameter,
            "most_negative_parameter": rep.most_negative_parameter,
            "negative_in_flat_quartile": rep.negative_in_flat_quartile,
            "cos_coeffs": rep.curve.cos_coeffs,
        },
        "table": (
            ["t", "x", "y", "density", "curvature"],
            [
                [samples.t[i], samples.points[i, 0], samples.points[i, 1],
                 sol.densities[i], samples.curvature[i]]
                for i in range(args.n)
            ],
        ),
        "svg": (samples.points, sol.densities, "flat-curve demo density"),
    }


HANDLERS = {
    "curve": _cmd_curve,
    "cloud": _cmd_cloud,
    "polygon": _cmd_polygon,
    "graph": _cmd_graph,
    "energy": _cmd_energy,
    "magnitude": _cmd_magnitude,
    "sweep": _cmd_sweep,
    "prop3": _cmd_prop3,
    "demo-flat": _cmd_demo_flat,
}


def _formats_arg(text):
    items = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in items if s not in FORMATS]
    if bad or not items:
        raise argparse.ArgumentTypeError(
            f"formats must be a comma list from {','.join(FORMATS)}, got {text!r}"
        )
    return items


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disteq",
        description="Distance-equilibrium measures on curves, clouds, grids and graphs.",
    )
    parser.add_argument("--version", action="version", version=f"disteq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--outdir",
            default=os.environ.get("DISTEQ_OUTDIR", "."),
            help="output directory (default: $DISTEQ_OUTDIR or current directory)",
        )
        p.add_argument(
            "--formats",
            type=_formats_arg,
            default=("json",),
            help="comma list of csv,json,svg (default: json)",
        )
        return p

    p = add("curve", "equilibrium measure of a sampled support-function curve")
    p.add_argument("--spec", required=True, help="curve coefficient JSON file")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--rhs", choices=["ones", "paper"], default="ones")

    p = add("cloud", "equilibrium measure of a planar point cloud")
    p.add_argument("--points", required=True, help="CSV of x,y points")
    p.add_argument("--rhs", choices=["ones", "paper"], default="ones")

    p = add("polygon", "equilibrium measure of a polygon grid fill")
    p.add_argument("--vertices", required=True, help="CSV of polygon vertices")
    p.add_argument("--spacing", type=float, required=True)
    p.add_argument("--rhs", choices=["ones", "paper"], default="ones")

    p = add("graph", "hop-distance curvature of an undirected graph")
    p.add_argument("--edges", required=True, help="edge list file, one 'u v' per line")

    p = add("energy", "maximize the distance energy over the simplex")
    p.add_argument("--points", help="CSV of x,y points")
    p.add_argument("--spec", help="curve coefficient JSON file")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--max-iters", type=int, default=50000, dest="max_iters")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)

    p = add("magnitude", "magnitude weights of a cloud or graph")
    p.add_argument("--points", help="CSV of x,y points")
    p.add_argument("--edges", help="edge list file")

    p = add("sweep", "solve along a single-harmonic curve family")
    p.add_argument("--harmonic", type=int, default=2)
    p.add_argument("--a-max", type=float, default=0.3, dest="a_max")
    p.add_argument("--steps", type=int, default=7)
    p.add_argument("--n", type=int, default=512)

    p = add("prop3", "near-constancy report for the curvature measure")
    p.add_argument("--spec", required=True, help="curve coefficient JSON file")
    p.add_argument("--n", type=int, default=256)

    p = add("demo-flat", "flat-point curve construction and signed solve")
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--kappa-target", type=float, default=0.05, dest="kappa_target")

    return parser


def _write_outputs(command, payload, outdir, formats) -> None:
    base = os.path.join(outdir, command)
    if "json" in formats:
        doc = {
            "command": command,
            "params": _jsonify(payload["params"]),
            "result": _jsonify(payload["result"]),
        }
        with open(base + ".json", "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if "csv" in formats:
        header, rows = payload["table"]
        with open(base + ".csv", "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    if "svg" in formats:
        points, values, title = payload["svg"]
        with open(base + ".svg", "w") as fh:
            fh.write(render_svg(points, values, title=title))


def _write_diagnostics(command, outdir, error_name, message, extras=None) -> None:
    doc = {"command": command, "error": error_name, "message": message}
    doc.update(_jsonify(extras or {}))
    with open(os.path.join(outdir, "diagnostics.json"), "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses status 2 for usage errors; that slot is reserved
        # for mathematical failures here
        return 0 if not exc.code else 1
    command = args.command
    formats = args.formats
    if "svg" in formats and command in NO_SVG:
        print(f"{command}: svg output not supported (no planar coordinates)",
              file=sys.stderr)
        return 1
    try:
        os.makedirs(args.outdir, exist_ok=True)
        payload = HANDLERS[command](args)
    except MATH_ERRORS as exc:
        extras = {
            k: getattr(exc, k)
            for k in ("cond", "rank")
            if getattr(exc, k, None) is not None
        }
        _write_diagnostics(command, args.outdir, type(exc).__name__, str(exc), extras)
        print(f"{command}: {exc}", file=sys.stderr)
        return 2
    except (DisteqError, ValueError, OSError) as exc:
        print(f"{command}: {exc}", file=sys.stderr)
        return 1
    if payload["svg"] is None and "svg" in formats:
        print(f"{command}: svg output not supported for this input",
              file=sys.stderr)
        return 1
    _write_outputs(command, payload, args.outdir, formats)
    if "unresolved" in payload:
        info = payload["unresolved"]
        _write_diagnostics(command, args.outdir, info["error"], info["message"])
        print(f"{command}: {info['message']}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
