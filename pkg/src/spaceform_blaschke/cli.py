"""Command-line front end.

Polygon files are JSON::

    {"lambda": 1.0, "coords": "embedding", "vertices": [[x0, x1, x2], ...]}

with ``coords`` either ``embedding`` (model coordinates, 2 per vertex in the
plane and 3 otherwise) or ``polar`` (``[r, phi]`` about the base point).
Reports go to stdout as JSON.  Exit status is 0 on success, 1 on invalid input
and 2 when a mathematical check fails.
"""

import argparse
import csv
import dataclasses
import enum
import hashlib
import json
import math
import os
import sys

import numpy as np

from .blaschke import Definition, convergence_table, default_frak_e, verify
from .enclosing_disk import min_disk, min_disk_oracle
from .errors import GeometryError
from .geom import SpaceForm
from .lambda_trig import arc_gtan
from .polygon import (
    curvature_report,
    digon,
    from_vertices,
    polygon_from_polar,
    random_convex,
    regular_inscribed,
)
from .smoothing import assemble, blowup_sweep

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2
DEFAULT_TOL = 1e-9


class InputError(Exception):
    pass


def tolerance():
    raw = os.environ.get("SPACEFORM_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"SPACEFORM_TOL={raw!r} is not a number") from None
    if not tol > 0:
        raise InputError("SPACEFORM_TOL must be positive")
    return tol


def _clean(obj):
    """Recursively convert to JSON-safe builtins; non-finite floats become strings."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        obj = {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, SpaceForm):
        return obj.lam
    return obj


def emit(report, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(_clean(report), sort_keys=True, indent=2) + "\n")


def load_polygon(path):
    """Parse a polygon file; returns (polygon, sha256 of the bytes)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return parse_polygon(data), hashlib.sha256(raw).hexdigest()


def parse_polygon(data):
    if not isinstance(data, dict):
        raise InputError("polygon file must be a JSON object")
    for key in ("lambda", "coords", "vertices"):
        if key not in data:
            raise InputError(f"missing field {key!r}")
    try:
        lam = float(data["lambda"])
        verts = np.array(data["vertices"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed numbers: {exc}") from None
    sf = SpaceForm(lam)
    coords = data["coords"]
    if verts.ndim != 2:
        raise InputError("vertices must be a list of coordinate tuples")
    if coords == "polar":
        if verts.shape[1] != 2:
            raise InputError("polar vertices need 2 numbers [r, phi]")
        return polygon_from_polar(sf, verts)
    if coords == "embedding":
        if verts.shape[1] != sf.dim:
            raise InputError(f"embedding vertices need {sf.dim} numbers for lambda={lam}")
        return from_vertices(sf, verts)
    raise InputError(f"coords must be 'embedding' or 'polar', got {coords!r}")


def polygon_document(P):
    return {"lambda": P.sf.lam, "coords": "embedding", "vertices": P.vertices.tolist()}


def _write_or_print(doc, out, stream=None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        emit(doc, stream)


def _echo(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "stdout")}


# ----------------------------------------------------------------------
# subcommands; each returns (report, exit code)


def cmd_analyze(args, tol):
    P, digest = load_polygon(args.file)
    rep = curvature_report(P)
    return {
        "lambda": P.sf.lam,
        "n": P.n,
        "side_lengths": P.side_lengths,
        "interior_angles": P.interior_angles,
        "kappa": rep.kappa,
        "kappa_flat": rep.kappa_flat,
        "kappa0": rep.kappa0,
        "kappa0_flat": rep.kappa0_flat,
        "convex": True,
        "degenerate": P.degenerate,
        "digest": digest,
    }, EXIT_OK


def cmd_circumradius(args, tol):
    P, digest = load_polygon(args.file)
    d = min_disk(P.sf, P.vertices)
    report = {"center": d.center, "radius": d.radius, "support": list(d.support), "digest": digest}
    code = EXIT_OK
    if args.oracle:
        o = min_disk_oracle(P.sf, P.vertices)
        diff = abs(d.radius - o.radius)
        report["oracle"] = {"center": o.center, "radius": o.radius, "support": list(o.support)}
        report["radius_difference"] = diff
        report["agree"] = diff <= 1e-8
        code = EXIT_OK if diff <= 1e-8 else EXIT_CHECK
    return report, code


def cmd_verify(args, tol):
    P, digest = load_polygon(args.file)
    frak_e = args.frak_e
    if args.definition == "flat" and P.sf.lam != 0 and frak_e is None:
        frak_e = default_frak_e(P)
    r = verify(P, Definition(args.definition), frak_e, tol=tol)
    report = r.as_dict()
    report["digest"] = digest
    return report, EXIT_OK if r.holds else EXIT_CHECK


def cmd_regular(args, tol):
    P = regular_inscribed(SpaceForm(args.lam), args.radius, args.n)
    _write_or_print(polygon_document(P), args.out, args.stdout)
    return ({"written": args.out, "n": P.n} if args.out else None), EXIT_OK


def cmd_digon(args, tol):
    if not args.kappa0 > 0:
        raise InputError("kappa0 must be positive")
    half = arc_gtan(args.lam, math.pi / (2.0 * args.kappa0))
    P = digon(SpaceForm(args.lam), 2.0 * half)
    _write_or_print(polygon_document(P), args.out, args.stdout)
    return ({"written": args.out, "length": 2.0 * half} if args.out else None), EXIT_OK


def cmd_convergence(args, tol):
    ns = []
    n = 4
    while n <= args.n_max:
        ns.append(n)
        n *= 2
    if not ns:
        raise InputError("--n-max must be at least 4")
    rows = convergence_table(args.lam, args.radius, ns)
    errors = [r.error for r in rows]
    monotone = all(b < a for a, b in zip(errors, errors[1:]))
    paths = max(r.path_gap for r in rows) <= tol
    report = {"rows": rows, "monotone": monotone, "paths_agree": paths, "tolerance": tol}
    return report, EXIT_OK if monotone and paths else EXIT_CHECK


def cmd_smooth(args, tol):
    P, digest = load_polygon(args.file)
    curve = assemble(P, args.kappa0, args.epsilon)
    rows = curve.samples(connector_samples=args.samples)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["piece_kind", "piece_index", "param", "x0", "x1", "x2", "curvature"])
        for kind, i, t, p, k in rows:
            xs = [repr(float(v)) for v in p] + ([""] if len(p) == 2 else [])
            w.writerow([kind, i, repr(t), *xs, repr(k)])
    d = curve.diagnostics
    ok = d.min_curvature >= d.arc_curvature - 1e-8 and d.enclosure_margin > 0
    return {"diagnostics": d, "R": curve.R, "samples": len(rows), "out": args.out, "digest": digest}, (
        EXIT_OK if ok else EXIT_CHECK
    )


def cmd_sweep(args, tol):
    P, digest = load_polygon(args.file)
    try:
        eps = [float(e) for e in args.epsilons.split(",") if e.strip()]
    except ValueError:
        raise InputError(f"bad --epsilons list {args.epsilons!r}") from None
    rows = blowup_sweep(P, args.kappa0, eps)
    radius = min_disk(P.sf, P.vertices).radius
    shrinking = all(b.curve_radius <= a.curve_radius + tol for a, b in zip(rows, rows[1:]))
    above = all(r.curve_radius >= radius - tol for r in rows)
    bound = all(r.smooth_bound_ok for r in rows)
    report = {
        "rows": rows,
        "polygon_radius": radius,
        "radius_decreasing": shrinking,
        "radius_above_polygon": above,
        "smooth_bound": bound,
        "digest": digest,
    }
    return report, EXIT_OK if shrinking and above and bound else EXIT_CHECK


def default_r_max(lam):
    return 1.2 if lam > 0 else 1.0


def cmd_fuzz(args, tol):
    if args.count < 1:
        raise InputError("--count must be positive")
    sf = SpaceForm(args.lam)
    r_max = args.r_max if args.r_max is not None else default_r_max(args.lam)
    definition = Definition(args.definition)
    violations = []
    skipped = 0
    worst = math.inf
    for seed in range(args.seed, args.seed + args.count):
        P = random_convex(sf, 3 + seed % 10, seed, r_max)
        frak_e = default_frak_e(P) if definition is Definition.FLAT and sf.lam != 0 else None
        r = verify(P, definition, frak_e, tol=tol)
        if not r.hypothesis and definition is Definition.FLAT:
            skipped += 1
            continue
        worst = min(worst, r.margin)
        if not r.holds:
            violations.append({"seed": seed, "margin": r.margin})
    report = {
        "lambda": sf.lam,
        "definition": definition,
        "count": args.count,
        "seed": args.seed,
        "r_max": r_max,
        "checked": args.count - skipped,
        "skipped": skipped,
        "min_margin": worst,
        "violations": violations,
        "tolerance": tol,
    }
    return report, EXIT_CHECK if violations else EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="spaceform-blaschke", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="side lengths, angles and vertex curvatures")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("circumradius", help="smallest enclosing disk")
    a.add_argument("file")
    a.add_argument("--oracle", action="store_true", help="also run the brute-force solver")
    a.set_defaults(func=cmd_circumradius)

    a = sub.add_parser("verify", help="check the circumradius bound")
    a.add_argument("file")
    a.add_argument("--definition", choices=["ta", "flat"], default="ta")
    a.add_argument("--frak-e", type=float, default=None, dest="frak_e")
    a.set_defaults(func=cmd_verify)

    a = sub.add_parser("regular", help="emit a regular inscribed polygon")
    a.add_argument("--lambda", type=float, required=True, dest="lam")
    a.add_argument("--radius", type=float, required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--out")
    a.set_defaults(func=cmd_regular)

    a = sub.add_parser("digon", help="emit the extremal doubly covered segment")
    a.add_argument("--lambda", type=float, required=True, dest="lam")
    a.add_argument("--kappa0", type=float, required=True)
    a.add_argument("--out")
    a.set_defaults(func=cmd_digon)

    a = sub.add_parser("convergence", help="regular n-gon curvature against the circle")
    a.add_argument("--lambda", type=float, required=True, dest="lam")
    a.add_argument("--radius", type=float, required=True)
    a.add_argument("--n-max", type=int, required=True, dest="n_max")
    a.set_defaults(func=cmd_convergence)

    a = sub.add_parser("smooth", help="build the smoothed curve and write samples as CSV")
    a.add_argument("file")
    a.add_argument("--kappa0", type=float, required=True)
    a.add_argument("--epsilon", type=float, required=True)
    a.add_argument("--samples", type=int, default=101, help="samples per connector")
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_smooth)

    a = sub.add_parser("sweep", help="curvature blow-up as epsilon shrinks")
    a.add_argument("file")
    a.add_argument("--kappa0", type=float, required=True)
    a.add_argument("--epsilons", required=True, help="comma-separated, decreasing")
    a.set_defaults(func=cmd_sweep)

    a = sub.add_parser("fuzz", help="check the bound on random convex polygons")
    a.add_argument("--lambda", type=float, required=True, dest="lam")
    a.add_argument("--count", type=int, required=True)
    a.add_argument("--seed", type=int, required=True)
    a.add_argument("--definition", choices=["ta", "flat"], default="ta")
    a.add_argument("--r-max", type=float, default=None, dest="r_max")
    a.set_defaults(func=cmd_fuzz)
    return p


def run(argv=None, stdout=None):
    """Entry point; returns the exit code."""
    out = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    args.stdout = out
    try:
        tol = tolerance()
        report, code = args.func(args, tol)
    except (InputError, GeometryError, ValueError) as exc:
        emit({"command": _echo(args), "error": type(exc).__name__, "message": str(exc)}, out)
        return EXIT_INPUT
    if report is not None:
        report = dict(report)
        report["command"] = _echo(args)
        report["tolerance"] = tol
        emit(report, out)
    return code


def main():
    sys.exit(run())
