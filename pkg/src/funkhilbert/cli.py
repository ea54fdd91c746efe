"""Command-line front end.

Exit codes: 0 success, 1 input/output failure, 2 invalid geometry,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import convex, gauges, horoboundary as hb, isometries as iso
from .errors import GeometryError, NonConvergenceError
from .regions import intersect_polygons
from .svg import Canvas, body_outline

EXIT_OK, EXIT_IO, EXIT_GEOMETRY, EXIT_NUMERIC = 0, 1, 2, 3


class _IOFailure(Exception):
    pass


def fmt(v: float) -> str:
    if np.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.12g}"


def fmt_point(p) -> str:
    return ";".join(fmt(float(c)) for c in np.ravel(p))


def parse_point(text: str) -> np.ndarray:
    parts = text.replace(";", ",").split(",")
    try:
        return np.array([float(s) for s in parts if s.strip()])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse point {text!r}") from exc


def parse_indices(text: str) -> list[int]:
    return [int(s) for s in text.replace(";", ",").split(",") if s.strip()]


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc


def _body(args) -> convex.ConvexBody:
    if not args.domain:
        raise _IOFailure("--domain is required for this command")
    return convex.build_body(_read_json(args.domain), eps=args.eps)


def _emit(args, text: str, suffix: str | None = None) -> None:
    if args.out:
        path = Path(args.out)
        if suffix is not None:
            path = path.with_suffix(suffix)
        try:
            path.write_text(text)
        except OSError as exc:
            raise _IOFailure(f"cannot write {path}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(c if isinstance(c, str) else fmt(c) for c in r) + "\n")
    return buf.getvalue()


def _points_csv(pts, clipped=None) -> str:
    header = [f"x{i}" for i in range(pts.shape[1])] if pts.ndim == 2 and pts.shape[1] != 2 else ["x", "y"]
    if clipped is None:
        return _csv(header, [list(p) for p in pts])
    return _csv(header + ["clipped"], [list(p) + [str(int(c))] for p, c in zip(pts, clipped)])


def _canvas(body) -> Canvas:
    c = Canvas(body_outline(body))
    c.polygon(body_outline(body), stroke="black", width=2)
    return c


def _horofunction(args, body) -> hb.Horofunction:
    if args.horofunction:
        return hb.horofunction_from_dict(body, _read_json(args.horofunction))
    spec = {"kind": args.kind}
    if args.rev_point is not None:
        spec["rev_point"] = args.rev_point
    if args.dual_face is not None:
        spec["dual_face"] = args.dual_face
    if args.witness is not None:
        spec["witness"] = args.witness
    return hb.horofunction_from_dict(body, spec)


# ---------------------------------------------------------------------------
# commands


def cmd_dist(args) -> int:
    body = _body(args)
    x, y = args.from_, args.to
    vals = {"funk": gauges.funk_dist(body, x, y), "rev": gauges.reverse_funk_dist(body, x, y),
            "hilbert": gauges.hilbert_dist(body, x, y)}
    keep = list(vals) if args.metric == "all" else [{"reverse_funk": "rev"}.get(
        gauges.metric_name(args.metric), gauges.metric_name(args.metric))]
    if args.format == "csv":
        _emit(args, _csv(["x", "y"] + keep, [[fmt_point(x), fmt_point(y)] + [vals[k] for k in keep]]))
    else:
        _emit(args, "".join(f"{k} {fmt(vals[k])}\n" for k in keep))
    return EXIT_OK


def cmd_geodesic(args) -> int:
    body = _body(args)
    g = gauges.geodesic(body, args.from_, args.to, args.metric)
    t = np.linspace(0.0, g.length, args.samples)
    pts = g(t)
    if args.format == "svg":
        c = _canvas(body)
        c.polyline(pts, stroke="blue", width=2)
        c.point(g.x)
        c.point(g.y)
        _emit(args, c.render())
    else:
        _emit(args, _csv(["t", "point"], [[ti, fmt_point(p)] for ti, p in zip(t, pts)]))
    return EXIT_OK


def cmd_ball(args) -> int:
    body = _body(args)
    region = gauges.ball_boundary(body, args.center, args.radius, args.metric, args.samples)
    if args.format == "svg":
        c = _canvas(body)
        c.polygon(region.points, stroke="blue", width=2)
        c.point(args.center)
        _emit(args, c.render())
    else:
        _emit(args, _points_csv(region.points, region.clipped))
    return EXIT_OK


def cmd_horoball(args) -> int:
    body = _body(args)
    xi = _horofunction(args, body)
    region = hb.horoball(xi, args.alpha, args.samples)
    if region.empty:
        print("empty sublevel set", file=sys.stderr)
    if args.format == "svg":
        c = _canvas(body)
        c.polygon(region.points, stroke="red", width=2)
        c.point(body.base_point)
        _emit(args, c.render())
    else:
        _emit(args, _points_csv(region.points, region.clipped))
    return EXIT_OK


def frame_indices(frames: int, n_max: int = 20, n_min: int = 2) -> list[int]:
    if frames < 1:
        raise ValueError("frames must be positive")
    if frames == 1:
        return [n_max]
    return sorted(set(np.round(np.linspace(n_min, n_max, frames)).astype(int).tolist()))


def converge_figure(body, target, alpha: float, frames: int, window: float, metric: str = "hilbert",
                    start=None, samples: int = 360):
    """Ball/horoball overlay and Hausdorff table for ``z_n = x + 2^-n (p - x)``."""
    x = body.require_boundary(target, "target")
    p = body.base_point if start is None else np.asarray(start, dtype=float)
    xi = hb.straight_line_limit(body, x, p, metric)
    found = hb.horofunction_limit(body, hb.straight_line_sequence(body, x, p), metric)
    if not found.converged:
        raise NonConvergenceError(found.message)
    seq = lambda n: x + 2.0 ** (-n) * (p - x)
    ns = frame_indices(frames)
    rows = hb.ball_horoball_convergence(xi, seq, alpha, window, ns, samples)
    canvas = _canvas(body)
    if body.is_polytope:
        win = gauges.ball_polygon(body, body.base_point, window, "hilbert")
        horo = intersect_polygons(hb.horoball_polygon(xi, alpha), win)
        for k, r in enumerate(rows):
            ball = intersect_polygons(gauges.ball_polygon(body, seq(r.n), r.radius, xi.geometry), win)
            canvas.polygon(ball, stroke="blue", width=1, opacity=0.25 + 0.75 * (k + 1) / len(rows))
        canvas.polygon(horo, stroke="red", width=2.5)
    else:
        canvas.polygon(hb.horoball(xi, alpha, samples).points, stroke="red", width=2.5)
    canvas.point(x, color="red")
    canvas.point(body.base_point)
    return rows, canvas


def cmd_converge(args) -> int:
    body = _body(args)
    rows, canvas = converge_figure(body, args.target, args.alpha, args.frames, args.window,
                                   args.metric, args.start, args.samples)
    table = _csv(["n", "radius", "hausdorff"], [[str(r.n), r.radius, r.hausdorff] for r in rows])
    if args.format == "svg":
        _emit(args, canvas.render(), ".svg" if args.out else None)
        if args.out:
            _emit(args, table, ".csv")
    else:
        _emit(args, table)
    if rows[-1].hausdorff > 0.01:
        print(f"final Hausdorff distance {rows[-1].hausdorff:.3g} exceeds 0.01", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_parts(args) -> int:
    body = _body(args)
    parts = hb.enumerate_parts(body)
    shown = parts if args.all else [p for p in parts if p.singleton_factor]
    rows = [[";".join(map(str, p.primal_face.index_set)), ";".join(map(str, p.dual_face.index_set)),
             str(p.factor_dims[0]), str(p.factor_dims[1]), p.label] for p in shown]
    text = _csv(["primal_face", "dual_face", "dim_G", "dim_E", "type"], rows)
    if args.format == "text":
        nv = sum(p.vertex_type for p in parts)
        nf = sum(p.facet_type for p in parts)
        text = (f"parts: {len(parts)}\nvertex-type: {nv}\nfacet-type: {nf}\n"
                f"singleton-factor: {sum(p.singleton_factor for p in parts)}\n") + text
    _emit(args, text)
    return EXIT_OK


def cmd_detour(args) -> int:
    body = _body(args)
    if args.xi and args.eta:
        xi = hb.horofunction_from_dict(body, _read_json(args.xi))
        eta = hb.horofunction_from_dict(body, _read_json(args.eta))
    elif args.x is not None and args.y is not None:
        xi = hb.reverse_funk_horofunction(body, args.x)
        eta = hb.reverse_funk_horofunction(body, args.y)
    else:
        raise _IOFailure("detour needs --xi/--eta files or --x/--y boundary points")
    if xi.kind == "reverse_funk":
        h1 = hb.detour_cost_reverse(body, xi.rev_point, eta.rev_point)
        h2 = hb.detour_cost_reverse(body, eta.rev_point, xi.rev_point)
        delta = h1 + h2
    else:
        h1 = h2 = float("nan")
        delta = hb.detour_metric(xi, eta)
    header, row = ["H_xi_eta", "H_eta_xi", "delta"], [h1, h2, delta]
    if args.numeric:
        n1 = hb.detour_cost_numeric(xi, eta)
        n2 = hb.detour_cost_numeric(eta, xi)
        header += ["H_xi_eta_numeric", "H_eta_xi_numeric", "numeric_converged"]
        row += [n1.value, n2.value, str(int(n1.converged and n2.converged or n1.diverging or n2.diverging))]
    _emit(args, _csv(header, [row]))
    return EXIT_OK


def cmd_horolimit(args) -> int:
    body = _body(args)
    seq = hb.straight_line_sequence(body, args.target, args.start)
    res = hb.horofunction_limit(body, seq, args.metric, n_max=args.nmax)
    if not res.converged:
        print(f"{res.status}: {res.message}", file=sys.stderr)
        return EXIT_NUMERIC
    out = res.horofunction.to_dict()
    out["defect"] = res.defect
    _emit(args, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def _load_map(args):
    spec = _read_json(args.map)
    kind = spec.get("kind")
    if kind == "matrix":
        return kind, iso.ProjectiveMap(np.asarray(spec["matrix"], dtype=float))
    if kind in ("reciprocal", "lorentz_star"):
        return kind, None
    raise GeometryError(f"unknown map kind {kind!r}")


def cmd_isometry_check(args) -> int:
    kind, amap = _load_map(args)
    rng = np.random.default_rng(args.seed)
    lines = []
    if kind == "lorentz_star" or (kind == "reciprocal" and args.cone):
        cone = args.cone or "lorentz:3"
        g = iso.lorentz_star_map() if kind == "lorentz_star" else iso.reciprocal_cone_map()
        rep = iso.gauge_reversing_check(cone, g, args.samples, rng)
        lines.append(f"gauge-reversing: {'yes' if rep.passed else 'no'}")
        lines.append(f"gauge defect: {fmt(rep.gauge_defect)}")
    else:
        body = _body(args)
        if kind == "matrix":
            col = iso.collineation_check(body, amap, args.samples, rng)
            if not col.preserves_body:
                lines.append(f"isometry: no ({col.message})")
                _emit(args, "\n".join(lines) + "\n")
                return EXIT_OK
            f = amap.oriented(body.base_point).apply
        else:
            f = iso.reciprocal_action
        rep = iso.isometry_numeric_check(body, f, args.samples, rng)
        if rep.is_isometry:
            lines.append(f"isometry: yes, {rep.label}")
        else:
            lines.append(f"isometry: no (defect {fmt(rep.max_hilbert_defect)})")
        lines.append(f"hilbert defect: {fmt(rep.max_hilbert_defect)}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_simplex_embed(args) -> int:
    x = args.point / args.point.sum()
    v = iso.simplex_log_embed(x)
    rows = [["embedding", fmt_point(v)]]
    if args.to is not None:
        y = args.to / args.to.sum()
        rows.append(["variation_distance", fmt(iso.variation_norm(v - iso.simplex_log_embed(y)))])
    _emit(args, _csv(["quantity", "value"], rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", help="body description (JSON)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("text", "csv", "svg"), default="csv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--eps", type=float, default=None, help="geometric tolerance")

    p = argparse.ArgumentParser(prog="funkhilbert", description="Funk and Hilbert geometry toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dist", parents=[common], help="Funk, reverse-Funk and Hilbert distances")
    s.add_argument("--from", dest="from_", type=parse_point, required=True)
    s.add_argument("--to", type=parse_point, required=True)
    s.add_argument("--metric", default="all")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("geodesic", parents=[common], help="sample a straight-line geodesic")
    s.add_argument("--from", dest="from_", type=parse_point, required=True)
    s.add_argument("--to", type=parse_point, required=True)
    s.add_argument("--metric", default="hilbert")
    s.add_argument("--samples", type=int, default=33)
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("ball", parents=[common], help="boundary of a metric ball")
    s.add_argument("--center", type=parse_point, required=True)
    s.add_argument("--radius", type=float, required=True)
    s.add_argument("--metric", default="hilbert")
    s.add_argument("--samples", type=int, default=256)
    s.set_defaults(func=cmd_ball)

    def horo_args(s):
        s.add_argument("--horofunction", help="horofunction description (JSON)")
        s.add_argument("--kind", default="hilbert")
        s.add_argument("--rev-point", type=lambda t: parse_point(t).tolist())
        s.add_argument("--dual-face", type=parse_indices)
        s.add_argument("--witness", type=lambda t: parse_point(t).tolist())

    s = sub.add_parser("horoball", parents=[common], help="boundary of a horoball")
    horo_args(s)
    s.add_argument("--alpha", type=float, default=0.0)
    s.add_argument("--samples", type=int, default=256)
    s.set_defaults(func=cmd_horoball)

    s = sub.add_parser("converge", parents=[common], help="balls converging to a horoball")
    s.add_argument("--target", type=parse_point, required=True)
    s.add_argument("--start", type=parse_point)
    s.add_argument("--alpha", type=float, default=0.0)
    s.add_argument("--frames", type=int, default=5)
    s.add_argument("--window", type=float, default=2.0)
    s.add_argument("--metric", default="hilbert")
    s.add_argument("--samples", type=int, default=360)
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("parts", parents=[common], help="parts of the Hilbert horoboundary")
    s.add_argument("--all", action="store_true", help="list every part, not only singleton-factor ones")
    s.set_defaults(func=cmd_parts)

    s = sub.add_parser("detour", parents=[common], help="detour cost and detour metric")
    s.add_argument("--xi")
    s.add_argument("--eta")
    s.add_argument("--x", type=parse_point, help="boundary point (reverse-Funk shorthand)")
    s.add_argument("--y", type=parse_point)
    s.add_argument("--numeric", action="store_true")
    s.set_defaults(func=cmd_detour)

    s = sub.add_parser("horolimit", parents=[common], help="identify the limit of a straight-line sequence")
    s.add_argument("--target", type=parse_point, required=True)
    s.add_argument("--start", type=parse_point)
    s.add_argument("--metric", default="hilbert")
    s.add_argument("--nmax", type=int, default=10**6)
    s.set_defaults(func=cmd_horolimit)

    s = sub.add_parser("isometry-check", parents=[common], help="test a map for the isometry property")
    s.add_argument("--map", required=True, help="map description (JSON)")
    s.add_argument("--cone", help="cone for reversing checks, e.g. lorentz:3 or orthant:3")
    s.add_argument("--samples", type=int, default=200)
    s.set_defaults(func=cmd_isometry_check)

    s = sub.add_parser("simplex-embed", parents=[common], help="log-embedding of a simplex point")
    s.add_argument("--point", type=parse_point, required=True)
    s.add_argument("--to", type=parse_point)
    s.set_defaults(func=cmd_simplex_embed)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.eps is None:
        args.eps = convex.DEFAULT_EPS
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GeometryError, ValueError) as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
