"""Horofunctions, detour costs, parts and horoballs.

Closed forms on a polytope with normalized slacks ``s_i`` (``s_i(b) = 1``):

* reverse-Funk, boundary point ``x``:
  ``r_x(y) = log max_i s_i(x)/s_i(y) - log max_i s_i(x)``
* Funk Busemann point, dual face ``J`` with weights ``c_j = 1/<u_j, w>``
  for a witness ``w`` (scaled so ``max c_j = 1``):
  ``f(y) = log max_{j in J} c_j s_j(y)``
* Hilbert Busemann point: ``r_x + f`` with ``J`` inside the facets active at ``x``.

Reverse-Funk horofunctions are also available on ellipses, through the
cone gauge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq, linprog

from .convex import (ConvexBody, Face, active_facets, dual_faces, dual_of_primal,
                     face_relint_point, is_dual_face, primal_faces, primal_of_dual,
                     smallest_extreme_set)
from .errors import AmbiguousLimitError, GeometryError, NonConvergenceError
from .gauges import _dist, _gauge_pts, ball_polygon, ball_boundary, metric_name, slack_affine
from .regions import (RegionSample, halfspace_polygon, hausdorff_polygons,
                      intersect_polygons)

KINDS = ("reverse_funk", "funk_busemann", "hilbert")
GEOMETRY = {"reverse_funk": "reverse_funk", "funk_busemann": "funk", "hilbert": "hilbert"}


@dataclass(frozen=True, eq=False)
class Horofunction:
    """A closed-form horofunction normalized to vanish at the base point.

    Callable on interior points (any leading shape). ``weights`` are the
    canonical Funk weights aligned with ``dual_face``.
    """

    body: ConvexBody
    kind: str
    rev_point: np.ndarray | None = None
    dual_face: tuple[int, ...] = ()
    weights: np.ndarray | None = None

    def __repr__(self) -> str:
        parts = [self.kind]
        if self.rev_point is not None:
            parts.append(f"rev_point={np.round(self.rev_point, 12).tolist()}")
        if self.dual_face:
            parts.append(f"dual_face={list(self.dual_face)}")
            parts.append(f"weights={np.round(self.weights, 12).tolist()}")
        return f"Horofunction({', '.join(parts)})"

    @property
    def geometry(self) -> str:
        return GEOMETRY[self.kind]

    def _reverse_value(self, y) -> np.ndarray:
        x = self.rev_point
        body = self.body
        if body.is_polytope:
            sx = body.slack(x)
            return np.log(np.max(sx / body.slack(y), axis=-1)) - np.log(sx.max())
        return np.log(_gauge_pts(body, x, y)) - np.log(_gauge_pts(body, x, body.base_point))

    def _funk_value(self, y) -> np.ndarray:
        s = self.body.slack(y)[..., list(self.dual_face)]
        return np.log(np.max(self.weights * s, axis=-1))

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        if self.kind == "reverse_funk":
            out = self._reverse_value(y)
        elif self.kind == "funk_busemann":
            out = self._funk_value(y)
        else:
            out = self._reverse_value(y) + self._funk_value(y)
        return out if np.ndim(out) else float(out)

    def reverse_part(self) -> Horofunction | None:
        if self.rev_point is None:
            return None
        return Horofunction(self.body, "reverse_funk", rev_point=self.rev_point)

    def funk_part(self) -> Horofunction | None:
        if not self.dual_face:
            return None
        return Horofunction(self.body, "funk_busemann", dual_face=self.dual_face, weights=self.weights)

    @property
    def witness(self) -> np.ndarray | None:
        """A vector ``w`` with ``<u_j, w> = 1/c_j`` on the dual face, if one exists."""
        if not self.dual_face:
            return None
        u = self.body.dual_rays[list(self.dual_face)]
        target = 1.0 / self.weights
        w, *_ = np.linalg.lstsq(u, target, rcond=None)
        if np.max(np.abs(u @ w - target)) > 1e-9 * np.max(target):
            return None
        return w

    def same_as(self, other: Horofunction, tol: float = 1e-9) -> bool:
        if self.kind != other.kind or self.body is not other.body:
            return False
        if self.rev_point is not None and np.max(np.abs(self.rev_point - other.rev_point)) > tol:
            return False
        if self.dual_face != other.dual_face:
            return False
        return self.weights is None or bool(np.max(np.abs(self.weights - other.weights)) <= tol)

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.rev_point is not None:
            out["rev_point"] = self.rev_point.tolist()
        if self.dual_face:
            out["dual_face"] = list(self.dual_face)
            out["weights"] = self.weights.tolist()
            w = self.witness
            if w is not None:
                out["witness"] = w.tolist()
        return out


def canonical_weights(body: ConvexBody, dual_face: Sequence[int], witness) -> np.ndarray:
    w = np.asarray(witness, dtype=float)
    if w.shape[-1] == body.dim:
        w = body.lift(w)
    pair = body.dual_rays[list(dual_face)] @ w
    if np.any(pair <= 0):
        raise GeometryError("invalid witness: <u_j, witness> must be positive on the dual face")
    c = 1.0 / pair
    return c / c.max()


def _check_dual_face(body: ConvexBody, dual_face: Sequence[int]) -> tuple[int, ...]:
    body._need_polytope("Funk horofunctions")
    j = tuple(sorted(int(i) for i in dual_face))
    if not j:
        raise GeometryError("dual face must be nonempty")
    if len(j) == len(body.offsets) or not is_dual_face(body, j):
        raise GeometryError(f"{list(j)} is not a proper face of the dual cone")
    return j


def reverse_funk_horofunction(body: ConvexBody, x) -> Horofunction:
    x = body.require_boundary(x, "x")
    return Horofunction(body, "reverse_funk", rev_point=x.astype(float).copy())


def funk_busemann(body: ConvexBody, dual_face: Sequence[int], witness=None, weights=None) -> Horofunction:
    """Funk Busemann point for a proper dual face; ``witness`` defaults to ``lift(b)``."""
    j = _check_dual_face(body, dual_face)
    if weights is not None:
        c = np.asarray(weights, dtype=float).reshape(-1)
        if len(c) != len(j) or np.any(c <= 0):
            raise GeometryError("weights must be positive, one per dual ray")
        c = c / c.max()
    else:
        c = canonical_weights(body, j, body.base_point if witness is None else witness)
    return Horofunction(body, "funk_busemann", dual_face=j, weights=c)


def hilbert_horofunction(body: ConvexBody, x, dual_face: Sequence[int], witness=None,
                         weights=None) -> Horofunction:
    x = body.require_boundary(x, "x")
    f = funk_busemann(body, dual_face, witness, weights)
    exposed = set(active_facets(body, x))
    if not set(f.dual_face) <= exposed:
        raise GeometryError("E* not contained in exposed face of x "
                            f"(dual face {list(f.dual_face)}, exposed face {sorted(exposed)})")
    return Horofunction(body, "hilbert", rev_point=x.astype(float).copy(),
                        dual_face=f.dual_face, weights=f.weights)


def horofunction_from_dict(body: ConvexBody, spec: dict) -> Horofunction:
    kind = spec["kind"].replace("-", "_")
    if kind in ("reverse", "rev"):
        kind = "reverse_funk"
    if kind in ("funk",):
        kind = "funk_busemann"
    if kind == "reverse_funk":
        return reverse_funk_horofunction(body, spec["rev_point"])
    if kind == "funk_busemann":
        return funk_busemann(body, spec["dual_face"], spec.get("witness"), spec.get("weights"))
    if kind == "hilbert":
        return hilbert_horofunction(body, spec["rev_point"], spec["dual_face"],
                                    spec.get("witness"), spec.get("weights"))
    raise GeometryError(f"unknown horofunction kind {spec['kind']!r}")


def psi(body: ConvexBody, z, x, metric_kind: str = "hilbert"):
    """``psi_z(x) = d(x, z) - d(b, z)``."""
    kind = metric_name(metric_kind)
    z = body.require_interior(z, "z")
    x = body.require_interior(x, "x")
    out = _dist(body, x, z, kind) - _dist(body, body.base_point, z, kind)
    return out if np.ndim(out) else float(out)


def _psi_raw(body: ConvexBody, z, x, kind: str) -> np.ndarray:
    return _dist(body, x, z, kind) - _dist(body, body.base_point, z, kind)


# ---------------------------------------------------------------------------
# faces of the Hilbert geometry


def hilbert_on_face(body: ConvexBody, face_active: Sequence[int], p, q) -> float:
    """Hilbert distance inside the extreme set cut out by the facets ``face_active``.

    The face's own facets come from the remaining facets of the body.
    """
    rest = [i for i in range(len(body.offsets)) if i not in set(face_active)]
    if not rest:
        return 0.0
    sp, sq = body.slack(p)[rest], body.slack(q)[rest]
    r = sp / sq
    return float(max(np.log(r.max() / r.min()), 0.0))


def hilbert_on_dual_face(c1: np.ndarray, c2: np.ndarray) -> float:
    """``hil_E`` between two witnesses, given their canonical weights on ``E*``."""
    r = np.asarray(c2, dtype=float) / np.asarray(c1, dtype=float)
    return float(max(np.log(r.max() / r.min()), 0.0))


def detour_cost_reverse(body: ConvexBody, x, y) -> float:
    """Reverse-Funk detour cost ``H(r_x, r_y)`` (infinite unless y is in x's extreme set)."""
    body._need_polytope("detour_cost_reverse")
    x = body.require_boundary(x, "x")
    y = body.require_boundary(y, "y")
    ax = set(active_facets(body, x))
    if not ax <= set(active_facets(body, y)):
        return float("inf")
    rest = [i for i in range(len(body.offsets)) if i not in ax]
    sx, sy = body.slack(x), body.slack(y)
    rev_face = float(np.log(np.max(sy[rest] / sx[rest]))) if rest else 0.0
    return float(np.log(sx.max()) + rev_face - np.log(sy.max()))


def detour_metric(xi: Horofunction, eta: Horofunction) -> float:
    """Detour metric between two Busemann points of the same geometry."""
    if xi.kind != eta.kind:
        raise GeometryError("detour metric compares horofunctions of one geometry")
    body = xi.body
    if not body.is_polytope:
        raise GeometryError("closed-form detour metric needs a polytope")
    total = 0.0
    if xi.rev_point is not None:
        a1 = active_facets(body, xi.rev_point)
        a2 = active_facets(body, eta.rev_point)
        if a1 != a2:
            return float("inf")
        total += hilbert_on_face(body, a1, xi.rev_point, eta.rev_point)
    if xi.dual_face:
        if xi.dual_face != eta.dual_face:
            return float("inf")
        total += hilbert_on_dual_face(xi.weights, eta.weights)
    return total


def detour_metric_hilbert(xi: Horofunction, eta: Horofunction) -> float:
    """``hil_G(p, q) + hil_E(x, y)`` when both the primal and dual faces agree, else inf."""
    if xi.kind != "hilbert" or eta.kind != "hilbert":
        raise GeometryError("detour_metric_hilbert needs Hilbert Busemann points")
    return detour_metric(xi, eta)


def detour_metric_funk(xi: Horofunction, eta: Horofunction) -> float:
    if xi.kind != "funk_busemann" or eta.kind != "funk_busemann":
        raise GeometryError("detour_metric_funk needs Funk Busemann points")
    return detour_metric(xi, eta)


# ---------------------------------------------------------------------------
# generating paths and the numeric detour cost


def witness_point(body: ConvexBody, dual_face: Sequence[int], weights) -> np.ndarray:
    """Interior point ``p`` whose slacks on ``dual_face`` are proportional to ``1/weights``."""
    j = list(dual_face)
    sig, al = slack_affine(body)
    n = body.dim
    rest = [i for i in range(len(sig)) if i not in set(j)]
    # variables (p, t): maximise t with s_j(p) = t / c_j and s_i(p) >= t elsewhere
    c = np.zeros(n + 1)
    c[-1] = -1.0
    a_eq = np.hstack([-al[j], -(1.0 / np.asarray(weights))[:, None]])
    b_eq = -sig[j]
    a_ub = np.hstack([al[rest], np.ones((len(rest), 1))]) if rest else None
    b_ub = sig[rest] if rest else None
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                  bounds=[(None, None)] * n + [(0, 1)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-9:
        raise GeometryError("witness is not realized by an interior point; no straight-line generator")
    return res.x[:n]


def generating_path(xi: Horofunction) -> Callable[[float], np.ndarray]:
    """A path ``tau -> point`` (``tau`` in (0, 1/2]) converging to ``xi`` as ``tau -> 0``.

    Straight segments for reverse-Funk points, Funk points and Hilbert points
    whose dual face is the whole exposed face of the boundary point. When the
    dual face is smaller, the path leaves the boundary point tangentially:
    ``q + tau e + tau^2 (p - q)`` with ``e`` pointing into the face of ``J``.
    """
    body = xi.body
    b = body.base_point
    if xi.kind == "reverse_funk":
        q = xi.rev_point
        return lambda tau: q + tau * (b - q)
    p = witness_point(body, xi.dual_face, xi.weights)
    if xi.kind == "funk_busemann":
        q = face_relint_point(body, primal_of_dual(body, xi.dual_face))
        return lambda tau: q + tau * (p - q)
    q = xi.rev_point
    if set(xi.dual_face) == set(active_facets(body, q)):
        return lambda tau: q + tau * (p - q)
    e = face_relint_point(body, primal_of_dual(body, xi.dual_face)) - q
    return lambda tau: q + tau * e + tau * tau * (p - q)


@dataclass
class DetourEstimate:
    value: float
    converged: bool
    diverging: bool
    history: np.ndarray = field(repr=False)

    @property
    def flagged(self) -> bool:
        return not self.converged and not self.diverging


def detour_cost_numeric(xi: Horofunction, eta: Horofunction, clearance: float = 1e-12,
                        tol: float = 1e-6) -> DetourEstimate:
    """Limit of ``d(b, gamma) + eta(gamma)`` along the generating path of ``xi``.

    The path is refined geometrically (``tau_k = 2^-k / 2``) until the point
    is within ``clearance`` of the boundary. A steadily growing sequence is
    reported as divergent with value ``inf``.
    """
    if xi.geometry != eta.geometry:
        raise GeometryError("detour cost compares horofunctions of one geometry")
    body = xi.body
    kind = xi.geometry
    path = generating_path(xi)
    b = body.base_point
    vals = []
    tau = 0.5
    while len(vals) < 200:
        p = path(tau)
        if body.clearance(p) < clearance:
            break
        if body.clearance(p) > 0:
            vals.append(float(_dist(body, b, p, kind) + eta(p)))
        tau *= 0.5
    hist = np.array(vals)
    if len(hist) < 4:
        raise NonConvergenceError("generating path reached the boundary too early")
    inc = np.diff(hist[-6:])
    if np.all(inc > 0.1):
        return DetourEstimate(float("inf"), False, True, hist)
    converged = bool(abs(hist[-1] - hist[-2]) <= tol)
    return DetourEstimate(float(hist[-1]), converged, False, hist)


def downhill_point(xi: Horofunction, x, step: float) -> np.ndarray:
    """Point ``y`` with ``d(x, y) = step`` on the segment from ``x`` toward xi's anchor.

    Along that segment ``xi(x) - xi(y) = d(x, y)``.
    """
    body = xi.body
    x = body.require_interior(x, "x")
    if xi.rev_point is not None:
        q = xi.rev_point
    else:
        q = face_relint_point(body, primal_of_dual(body, xi.dual_face))
    kind = xi.geometry
    d = q - x
    f = lambda s: float(_dist(body, x, x + s * d, kind)) - step
    hi = 1.0 - 1e-15
    if f(hi) < 0:
        raise GeometryError("step exceeds the distance to the boundary along the descent segment")
    s = brentq(f, 0.0, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps)
    return x + s * d


# ---------------------------------------------------------------------------
# sequences and their limits


def straight_line_limit(body: ConvexBody, target, start=None, metric_kind: str = "hilbert") -> Horofunction:
    """Predicted limit of ``psi_z`` as ``z`` runs straight from ``start`` to the boundary point ``target``.

    The Funk part lives on every facet active at ``target``, with weights
    inversely proportional to the slacks at ``start`` (default: the base point).
    """
    kind = metric_name(metric_kind)
    x = body.require_boundary(target, "target")
    if kind == "reverse_funk":
        return reverse_funk_horofunction(body, x)
    p = body.base_point if start is None else body.require_interior(start, "start")
    j = active_facets(body, x)
    if kind == "funk":
        return funk_busemann(body, j, witness=p)
    return hilbert_horofunction(body, x, j, witness=p)


def straight_line_sequence(body: ConvexBody, target, start=None) -> Callable[[int], np.ndarray]:
    """``n -> target + (start - target) / n``."""
    x = np.asarray(target, dtype=float)
    p = body.base_point if start is None else np.asarray(start, dtype=float)
    return lambda n: x + (p - x) / n


def probe_points(body: ConvexBody, shrink: Sequence[float] = (0.25, 0.5),
                 edge_shrink: Sequence[float] = (0.5, 0.9, 0.99)) -> np.ndarray:
    """Deterministic interior probe set.

    The base point, vertices pulled in by ``shrink`` and, for polytopes,
    facet centroids pulled in by ``edge_shrink``. Points close to facet
    centres separate Funk horofunctions whose dual faces differ only by
    a facet that dominates away from the vertices.
    """
    b = body.base_point
    if body.is_polytope:
        anchors = body.vertices
    else:
        ang = 2 * np.pi * np.arange(8) / 8
        dirs = np.zeros((8, body.dim))
        dirs[:, 0], dirs[:, 1 % body.dim] = np.cos(ang), np.sin(ang)
        anchors = b + body.ray_exit(np.broadcast_to(b, dirs.shape), dirs)[:, None] * dirs
    pts = [b] + [b + r * (v - b) for r in shrink for v in anchors]
    if body.is_polytope:
        on = body.facet_distance(body.vertices) <= 1e-9 * (1 + np.abs(body.vertices).max())
        mids = [body.vertices[on[:, i]].mean(axis=0) for i in range(on.shape[1])]
        pts += [b + r * (m - b) for r in edge_shrink for m in mids]
    return np.array(pts)


@dataclass
class LimitResult:
    """Outcome of :func:`horofunction_limit`.

    ``status`` is ``"boundary"`` on success, ``"interior"`` when the sequence
    converges inside the body, ``"oscillating"`` when psi does not settle,
    and ``"unmatched"`` when no closed form fits.
    """

    status: str
    horofunction: Horofunction | None
    limit_point: np.ndarray | None
    defect: float
    oscillation: float
    message: str = ""
    candidates: list = field(default_factory=list, repr=False)
    raw_defect: float = np.nan

    @property
    def converged(self) -> bool:
        return self.status == "boundary"


def _extrapolate(z1: np.ndarray, z2: np.ndarray, z3: np.ndarray) -> np.ndarray:
    """Componentwise Aitken extrapolation; exact for power-law tails on a decade grid."""
    d1, d2 = z2 - z1, z3 - z2
    den = d2 - d1
    out = z3.copy()
    ok = np.abs(den) > 1e-300
    ratio = np.where(ok, d2 / np.where(ok, den, 1.0), 0.0)
    # only trust steady geometric convergence (|d2| < |d1| with equal sign)
    ok &= (d1 * d2 > 0) & (np.abs(d2) < np.abs(d1))
    out[ok] = z3[ok] - (d2 * ratio)[ok]
    return out


def _snap_to_boundary(body: ConvexBody, x: np.ndarray, active_tol: float) -> np.ndarray:
    if not body.is_polytope:
        r = np.linalg.norm(body._whiten(x))
        return body.center + (x - body.center) / r
    dist = body.facet_distance(x)
    act = np.flatnonzero(dist <= active_tol)
    if len(act) == 0:
        act = np.array([int(np.argmin(dist))])
    a = body.normals[act]
    corr, *_ = np.linalg.lstsq(a, dist[act], rcond=None)
    return x + corr


def horofunction_limit(body: ConvexBody, sequence: Callable[[int], Sequence[float]],
                       metric_kind: str = "hilbert", probe=None, n_max: int = 10**6,
                       osc_tol: float = 1e-4, match_tol: float = 1e-4,
                       active_tol: float = 1e-6, equiv_tol: float = 1e-9) -> LimitResult:
    """Identify the limit of ``psi_{z_n}`` among closed-form Busemann points.

    The accumulation point, the pointwise limit of psi on the probe set and
    the Funk weights are each extrapolated from ``n_max/100``, ``n_max/10``
    and ``n_max``; candidates are the horofunctions attached to the faces at
    the limit point. ``defect`` compares against the extrapolated limit,
    ``raw_defect`` against ``psi_{z_{n_max}}`` itself. Among the candidates matching ``psi_{z_{n_max}}`` on the
    probe set, the one with the smallest dual face wins provided all
    matches agree on the probe set to ``equiv_tol``; otherwise
    :class:`AmbiguousLimitError` is raised.
    """
    kind = metric_name(metric_kind)
    probe = probe_points(body) if probe is None else np.asarray(probe, dtype=float)
    n1, n2, n3 = max(n_max // 100, 1), max(n_max // 10, 2), n_max
    zs = [body.require_interior(np.asarray(sequence(n), dtype=float), f"z_{n}") for n in (n1, n2, n3)]
    decade = np.unique(np.geomspace(n2, n3, 6).astype(int))
    psis = np.array([_psi_raw(body, body.require_interior(np.asarray(sequence(n), dtype=float)), probe, kind)
                     for n in decade])
    osc = float(np.max(psis.max(axis=0) - psis.min(axis=0)))
    # slow but steady O(1/n) convergence is not oscillation: psi moves
    # monotonically over the last decade and by less than over the one before
    prev = _psi_raw(body, zs[0], probe, kind)
    d_prev, d_last = psis[0] - prev, psis[-1] - psis[0]
    steps = np.diff(psis, axis=0)
    monotone = np.all((steps * np.sign(d_last) >= -1e-13))
    settling = osc <= osc_tol or (monotone and np.all(np.abs(d_last) <= 0.5 * np.abs(d_prev) + 1e-13)
                                  and osc <= 100 * osc_tol)
    c1, c3 = body.clearance(zs[0]), body.clearance(zs[2])
    leaving = c3 <= 1e-3 and c3 <= 0.5 * c1
    if not leaving:
        if settling:
            return LimitResult("interior", None, zs[2], np.nan, osc, "converges in X, not boundary")
        return LimitResult("oscillating", None, None, np.nan, osc, "psi does not settle")
    if not settling:
        return LimitResult("oscillating", None, None, np.nan, osc,
                           f"psi oscillates by {osc:.3g} over the last decade")
    xbar = _snap_to_boundary(body, _extrapolate(*zs), active_tol)
    raw = [_psi_raw(body, z, probe, kind) for z in zs]
    target = _extrapolate(*raw)

    cands: list[Horofunction] = []
    if kind == "reverse_funk" or not body.is_polytope:
        if kind != "reverse_funk":
            raise GeometryError("Funk and Hilbert limits need a polytope")
        cands.append(Horofunction(body, "reverse_funk", rev_point=xbar))
    else:
        act = set(active_facets(body, xbar, tol=active_tol))
        slacks = [body.slack(z) for z in zs]
        for face in dual_faces(body):
            if not set(face.index_set) <= act:
                continue
            idx = list(face.index_set)
            cs = [1.0 / sz[idx] for sz in slacks]
            c = np.clip(_extrapolate(*[c / c.max() for c in cs]), 1e-300, None)
            c = c / c.max()
            f = Horofunction(body, "funk_busemann", dual_face=face.index_set, weights=c)
            if kind == "funk":
                cands.append(f)
            else:
                cands.append(Horofunction(body, "hilbert", rev_point=xbar,
                                          dual_face=face.index_set, weights=c))
    defects = [float(np.max(np.abs(h(probe) - target))) for h in cands]
    order = np.argsort(defects)
    matches = [cands[i] for i in order if defects[i] <= match_tol]
    best = int(order[0])
    if not matches:
        return LimitResult("unmatched", None, xbar, defects[best], osc,
                           f"no closed form within {match_tol:g} (best {defects[best]:.3g})", cands)
    vals = [m(probe) for m in matches]
    inequivalent = [m for m, v in zip(matches, vals) if np.max(np.abs(v - vals[0])) > equiv_tol]
    if inequivalent:
        raise AmbiguousLimitError("ambiguous limit: " + "; ".join(repr(m) for m in matches), matches)
    chosen = min(matches, key=lambda h: (len(h.dual_face), defects[cands.index(h)]))
    raw_def = float(np.max(np.abs(chosen(probe) - raw[2])))
    return LimitResult("boundary", chosen, xbar, defects[cands.index(chosen)], osc, "", cands,
                       raw_defect=raw_def)


# ---------------------------------------------------------------------------
# parts


@dataclass(frozen=True)
class PartDescriptor:
    """One part of the Hilbert horoboundary: primal face ``G`` and dual face ``E*``.

    ``factor_dims`` are the dimensions of the reverse-Funk factor (the
    relative interior of ``G``) and of the Funk factor (a cross-section of
    the cone ``E``).
    """

    primal_face: Face
    dual_face: Face
    factor_dims: tuple[int, int]
    vertex_type: bool
    facet_type: bool

    @property
    def singleton_factor(self) -> bool:
        return self.vertex_type or self.facet_type

    @property
    def label(self) -> str:
        if self.vertex_type and self.facet_type:
            return "vertex+facet"
        return "vertex" if self.vertex_type else "facet" if self.facet_type else "mixed"


def enumerate_parts(body: ConvexBody) -> list[PartDescriptor]:
    """All compatible (G, E*) pairs: E* is the dual face of some face F containing G."""
    body._need_polytope("enumerate_parts")
    n = body.dim
    faces = primal_faces(body)
    out = []
    for g in faces:
        gset = set(g.index_set)
        for f in faces:
            if not gset <= set(f.index_set):
                continue
            e = dual_of_primal(body, f)
            own = dual_of_primal(body, g)
            vertex_type = g.dim == 0 and e.index_set == own.index_set
            facet_type = g.dim == n - 1 and f.index_set == g.index_set
            out.append(PartDescriptor(g, e, (g.dim, e.dim), vertex_type, facet_type))
    return out


def part_of(xi: Horofunction) -> PartDescriptor:
    """Part containing a Hilbert Busemann point."""
    if xi.kind != "hilbert":
        raise GeometryError("parts are defined here for Hilbert Busemann points")
    body = xi.body
    g = smallest_extreme_set(body, xi.rev_point)
    for p in enumerate_parts(body):
        if p.primal_face == g and p.dual_face.index_set == xi.dual_face:
            return p
    raise GeometryError("horofunction is not compatible with any part")


# ---------------------------------------------------------------------------
# horoballs


def horoball_halfspaces(xi: Horofunction, alpha: float):
    """Exact ``(C, d)`` with ``slv(xi, alpha) = {y in closure D : C y <= d}`` (polytopes)."""
    body = xi.body
    body._need_polytope("horoball_halfspaces")
    sig, al = slack_affine(body)
    rows, rhs = [al], [sig]
    ea = np.exp(alpha)
    if xi.kind == "reverse_funk":
        sx = body.slack(xi.rev_point)
        m = sx.max()
        rows.append(al)
        rhs.append(sig - sx / (ea * m))
    elif xi.kind == "funk_busemann":
        j = list(xi.dual_face)
        rows.append(-al[j])
        rhs.append(ea / xi.weights - sig[j])
    else:
        sx = body.slack(xi.rev_point)
        m = sx.max()
        for cj, j in zip(xi.weights, xi.dual_face):
            # c_j s_j(y) s_i(x) <= e^alpha m s_i(y) for every facet i
            rows.append(-cj * sx[:, None] * al[j][None, :] + ea * m * al)
            rhs.append(ea * m * sig - cj * sx * sig[j])
    return np.vstack(rows), np.concatenate(rhs)


def horoball_polygon(xi: Horofunction, alpha: float) -> np.ndarray:
    c, d = horoball_halfspaces(xi, alpha)
    return halfspace_polygon(c, d, box=10 * (1 + np.abs(xi.body.vertices).max()))


def _inner_point(xi: Horofunction, alpha: float) -> np.ndarray | None:
    body = xi.body
    if xi(body.base_point) < alpha - 1e-3:
        return body.base_point
    path = generating_path(xi)
    taus = 0.5 ** np.arange(1, 45)
    pts = [path(t) for t in taus]
    pts = [p for p in pts if body.clearance(p) > 1e-13]
    vals = np.array([xi(p) for p in pts])
    if vals.min() >= alpha:
        return None
    goal = max(alpha - 1.0, 0.5 * (alpha + vals.min()))
    k = int(np.flatnonzero(vals <= goal)[0])
    return pts[k]


def horoball(xi: Horofunction, alpha: float, samples: int = 256) -> RegionSample:
    """Sampled boundary of ``slv(xi, alpha)`` by bisection along rays.

    Rays start at the base point when it lies inside the sublevel set, and
    otherwise at a point of the set on the generating path of ``xi``.
    """
    body = xi.body
    if body.dim != 2:
        raise GeometryError("horoball sampling needs a planar body")
    if samples < 3:
        raise ValueError("need at least 3 samples")
    c = _inner_point(xi, alpha)
    if c is None:
        return RegionSample(np.empty((0, 2)), closed_hint=True, empty=True)
    ang = 2 * np.pi * np.arange(samples) / samples
    dirs = np.c_[np.cos(ang), np.sin(ang)]
    exits = body.ray_exit(np.broadcast_to(c, dirs.shape), dirs)
    pts = np.empty((samples, 2))
    clipped = np.zeros(samples, dtype=bool)
    grid = 1.0 - np.geomspace(1.0, 1e-14, 80)
    for k, (u, tmax) in enumerate(zip(dirs, exits)):
        s_grid = tmax * grid
        vals = np.asarray(xi(c + s_grid[:, None] * u)) - alpha
        out = np.flatnonzero(vals > 0)
        if len(out) == 0:
            pts[k], clipped[k] = c + tmax * u, True
            continue
        i = int(out[0])
        f = lambda s: float(xi(c + s * u)) - alpha
        s = brentq(f, s_grid[i - 1] if i > 0 else 0.0, s_grid[i], xtol=1e-16,
                   rtol=4 * np.finfo(float).eps, maxiter=500)
        pts[k] = c + s * u
    return RegionSample(pts, closed_hint=True, clipped=clipped)


# ---------------------------------------------------------------------------
# ball -> horoball convergence


@dataclass
class ConvergenceRow:
    n: int
    radius: float
    hausdorff: float


def _sampled_polygon(region: RegionSample) -> np.ndarray:
    from scipy.spatial import ConvexHull
    pts = region.points
    if len(pts) < 3:
        return pts
    hull = ConvexHull(pts)
    return pts[hull.vertices]


def ball_horoball_convergence(xi: Horofunction, sequence: Callable[[int], Sequence[float]],
                              alpha: float, window: float, n_values: Sequence[int],
                              samples: int = 720) -> list[ConvergenceRow]:
    """Windowed Hausdorff distance between ``B(z_n, d(b, z_n) + alpha)`` and ``slv(xi, alpha)``.

    The window is the Hilbert ball of radius ``window`` about the base
    point. On polygons every set involved is an exact convex polygon; on
    ellipses the sets are sampled.
    """
    body = xi.body
    kind = xi.geometry
    b = body.base_point
    exact = body.is_polytope
    if exact:
        win = ball_polygon(body, b, window, "hilbert")
        horo = intersect_polygons(horoball_polygon(xi, alpha), win)
    else:
        win = _sampled_polygon(ball_boundary(body, b, window, "hilbert", samples))
        horo = intersect_polygons(_sampled_polygon(horoball(xi, alpha, samples)), win)
    rows = []
    for n in n_values:
        z = body.require_interior(np.asarray(sequence(n), dtype=float), f"z_{n}")
        radius = float(_dist(body, b, z, kind) + alpha)
        if exact:
            ball = ball_polygon(body, z, radius, kind)
        else:
            ball = _sampled_polygon(ball_boundary(body, z, radius, kind, samples))
        ball = intersect_polygons(ball, win)
        if len(ball) == 0 and len(horo) == 0:
            raise GeometryError("window has empty intersection with both sets; increase R")
        rows.append(ConvergenceRow(int(n), radius, hausdorff_polygons(ball, horo)))
    return rows


# ---------------------------------------------------------------------------
# almost-geodesics


@dataclass
class AlmostGeodesicReport:
    accepted: bool
    worst_defect: float
    threshold_index: int


def almost_geodesic_check(body: ConvexBody, path: Sequence[tuple[float, Sequence[float]]],
                          metric_kind: str, eps: float) -> AlmostGeodesicReport:
    """Test ``|d(g0, gs) + d(gs, gt) - t| < eps`` for sampled ``s <= t`` past a threshold.

    The threshold is the first index from which every later pair passes; the
    path is accepted when that tail holds at least half of the samples.
    """
    kind = metric_name(metric_kind)
    if len(path) < 3:
        raise ValueError("need at least 3 samples")
    t = np.array([float(p[0]) for p in path])
    pts = np.array([np.asarray(p[1], dtype=float) for p in path])
    if abs(t[0]) > 0 or np.any(np.diff(t) <= 0):
        raise ValueError("times must start at 0 and increase")
    body.require_interior(pts, "path point")
    m = len(t)
    d0 = _dist(body, pts[0], pts, kind)
    dd = _dist(body, pts[:, None, :], pts[None, :, :], kind)
    defect = np.abs(d0[:, None] + dd - t[None, :])
    defect = np.triu(defect)
    # tail_worst[k] = max defect over pairs with k <= s <= t
    tail_worst = np.array([defect[k:, k:].max() for k in range(m)])
    ok = np.flatnonzero(tail_worst < eps)
    k = int(ok[0]) if len(ok) else m
    accepted = k <= m // 2
    worst = float(tail_worst[k]) if accepted else float(tail_worst[0])
    return AlmostGeodesicReport(accepted, worst, k)
