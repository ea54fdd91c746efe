"""Funk, reverse-Funk and Hilbert distances, geodesics and metric balls.

All three are read off the cone gauge: ``funk(x, y) = log M(x/y)`` on
lifted points, ``rev(x, y) = funk(y, x)`` and ``hil = funk + rev``. For
polytopes the gauge reduces to a maximum of slack ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .cones import LorentzCone, PolyhedralCone
from .convex import ConvexBody, line_boundary_hits
from .errors import GeometryError
from .regions import RegionSample, halfspace_polygon

METRICS = ("funk", "reverse_funk", "hilbert")
_ALIASES = {"rev": "reverse_funk", "reverse": "reverse_funk", "hil": "hilbert",
            "reverse-funk": "reverse_funk"}


def metric_name(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in METRICS:
        raise ValueError(f"unknown metric {kind!r}; expected one of {METRICS}")
    return kind


def gauge(body_or_cone, x, y) -> np.ndarray:
    """``M(x/y; C)``. Points of the body (length ``n``) are lifted to ``(p, 1)``."""
    if isinstance(body_or_cone, (PolyhedralCone, LorentzCone)):
        return body_or_cone.gauge(x, y)
    body: ConvexBody = body_or_cone
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] == body.dim:
        x = body.lift(x)
    if y.shape[-1] == body.dim:
        y = body.lift(y)
    return body.cone.gauge(x, y)


# Unchecked kernels; callers validate. Points may sit within eps of the boundary.

def _gauge_pts(body: ConvexBody, x, y) -> np.ndarray:
    if body.is_polytope:
        return np.max(body.slack(x) / body.slack(y), axis=-1)
    return body.cone.gauge(body.lift(x), body.lift(y))


def _funk(body: ConvexBody, x, y) -> np.ndarray:
    return np.maximum(np.log(_gauge_pts(body, x, y)), 0.0)


def _hilbert(body: ConvexBody, x, y) -> np.ndarray:
    if body.is_polytope:
        r = body.slack(x) / body.slack(y)
        return np.maximum(np.log(r.max(axis=-1) / r.min(axis=-1)), 0.0)
    return np.maximum(np.log(_gauge_pts(body, x, y) * _gauge_pts(body, y, x)), 0.0)


def _dist(body: ConvexBody, x, y, kind: str) -> np.ndarray:
    if kind == "funk":
        return _funk(body, x, y)
    if kind == "reverse_funk":
        return _funk(body, y, x)
    return _hilbert(body, x, y)


def _zero_coincident(body: ConvexBody, x, y, value) -> np.ndarray:
    close = np.linalg.norm(np.asarray(x) - np.asarray(y), axis=-1) < body.eps
    out = np.where(close, 0.0, value)
    return out if out.ndim else float(out)


def funk_dist(body: ConvexBody, x, y):
    x = body.require_interior(x, "x")
    y = body.require_interior(y, "y")
    return _zero_coincident(body, x, y, _funk(body, x, y))


def reverse_funk_dist(body: ConvexBody, x, y):
    """``rev(x, y) = funk(y, x)``; ``y`` may lie on the boundary."""
    x = body.require_interior(x, "x")
    y = np.asarray(y, dtype=float)
    if np.any(~body.contains(y)):
        raise GeometryError("y lies outside the closed body")
    return _zero_coincident(body, x, y, _funk(body, y, x))


def hilbert_dist(body: ConvexBody, x, y):
    x = body.require_interior(x, "x")
    y = body.require_interior(y, "y")
    return _zero_coincident(body, x, y, _hilbert(body, x, y))


def distance(body: ConvexBody, x, y, kind: str = "hilbert"):
    kind = metric_name(kind)
    if kind == "funk":
        return funk_dist(body, x, y)
    if kind == "reverse_funk":
        return reverse_funk_dist(body, x, y)
    return hilbert_dist(body, x, y)


def symmetrized(body: ConvexBody, x, y):
    """``d_sym`` of the Funk and reverse-Funk metrics, which is the Hilbert metric."""
    return hilbert_dist(body, x, y)


def cross_ratio_distances(body: ConvexBody, x, y) -> tuple[float, float, float]:
    """``(funk, rev, hil)`` from the Euclidean cross ratio of ``w, x, y, z``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.linalg.norm(x - y) < body.eps:
        return 0.0, 0.0, 0.0
    w, z = line_boundary_hits(body, x, y)
    zx, zy = np.linalg.norm(z - x), np.linalg.norm(z - y)
    wx, wy = np.linalg.norm(w - x), np.linalg.norm(w - y)
    f = float(np.log(zx / zy))
    r = float(np.log(wy / wx))
    return f, r, float(np.log((zx * wy) / (zy * wx)))


# ---------------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class GeodesicParam:
    """Unit-speed straight-line geodesic from ``x`` to ``y``; call with ``t`` in [0, length]."""

    body: ConvexBody
    x: np.ndarray
    y: np.ndarray
    metric_kind: str
    length: float
    anchor: np.ndarray  # boundary point used by the closed forms

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < -1e-12) or np.any(t > self.length + 1e-12):
            raise ValueError(f"t must lie in [0, {self.length}]")
        if self.metric_kind == "funk":
            # |z gamma(t)| = |z x| e^{-t}
            e = np.exp(-t)[..., None]
            return self.anchor + (self.x - self.anchor) * e
        if self.metric_kind == "reverse_funk":
            # |w gamma(t)| = |w x| e^{t}
            e = np.exp(t)[..., None]
            return self.anchor + (self.x - self.anchor) * e
        d = self.y - self.x
        flat = np.atleast_1d(t)
        s = np.empty(flat.shape)
        for i, ti in enumerate(flat):
            if ti <= 0:
                s[i] = 0.0
            elif ti >= self.length:
                s[i] = 1.0
            else:
                s[i] = brentq(lambda u: _hilbert(self.body, self.x, self.x + u * d) - ti,
                              0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        pts = self.x + s[:, None] * d
        return pts.reshape(t.shape + (self.body.dim,))


def geodesic(body: ConvexBody, x, y, metric_kind: str = "hilbert") -> GeodesicParam:
    kind = metric_name(metric_kind)
    x = body.require_interior(x, "x")
    y = body.require_interior(y, "y")
    w, z = line_boundary_hits(body, x, y)
    length = float(_dist(body, x, y, kind))
    anchor = w if kind == "reverse_funk" else z
    return GeodesicParam(body, x, y, kind, length, anchor)


# ---------------------------------------------------------------------------
# balls


def _directions(n_samples: int) -> np.ndarray:
    ang = 2 * np.pi * np.arange(n_samples) / n_samples
    return np.c_[np.cos(ang), np.sin(ang)]


def ball_boundary(body: ConvexBody, center, radius: float, metric_kind: str = "hilbert",
                  samples: int = 256) -> RegionSample:
    """Boundary of the right ball ``{x : d(x, center) <= radius}`` by radial bisection."""
    if body.dim != 2:
        raise GeometryError("ball_boundary needs a planar body")
    if samples < 3:
        raise ValueError("need at least 3 samples")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    kind = metric_name(metric_kind)
    c = body.require_interior(center, "center")
    if radius == 0:
        return RegionSample(np.repeat(c[None], samples, axis=0), closed_hint=True)
    dirs = _directions(samples)
    exits = body.ray_exit(np.broadcast_to(c, dirs.shape), dirs)
    pts = np.empty((samples, 2))
    clipped = np.zeros(samples, dtype=bool)
    for k, (u, tmax) in enumerate(zip(dirs, exits)):
        def f(s):
            try:
                return float(_dist(body, c + s * u, c, kind)) - radius
            except GeometryError:  # rounding put the probe just outside
                return np.inf
        gap = 1e-15
        hi = tmax * (1 - gap)
        while gap < 1e-6 and not np.isfinite(f(hi)):
            gap *= 10
            hi = tmax * (1 - gap)
        if f(hi) <= 0:
            pts[k], clipped[k] = c + tmax * u, True
            continue
        s = brentq(f, 0.0, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=500)
        pts[k] = c + s * u
    return RegionSample(pts, closed_hint=True, clipped=clipped)


def slack_affine(body: ConvexBody) -> tuple[np.ndarray, np.ndarray]:
    """``(sigma, alpha)`` with ``slack_i(x) = sigma_i - alpha_i . x``."""
    g = body.facet_distance(body.base_point)
    return body.offsets / g, body.normals / g[:, None]


def ball_halfspaces(body: ConvexBody, center, radius: float, metric_kind: str = "hilbert"):
    """Exact half-space form ``(C, d)`` of a right ball in a polytope, ``C x <= d``.

    Each metric's ball is cut out by inequalities linear in ``x``:
    funk ``s_i(x) <= e^r s_i(z)``, reverse-Funk ``s_i(x) >= e^{-r} s_i(z)``,
    Hilbert ``s_k(z) s_i(x) <= e^r s_i(z) s_k(x)``.
    """
    body._need_polytope("ball_halfspaces")
    kind = metric_name(metric_kind)
    sig, al = slack_affine(body)
    sz = body.slack(np.asarray(center, dtype=float))
    er = np.exp(radius)
    rows, rhs = [al], [sig]  # closed body
    if kind == "funk":
        rows.append(-al)
        rhs.append(er * sz - sig)
    elif kind == "reverse_funk":
        rows.append(al)
        rhs.append(sig - sz / er)
    else:
        k = len(sig)
        i, j = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
        i, j = i.ravel(), j.ravel()
        mask = i != j
        i, j = i[mask], j[mask]
        rows.append(-sz[j, None] * al[i] + er * sz[i, None] * al[j])
        rhs.append(er * sz[i] * sig[j] - sz[j] * sig[i])
    return np.vstack(rows), np.concatenate(rhs)


def ball_polygon(body: ConvexBody, center, radius: float, metric_kind: str = "hilbert") -> np.ndarray:
    c, d = ball_halfspaces(body, center, radius, metric_kind)
    return halfspace_polygon(c, d, box=10 * (1 + np.abs(body.vertices).max()))
