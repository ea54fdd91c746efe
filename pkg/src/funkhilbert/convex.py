"""Convex bodies, their lifted cones, and face lattices.

A body is either a bounded full-dimensional polytope, carried in both
vertex and facet form, or an ellipse/ellipsoid. Every body has a
designated interior base point ``b``.

Facets are stored with unit outer normals ``a_i`` and offsets ``beta_i``
so that the body is ``{p : a_i . p <= beta_i}``. The dual rays of the
cone over the body are ``u_i = (-a_i, beta_i)`` rescaled so that
``<u_i, (b, 1)> = 1``; the pairing ``<u_i, (p, 1)>`` is the *slack* of
facet ``i`` at ``p``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from .cones import LorentzCone, PolyhedralCone
from .errors import GeometryError

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Face:
    """A face of the closed body (``primal``) or of the dual cone (``dual``).

    Primal faces are indexed by vertex indices, dual faces by facet
    (dual-ray) indices. For dual faces ``dim`` is the dimension of the
    corresponding face of the polar body, i.e. ``rank - 1``.
    """

    side: str
    index_set: tuple[int, ...]
    dim: int


@dataclass(frozen=True, eq=False)
class ConvexBody:
    kind: str
    dim: int
    base_point: np.ndarray
    vertices: np.ndarray | None = None
    normals: np.ndarray | None = None
    offsets: np.ndarray | None = None
    center: np.ndarray | None = None
    axes: np.ndarray | None = None
    rotation: np.ndarray | None = None
    eps: float = DEFAULT_EPS

    def __repr__(self) -> str:
        if self.kind == "polytope":
            return (f"ConvexBody(polytope, dim={self.dim}, "
                    f"{len(self.vertices)} vertices, {len(self.offsets)} facets)")
        return f"ConvexBody(ellipse, center={self.center.tolist()}, axes={self.axes.tolist()})"

    @property
    def is_polytope(self) -> bool:
        return self.kind == "polytope"

    def _need_polytope(self, what: str) -> None:
        if not self.is_polytope:
            raise GeometryError(f"{what} is only available for polytopes")

    # -- facet data ------------------------------------------------------

    @property
    def facets(self) -> list[tuple[np.ndarray, float]]:
        self._need_polytope("facet data")
        return [(a, float(beta)) for a, beta in zip(self.normals, self.offsets)]

    def facet_distance(self, points) -> np.ndarray:
        """Euclidean distance from each point to each facet hyperplane (signed)."""
        p = np.asarray(points, dtype=float)
        return self.offsets - p @ self.normals.T

    @cached_property
    def _base_distance(self) -> np.ndarray:
        return self.facet_distance(self.base_point)

    def slack(self, points) -> np.ndarray:
        """Normalized slacks ``<u_i, lift(p)>``; equal to 1 at the base point."""
        return self.facet_distance(points) / self._base_distance

    @cached_property
    def dual_rays(self) -> np.ndarray:
        self._need_polytope("dual rays")
        u = np.hstack([-self.normals, self.offsets[:, None]])
        return u / self._base_distance[:, None]

    @cached_property
    def cone(self):
        """The open cone over the body, ``{lambda (p, 1) : p in D, lambda > 0}``."""
        if self.is_polytope:
            rays = np.hstack([self.vertices, np.ones((len(self.vertices), 1))])
            return PolyhedralCone(self.dual_rays, rays=rays)
        return LorentzCone(self.dim + 1, transform=self.lorentz_transform)

    # -- ellipse data ----------------------------------------------------

    def _whiten(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return ((p - self.center) @ self.rotation) / self.axes

    @cached_property
    def lorentz_transform(self) -> np.ndarray:
        """Linear map sending the cone over the ellipse onto the standard Lorentz cone."""
        n = self.dim
        t = np.zeros((n + 1, n + 1))
        t[0, n] = 1.0
        w = self.rotation.T / self.axes[:, None]
        t[1:, :n] = w
        t[1:, n] = -w @ self.center
        return t

    # -- membership --------------------------------------------------------

    @staticmethod
    def lift(points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return np.concatenate([p, np.ones(p.shape[:-1] + (1,))], axis=-1)

    def clearance(self, points) -> np.ndarray:
        """Signed (approximate, for ellipses) Euclidean distance to the boundary."""
        if self.is_polytope:
            return self.facet_distance(points).min(axis=-1)
        r = np.linalg.norm(self._whiten(points), axis=-1)
        return (1.0 - r) * self.axes.min()

    def is_interior(self, points) -> np.ndarray:
        return self.clearance(points) > self.eps

    def contains(self, points) -> np.ndarray:
        return self.clearance(points) >= -self.eps

    def is_boundary(self, points) -> np.ndarray:
        return np.abs(self.clearance(points)) <= self.eps

    def require_interior(self, points, name: str = "point") -> np.ndarray:
        p = np.asarray(points, dtype=float)
        if p.shape[-1] != self.dim:
            raise GeometryError(f"{name} has dimension {p.shape[-1]}, body has {self.dim}")
        c = self.clearance(p)
        if np.any(c < -self.eps):
            raise GeometryError(f"{name} lies outside the body")
        if np.any(c <= self.eps):
            raise GeometryError(f"{name} is not an interior point (it lies on the boundary)")
        return p

    def require_boundary(self, points, name: str = "point") -> np.ndarray:
        p = np.asarray(points, dtype=float)
        if p.shape[-1] != self.dim:
            raise GeometryError(f"{name} has dimension {p.shape[-1]}, body has {self.dim}")
        c = self.clearance(p)
        if np.any(c < -self.eps):
            raise GeometryError(f"{name} lies outside the closed body")
        if np.any(c > self.eps):
            raise GeometryError(f"{name} is an interior point, a boundary point is required")
        return p

    def ray_exit(self, origin, direction) -> np.ndarray:
        """Largest ``t`` with ``origin + t * direction`` in the closed body.

        Broadcasts over leading axes of ``origin`` and ``direction``.
        """
        x = np.asarray(origin, dtype=float)
        d = np.asarray(direction, dtype=float)
        if self.is_polytope:
            ad = d @ self.normals.T
            gap = self.facet_distance(x)
            gap = np.broadcast_to(gap, np.broadcast_shapes(gap.shape, ad.shape))
            with np.errstate(divide="ignore", invalid="ignore"):
                t = np.where(ad > 0, gap / np.where(ad > 0, ad, 1.0), np.inf)
            return np.maximum(t.min(axis=-1), 0.0)
        wx = self._whiten(x)
        wd = (d @ self.rotation) / self.axes
        qa = np.sum(wd * wd, axis=-1)
        qb = np.sum(wx * wd, axis=-1)
        qc = np.sum(wx * wx, axis=-1) - 1.0
        disc = np.maximum(qb * qb - qa * qc, 0.0)
        root = np.sqrt(disc)
        # positive root of qa t^2 + 2 qb t + qc = 0, written to avoid cancellation
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(qb > 0, -qc / (qb + root), (root - qb) / qa)
        return np.maximum(t, 0.0)

    def to_dict(self) -> dict[str, Any]:
        if self.is_polytope:
            return {
                "kind": "polytope",
                "vertices": self.vertices.tolist(),
                "facets": [{"a": a.tolist(), "b": beta} for a, beta in self.facets],
                "base_point": self.base_point.tolist(),
            }
        return {
            "kind": "ellipse",
            "center": self.center.tolist(),
            "axes": self.axes.tolist(),
            "rotation": self.rotation.tolist(),
            "base_point": self.base_point.tolist(),
        }


# ---------------------------------------------------------------------------
# construction


def _dedupe_rows(rows: np.ndarray, tol: float) -> np.ndarray:
    keep: list[np.ndarray] = []
    for r in rows:
        if not any(np.max(np.abs(r - k)) <= tol for k in keep):
            keep.append(r)
    return np.array(keep)


def _normalize_facets(normals, offsets, eps: float) -> tuple[np.ndarray, np.ndarray]:
    a = np.atleast_2d(np.asarray(normals, dtype=float))
    beta = np.asarray(offsets, dtype=float).reshape(-1)
    if len(a) != len(beta):
        raise GeometryError("facet normals and offsets differ in number")
    norms = np.linalg.norm(a, axis=1)
    if np.any(norms <= eps):
        raise GeometryError("facet with zero normal")
    rows = np.hstack([a / norms[:, None], (beta / norms)[:, None]])
    rows = _dedupe_rows(rows, eps)
    return rows[:, :-1], rows[:, -1]


def _affine_rank(points: np.ndarray, eps: float) -> int:
    if len(points) <= 1:
        return 0
    d = points[1:] - points[0]
    s = np.linalg.svd(d, compute_uv=False)
    return int(np.sum(s > eps * max(1.0, s[0])))


def hull_facets(vertices: np.ndarray, eps: float = DEFAULT_EPS):
    """Facets (unit normals, offsets) and extreme-vertex indices of a point set."""
    v = np.asarray(vertices, dtype=float)
    n = v.shape[1]
    if n == 1:
        lo, hi = int(np.argmin(v[:, 0])), int(np.argmax(v[:, 0]))
        normals = np.array([[1.0], [-1.0]])
        offsets = np.array([v[hi, 0], -v[lo, 0]])
        return normals, offsets, sorted({lo, hi})
    try:
        hull = ConvexHull(v)
    except QhullError as exc:
        raise GeometryError(f"lower-dimensional vertex set: {exc}") from None
    normals, offsets = _normalize_facets(hull.equations[:, :-1], -hull.equations[:, -1], 1e-7)
    return normals, offsets, sorted(int(i) for i in hull.vertices)


def enumerate_vertices(normals: np.ndarray, offsets: np.ndarray, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Vertices of ``{a_i . p <= beta_i}`` by brute force over n-subsets of facets."""
    k, n = normals.shape
    found: list[np.ndarray] = []
    for combo in itertools.combinations(range(k), n):
        a = normals[list(combo)]
        if abs(np.linalg.det(a)) <= 1e-12:
            continue
        p = np.linalg.solve(a, offsets[list(combo)])
        if np.all(normals @ p <= offsets + eps * 10):
            if not any(np.max(np.abs(p - q)) <= eps * 100 for q in found):
                found.append(p)
    return np.array(found).reshape(-1, n)


def _check_bounded_full_dim(normals: np.ndarray, offsets: np.ndarray, eps: float) -> None:
    n = normals.shape[1]
    for i in range(n):
        for sign in (1.0, -1.0):
            c = np.zeros(n)
            c[i] = -sign
            res = linprog(c, A_ub=normals, b_ub=offsets, bounds=[(None, None)] * n, method="highs")
            if res.status == 3:
                raise GeometryError("unbounded: the facet inequalities do not enclose a bounded set")
            if res.status == 2:
                raise GeometryError("empty: the facet inequalities are infeasible")
    # Chebyshev ball: maximise r subject to a_i . p + r <= beta_i
    c = np.zeros(n + 1)
    c[-1] = -1.0
    a_ub = np.hstack([normals, np.ones((len(normals), 1))])
    res = linprog(c, A_ub=a_ub, b_ub=offsets, bounds=[(None, None)] * n + [(0, None)], method="highs")
    if res.status != 0 or -res.fun <= eps:
        raise GeometryError("lower-dimensional: the body has empty interior")


def _validate_polytope(vertices: np.ndarray, normals: np.ndarray, offsets: np.ndarray,
                       base_point: np.ndarray, eps: float) -> None:
    n = vertices.shape[1]
    dist = offsets[None, :] - vertices @ normals.T
    if np.any(dist < -10 * eps):
        i, j = np.argwhere(dist < -10 * eps)[0]
        raise GeometryError(f"inconsistent: vertex {i} violates facet {j}")
    active = np.abs(dist) <= 10 * eps
    for i, row in enumerate(active):
        if row.sum() < n:
            raise GeometryError(f"inconsistent: vertex {i} lies on fewer than {n} facets")
        if np.linalg.matrix_rank(normals[row], tol=1e-9) < n:
            raise GeometryError(f"inconsistent: vertex {i} is not determined by its active facets")
    for j in range(len(offsets)):
        on = vertices[active[:, j]]
        if len(on) < n or _affine_rank(on, 1e-9) < n - 1:
            raise GeometryError(f"inconsistent: facet {j} does not support a full face")
    gap = offsets - normals @ base_point
    if np.any(gap <= eps):
        raise GeometryError("base point is not interior")


def _canonical_order(v: np.ndarray, a: np.ndarray, beta: np.ndarray):
    """Counter-clockwise vertices and facets in the plane, lexicographic otherwise."""
    v, a, beta = v + 0.0, a + 0.0, beta + 0.0  # clear negative zeros
    if v.shape[1] == 2:
        c = v.mean(axis=0)
        vo = np.argsort(np.arctan2(v[:, 1] - c[1], v[:, 0] - c[0]))
        fo = np.argsort(np.arctan2(a[:, 1], a[:, 0]))
    else:
        vo = np.lexsort(v.T[::-1])
        fo = np.lexsort(np.c_[a, beta].T[::-1])
    return v[vo], a[fo], beta[fo]


def polytope_from_vertices(vertices, base_point=None, eps: float = DEFAULT_EPS) -> ConvexBody:
    v = np.atleast_2d(np.asarray(vertices, dtype=float))
    if v.ndim != 2 or v.shape[0] < 2:
        raise GeometryError("need at least two vertices")
    v = _dedupe_rows(v, eps)
    n = v.shape[1]
    if _affine_rank(v, 1e-12) < n:
        raise GeometryError("lower-dimensional: vertices do not span the ambient space")
    normals, offsets, ext = hull_facets(v, eps)
    v, normals, offsets = _canonical_order(v[ext], normals, offsets)
    b = v.mean(axis=0) if base_point is None else np.asarray(base_point, dtype=float)
    _validate_polytope(v, normals, offsets, b, eps)
    return ConvexBody("polytope", n, b, vertices=v, normals=normals, offsets=offsets, eps=eps)


def polytope_from_facets(normals, offsets, base_point=None, eps: float = DEFAULT_EPS) -> ConvexBody:
    a, beta = _normalize_facets(normals, offsets, eps)
    n = a.shape[1]
    if len(beta) < n + 1:
        # fewer than n+1 half-spaces can never be bounded
        raise GeometryError("unbounded: fewer than n+1 facets")
    _check_bounded_full_dim(a, beta, eps)
    v = enumerate_vertices(a, beta, eps)
    # drop redundant inequalities: keep facets supporting an (n-1)-face
    dist = beta[None, :] - v @ a.T
    keep = [j for j in range(len(beta))
            if _affine_rank(v[np.abs(dist[:, j]) <= 10 * eps], 1e-9) == n - 1
            and np.sum(np.abs(dist[:, j]) <= 10 * eps) >= n]
    v, a, beta = _canonical_order(v, a[keep], beta[keep])
    b = v.mean(axis=0) if base_point is None else np.asarray(base_point, dtype=float)
    _validate_polytope(v, a, beta, b, eps)
    return ConvexBody("polytope", n, b, vertices=v, normals=a, offsets=beta, eps=eps)


def ellipse(center, axes, rotation=None, angle: float | None = None, base_point=None,
            eps: float = DEFAULT_EPS) -> ConvexBody:
    c = np.asarray(center, dtype=float).reshape(-1)
    ax = np.asarray(axes, dtype=float).reshape(-1)
    n = len(c)
    if len(ax) != n:
        raise GeometryError("ellipse needs one semi-axis per dimension")
    if np.any(ax <= eps):
        raise GeometryError("lower-dimensional: ellipse semi-axes must be positive")
    if rotation is not None:
        r = np.asarray(rotation, dtype=float)
    elif angle is not None:
        if n != 2:
            raise GeometryError("angle only applies to planar ellipses")
        r = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    else:
        r = np.eye(n)
    if not np.allclose(r.T @ r, np.eye(n), atol=1e-10):
        raise GeometryError("rotation must be orthogonal")
    b = c.copy() if base_point is None else np.asarray(base_point, dtype=float)
    body = ConvexBody("ellipse", n, b, center=c, axes=ax, rotation=r, eps=eps)
    if not body.is_interior(b):
        raise GeometryError("base point is not interior")
    return body


def build_body(spec: dict[str, Any] | ConvexBody, eps: float | None = None) -> ConvexBody:
    """Build a body from a JSON-style description.

    ``{"kind": "polytope", "vertices": [...]}`` or ``{"kind": "polytope",
    "facets": [{"a": [...], "b": ...}]}`` or ``{"kind": "ellipse",
    "center": [...], "axes": [...]}``, each with an optional ``base_point``.
    """
    if isinstance(spec, ConvexBody):
        return spec
    tol = DEFAULT_EPS if eps is None else eps
    kind = spec.get("kind", "polytope")
    base = spec.get("base_point")
    if kind == "ellipse":
        return ellipse(spec["center"], spec["axes"], rotation=spec.get("rotation"),
                       angle=spec.get("angle"), base_point=base, eps=tol)
    if kind != "polytope":
        raise GeometryError(f"unknown body kind {kind!r}")
    verts, facets = spec.get("vertices"), spec.get("facets")
    if verts is None and facets is None:
        raise GeometryError("a polytope needs vertices or facets")
    if verts is not None:
        body = polytope_from_vertices(verts, base, tol)
        if facets is not None:
            other = polytope_from_facets([f["a"] for f in facets], [f["b"] for f in facets], base, tol)
            if not same_vertex_set(body.vertices, other.vertices, 1e-7):
                raise GeometryError("inconsistent: vertices and facets describe different sets")
        return body
    return polytope_from_facets([f["a"] for f in facets], [f["b"] for f in facets], base, tol)


def load_body(path: str | Path, eps: float | None = None) -> ConvexBody:
    with open(path) as fh:
        return build_body(json.load(fh), eps)


def same_vertex_set(p: np.ndarray, q: np.ndarray, tol: float) -> bool:
    if len(p) != len(q):
        return False
    used: set[int] = set()
    for v in p:
        d = np.max(np.abs(q - v), axis=1)
        hits = [j for j in np.flatnonzero(d <= tol) if j not in used]
        if not hits:
            return False
        used.add(hits[0])
    return True


# -- stock bodies -------------------------------------------------------------


def square(half_width: float = 1.0, **kw) -> ConvexBody:
    h = half_width
    return polytope_from_vertices([[-h, -h], [h, -h], [h, h], [-h, h]], **kw)


def simplex(n: int = 2, **kw) -> ConvexBody:
    """Standard simplex ``conv{0, e_1, ..., e_n}``; base point at the centroid."""
    return polytope_from_vertices(np.vstack([np.zeros(n), np.eye(n)]), **kw)


def regular_polygon(k: int, radius: float = 1.0, phase: float = 0.0, **kw) -> ConvexBody:
    ang = phase + 2 * np.pi * np.arange(k) / k
    return polytope_from_vertices(radius * np.c_[np.cos(ang), np.sin(ang)], **kw)


def random_polygon(rng: np.random.Generator, k: int = 6, jitter: float = 0.35) -> ConvexBody:
    """Polygon with ``k`` vertices at jittered angles on jittered radii."""
    ang = np.sort(rng.uniform(0, 2 * np.pi, k))
    while np.min(np.diff(np.r_[ang, ang[0] + 2 * np.pi])) < 0.2:
        ang = np.sort(rng.uniform(0, 2 * np.pi, k))
    rad = 1.0 + jitter * rng.uniform(-1, 1, k)
    pts = np.c_[rad * np.cos(ang), rad * np.sin(ang)]
    return polytope_from_vertices(pts)


def disc(radius: float = 1.0, **kw) -> ConvexBody:
    return ellipse([0.0, 0.0], [radius, radius], **kw)


def interior_samples(body: ConvexBody, rng: np.random.Generator, m: int, margin: float = 0.05) -> np.ndarray:
    """Random interior points, kept at least ``margin`` (in shrink factor) from the boundary."""
    n = body.dim
    if body.is_polytope:
        w = rng.dirichlet(np.ones(len(body.vertices)), size=m)
        p = w @ body.vertices
    else:
        g = rng.normal(size=(m, n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        r = rng.uniform(0, 1, size=(m, 1)) ** (1.0 / n)
        p = body.center + (g * r * body.axes) @ body.rotation.T
    return body.base_point + (1.0 - margin) * (p - body.base_point)


def boundary_samples(body: ConvexBody, rng: np.random.Generator, m: int) -> np.ndarray:
    """Random boundary points obtained by shooting rays from the base point."""
    d = rng.normal(size=(m, body.dim))
    t = body.ray_exit(np.broadcast_to(body.base_point, d.shape), d)
    return body.base_point + t[:, None] * d


# ---------------------------------------------------------------------------
# faces


def active_facets(body: ConvexBody, x, tol: float | None = None) -> tuple[int, ...]:
    body._need_polytope("active facets")
    t = body.eps if tol is None else tol
    return tuple(int(i) for i in np.flatnonzero(np.abs(body.facet_distance(x)) <= t))


@dataclass(frozen=True)
class _Lattice:
    vertex_active: tuple[frozenset[int], ...]
    primal: tuple[Face, ...]
    dual: tuple[Face, ...]


def _vertex_active_sets(body: ConvexBody) -> list[frozenset[int]]:
    dist = body.facet_distance(body.vertices)
    tol = 10 * body.eps
    return [frozenset(int(j) for j in np.flatnonzero(np.abs(row) <= tol)) for row in dist]


def _lattice(body: ConvexBody) -> _Lattice:
    cached = body.__dict__.get("_lattice_cache")
    if cached is not None:
        return cached
    vact = _vertex_active_sets(body)
    nv = len(vact)
    facet_sets = {frozenset(v for v in range(nv) if j in vact[v]) for j in range(len(body.offsets))}
    faces = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for f in frontier:
            for g in facet_sets:
                h = f & g
                if h and h not in faces:
                    new.add(h)
        faces |= new
        frontier = new
    primal, dual = [], []
    for f in sorted(faces, key=lambda s: (len(s), sorted(s))):
        idx = tuple(sorted(f))
        dim = _affine_rank(body.vertices[list(idx)], 1e-9)
        primal.append(Face("primal", idx, dim))
        j = tuple(sorted(frozenset.intersection(*(vact[v] for v in idx))))
        dual.append(Face("dual", j, body.dim - 1 - dim))
    lat = _Lattice(tuple(vact), tuple(primal), tuple(dual))
    # frozen dataclass: cache through __dict__ like cached_property does
    body.__dict__["_lattice_cache"] = lat
    return lat


def face_lattice(body: ConvexBody) -> list[Face]:
    """All proper faces of the closed body followed by all proper faces of the dual cone."""
    if not body.is_polytope:
        raise GeometryError("face lattice only for polytopes (extreme sets of an ellipse are its singletons)")
    lat = _lattice(body)
    return list(lat.primal) + sorted(set(lat.dual), key=lambda f: (len(f.index_set), f.index_set))


def primal_faces(body: ConvexBody) -> list[Face]:
    return [f for f in face_lattice(body) if f.side == "primal"]


def dual_faces(body: ConvexBody) -> list[Face]:
    return [f for f in face_lattice(body) if f.side == "dual"]


def dual_of_primal(body: ConvexBody, face: Face) -> Face:
    """Facets containing a primal face: its exposed face in the dual cone."""
    lat = _lattice(body)
    for p, d in zip(lat.primal, lat.dual):
        if p.index_set == face.index_set:
            return d
    raise GeometryError(f"{face} is not a face of this body")


def primal_of_dual(body: ConvexBody, index_set: Sequence[int]) -> Face:
    """Primal face on which every facet in ``index_set`` is active."""
    lat = _lattice(body)
    want = frozenset(index_set)
    verts = tuple(v for v, act in enumerate(lat.vertex_active) if want <= act)
    for p in lat.primal:
        if p.index_set == verts:
            return p
    raise GeometryError(f"facets {sorted(want)} do not meet in a proper face")


def is_dual_face(body: ConvexBody, index_set: Sequence[int]) -> bool:
    return any(f.index_set == tuple(sorted(index_set)) for f in dual_faces(body))


def exposed_face_of_dual(body: ConvexBody, x) -> Face:
    """Face of the dual cone exposed by ``lift(x)`` for a boundary point ``x``."""
    body._need_polytope("exposed_face_of_dual")
    x = body.require_boundary(x, "x")
    j = active_facets(body, x)
    rank = np.linalg.matrix_rank(body.dual_rays[list(j)], tol=1e-9)
    return Face("dual", j, int(rank) - 1)


def smallest_extreme_set(body: ConvexBody, x) -> Face:
    """The primal face whose relative interior contains the boundary point ``x``."""
    body._need_polytope("smallest_extreme_set")
    x = body.require_boundary(x, "x")
    return primal_of_dual(body, active_facets(body, x))


def face_vertices(body: ConvexBody, face: Face) -> np.ndarray:
    return body.vertices[list(face.index_set)]


def face_relint_point(body: ConvexBody, face: Face) -> np.ndarray:
    return face_vertices(body, face).mean(axis=0)


def line_boundary_hits(body: ConvexBody, x, y) -> tuple[np.ndarray, np.ndarray]:
    """Boundary points ``w, z`` with ``w, x, y, z`` in order on the line through x, y."""
    x = body.require_interior(x, "x")
    y = body.require_interior(y, "y")
    d = y - x
    if np.linalg.norm(d) <= body.eps:
        raise GeometryError("coincident points")
    tz = body.ray_exit(x, d)
    tw = body.ray_exit(x, -d)
    return x - tw * d, x + tz * d
