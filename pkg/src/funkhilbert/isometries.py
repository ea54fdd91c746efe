"""Collineations, the simplex log-embedding, gauge-reversing maps and boundary actions.

Cone maps are tested on two families: the positive orthant (whose
cross-section is a simplex) and the Lorentz cones. The orthant's
canonical order-reversing map is the coordinate-wise reciprocal, the
Lorentz cone's is the Jordan inverse ``(x0, -x') / (x0^2 - |x'|^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cones import LorentzCone, PolyhedralCone, order_leq, orthant
from .convex import ConvexBody, interior_samples, same_vertex_set
from .errors import GeometryError
from .gauges import _funk, _hilbert
from .horoboundary import Horofunction, part_of

# ---------------------------------------------------------------------------
# projective maps


@dataclass(frozen=True)
class ProjectiveMap:
    """``p -> dehomogenize(A lift(p))`` for a nonsingular ``(n+1) x (n+1)`` matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GeometryError("projective map needs a square matrix")
        if abs(np.linalg.det(a)) <= 1e-12 * max(1.0, np.abs(a).max()) ** a.shape[0]:
            raise GeometryError("projective map matrix is singular")
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] - 1

    @classmethod
    def affine(cls, linear, shift=None) -> ProjectiveMap:
        lin = np.atleast_2d(np.asarray(linear, dtype=float))
        n = lin.shape[0]
        a = np.eye(n + 1)
        a[:n, :n] = lin
        if shift is not None:
            a[:n, n] = shift
        return cls(a)

    @property
    def is_affine(self) -> bool:
        row = self.matrix[-1]
        return bool(np.allclose(row[:-1], 0.0, atol=1e-14 * abs(row[-1])))

    def homogeneous(self, points) -> np.ndarray:
        return ConvexBody.lift(points) @ self.matrix.T

    def apply(self, points) -> np.ndarray:
        h = self.homogeneous(points)
        return h[..., :-1] / h[..., -1:]

    __call__ = apply

    def inverse(self) -> ProjectiveMap:
        return ProjectiveMap(np.linalg.inv(self.matrix))

    def compose(self, other: ProjectiveMap) -> ProjectiveMap:
        """``self after other``."""
        return ProjectiveMap(self.matrix @ other.matrix)

    def oriented(self, point) -> ProjectiveMap:
        """Same projective map, scaled so the last homogeneous coordinate at ``point`` is positive."""
        return self if self.homogeneous(point)[-1] > 0 else ProjectiveMap(-self.matrix)


def rotation_map(angle: float) -> ProjectiveMap:
    c, s = np.cos(angle), np.sin(angle)
    return ProjectiveMap.affine([[c, -s], [s, c]])


@dataclass
class CollineationReport:
    preserves_body: bool
    max_hilbert_defect: float
    witness: np.ndarray | None = None
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.preserves_body and self.max_hilbert_defect <= 1e-9


def _preserves_polytope(body: ConvexBody, amap: ProjectiveMap):
    h = amap.homogeneous(body.vertices)
    if np.any(h[:, -1] <= 0):
        k = int(np.argmax(h[:, -1] <= 0))
        return False, body.vertices[k], "vertex is sent through the hyperplane at infinity"
    img = h[:, :-1] / h[:, -1:]
    tol = 10 * body.eps
    outside = ~body.contains(img)
    if np.any(outside):
        k = int(np.argmax(outside))
        return False, body.vertices[k], f"image {img[k].tolist()} of vertex lies outside the body"
    if not same_vertex_set(img, body.vertices, tol):
        dist = np.min(np.linalg.norm(img[:, None] - body.vertices[None], axis=-1), axis=1)
        k = int(np.argmax(dist))
        return False, body.vertices[k], f"image {img[k].tolist()} of vertex is not a vertex"
    return True, None, ""


def _preserves_ellipse(body: ConvexBody, amap: ProjectiveMap):
    t = body.lorentz_transform
    j = np.diag([1.0] + [-1.0] * body.dim)
    q = t.T @ j @ t
    ainv = np.linalg.inv(amap.matrix)
    q2 = ainv.T @ q @ ainv
    scale = np.sum(q2 * q) / np.sum(q * q)
    if scale <= 0 or np.max(np.abs(q2 - scale * q)) > 1e-9 * np.abs(q2).max():
        return False, None, "the quadratic form of the ellipse is not preserved"
    if not body.is_interior(amap.apply(body.base_point)):
        return False, body.base_point, "the body is mapped onto its complement"
    return True, None, ""


def collineation_check(body: ConvexBody, amap: ProjectiveMap, m: int = 200,
                       rng: np.random.Generator | None = None) -> CollineationReport:
    """Does ``amap`` preserve the body, and does it preserve the Hilbert metric on ``m`` pairs?"""
    if amap.dim != body.dim:
        raise GeometryError("map and body dimensions differ")
    rng = np.random.default_rng(0) if rng is None else rng
    amap = amap.oriented(body.base_point)
    if body.is_polytope:
        ok, witness, msg = _preserves_polytope(body, amap)
    else:
        ok, witness, msg = _preserves_ellipse(body, amap)
    if not ok:
        return CollineationReport(False, float("nan"), witness, msg)
    x = interior_samples(body, rng, m)
    y = interior_samples(body, rng, m)
    fx, fy = amap.apply(x), amap.apply(y)
    defect = float(np.max(np.abs(_hilbert(body, fx, fy) - _hilbert(body, x, y))))
    return CollineationReport(True, defect)


# ---------------------------------------------------------------------------
# simplex and the orthant


def to_barycentric(points) -> np.ndarray:
    """Standard simplex ``{p >= 0, sum p <= 1}`` in R^n to positive coordinates summing to 1."""
    p = np.asarray(points, dtype=float)
    return np.concatenate([p, 1.0 - p.sum(axis=-1, keepdims=True)], axis=-1)


def from_barycentric(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[..., :-1] / x.sum(axis=-1, keepdims=True)


def _require_positive(x, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise GeometryError(f"{what} needs strictly positive coordinates")
    return x


def simplex_log_embed(x) -> np.ndarray:
    """Coordinate-wise log, with the all-ones direction projected out."""
    lx = np.log(_require_positive(x, "simplex_log_embed"))
    return lx - lx.mean(axis=-1, keepdims=True)


def variation_norm(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    out = v.max(axis=-1) - v.min(axis=-1)
    return out if out.ndim else float(out)


def orthant_hilbert(x, y) -> np.ndarray:
    """``log max(x/y) + log max(y/x)`` for positive vectors."""
    r = np.log(_require_positive(x, "orthant_hilbert")) - np.log(_require_positive(y, "orthant_hilbert"))
    return r.max(axis=-1) - r.min(axis=-1)


def reciprocal_map(x) -> np.ndarray:
    return 1.0 / _require_positive(x, "reciprocal_map")


def reciprocal_action(points) -> np.ndarray:
    """Projective action of the reciprocal map on the standard simplex in R^n."""
    return from_barycentric(reciprocal_map(to_barycentric(points)))


def segment_image(p, q, samples: int = 400, end_gap: float = 1e-9) -> np.ndarray:
    """Images under the reciprocal action of points on the simplex segment ``[p, q]``.

    Endpoints may lie on the boundary; the parameter range is then pulled in
    by ``end_gap`` at each end, with samples clustered toward both ends.
    """
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    u = np.linspace(0.0, 1.0, samples)
    t = 0.5 - 0.5 * np.cos(np.pi * u)
    t = end_gap + (1 - 2 * end_gap) * t
    pts = p + t[:, None] * (q - p)
    return reciprocal_action(pts)


def chord_deviation(curve) -> float:
    """Largest distance from a sampled curve to the chord between its ends."""
    c = np.asarray(curve, dtype=float)
    a, b = c[0], c[-1]
    d = b - a
    nd = np.linalg.norm(d)
    if nd == 0:
        return float(np.max(np.linalg.norm(c - a, axis=1)))
    proj = a + np.outer((c - a) @ d / nd**2, d)
    return float(np.max(np.linalg.norm(c - proj, axis=1)))


def lorentz_star(x) -> np.ndarray:
    """Jordan inverse on the Lorentz cone ``{x0 > |x'|}``."""
    x = np.asarray(x, dtype=float)
    q = LorentzCone.form(x)
    if np.any(x[..., 0] <= 0) or np.any(q <= 0):
        raise GeometryError("lorentz_star needs a point of the open Lorentz cone")
    out = np.concatenate([x[..., :1], -x[..., 1:]], axis=-1)
    return out / q[..., None]


# ---------------------------------------------------------------------------
# cone maps


@dataclass(frozen=True)
class ConeMap:
    """A self-map of an open cone with an optional inverse."""

    evaluator: Callable[[np.ndarray], np.ndarray]
    kind: str = "custom"
    claimed: str = "unknown"
    inverse: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))


def reciprocal_cone_map() -> ConeMap:
    return ConeMap(reciprocal_map, "reciprocal", "gauge_reversing", reciprocal_map)


def lorentz_star_map() -> ConeMap:
    return ConeMap(lorentz_star, "lorentz_star", "gauge_reversing", lorentz_star)


def linear_cone_map(matrix) -> ConeMap:
    a = np.asarray(matrix, dtype=float)
    ainv = np.linalg.inv(a)
    return ConeMap(lambda x: x @ a.T, "linear", "gauge_preserving", lambda x: x @ ainv.T)


def cone_from_spec(spec: str | PolyhedralCone | LorentzCone):
    """``"orthant:d"`` or ``"lorentz:d"`` (``d`` is the ambient dimension)."""
    if isinstance(spec, (PolyhedralCone, LorentzCone)):
        return spec
    name, _, d = spec.partition(":")
    d = int(d)
    if name == "orthant":
        return orthant(d)
    if name == "lorentz":
        return LorentzCone(d)
    raise GeometryError(f"unknown cone {spec!r}")


def _images(cone, g: ConeMap, x: np.ndarray) -> np.ndarray:
    gx = g(x)
    if not np.all(cone.contains(gx, strict=True)):
        k = int(np.argmin(cone.contains(gx, strict=True)))
        raise GeometryError(f"map sends {x[k].tolist()} outside the open cone")
    return gx


@dataclass
class ConeMapReport:
    """Outcome of a gauge-preserving or gauge-reversing test.

    Gauge defects are measured on the log scale.
    """

    claim: str
    gauge_defect: float
    order_ok: bool
    homogeneity_defect: float
    inverse_order_ok: bool | None
    witness: tuple | None = None
    fit: np.ndarray | None = field(default=None, repr=False)
    fit_residual: float | None = None
    tol: float = 1e-9

    @property
    def gauge_ok(self) -> bool:
        return self.gauge_defect <= self.tol

    @property
    def passed(self) -> bool:
        ok = self.gauge_ok and self.order_ok and self.homogeneity_defect <= self.tol
        if self.inverse_order_ok is not None:
            ok = ok and self.inverse_order_ok
        if self.fit_residual is not None:
            ok = ok and self.fit_residual <= self.tol
        return ok


def _check_cone_map(cone, g: ConeMap, m: int, rng, reversing: bool, tol: float) -> ConeMapReport:
    x = cone.sample(rng, m)
    y = cone.sample(rng, m)
    gx, gy = _images(cone, g, x), _images(cone, g, y)
    lhs = np.log(cone.gauge(gx, gy))
    rhs = np.log(cone.gauge(y, x) if reversing else cone.gauge(x, y))
    err = np.abs(lhs - rhs)
    k = int(np.argmax(err))
    witness = (x[k], y[k]) if err[k] > tol else None

    # comparable pairs x <= y by construction
    yy = x + cone.sample(rng, m)
    gyy = _images(cone, g, yy)
    order = order_leq(cone, gyy, gx) if reversing else order_leq(cone, gx, gyy)
    order_ok = bool(np.all(order))

    lam = np.exp(rng.normal(size=(m, 1)))
    glx = _images(cone, g, lam * x)
    expected = gx / lam if reversing else gx * lam
    hom = float(np.max(np.abs(glx - expected) / np.linalg.norm(expected, axis=1, keepdims=True)))

    inv_ok = None
    if g.inverse is not None:
        hx, hyy = g.inverse(x), g.inverse(yy)
        inv_ok = bool(np.all(order_leq(cone, hyy, hx) if reversing else order_leq(cone, hx, hyy)))
    claim = "gauge_reversing" if reversing else "gauge_preserving"
    return ConeMapReport(claim, float(err.max()), order_ok, hom, inv_ok, witness, tol=tol)


def gauge_reversing_check(cone, g: ConeMap, m: int = 200, rng: np.random.Generator | None = None,
                          tol: float = 1e-9) -> ConeMapReport:
    """Test ``M(g x / g y) = M(y / x)`` together with order reversal and degree -1 homogeneity."""
    cone = cone_from_spec(cone)
    rng = np.random.default_rng(0) if rng is None else rng
    return _check_cone_map(cone, g, m, rng, True, tol)


def gauge_preserving_check_and_linear_fit(cone, g: ConeMap, m: int = 200,
                                          rng: np.random.Generator | None = None,
                                          tol: float = 1e-9, cond_limit: float = 1e8) -> ConeMapReport:
    """Test ``M(g x / g y) = M(x / y)``, then fit ``g`` by a linear map and report the residual.

    The residual is the largest row-wise relative misfit ``|g(x) - A x| / |g(x)|``.
    """
    cone = cone_from_spec(cone)
    rng = np.random.default_rng(0) if rng is None else rng
    report = _check_cone_map(cone, g, m, rng, False, tol)
    d = cone.dim
    xs = cone.sample(rng, max(m, d * d))
    gs = _images(cone, g, xs)
    if np.linalg.cond(xs) > cond_limit:
        raise GeometryError("singular fit: sample matrix is ill-conditioned")
    a_t, *_ = np.linalg.lstsq(xs, gs, rcond=None)
    resid = np.linalg.norm(xs @ a_t - gs, axis=1) / np.linalg.norm(gs, axis=1)
    report.fit = a_t.T
    report.fit_residual = float(resid.max())
    return report


# ---------------------------------------------------------------------------
# boundary action


def pushforward(xi: Horofunction, amap: ProjectiveMap) -> Callable[[np.ndarray], np.ndarray]:
    """``x' -> xi(A^-1 x') - xi(A^-1 b)``."""
    inv = amap.inverse()
    b = xi.body.base_point
    shift = xi(inv.apply(b))
    return lambda y: np.asarray(xi(inv.apply(np.asarray(y, dtype=float)))) - shift


def _facet_permutation(body: ConvexBody, amap: ProjectiveMap):
    """``A^-T u_j = mu_j u_{pi(j)}``; returns ``(pi, mu)``."""
    u = body.dual_rays
    v = u @ np.linalg.inv(amap.matrix)
    mu = v @ body.lift(body.base_point)
    if np.any(mu <= 0):
        raise GeometryError("map does not preserve the body")
    vn = v / mu[:, None]
    dist = np.linalg.norm(vn[:, None, :] - u[None, :, :], axis=-1)
    pi = dist.argmin(axis=1)
    if np.max(dist[np.arange(len(u)), pi]) > 1e-8 or len(set(pi.tolist())) != len(u):
        raise GeometryError("map does not permute the facets")
    return pi, mu


def boundary_action(xi: Horofunction, amap: ProjectiveMap, check: bool = True) -> Horofunction:
    """Closed-form image of ``xi`` under a body-preserving map.

    Hilbert horofunctions accept any collineation. Funk and reverse-Funk
    horofunctions need an affine map: a general collineation is not an
    isometry of those metrics.
    """
    body = xi.body
    body._need_polytope("boundary_action")
    amap = amap.oriented(body.base_point)
    if check:
        ok, _, msg = _preserves_polytope(body, amap)
        if not ok:
            raise GeometryError(f"map does not preserve the body: {msg}")
    if xi.kind != "hilbert" and not amap.is_affine:
        raise GeometryError("non-affine collineations are not isometries of the Funk metrics")
    pi, mu = _facet_permutation(body, amap)
    rev = None if xi.rev_point is None else amap.apply(xi.rev_point)
    face, weights = (), None
    if xi.dual_face:
        new = {int(pi[j]): c * mu[j] for j, c in zip(xi.dual_face, xi.weights)}
        face = tuple(sorted(new))
        weights = np.array([new[j] for j in face])
        weights = weights / weights.max()
    if rev is not None:
        # snap onto the facets that should be active
        act = [int(pi[i]) for i in range(len(body.offsets))
               if abs(body.facet_distance(xi.rev_point)[i]) <= body.eps]
        dist = body.facet_distance(rev)
        corr, *_ = np.linalg.lstsq(body.normals[act], dist[act], rcond=None)
        rev = rev + corr
    return Horofunction(body, xi.kind, rev_point=rev, dual_face=face, weights=weights)


def boundary_action_defect(xi: Horofunction, amap: ProjectiveMap, probe) -> float:
    """Pointwise gap between the pushforward of ``xi`` and its closed-form image."""
    image = boundary_action(xi, amap)
    push = pushforward(xi, amap.oriented(xi.body.base_point))
    probe = np.asarray(probe, dtype=float)
    return float(np.max(np.abs(push(probe) - image(probe))))


def maps_vertex_parts_to_vertex_parts(xi: Horofunction, amap: ProjectiveMap) -> bool:
    before = part_of(xi)
    after = part_of(boundary_action(xi, amap))
    return before.vertex_type == after.vertex_type and before.facet_type == after.facet_type


# ---------------------------------------------------------------------------
# black-box isometry check


@dataclass
class IsometryReport:
    max_hilbert_defect: float
    preserving_defect: float
    reversing_defect: float
    tol: float = 1e-9

    @property
    def is_isometry(self) -> bool:
        return self.max_hilbert_defect <= self.tol

    @property
    def label(self) -> str:
        if not self.is_isometry:
            return "none"
        if self.preserving_defect <= self.tol:
            return "preserving"
        if self.reversing_defect <= self.tol:
            return "reversing"
        return "mixed"


def isometry_numeric_check(body: ConvexBody, f: Callable[[np.ndarray], np.ndarray], m: int = 200,
                           rng: np.random.Generator | None = None, tol: float = 1e-9) -> IsometryReport:
    """Hilbert defect of a black-box self-map, plus a preserving/reversing label.

    The label compares cyclic Funk sums ``funk(x,y) + funk(y,z) + funk(z,x)``
    on triples. Collineations change individual Funk distances by a
    coboundary, which cancels in a cyclic sum; a reversing isometry turns
    the sum for ``(x, y, z)`` into the one for ``(x, z, y)``.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    x, y, z = (interior_samples(body, rng, m) for _ in range(3))
    fx, fy, fz = (np.asarray(f(p), dtype=float) for p in (x, y, z))
    for img in (fx, fy, fz):
        bad = ~body.is_interior(img)
        if np.any(bad):
            raise GeometryError(f"image escapes body: {img[int(np.argmax(bad))].tolist()}")
    hil = float(np.max(np.abs(_hilbert(body, fx, fy) - _hilbert(body, x, y))))

    def cyc(a, b, c):
        return _funk(body, a, b) + _funk(body, b, c) + _funk(body, c, a)

    image = cyc(fx, fy, fz)
    pres = float(np.max(np.abs(image - cyc(x, y, z))))
    rev = float(np.max(np.abs(image - cyc(x, z, y))))
    return IsometryReport(hil, pres, rev, tol)


def simplex_collineation(perm, scales) -> ProjectiveMap:
    """Collineation of the standard simplex: permute and positively rescale barycentric coordinates."""
    scales = _require_positive(scales, "simplex_collineation")
    d = len(scales)
    n = d - 1
    b = np.eye(d)
    b[n, :n] = -1.0
    p = np.eye(d)[list(perm)]
    return ProjectiveMap(np.linalg.inv(b) @ p @ np.diag(scales) @ b)


def square_symmetries() -> list[ProjectiveMap]:
    """The eight symmetries of the square ``[-1, 1]^2``."""
    out = []
    for k in range(4):
        c, s = np.round(np.cos(k * np.pi / 2)), np.round(np.sin(k * np.pi / 2))
        rot = np.array([[c, -s], [s, c]])
        out.append(ProjectiveMap.affine(rot))
        out.append(ProjectiveMap.affine(rot @ np.diag([1.0, -1.0])))
    return out
