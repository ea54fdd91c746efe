"""Open convex cones and the gauge ``M(x/y; C) = inf{lam > 0 : x <=_C lam y}``.

Two families are supported: polyhedral cones given by the extreme rays of
their dual (this covers the cone over a polytope and the positive orthant)
and Lorentz cones, optionally pulled back through a linear map (this covers
the cone over an ellipse).
"""

from __future__ import annotations

import numpy as np

from .errors import GeometryError


class PolyhedralCone:
    """``C = {x : <u_i, x> > 0 for all i}`` for dual extreme rays ``u_i``."""

    def __init__(self, dual_rays, rays=None):
        self.dual_rays = np.atleast_2d(np.asarray(dual_rays, dtype=float))
        self.rays = None if rays is None else np.atleast_2d(np.asarray(rays, dtype=float))
        self.dim = self.dual_rays.shape[1]

    def __repr__(self) -> str:
        return f"PolyhedralCone(dim={self.dim}, {len(self.dual_rays)} dual rays)"

    def pair(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.dual_rays.T

    def gauge(self, x, y) -> np.ndarray:
        """``max_i <u_i, x> / <u_i, y>`` clipped below at 0; ``y`` must be interior."""
        px, py = self.pair(x), self.pair(y)
        if np.any(py <= 0):
            raise GeometryError("second gauge argument must lie in the open cone")
        return np.maximum((px / py).max(axis=-1), 0.0)

    def contains(self, x, strict: bool = False, tol: float = 0.0) -> np.ndarray:
        p = self.pair(x)
        scale = np.linalg.norm(np.asarray(x, dtype=float), axis=-1, keepdims=True)
        if strict:
            return np.all(p > tol * scale, axis=-1)
        return np.all(p >= -tol * scale, axis=-1)

    def sample(self, rng: np.random.Generator, m: int) -> np.ndarray:
        if self.rays is not None:
            w = rng.exponential(size=(m, len(self.rays))) + 0.05
            return w @ self.rays
        if np.allclose(self.dual_rays, np.eye(self.dim)):
            return np.exp(rng.normal(size=(m, self.dim)))
        raise GeometryError("cannot sample a polyhedral cone without its rays")


def orthant(dim: int) -> PolyhedralCone:
    """The open positive orthant; its dual rays and rays are the unit vectors."""
    return PolyhedralCone(np.eye(dim), rays=np.eye(dim))


class LorentzCone:
    """``{x : w_0 > |w'|}`` where ``w = T x`` (``T`` defaults to the identity)."""

    def __init__(self, dim: int, transform=None):
        self.dim = dim
        self.transform = np.eye(dim) if transform is None else np.asarray(transform, dtype=float)
        self._inverse = np.linalg.inv(self.transform)

    def __repr__(self) -> str:
        return f"LorentzCone(dim={self.dim})"

    def coords(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.transform.T

    @staticmethod
    def form(w) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        return w[..., 0] ** 2 - np.sum(w[..., 1:] ** 2, axis=-1)

    def gauge(self, x, y) -> np.ndarray:
        """Smallest ``lam`` with ``lam y - x`` in the closed cone (clipped at 0).

        ``lam`` is the larger root of ``q(lam Y - X) = 0``. The discriminant
        ``B^2 - q(X) q(Y)`` is evaluated through the identity
        ``|x0 y' - y0 x'|^2 - |x' ^ y'|^2`` so that nearly proportional
        arguments keep full relative accuracy.
        """
        X, Y = self.coords(x), self.coords(y)
        X, Y = np.broadcast_arrays(X, Y)
        qy = self.form(Y)
        if np.any(Y[..., 0] <= 0) or np.any(qy <= 0):
            raise GeometryError("second gauge argument must lie in the open cone")
        qx = self.form(X)
        b = X[..., 0] * Y[..., 0] - np.sum(X[..., 1:] * Y[..., 1:], axis=-1)
        w = X[..., 0:1] * Y[..., 1:] - Y[..., 0:1] * X[..., 1:]
        xs, ys = X[..., 1:], Y[..., 1:]
        wedge = np.zeros(qx.shape)
        k = xs.shape[-1]
        for i in range(k):
            for j in range(i + 1, k):
                wedge = wedge + (xs[..., i] * ys[..., j] - xs[..., j] * ys[..., i]) ** 2
        disc = np.maximum(np.sum(w * w, axis=-1) - wedge, 0.0)
        root = np.sqrt(disc)
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = np.where(b >= 0, (b + root) / qy, qx / (b - root))
        return np.maximum(lam, 0.0)

    def contains(self, x, strict: bool = False, tol: float = 0.0) -> np.ndarray:
        w = self.coords(x)
        r = np.linalg.norm(w[..., 1:], axis=-1)
        scale = np.linalg.norm(w, axis=-1)
        if strict:
            return w[..., 0] - r > tol * scale
        return w[..., 0] - r >= -tol * scale

    def sample(self, rng: np.random.Generator, m: int) -> np.ndarray:
        k = self.dim - 1
        g = rng.normal(size=(m, k))
        g /= np.maximum(np.linalg.norm(g, axis=1, keepdims=True), 1e-300)
        rho = 0.95 * rng.uniform(0, 1, size=(m, 1)) ** (1.0 / max(k, 1))
        w0 = np.exp(rng.normal(size=(m, 1)))
        w = np.hstack([w0, w0 * rho * g])
        return w @ self._inverse.T


def order_leq(cone, x, y, tol: float = 1e-9) -> np.ndarray:
    """``x <=_C y``, i.e. ``y - x`` in the closed cone (relative tolerance)."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    d = y - x
    scale = np.maximum(np.linalg.norm(x, axis=-1), np.linalg.norm(y, axis=-1))
    if isinstance(cone, PolyhedralCone):
        p = cone.pair(d)
        return np.all(p >= -tol * scale[..., None] * np.linalg.norm(cone.dual_rays, axis=1), axis=-1)
    w = cone.coords(d)
    return w[..., 0] - np.linalg.norm(w[..., 1:], axis=-1) >= -tol * scale * np.linalg.norm(cone.transform, 2)
