"""Planar regions: sampled boundaries, exact convex polygons, Hausdorff distance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RegionSample:
    """Boundary samples of a closed planar region.

    ``clipped[k]`` marks samples where the region reached the boundary of
    the ambient body instead of its own level set.
    """

    points: np.ndarray
    closed_hint: bool = True
    clipped: np.ndarray = field(default=None)
    empty: bool = False

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if self.clipped is None:
            self.clipped = np.zeros(len(self.points), dtype=bool)

    def __len__(self) -> int:
        return len(self.points)


def clip_polygon(poly: np.ndarray, c, d: float, tol: float = 1e-13) -> np.ndarray:
    """Intersect a convex polygon (ccw vertex array) with ``{x : c . x <= d}``."""
    if len(poly) == 0:
        return poly
    c = np.asarray(c, dtype=float)
    val = poly @ c - d
    scale = tol * max(1.0, abs(d), float(np.abs(poly).max()) * float(np.abs(c).max()))
    inside = val <= scale
    if inside.all():
        return poly
    if not inside.any():
        return np.empty((0, 2))
    out = []
    m = len(poly)
    for i in range(m):
        p, q = poly[i], poly[(i + 1) % m]
        vp, vq = val[i], val[(i + 1) % m]
        if inside[i]:
            out.append(p)
        if inside[i] != inside[(i + 1) % m]:
            t = vp / (vp - vq)
            out.append(p + t * (q - p))
    return np.array(out).reshape(-1, 2)


def halfspace_polygon(normals, offsets, box: float = 1e3) -> np.ndarray:
    """Convex polygon ``{x : normals @ x <= offsets}`` clipped from a large box."""
    poly = np.array([[-box, -box], [box, -box], [box, box], [-box, box]], dtype=float)
    for c, d in zip(np.atleast_2d(normals), np.ravel(offsets)):
        if np.linalg.norm(c) == 0:
            if d < 0:
                return np.empty((0, 2))
            continue
        poly = clip_polygon(poly, c, d)
        if len(poly) == 0:
            break
    return _drop_duplicates(poly)


def _drop_duplicates(poly: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    if len(poly) < 2:
        return poly
    keep = [0]
    for i in range(1, len(poly)):
        if np.linalg.norm(poly[i] - poly[keep[-1]]) > tol:
            keep.append(i)
    if len(keep) > 1 and np.linalg.norm(poly[keep[-1]] - poly[keep[0]]) <= tol:
        keep.pop()
    return poly[keep]


def intersect_polygons(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Intersection of two convex ccw polygons."""
    out = p
    m = len(q)
    for i in range(m):
        a, b = q[i], q[(i + 1) % m]
        e = b - a
        normal = np.array([e[1], -e[0]])  # outward for ccw order
        out = clip_polygon(out, normal, float(normal @ a))
        if len(out) == 0:
            break
    return _drop_duplicates(out)


def _segment_distance(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.linalg.norm(points - a, axis=1)
    t = np.clip((points - a) @ ab / denom, 0.0, 1.0)
    return np.linalg.norm(points - (a + t[:, None] * ab), axis=1)


def point_polygon_distance(points, poly: np.ndarray) -> np.ndarray:
    """Euclidean distance from points to a convex polygon (0 inside)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(poly) == 1:
        return np.linalg.norm(pts - poly[0], axis=1)
    m = len(poly)
    edge_d = np.min([_segment_distance(pts, poly[i], poly[(i + 1) % m]) for i in range(m)], axis=0)
    if m < 3:
        return edge_d
    inside = np.ones(len(pts), dtype=bool)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        cross = (b[0] - a[0]) * (pts[:, 1] - a[1]) - (b[1] - a[1]) * (pts[:, 0] - a[0])
        inside &= cross >= -1e-15
    return np.where(inside, 0.0, edge_d)


def hausdorff_polygons(p: np.ndarray, q: np.ndarray) -> float:
    """Hausdorff distance between convex polygons.

    Distance to a convex set is a convex function, so each one-sided
    supremum is attained at a vertex.
    """
    if len(p) == 0 or len(q) == 0:
        return np.inf if (len(p) or len(q)) else 0.0
    return float(max(point_polygon_distance(p, q).max(), point_polygon_distance(q, p).max()))


def hausdorff_points(a, b) -> float:
    """Hausdorff distance between two finite point sets."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def polygon_area(poly: np.ndarray) -> float:
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
