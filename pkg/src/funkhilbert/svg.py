"""Minimal SVG writer for planar figures (800 x 800 viewbox, 5% margin)."""

from __future__ import annotations

import re

import numpy as np

SIZE = 800.0
MARGIN = 0.05


class Canvas:
    """Maps body coordinates onto the viewbox; the y axis points up."""

    def __init__(self, bounds_points):
        pts = np.asarray(bounds_points, dtype=float)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = float(max(hi - lo))
        self.lo = lo
        self.scale = SIZE * (1 - 2 * MARGIN) / span
        self.offset = SIZE * MARGIN + 0.5 * (SIZE * (1 - 2 * MARGIN) - self.scale * (hi - lo))
        self.items: list[str] = []

    def to_view(self, pts) -> np.ndarray:
        p = (np.atleast_2d(np.asarray(pts, dtype=float)) - self.lo) * self.scale + self.offset
        p[:, 1] = SIZE - p[:, 1]
        return p

    def _coords(self, pts) -> str:
        return " ".join(f"{x:.3f},{y:.3f}" for x, y in self.to_view(pts))

    def polygon(self, pts, stroke="black", fill="none", width=1.5, opacity=1.0):
        if len(pts) == 0:
            return
        self.items.append(f'<polygon points="{self._coords(pts)}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="{width}" stroke-opacity="{opacity:.3f}"/>')

    def polyline(self, pts, stroke="black", width=1.5, opacity=1.0):
        if len(pts) == 0:
            return
        self.items.append(f'<polyline points="{self._coords(pts)}" fill="none" stroke="{stroke}" '
                          f'stroke-width="{width}" stroke-opacity="{opacity:.3f}"/>')

    def point(self, p, color="black", r=4.0):
        x, y = self.to_view(p)[0]
        self.items.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r}" fill="{color}"/>')

    def render(self) -> str:
        body = "\n".join(self.items)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:g}" height="{SIZE:g}" '
                f'viewBox="0 0 {SIZE:g} {SIZE:g}">\n{body}\n</svg>\n')


def ellipse_outline(body, samples: int = 256) -> np.ndarray:
    t = 2 * np.pi * np.arange(samples) / samples
    circ = np.c_[np.cos(t), np.sin(t)]
    return body.center + (circ * body.axes) @ body.rotation.T


def body_outline(body) -> np.ndarray:
    return body.vertices if body.is_polytope else ellipse_outline(body)


_NUM = re.compile(r"-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")


def normalized_paths(svg_text: str) -> list[tuple[str, np.ndarray]]:
    """Element tag and coordinate array for every drawn element, for regression comparison."""
    out = []
    for m in re.finditer(r"<(polygon|polyline|circle)\b([^>]*)/>", svg_text):
        tag, attrs = m.group(1), m.group(2)
        if tag == "circle":
            nums = [float(re.search(rf'{k}="([^"]+)"', attrs).group(1)) for k in ("cx", "cy")]
        else:
            nums = [float(v) for v in _NUM.findall(re.search(r'points="([^"]*)"', attrs).group(1))]
        out.append((tag, np.array(nums).reshape(-1, 2) / SIZE))
    return out
