"""Reciprocal action on the triangle: straight segments and their images.

A segment whose supporting line passes through a vertex stays straight;
others bend. Prints the chord deviation of each image and writes an SVG
with the segments (left) and their images (right, shifted).
"""

import argparse
from pathlib import Path

import numpy as np

from funkhilbert.convex import simplex
from funkhilbert.isometries import chord_deviation, segment_image
from funkhilbert.svg import Canvas

ROOT = Path(__file__).resolve().parents[1]
SEGMENTS = {
    "from vertex": ([0.0, 0.0], [0.3, 0.5]),
    "through vertex": ([0.05, 0.05], [0.4, 0.4]),
    "generic": ([0.05, 0.15], [0.7, 0.25]),
    "edge to edge": ([0.2, 0.0], [0.0, 0.6]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "figures" / "reciprocal_flip.svg"))
    args = ap.parse_args()
    tri = simplex(2)
    shift = np.array([1.3, 0.0])
    canvas = Canvas(np.vstack([tri.vertices, tri.vertices + shift]))
    canvas.polygon(tri.vertices, width=2)
    canvas.polygon(tri.vertices + shift, width=2)
    for name, (p, q) in SEGMENTS.items():
        img = segment_image(p, q)
        dev = chord_deviation(img)
        print(f"{name:15s} deviation {dev:.3e} {'straight' if dev <= 1e-3 else 'curved'}")
        canvas.polyline(np.array([p, q]), stroke="blue", width=2)
        canvas.polyline(img + shift, stroke="blue", width=2)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(canvas.render())


if __name__ == "__main__":
    main()
