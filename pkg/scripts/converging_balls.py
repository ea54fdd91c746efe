"""Balls converging to horoballs in the Hilbert geometry of the triangle.

Writes two overlays (an edge-point target and a vertex target) together
with their Hausdorff tables. With --fixture the SVGs are also copied to
tests/fixtures for the regression test.
"""

import argparse
import shutil
from pathlib import Path

from funkhilbert.cli import converge_figure
from funkhilbert.convex import simplex

ROOT = Path(__file__).resolve().parents[1]
PANELS = {"edge": ([0.5, 0.0], 0.3), "vertex": ([0.0, 0.0], 0.0)}


def render(name: str):
    target, alpha = PANELS[name]
    return converge_figure(simplex(2), target, alpha, frames=4, window=2.0, samples=360)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "figures"))
    ap.add_argument("--fixture", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in PANELS:
        rows, canvas = render(name)
        svg = out / f"converging_{name}.svg"
        svg.write_text(canvas.render())
        print(f"{name}: n, radius, hausdorff")
        for r in rows:
            print(f"  {r.n:3d} {r.radius:10.6f} {r.hausdorff:.3e}")
        if args.fixture:
            shutil.copy(svg, ROOT / "tests" / "fixtures" / svg.name)


if __name__ == "__main__":
    main()
