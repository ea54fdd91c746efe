"""Funk, reverse-Funk and Hilbert geometries on convex bodies.

Distances and balls, horofunctions and their detour metric, horoballs,
and the isometry constructions of the simplex and Lorentz cones.
"""

from .convex import (ConvexBody, Face, build_body, disc, ellipse, face_lattice, load_body,
                     polytope_from_facets, polytope_from_vertices, regular_polygon, simplex, square)
from .errors import AmbiguousLimitError, GeometryError, NonConvergenceError
from .gauges import (distance, funk_dist, gauge, geodesic, hilbert_dist, reverse_funk_dist)
from .horoboundary import (Horofunction, enumerate_parts, funk_busemann, hilbert_horofunction,
                           horofunction_limit, reverse_funk_horofunction)

__all__ = [
    "ConvexBody", "Face", "build_body", "disc", "ellipse", "face_lattice", "load_body",
    "polytope_from_facets", "polytope_from_vertices", "regular_polygon", "simplex", "square",
    "AmbiguousLimitError", "GeometryError", "NonConvergenceError",
    "distance", "funk_dist", "gauge", "geodesic", "hilbert_dist", "reverse_funk_dist",
    "Horofunction", "enumerate_parts", "funk_busemann", "hilbert_horofunction",
    "horofunction_limit", "reverse_funk_horofunction",
]
