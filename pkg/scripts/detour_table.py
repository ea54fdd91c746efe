"""Closed-form and path-limit detour costs for reverse-Funk points on the square and triangle."""

import numpy as np

from funkhilbert import horoboundary as hb
from funkhilbert.convex import boundary_samples, simplex, square


def main(seed: int = 7, pairs: int = 10):
    rng = np.random.default_rng(seed)
    print(f"{'body':8s} {'x':>22s} {'y':>22s} {'closed':>10s} {'numeric':>10s}")
    for name, body in (("square", square()), ("triangle", simplex(2))):
        for _ in range(pairs):
            x = boundary_samples(body, rng, 1)[0]
            # a second point on the same edge, so the cost is finite
            j = hb.active_facets(body, x)[0]
            face = hb.primal_of_dual(body, [j])
            a, b = body.vertices[list(face.index_set)]
            y = a + rng.uniform(0.05, 0.95) * (b - a)
            closed = hb.detour_cost_reverse(body, x, y)
            est = hb.detour_cost_numeric(hb.reverse_funk_horofunction(body, x),
                                         hb.reverse_funk_horofunction(body, y))
            print(f"{name:8s} {str(np.round(x, 4) + 0.0):>22s} {str(np.round(y, 4) + 0.0):>22s} "
                  f"{np.round(closed, 6) + 0.0:10.6f} {np.round(est.value, 6) + 0.0:10.6f}")


if __name__ == "__main__":
    main()
