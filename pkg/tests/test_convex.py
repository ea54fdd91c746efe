import numpy as np
import pytest
from hypothesis import given, strategies as st

from funkhilbert.convex import (active_facets, build_body, dual_faces, dual_of_primal, ellipse,
                                enumerate_vertices, exposed_face_of_dual, face_lattice,
                                interior_samples, line_boundary_hits, polytope_from_facets,
                                polytope_from_vertices, primal_faces, random_polygon,
                                regular_polygon, same_vertex_set, simplex, smallest_extreme_set,
                                square)
from funkhilbert.errors import GeometryError

from conftest import facet_index


def test_square_facets_and_base_point(sq):
    normals = {tuple(np.round(a, 12)) for a in sq.normals}
    assert normals == {(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)}
    assert np.allclose(sq.offsets, 1.0)
    assert np.allclose(sq.base_point, 0.0)


def test_simplex_centroid(tri):
    assert len(tri.offsets) == 3
    assert np.allclose(tri.base_point, [1 / 3, 1 / 3])


@pytest.mark.parametrize("spec, message", [
    ({"kind": "polytope", "facets": [{"a": [1, 0], "b": 1}]}, "unbounded"),
    ({"kind": "polytope", "facets": [{"a": [1, 0], "b": 1}, {"a": [0, 1], "b": 1},
                                     {"a": [-1, -1], "b": 1}, {"a": [-1, 0], "b": 5}]}, None),
    ({"kind": "polytope", "vertices": [[0, 0], [1, 1], [2, 2]]}, "lower-dimensional"),
    ({"kind": "polytope", "vertices": [[0, 0], [1, 0], [0, 1]], "base_point": [1, 1]}, "base"),
    ({"kind": "polytope", "vertices": [[0, 0], [1, 0], [0, 1]],
      "facets": [{"a": [1, 0], "b": 1}, {"a": [-1, 0], "b": 1}, {"a": [0, 1], "b": 1},
                 {"a": [0, -1], "b": 1}]}, "inconsistent"),
    ({"kind": "ellipse", "center": [0, 0], "axes": [1, 0]}, "lower-dimensional"),
])
def test_build_body_rejections(spec, message):
    if message is None:
        body = build_body(spec)  # redundant facet is dropped
        assert len(body.offsets) == 3
        return
    with pytest.raises(GeometryError, match=message):
        build_body(spec)


def test_duplicate_vertices_are_merged():
    body = polytope_from_vertices([[0, 0], [1, 0], [0, 1], [1e-12, 0], [0.2, 0.2]])
    assert len(body.vertices) == 3


@pytest.mark.parametrize("body", [square(), simplex(2), simplex(3), regular_polygon(7),
                                  random_polygon(np.random.default_rng(4), 9)])
def test_vertex_facet_round_trip(body):
    again = polytope_from_facets(body.normals, body.offsets)
    assert same_vertex_set(again.vertices, body.vertices, 1e-9)
    assert same_vertex_set(enumerate_vertices(body.normals, body.offsets), body.vertices, 1e-9)


def test_slack_normalized_at_base_point(tri):
    assert np.allclose(tri.slack(tri.base_point), 1.0)


def test_slack_positive_inside(rng):
    body = random_polygon(rng, 8)
    pts = interior_samples(body, rng, 500)
    assert np.all(body.slack(pts) > 0)


def test_face_lattice_square(sq):
    faces = face_lattice(sq)
    primal = [f for f in faces if f.side == "primal"]
    dual = [f for f in faces if f.side == "dual"]
    assert sorted(f.dim for f in primal) == [0] * 4 + [1] * 4
    assert len(dual) == 8


def test_face_lattice_simplex_and_segment(tri):
    assert sorted(f.dim for f in primal_faces(tri)) == [0, 0, 0, 1, 1, 1]
    seg = polytope_from_vertices([[-1.0], [2.0]])
    assert [f.dim for f in primal_faces(seg)] == [0, 0]


def test_face_lattice_rejects_ellipse(unit_disc):
    with pytest.raises(GeometryError, match="face lattice only for polytopes"):
        face_lattice(unit_disc)


def test_brute_force_face_enumeration(rng):
    body = random_polygon(rng, 6)
    # every nonempty set of vertices cut out by an active-set pattern
    dist = np.abs(body.facet_distance(body.vertices)) <= 1e-9
    expected = set()
    for j in range(dist.shape[1]):
        expected.add(tuple(np.flatnonzero(dist[:, j])))
    for v in range(len(body.vertices)):
        expected.add((v,))
    assert {f.index_set for f in primal_faces(body)} == expected


@pytest.mark.parametrize("body", [square(), simplex(2), simplex(3)])
def test_primal_to_dual_is_inclusion_reversing(body):
    faces = primal_faces(body)
    for f in faces:
        for g in faces:
            if set(f.index_set) <= set(g.index_set):
                assert set(dual_of_primal(body, g).index_set) <= set(dual_of_primal(body, f).index_set)


def test_exposed_face_of_dual(sq):
    right = facet_index(sq, [1, 0])
    top = facet_index(sq, [0, 1])
    assert exposed_face_of_dual(sq, [1, 0]).index_set == (right,)
    assert set(exposed_face_of_dual(sq, [1, 1]).index_set) == {right, top}
    with pytest.raises(GeometryError, match="interior point"):
        exposed_face_of_dual(sq, [0, 0])
    with pytest.raises(GeometryError):
        exposed_face_of_dual(sq, [2, 0])


def test_smallest_extreme_set(sq):
    edge = smallest_extreme_set(sq, [1, 0.3])
    assert same_vertex_set(sq.vertices[list(edge.index_set)], np.array([[1, -1], [1, 1.0]]), 1e-12)
    assert smallest_extreme_set(sq, [1, 1]).dim == 0
    with pytest.raises(GeometryError, match="interior point"):
        smallest_extreme_set(sq, [0.999, 0.3])


def test_line_boundary_hits_examples(sq, unit_disc, tri):
    w, z = line_boundary_hits(sq, [0, 0], [0.5, 0])
    assert np.allclose(w, [-1, 0]) and np.allclose(z, [1, 0])
    w, z = line_boundary_hits(unit_disc, [0, 0], [0, 0.5])
    assert np.allclose(w, [0, -1]) and np.allclose(z, [0, 1])
    x, y = np.array([1 / 3, 1 / 3]), np.array([0.5, 0.25])
    w, z = line_boundary_hits(tri, x, y)
    # oracle: smallest positive / negative facet parameters along x + t (y - x)
    d = y - x
    ts = (tri.offsets - tri.normals @ x) / (tri.normals @ d)
    assert np.allclose(z, x + ts[ts > 0].min() * d)
    assert np.allclose(w, x + ts[ts < 0].max() * d)
    with pytest.raises(GeometryError, match="coincident points"):
        line_boundary_hits(sq, [0.1, 0.1], [0.1, 0.1])


@given(st.integers(0, 10_000))
def test_line_hits_order_and_support(seed):
    rng = np.random.default_rng(seed)
    body = random_polygon(rng, 7)
    x, y = interior_samples(body, rng, 2)
    w, z = line_boundary_hits(body, x, y)
    assert np.min(np.abs(body.facet_distance(w))) <= 1e-9
    assert np.min(np.abs(body.facet_distance(z))) <= 1e-9
    d = y - x
    assert (x - w) @ d > 0 and (z - y) @ d > 0


def test_ellipse_membership():
    e = ellipse([1, 0], [2, 1], angle=0.3)
    assert e.is_interior(np.array([1.0, 0.0]))
    assert not e.contains(np.array([3.5, 0.0]))
    w, z = line_boundary_hits(e, [1, 0], [1.5, 0])
    assert np.allclose(np.linalg.norm(e._whiten(np.array([w, z])), axis=1), 1.0)


def test_active_facets_tolerance(sq):
    assert active_facets(sq, [1 - 1e-12, 0.2]) == (facet_index(sq, [1, 0]),)
    assert active_facets(sq, [1 - 1e-6, 0.2]) == ()


def test_dual_faces_are_listed_once(tri):
    sets = [f.index_set for f in dual_faces(tri)]
    assert len(sets) == len(set(sets)) == 6
