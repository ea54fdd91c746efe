import numpy as np
import pytest
from hypothesis import given, strategies as st

from funkhilbert.cones import LorentzCone, orthant
from funkhilbert.convex import active_facets, boundary_samples, ellipse, interior_samples, simplex, square
from funkhilbert.errors import GeometryError
from funkhilbert.gauges import hilbert_dist
from funkhilbert import horoboundary as hb
from funkhilbert import isometries as iso

from conftest import facet_index

LOG = np.log


# --- projective maps ----------------------------------------------------------


def test_projective_scaling_invariance(tri, rng):
    a = iso.simplex_collineation([1, 2, 0], [1.0, 2.0, 0.5])
    p = interior_samples(tri, rng, 10)
    assert np.allclose(a.apply(p), iso.ProjectiveMap(-3.0 * a.matrix).apply(p), atol=1e-14)


def test_singular_matrix_rejected():
    with pytest.raises(GeometryError, match="singular"):
        iso.ProjectiveMap(np.zeros((3, 3)))


def test_collineation_examples(sq):
    assert iso.collineation_check(sq, iso.ProjectiveMap(np.eye(3))).passed
    assert iso.collineation_check(sq, iso.rotation_map(np.pi / 2)).passed
    rep = iso.collineation_check(sq, iso.ProjectiveMap.affine([[1, 0.5], [0, 1]]))
    assert not rep.passed and rep.witness is not None
    assert not sq.contains(iso.ProjectiveMap.affine([[1, 0.5], [0, 1]]).apply(rep.witness))


@given(st.integers(0, 10_000))
def test_simplex_collineations_are_isometries(seed):
    rng = np.random.default_rng(seed)
    tri = simplex(2)
    a = iso.simplex_collineation(rng.permutation(3), np.exp(rng.normal(size=3)))
    rep = iso.collineation_check(tri, a, 100, rng)
    assert rep.passed


def test_ellipse_collineation():
    e = ellipse([0.5, -0.2], [2.0, 1.0], angle=0.4)
    # conjugate a rotation of the unit disc by the map sending the disc onto the ellipse
    t = e.lorentz_transform
    rot = np.eye(3)
    rot[1:, 1:] = [[np.cos(1.0), -np.sin(1.0)], [np.sin(1.0), np.cos(1.0)]]
    m = np.linalg.inv(t) @ rot @ t
    assert iso.collineation_check(e, iso.ProjectiveMap(m)).passed
    assert not iso.collineation_check(e, iso.ProjectiveMap.affine(np.diag([1.0, 2.0]))).preserves_body


# --- simplex ------------------------------------------------------------------


def test_log_embedding_examples():
    assert np.allclose(iso.simplex_log_embed(np.ones(3) / 3), 0.0)
    x, y = np.ones(3) / 3, np.array([1, 2, 4]) / 7
    d = iso.variation_norm(iso.simplex_log_embed(x) - iso.simplex_log_embed(y))
    assert d == pytest.approx(LOG(4), abs=1e-15)
    with pytest.raises(GeometryError):
        iso.simplex_log_embed([0.5, 0.5, 0.0])


@given(st.integers(0, 10_000), st.integers(2, 5))
def test_embedding_is_isometry(seed, n):
    rng = np.random.default_rng(seed)
    body = simplex(n)
    p, q = interior_samples(body, rng, 2)
    x, y = iso.to_barycentric(p), iso.to_barycentric(q)
    d = iso.variation_norm(iso.simplex_log_embed(x) - iso.simplex_log_embed(y))
    assert abs(hilbert_dist(body, p, q) - d) <= 1e-12


def test_scaling_and_permutation_act_as_isometries(rng):
    x, y = np.exp(rng.normal(size=(2, 4)))
    s = np.exp(rng.normal(size=4))
    perm = rng.permutation(4)
    d = iso.orthant_hilbert(x, y)
    assert iso.orthant_hilbert(s * x, s * y) == pytest.approx(d, abs=1e-12)
    assert iso.orthant_hilbert(x[perm], y[perm]) == pytest.approx(d, abs=1e-12)
    # scaling is a translation of the embedding
    shift = iso.simplex_log_embed(s * x) - iso.simplex_log_embed(x)
    assert np.allclose(shift, iso.simplex_log_embed(s * y) - iso.simplex_log_embed(y), atol=1e-12)


def test_reciprocal_examples(tri):
    assert np.allclose(iso.reciprocal_map([1, 1, 1]), 1)
    y = np.array([1, 2, 4]) / 7
    img = iso.reciprocal_map(y)
    assert np.allclose(img / img.sum(), [4 / 7, 2 / 7, 1 / 7])
    c = iso.from_barycentric(np.ones(3) / 3)
    p = iso.from_barycentric(y)
    assert hilbert_dist(tri, iso.reciprocal_action(c), iso.reciprocal_action(p)) == pytest.approx(LOG(4), abs=1e-14)
    with pytest.raises(GeometryError):
        iso.reciprocal_map([1.0, 0.0, 2.0])


def test_reciprocal_action_is_involutive(tri, rng):
    p = interior_samples(tri, rng, 50)
    assert np.allclose(iso.reciprocal_action(iso.reciprocal_action(p)), p, atol=1e-12)


def test_segment_straightness():
    vertex_segment = iso.segment_image([0.0, 0.0], [0.3, 0.4])
    assert iso.chord_deviation(vertex_segment) <= 1e-3
    generic = iso.segment_image([0.1, 0.2], [0.6, 0.3])
    assert iso.chord_deviation(generic) > 1e-3


# --- Lorentz cone ---------------------------------------------------------------


def test_lorentz_star_examples():
    assert np.allclose(iso.lorentz_star([1.0, 0.0, 0.0]), [1, 0, 0])
    assert np.allclose(iso.lorentz_star([2.0, 1.0]), np.array([2, -1]) / 3)
    c = LorentzCone(2)
    assert c.gauge([2.0, 0.0], [2.0, 1.0]) == pytest.approx(2.0)
    g = iso.lorentz_star
    assert c.gauge(g([2.0, 1.0]), g([2.0, 0.0])) == pytest.approx(2.0)
    for bad in ([1.0, 1.0], [1.0, 2.0], [-2.0, 0.0]):
        with pytest.raises(GeometryError):
            g(bad)


@given(st.integers(0, 10_000), st.integers(2, 5))
def test_lorentz_star_involution_and_homogeneity(seed, dim):
    rng = np.random.default_rng(seed)
    x = LorentzCone(dim).sample(rng, 5)
    gx = iso.lorentz_star(x)
    assert np.max(np.abs(iso.lorentz_star(gx) - x) / np.abs(x).max()) <= 1e-12
    lam = 3.7
    assert np.allclose(iso.lorentz_star(lam * x), gx / lam, rtol=1e-12)


@pytest.mark.parametrize("cone, g", [("orthant:3", iso.reciprocal_cone_map()),
                                     ("orthant:5", iso.reciprocal_cone_map()),
                                     ("lorentz:3", iso.lorentz_star_map()),
                                     ("lorentz:5", iso.lorentz_star_map())])
def test_gauge_reversing_maps(cone, g):
    rep = iso.gauge_reversing_check(cone, g)
    assert rep.passed


def test_identity_is_not_reversing():
    rep = iso.gauge_reversing_check("orthant:3", iso.ConeMap(lambda x: x, inverse=lambda x: x))
    assert not rep.passed and rep.witness is not None


def test_map_leaving_cone_is_error():
    with pytest.raises(GeometryError, match="outside"):
        iso.gauge_reversing_check("orthant:3", iso.ConeMap(lambda x: -x))


@pytest.mark.parametrize("matrix", [np.diag([1.0, 2.0, 0.5]), np.eye(3)[[2, 0, 1]],
                                    np.diag([3.0, 1.0, 0.2])[[1, 2, 0]]])
def test_gauge_preserving_linear_maps(matrix):
    rep = iso.gauge_preserving_check_and_linear_fit("orthant:3", iso.linear_cone_map(matrix))
    assert rep.passed and rep.fit_residual <= 1e-9
    assert np.allclose(rep.fit, matrix, atol=1e-9)


def test_reciprocal_fails_preservation():
    rep = iso.gauge_preserving_check_and_linear_fit("orthant:3", iso.reciprocal_cone_map())
    assert not rep.gauge_ok


def test_lorentz_automorphism_fit():
    # a boost preserves the Lorentz cone and its gauge
    t = 0.8
    boost = np.eye(3)
    boost[:2, :2] = [[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]]
    rep = iso.gauge_preserving_check_and_linear_fit("lorentz:3", iso.linear_cone_map(boost))
    assert rep.passed


def test_singular_fit_guard():
    cone = orthant(3)
    # all samples on one ray make the design matrix rank one
    cone.sample = lambda rng, m: np.outer(np.exp(rng.normal(size=m)), [1.0, 2.0, 3.0])
    with pytest.raises(GeometryError, match="singular fit"):
        iso.gauge_preserving_check_and_linear_fit(cone, iso.linear_cone_map(np.eye(3)))


# --- boundary action ------------------------------------------------------------


def test_boundary_action_identity(sq):
    xi = hb.reverse_funk_horofunction(sq, [1, 0.2])
    assert iso.boundary_action(xi, iso.ProjectiveMap(np.eye(3))).same_as(xi)


def test_rotation_sends_r_to_rotated_point(sq, rng):
    xi = hb.reverse_funk_horofunction(sq, [1, 0])
    rot = iso.rotation_map(np.pi / 2)
    image = iso.boundary_action(xi, rot)
    assert image.same_as(hb.reverse_funk_horofunction(sq, [0, 1]))
    probe = interior_samples(sq, rng, 100)
    assert iso.boundary_action_defect(xi, rot, probe) <= 1e-12


def test_rotation_permutes_vertex_parts(sq):
    before = {p.primal_face.index_set for p in hb.enumerate_parts(sq) if p.vertex_type}
    rot = iso.rotation_map(np.pi / 2)
    after = set()
    for v in sq.vertices:
        xi = hb.hilbert_horofunction(sq, v, active_facets(sq, v))
        img = iso.boundary_action(xi, rot)
        part = hb.part_of(img)
        assert part.vertex_type
        after.add(part.primal_face.index_set)
    assert after == before


def test_boundary_action_rejects_non_preserving(sq):
    xi = hb.reverse_funk_horofunction(sq, [1, 0])
    with pytest.raises(GeometryError, match="preserve"):
        iso.boundary_action(xi, iso.ProjectiveMap.affine([[1, 0.5], [0, 1]]))


def test_funk_boundary_action_needs_affine(tri):
    a = iso.simplex_collineation([0, 1, 2], [1.0, 2.0, 3.0])
    f = hb.funk_busemann(tri, active_facets(tri, [0, 0]))
    with pytest.raises(GeometryError, match="affine"):
        iso.boundary_action(f, a)


@given(st.integers(0, 10_000))
def test_projective_boundary_action_on_simplex(seed):
    rng = np.random.default_rng(seed)
    tri = simplex(2)
    a = iso.simplex_collineation(rng.permutation(3), np.exp(rng.normal(size=3)))
    x = boundary_samples(tri, rng, 1)[0]
    j = active_facets(tri, x)
    xi = hb.hilbert_horofunction(tri, x, j, witness=tri.lift(interior_samples(tri, rng, 1)[0]))
    probe = interior_samples(tri, rng, 100)
    assert iso.boundary_action_defect(xi, a, probe) <= 1e-9
    assert iso.maps_vertex_parts_to_vertex_parts(xi, a)


# --- black-box isometry check ------------------------------------------------------


def test_reciprocal_action_is_reversing_isometry(tri):
    rep = iso.isometry_numeric_check(tri, iso.reciprocal_action)
    assert rep.is_isometry and rep.label == "reversing"


@pytest.mark.parametrize("amap", [iso.rotation_map(np.pi / 2), iso.ProjectiveMap.affine(np.diag([1.0, -1.0]))])
def test_collineations_are_preserving(sq, amap):
    rep = iso.isometry_numeric_check(sq, amap.apply)
    assert rep.is_isometry and rep.label == "preserving"


def test_projective_collineation_preserving_label(tri):
    a = iso.simplex_collineation([2, 0, 1], [0.3, 1.0, 4.0])
    assert iso.isometry_numeric_check(tri, a.oriented(tri.base_point).apply).label == "preserving"


def test_smooth_distortion_is_not_isometry(sq):
    warp = lambda p: np.c_[p[:, 0] + 0.1 * np.sin(np.pi * p[:, 0]) * (1 - p[:, 1] ** 2), p[:, 1]]
    rep = iso.isometry_numeric_check(sq, warp)
    assert not rep.is_isometry and rep.max_hilbert_defect > 1e-2


def test_image_escaping_body(sq):
    with pytest.raises(GeometryError, match="escapes"):
        iso.isometry_numeric_check(sq, lambda p: 2 * p)


def test_square_has_no_reversing_isometry_in_catalog(sq):
    labels = [iso.isometry_numeric_check(sq, m.apply).label for m in iso.square_symmetries()]
    assert set(labels) == {"preserving"}
    # the simplex does have one
    assert iso.isometry_numeric_check(simplex(2), iso.reciprocal_action).label == "reversing"
