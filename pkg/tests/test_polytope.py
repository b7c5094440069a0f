import numpy as np
import pytest

from tubesynth import polytope as poly

from oracles import enum_vertices, point_in_convex_polygon, random_bounded_set


def test_box_rows_unit():
    B = poly.box([-1, -1], [1, 1])
    assert B.A.tolist() == [[1, 0], [-1, 0], [0, 1], [0, -1]]
    assert B.b.tolist() == [1, 1, 1, 1]


def test_box_tanks_target():
    B = poly.box([-0.01, -0.01], [0.01, 0.01])
    assert np.allclose(B.b, 0.01)
    assert poly.contains_point(B, [0.009, -0.009], tol=0.0)
    assert not poly.contains_point(B, [0.02, 0.0], tol=1e-9)


def test_box_degenerate_singleton():
    Z = poly.box([0.0], [0.0])
    assert poly.contains_point(Z, [0.0], tol=0.0)
    V = poly.vertices(Z)
    assert len(V) == 1 and V[0][0] == pytest.approx(0.0, abs=1e-12)


def test_box_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        poly.box([1.0, 0.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        poly.box([0.0], [0.0, 1.0])


def test_set_validation():
    with pytest.raises(ValueError):
        poly.PolyhedralSet(np.zeros((1, 2)), [1.0])      # zero row
    with pytest.raises(ValueError):
        poly.PolyhedralSet(np.eye(2), [1.0])             # length mismatch


def test_contains_point_cases():
    B = poly.box([-1, -1], [1, 1])
    assert poly.contains_point(B, [0, 0], tol=0.0)
    assert not poly.contains_point(B, [1 + 1e-6, 0], tol=1e-7)
    with pytest.raises(ValueError):
        poly.contains_point(B, [0, 0, 0])


def test_contains_convex_combination_of_vertices():
    rng = np.random.default_rng(5)
    for _ in range(20):
        A, b = random_bounded_set(rng, 2, extra_rows=2)
        P = poly.PolyhedralSet(A, b)
        V = np.array(enum_vertices(A, b))
        w = rng.dirichlet(np.ones(V.shape[0]))
        assert poly.contains_point(P, w @ V, tol=1e-9)


def test_support_values():
    B = poly.box([-1, -1], [1, 1])
    assert poly.support_max(B, [2, -1]) == pytest.approx(3.0, abs=1e-9)
    tri = poly.PolyhedralSet([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
    assert poly.support_max(tri, [1, 1]) == pytest.approx(1.0, abs=1e-9)


def test_support_error_codes():
    ray = poly.PolyhedralSet([[-1.0]], [0.0])
    with pytest.raises(poly.UnboundedSetError):
        poly.support_max(ray, [1.0])
    empty = poly.PolyhedralSet([[1.0], [-1.0]], [-1.0, -1.0])
    with pytest.raises(poly.EmptySetError):
        poly.support_max(empty, [1.0])


def test_is_bounded():
    assert poly.is_bounded(poly.box([-1, -1], [1, 1]))
    assert not poly.is_bounded(poly.PolyhedralSet([[1, 0]], [1]))
    assert poly.is_bounded(poly.PolyhedralSet([[-1, 0], [0, -1], [1, 1]], [0, 0, 1]))
    with pytest.raises(poly.EmptySetError):
        poly.is_bounded(poly.PolyhedralSet([[1.0], [-1.0]], [-1.0, -1.0]))


def test_vertices_box_and_triangle():
    got = {tuple(np.round(v, 9)) for v in poly.vertices(poly.box([-1, -1], [1, 1]))}
    assert got == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    tri = poly.PolyhedralSet([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
    got = {tuple(np.round(v, 9)) for v in poly.vertices(tri)}
    assert got == {(0, 0), (1, 0), (0, 1)}


def test_vertices_error_modes():
    with pytest.raises(poly.UnboundedSetError):
        poly.vertices(poly.PolyhedralSet([[1, 0], [0, 1]], [1, 1]))
    with pytest.raises(poly.EmptySetError):
        poly.vertices(poly.PolyhedralSet([[1.0], [-1.0]], [-1.0, -1.0]))
    big = poly.box([-1] * 7, [1] * 7)
    with pytest.raises(ValueError):
        poly.vertices(big)
    # cap is configurable
    assert len(poly.vertices(big, max_dim=7)) == 128


def test_vertices_match_convex_hull_membership():
    # random bounded 2-d set with 6 rows; 10^4 probes against the hull
    rng = np.random.default_rng(31)
    A, b = random_bounded_set(rng, 2, extra_rows=2)
    while A.shape[0] != 6:
        A, b = random_bounded_set(rng, 2, extra_rows=2)
    P = poly.PolyhedralSet(A, b)
    V = poly.vertices(P)
    lo = np.min(V, axis=0) - 0.1
    hi = np.max(V, axis=0) + 0.1
    pts = rng.uniform(lo, hi, size=(10000, 2))
    for pt in pts:
        in_P = poly.contains_point(P, pt, tol=1e-9)
        in_hull = point_in_convex_polygon(pt, V)
        assert in_P == in_hull


def test_box_membership_agrees_with_interval_test():
    rng = np.random.default_rng(17)
    lo = rng.uniform(-2, 0, size=3)
    hi = rng.uniform(0, 2, size=3)
    B = poly.box(lo, hi)
    pts = rng.uniform(lo - 0.5, hi + 0.5, size=(10000, 3))
    member = np.array([poly.contains_point(B, p, tol=0.0) for p in pts])
    interval = np.all((pts >= lo) & (pts <= hi), axis=1)
    assert np.array_equal(member, interval)


def test_vertex_support_consistency():
    # max over vertices of a.v equals the support value, 100 directions
    rng = np.random.default_rng(23)
    for _ in range(5):
        A, b = random_bounded_set(rng, 2, extra_rows=2)
        P = poly.PolyhedralSet(A, b)
        V = np.array(poly.vertices(P))
        for _ in range(20):
            a = rng.normal(size=2)
            assert np.max(V @ a) == pytest.approx(poly.support_max(P, a), abs=1e-7)


def test_vertices_inside_and_distinct():
    rng = np.random.default_rng(41)
    for _ in range(10):
        n = int(rng.integers(2, 4))
        A, b = random_bounded_set(rng, n, extra_rows=2)
        P = poly.PolyhedralSet(A, b)
        V = poly.vertices(P)
        for v in V:
            assert np.max(P.A @ v - P.b) <= 1e-9
        for i in range(len(V)):
            for j in range(i + 1, len(V)):
                assert np.max(np.abs(V[i] - V[j])) >= 1e-9


def test_sets_are_immutable():
    B = poly.box([-1], [1])
    with pytest.raises(ValueError):
        B.A[0, 0] = 5.0


def test_vertices_subset_cap():
    P = poly.box([-1, -1], [1, 1])
    with pytest.raises(ValueError):
        poly.vertices(P, max_subsets=2)
