import itertools
import time

import pytest

from nspoly.polytope import (
    EmptyPolytopeError,
    HRepresentation,
    UnboundedError,
    VRepresentation,
    enumerate_facets,
    enumerate_vertices,
    extreme_rays,
    is_vertex,
)
from nspoly.rational import rat
from nspoly.scenarios import (
    bipartite_prob_hrep,
    enumerate_bipartite_vertices,
    tripartite_prob_hrep,
)


def cube_hrep(d: int) -> HRepresentation:
    rows, rhs = [], []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        rows.append(list(e))
        rhs.append(0)
        rows.append([-x for x in e])
        rhs.append(-1)
    return HRepresentation(dim=d, ineq_rows=rows, ineq_rhs=rhs)


def test_cube_vertices():
    v = enumerate_vertices(cube_hrep(3))
    assert len(v.vertices) == 8
    assert sorted(map(tuple, v.vertices)) == sorted(
        itertools.product((0, 1), repeat=3)
    )


def test_cube_roundtrip():
    v = enumerate_vertices(cube_hrep(3))
    h = enumerate_facets(v)
    assert not h.eq_rows and len(h.ineq_rows) == 6
    v2 = enumerate_vertices(h)
    assert sorted(map(tuple, v2.vertices)) == sorted(map(tuple, v.vertices))


def test_cross_polytope_roundtrip():
    # conv(+-e_i) in R^4: 8 vertices, 16 facets
    d = 4
    verts = []
    for i in range(d):
        for s in (1, -1):
            e = [0] * d
            e[i] = s
            verts.append(e)
    h = enumerate_facets(VRepresentation(vertices=verts))
    assert len(h.ineq_rows) == 16 and not h.eq_rows
    v2 = enumerate_vertices(h)
    assert sorted(map(tuple, v2.vertices)) == sorted(map(tuple, verts))


def test_simplex_with_equality():
    # standard simplex x >= 0, sum x = 1 in R^4
    d = 4
    h = HRepresentation(
        dim=d,
        eq_rows=[[1] * d],
        eq_rhs=[1],
        ineq_rows=[[1 if j == i else 0 for j in range(d)] for i in range(d)],
        ineq_rhs=[0] * d,
    )
    v = enumerate_vertices(h)
    assert len(v.vertices) == d
    h2 = enumerate_facets(v)
    assert len(h2.eq_rows) == 1 and len(h2.ineq_rows) == d


def test_empty_polytope():
    h = HRepresentation(dim=2, ineq_rows=[[1, 0], [-1, 0]], ineq_rhs=[1, 0])
    with pytest.raises(EmptyPolytopeError):
        enumerate_vertices(h)


def test_unbounded_polyhedron():
    h = HRepresentation(dim=2, ineq_rows=[[1, 0], [0, 1]], ineq_rhs=[0, 0])
    with pytest.raises(UnboundedError):
        enumerate_vertices(h)


def test_extreme_rays_orthant():
    rays = extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    assert sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_extreme_rays_not_pointed():
    with pytest.raises(UnboundedError):
        extreme_rays([[1, 0], [-1, 0]], 2)


def test_is_vertex():
    h = cube_hrep(3)
    assert is_vertex([0, 0, 0], h)
    assert is_vertex([1, 1, 0], h)
    assert not is_vertex([rat(1, 2), 0, 0], h)
    with pytest.raises(ValueError):
        is_vertex([2, 0, 0], h)


def test_bipartite_bell_polytope_fast():
    start = time.monotonic()
    verts = enumerate_bipartite_vertices()
    elapsed = time.monotonic() - start
    assert len(verts) == 24
    assert elapsed < 1.0
    dets = [v for v in verts if all(p in (0, 1) for p in v)]
    assert len(dets) == 16  # 16 deterministic + 8 PR-type vertices
    h = bipartite_prob_hrep()
    for v in verts:
        assert is_vertex(v, h)


def test_tripartite_hrep_shape():
    h = tripartite_prob_hrep()
    assert h.dim == 64
    assert len(h.ineq_rows) == 64  # positivity only; the rest are equalities
