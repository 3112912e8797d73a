"""Embedding layer: signatures, face tracing, distances, validation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadcolor.embed import ClosedWalk, EmbeddedGraph, bfs_path, embed_from_faces, graph_distance
from quadcolor.errors import CuffMismatch, MalformedRotation, NotQuadrangulation
from quadcolor.generators import (
    grid_cylinder,
    grid_disk,
    grid_klein,
    grid_torus,
    k4_projective,
    k5_torus,
)

from instances import cube, holed_grid, spiral, web_cylinder


SIGNATURES = [
    (grid_disk(3, 3), 9, 12, 4, (0, True, 1)),
    (grid_disk(3, 4), 12, 17, 6, (0, True, 1)),
    (grid_cylinder(4, 3), 12, 20, 8, (0, True, 2)),
    (grid_torus(4, 4), 16, 32, 16, (2, True, 0)),
    (grid_klein(4, 4), 16, 32, 16, (2, False, 0)),
    (k4_projective(), 4, 6, 3, (1, False, 0)),
    (k5_torus(), 5, 10, 5, (2, True, 0)),
]


@pytest.mark.parametrize("g,nv,ne,nf,key", SIGNATURES)
def test_generator_signatures(g, nv, ne, nf, key):
    assert g.vertex_count == nv
    assert g.edge_count == ne
    assert len(g.traced.true_pairs) == nf
    assert g.signature.key() == key
    g.validate_quadrangulation()


def test_disk_cuff_walk():
    g = grid_disk(3, 3)
    assert len(g.cuffs) == 1
    assert len(g.cuffs[0]) == 8
    assert set(g.walk_vertices(g.cuffs[0])) == {0, 1, 2, 3, 5, 6, 7, 8}


def test_cube_is_sphere():
    g = cube()
    assert g.signature.is_sphere
    assert len(g.traced.true_pairs) == 6
    g.validate_quadrangulation()


def test_helper_instances_validate():
    for g, key in [
        (spiral(4, 56), (0, True, 2)),
        (web_cylinder(5, 6), (0, True, 2)),
        (holed_grid(10, 4), (0, True, 2)),
    ]:
        assert g.signature.key() == key
        g.validate_quadrangulation()


def test_web_cuff_lengths():
    g = web_cylinder(5, 6)
    assert len(g.cuffs[0]) == 5
    assert len(g.cuffs[1]) == 5 * (2 * 6 - 1)


def test_graph_distance_between_boundaries():
    g = grid_cylinder(4, 5)
    b1 = g.walk_vertices(g.cuffs[0])
    b2 = g.walk_vertices(g.cuffs[1])
    assert graph_distance(g, b1, b2) == 4
    path = bfs_path(g, b1, set(b2))
    assert len(path) == 5


def test_equality_and_hash():
    a, b = grid_disk(3, 3), grid_disk(3, 3)
    assert a == b and hash(a) == hash(b)
    assert a != grid_disk(3, 4)


def test_rejects_loop_edge():
    with pytest.raises(MalformedRotation):
        EmbeddedGraph(2, [(0, 0)], [(0, 1), ()], [1])


def test_rejects_missing_dart():
    with pytest.raises(MalformedRotation):
        EmbeddedGraph(2, [(0, 1)], [(0,), ()], [1])


def test_rejects_revisiting_cuff():
    g = grid_disk(3, 3)
    darts = g.cuffs[0].darts
    with pytest.raises(CuffMismatch):
        g.with_cuffs((ClosedWalk(darts + darts),))


def test_rejects_non_quad_face():
    # a single hexagonal face on the sphere
    hexa = embed_from_faces(6, [(0, 1, 2, 3, 4, 5), (5, 4, 3, 2, 1, 0)])
    with pytest.raises(NotQuadrangulation):
        hexa.validate_quadrangulation()


@settings(max_examples=20, deadline=None)
@given(w=st.integers(2, 6), h=st.integers(2, 6))
def test_grid_disk_property(w, h):
    g = grid_disk(w, h)
    assert g.vertex_count == w * h
    assert g.signature.key() == (0, True, 1)
    assert len(g.cuffs[0]) == 2 * (w + h) - 4
    g.validate_quadrangulation()


@settings(max_examples=15, deadline=None)
@given(k=st.integers(3, 6), m=st.integers(2, 6))
def test_grid_cylinder_property(k, m):
    g = grid_cylinder(k, m)
    assert g.vertex_count == k * m
    assert g.signature.key() == (0, True, 2)
    g.validate_quadrangulation()
