"""Vertex adjacency and edge labelling of the quotient complex."""

import pytest
from hypothesis import given, strategies as st

from zetalab.quotient import (
    EdgeLabel,
    Region,
    Vertex,
    edge_source,
    edge_target,
    edges_in_region,
    vertices_adjacent,
)


# --- sources and targets -----------------------------------------------------


def test_type1_sources():
    assert edge_source(EdgeLabel(1, 0, 0, 1)) == Vertex(0, 0)
    assert edge_source(EdgeLabel(1, 1, 2, 3)) == Vertex(4, 2)
    assert edge_source(EdgeLabel(1, 0, 0, 2)) == Vertex(1, 0)


def test_type2_sources():
    assert edge_source(EdgeLabel(2, 0, 0, 1)) == Vertex(0, 0)
    assert edge_source(EdgeLabel(2, 0, 0, 2)) == Vertex(1, 1)
    assert edge_source(EdgeLabel(2, 0, 0, 3)) == Vertex(1, 0)


def test_type1_targets():
    assert edge_target(EdgeLabel(1, 0, 0, 3)) == Vertex(0, 0)
    assert edge_target(EdgeLabel(1, 0, 2, 1)) == Vertex(3, 0)
    assert edge_target(EdgeLabel(1, 1, 2, 3)) == Vertex(3, 1)


def test_type2_targets():
    assert edge_target(EdgeLabel(2, 1, 0, 1)) == Vertex(2, 2)
    assert edge_target(EdgeLabel(2, 0, 1, 2)) == Vertex(2, 0)
    assert edge_target(EdgeLabel(2, 0, 0, 3)) == Vertex(0, 0)


def test_bad_labels_rejected():
    with pytest.raises(ValueError):
        edge_source(EdgeLabel(3, 0, 0, 1))
    with pytest.raises(ValueError):
        edge_source(EdgeLabel(1, 0, 0, 4))
    with pytest.raises(ValueError):
        edge_target(EdgeLabel(1, -1, 0, 1))


# --- adjacency ---------------------------------------------------------------


def test_interior_diagonal_neighbour():
    assert vertices_adjacent(Vertex(2, 1), Vertex(3, 2))


def test_invalid_vertex_not_adjacent():
    assert not vertices_adjacent(Vertex(1, 0), Vertex(0, 1))


def test_origin_has_only_two_neighbours():
    assert not vertices_adjacent(Vertex(0, 0), Vertex(2, 0))
    assert vertices_adjacent(Vertex(0, 0), Vertex(1, 0))
    assert vertices_adjacent(Vertex(0, 0), Vertex(1, 1))


def test_adjacency_is_symmetric_on_a_window():
    verts = [Vertex(m, n) for m in range(6) for n in range(m + 1)]
    for v in verts:
        for w in verts:
            assert vertices_adjacent(v, w) == vertices_adjacent(w, v), (v, w)


def test_bottom_ray_cases():
    v = Vertex(3, 0)
    assert vertices_adjacent(v, Vertex(2, 0))
    assert vertices_adjacent(v, Vertex(4, 0))
    assert vertices_adjacent(v, Vertex(3, 1))
    assert vertices_adjacent(v, Vertex(4, 1))
    assert not vertices_adjacent(v, Vertex(2, 1))


def test_diagonal_ray_cases():
    v = Vertex(3, 3)
    assert vertices_adjacent(v, Vertex(4, 3))
    assert vertices_adjacent(v, Vertex(3, 2))
    assert vertices_adjacent(v, Vertex(4, 4))
    assert vertices_adjacent(v, Vertex(2, 2))
    assert not vertices_adjacent(v, Vertex(2, 3))


# --- edge invariants ---------------------------------------------------------

labels = st.tuples(st.sampled_from([1, 2]), st.integers(0, 10),
                   st.integers(0, 10), st.sampled_from([1, 2, 3])).map(
    lambda t: EdgeLabel(*t))


@given(labels)
def test_every_edge_joins_adjacent_vertices(e):
    assert vertices_adjacent(edge_source(e), edge_target(e))


@given(st.sampled_from([1, 2]), st.integers(0, 6), st.integers(0, 6))
def test_chamber_legs_close_a_triangle(edge_type, level, offset):
    legs = [EdgeLabel(edge_type, level, offset, leg) for leg in (1, 2, 3)]
    for i in range(3):
        assert edge_target(legs[i]) == edge_source(legs[(i + 1) % 3])


# --- regions -----------------------------------------------------------------


def test_single_chamber_region():
    assert edges_in_region(1, Region(1, 1)) == [
        EdgeLabel(1, 0, 0, 1), EdgeLabel(1, 0, 0, 2), EdgeLabel(1, 0, 0, 3)]


def test_region_count_3_by_6():
    assert len(edges_in_region(1, Region(3, 6))) == 54


def test_region_count_type2():
    assert len(edges_in_region(2, Region(2, 2))) == 12


def test_region_is_strictly_ordered():
    edges = edges_in_region(1, Region(4, 5))
    assert len(edges) == 3 * 4 * 5
    for a, b in zip(edges, edges[1:]):
        assert a < b


def test_region_bounds_validated():
    with pytest.raises(ValueError):
        edges_in_region(1, Region(0, 3))
    with pytest.raises(ValueError):
        edges_in_region(3, Region(2, 2))
