"""The closed-path oracle and its agreement with operator traces."""

import pytest

from zetalab.cycles import enumerate_cycles, weighted_count
from zetalab.polyseries import QPoly, qpoly_eval
from zetalab.quotient import EdgeLabel
from zetalab.transfer import trace_power


def test_no_short_cycles():
    assert enumerate_cycles(1, 1) == ()
    assert enumerate_cycles(1, 2) == ()
    assert weighted_count(1, 2) == QPoly()


def test_exactly_two_triangle_classes():
    got = enumerate_cycles(1, 3)
    assert len(got) == 2
    first, second = got
    assert first.edges == (EdgeLabel(1, 0, 0, 1), EdgeLabel(1, 0, 0, 2),
                           EdgeLabel(1, 0, 0, 3))
    # (q^2-1)(q^2-q)q^2, multiplied out by hand
    assert first.weight == QPoly((0, 0, 0, 1, -1, -1, 1))
    assert first.primitive_length == 3
    assert second.edges == (EdgeLabel(1, 0, 0, 2), EdgeLabel(1, 1, 0, 1),
                            EdgeLabel(1, 0, 1, 3))
    assert second.weight == QPoly((0, 0, 0, 0, -1, 1))  # q * (q^2-q) * q^2
    assert second.primitive_length == 3


def test_length_six_contains_squared_triangles():
    classes = {c.edges: c for c in enumerate_cycles(1, 6)}
    for tri in enumerate_cycles(1, 3):
        doubled = min(tuple(tri.edges[i:] + tri.edges[:i]) * 2 for i in range(3))
        assert doubled in classes
        sq = classes[doubled]
        assert sq.primitive_length == 3
        assert sq.weight == tri.weight * tri.weight


def test_weighted_count_examples():
    assert weighted_count(1, 3) == QPoly((0, 0, 0, 3, -6, 0, 3))
    assert weighted_count(1, 6, 2) == 10944


def test_representatives_are_canonical_and_unique():
    classes = enumerate_cycles(1, 6)
    seen = set()
    for c in classes:
        rotations = {tuple(c.edges[i:] + c.edges[:i]) for i in range(6)}
        assert c.edges == min(rotations)
        assert not (rotations & seen)
        seen |= rotations


def test_cycle_weights_are_positive_at_integer_q():
    for n in range(3, 8):
        for c in enumerate_cycles(1, n):
            for q in (2, 3, 5):
                assert qpoly_eval(c.weight, q) > 0


def test_step_weights_multiply_around_the_cycle():
    from zetalab import transfer

    for c in enumerate_cycles(1, 6):
        prod = QPoly((1,))
        edges = c.edges
        for i, e in enumerate(edges):
            nxt = edges[(i + 1) % len(edges)]
            weights = {t: w for t, w in transfer.out_neighbors(e)}
            assert nxt in weights, (e, nxt)
            prod = prod * weights[nxt]
        assert prod == c.weight


def test_rejects_bad_length():
    with pytest.raises(ValueError):
        enumerate_cycles(1, 0)


@pytest.mark.parametrize("edge_type", [1, 2])
def test_oracle_matches_trace_symbolically(edge_type):
    for n in range(1, 10):
        assert weighted_count(edge_type, n) == trace_power(edge_type, n), n


@pytest.mark.parametrize("q", [2, 3, 5])
def test_oracle_matches_trace_at_specialized_q(q):
    for edge_type in (1, 2):
        for n in range(1, 10):
            assert weighted_count(edge_type, n, q) == trace_power(edge_type, n, q)
