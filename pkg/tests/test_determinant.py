"""Block matrices, the Schur recursion, and the three determinant routes."""

from fractions import Fraction

import pytest

from zetalab.determinant import (
    AlphaTable,
    InvalidTruncation,
    assemble_matrix,
    build_blocks,
    det_direct,
    det_via_alpha,
    det_via_traces,
    alpha_limit,
    schur_iterate,
)
from zetalab.polyseries import (
    QPoly,
    USeries,
    rational_expand,
    series_add,
    series_mono_mul,
    series_mul,
    series_one,
    series_power_substitute,
    series_scale,
    series_zero,
    specialize_q,
    u_monomial,
)
from zetalab.quotient import Region, edges_in_region
from zetalab.transfer import operator_matrix

ONE = QPoly((1,))
Q = QPoly((0, 1))
M_1 = QPoly((-1,))
M_Q = QPoly((0, -1))
M_Q2 = QPoly((0, 0, -1))
M_QM1 = QPoly((1, -1))
M_Q2MQ = QPoly((0, 1, -1))
M_Q2M1 = QPoly((1, 0, -1))


# --- block construction ------------------------------------------------------


def test_blocks_level_two():
    spec = build_blocks(2)
    assert spec.block_dim == 6
    assert spec.b == {(2, 1): M_Q2M1, (5, 4): M_QM1, (3, 6): M_Q2,
                      (3, 2): M_Q2MQ, (6, 5): M_Q2MQ}
    assert spec.c == {(1, 1): M_1, (4, 4): M_1, (3, 4): M_Q2MQ}
    assert spec.d == {(2, 3): M_Q2, (5, 2): M_Q}


def test_a_differs_from_b_only_at_two_entry_families():
    for k in (2, 3, 5):
        spec = build_blocks(k)
        extra = {(1, 3)} | {(3 * s + 1, 3 * s - 1) for s in range(1, k)}
        assert set(spec.a) == set(spec.b) | extra
        for pos, val in spec.b.items():
            assert spec.a[pos] == val
        assert spec.a[(1, 3)] == M_Q2
        for s in range(1, k):
            assert spec.a[(3 * s + 1, 3 * s - 1)] == M_Q


def test_blocks_require_level_two():
    with pytest.raises(InvalidTruncation):
        build_blocks(1)


def test_assembled_matrix_matches_transfer_operator():
    # The assembled blocks are I - u T for the truncated operator, columns
    # ordered offset-major; compare entry by entry through that reindexing.
    k, blocks = 3, 4
    spec = build_blocks(k)
    assembled = assemble_matrix(spec, blocks)
    region = Region(k, blocks)
    edges = edges_in_region(1, region)
    op = operator_matrix(1, region, truncate=k)

    def pos(e):
        return 3 * e.level + 3 * k * e.offset + (e.leg - 1)

    remapped = {(pos(edges[r]), pos(edges[c])): w for (r, c), w in op.items()}
    assert set(assembled) == set(remapped)
    for key, w in remapped.items():
        assert assembled[key] == -w, key


# --- the scalar Schur recursion ----------------------------------------------


def test_alpha_base_case():
    table = schur_iterate(4, 1, 5)
    assert table.iteration == 1
    assert table.values[(1, 1)] == u_monomial(5, 1, M_Q2M1)
    for s in (2, 3, 4):
        assert table.values[(s, s)] == u_monomial(5, 1, M_QM1)
    assert table.values[(1, 2)] == series_zero(5)
    assert table.values[(3, 1)] == series_zero(5)


def test_propagation_law_links_consecutive_iterations():
    k, order = 4, 8
    for step in (1, 2, 3, 4):
        prev = schur_iterate(k, step, order)
        nxt = schur_iterate(k, step + 1, order)
        for s in range(2, k + 1):
            for t in range(1, k + 1):
                if s == t:
                    continue
                want = series_mono_mul(series_scale(prev.values[(s - 1, t)], Q), 2)
                assert nxt.values[(s, t)] == want, (s, t, step)


def test_level_one_fixed_point_is_geometric():
    table = schur_iterate(1, 30, 7)
    assert table.converged
    den = [ONE, QPoly(), QPoly(), M_QM1 * QPoly.q_power(3)]  # 1 - (q-1)q^3 u^3
    want = rational_expand([QPoly(), M_Q2M1], den, 7)
    assert table.values[(1, 1)] == want


def test_fixed_point_accepts_blockspec():
    via_spec = schur_iterate(build_blocks(2), 20, 6)
    via_k = schur_iterate(2, 20, 6)
    assert via_spec.values == via_k.values
    assert isinstance(via_spec, AlphaTable)


def test_iteration_converges_u_adically():
    table = schur_iterate(6, 40, 9)
    assert table.converged
    again = schur_iterate(6, table.iteration + 5, 9)
    assert again.values == table.values


# --- closed-form limits ------------------------------------------------------


def test_alpha_limit_leading_terms():
    assert alpha_limit(1, 1) == u_monomial(1, 1, M_Q2M1)
    got = alpha_limit(1, 4)
    want = USeries(4, [QPoly(), M_Q2M1, QPoly(), QPoly(),
                       M_Q2M1 * QPoly((0, 0, 0, -1, 1))])  # -(q^2-1)(q^4-q^3)
    assert got == want
    assert alpha_limit(2, 2) == u_monomial(2, 2, M_QM1 * QPoly.q_power(3))


def test_alpha_limit_validates_order():
    with pytest.raises(ValueError):
        alpha_limit(3, 2)


# --- det_via_alpha -----------------------------------------------------------


def test_det_via_alpha_order_zero():
    assert det_via_alpha(0) == series_one(0)


def test_det_via_alpha_order_three():
    want = USeries(3, [ONE, 0, 0, QPoly((0, 0, 0, -1, 2, 0, -1))])
    assert det_via_alpha(3) == want


def test_det_via_alpha_specialized_matches_rational():
    num = [ONE, 0, 0, -(QPoly.q_power(3) + QPoly.q_power(6)), 0, 0, QPoly.q_power(9)]
    den = [ONE, 0, 0, QPoly.q_power(4, -2), 0, 0, QPoly.q_power(8)]
    want = specialize_q(rational_expand(num, den, 12), 2)
    assert specialize_q(det_via_alpha(12), 2) == want


# --- det_via_traces ----------------------------------------------------------


def test_det_via_traces_short_orders():
    assert det_via_traces(1, 2) == series_one(2)
    want = USeries(3, [ONE, 0, 0, QPoly((0, 0, 0, -1, 2, 0, -1))])
    assert det_via_traces(1, 3) == want


def test_det_via_traces_type2_is_type1_in_u_squared():
    got = det_via_traces(2, 6)
    want = series_power_substitute(det_via_traces(1, 3), 2, 6)
    assert got == want


# --- det_direct --------------------------------------------------------------


def test_det_direct_constant_term():
    d = det_direct(build_blocks(2), 2, 3, 2)
    assert d.coeffs[0] == ONE


def test_det_direct_level_four():
    d = det_direct(build_blocks(4), 4, 3, 2)
    assert d == USeries(3, [QPoly((1,)), 0, 0, QPoly((-40,))])


def test_det_direct_stabilizes_beyond_order():
    reference = det_direct(build_blocks(4), 4, 3, 2)
    for k, blocks in ((5, 5), (4, 6), (6, 4)):
        assert det_direct(build_blocks(k), blocks, 3, 2) == reference


@pytest.mark.parametrize("q", [2, 3])
def test_det_direct_matches_symbolic_routes(q):
    want = specialize_q(det_via_traces(1, 6), q)
    assert det_direct(build_blocks(8), 8, 6, q) == want


def test_det_direct_at_fractional_q():
    q = Fraction(5, 2)
    want = specialize_q(det_via_alpha(3), q)
    assert det_direct(build_blocks(4), 4, 3, q) == want


# --- the cross-route identity -----------------------------------------------


def test_three_routes_agree_symbolically():
    num = [ONE, 0, 0, -(QPoly.q_power(3) + QPoly.q_power(6)), 0, 0, QPoly.q_power(9)]
    den = [ONE, 0, 0, QPoly.q_power(4, -2), 0, 0, QPoly.q_power(8)]
    reference = rational_expand(num, den, 12)
    assert det_via_alpha(12) == reference
    assert det_via_traces(1, 12) == reference


def test_finite_level_schur_matches_direct_elimination():
    # Close the elimination by hand from the fixed-point table and compare
    # against the assembled matrix: the scalar recurrences really are the
    # block computation.
    for k in (2, 3):
        order = 6
        table = schur_iterate(k, order + 12, order)
        assert table.converged
        acc = series_one(order)
        for j in range(2, k + 1):
            acc = series_add(acc, series_mono_mul(
                series_scale(table.values[(1, j)], QPoly.q_power(2 * j - 3)),
                2 * j - 3))
        tail = series_zero(order)
        for j in range(1, k + 1):
            tail = series_add(tail, u_monomial(
                order, 3 * j - 1, QPoly((-1, 1)) * QPoly.q_power(4 * j - 1)))
        closed = series_add(acc, series_mul(table.values[(1, 1)], tail))
        assert specialize_q(closed, 2) == det_direct(build_blocks(k), 9, order, 2)
