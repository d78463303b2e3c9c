"""Three independent routes to det(I - u T) for the type-1 operator.

The operator on a level-k truncation, windowed to N offsets, is a block
tridiagonal matrix with 3k x 3k blocks: one block per offset, A on the first
diagonal slot, B on the rest, C below the diagonal (offset-raising arrows)
and D above it (offset-lowering arrows).  Within a block, index 3s+i-3 holds
the leg-i edge at level s-1, and every entry is linear in u.

Route one eliminates the blocks symbolically.  Block elimination only ever
changes the entries at positions (3s-1, 3t-2) - leg-2 rows against leg-1
columns - so the whole Schur complement iteration collapses to scalar
recurrences on a k x k table `a[(s,t)]`, which converge u-adically; their
limits have closed forms, and in the k -> infinity limit the determinant
reduces to a 2x2 formula (`det_via_alpha`).

Route two is analytic bookkeeping: det(I - uT) = exp(-sum Tr(T^n) u^n / n),
with the traces computed by the transfer module (`det_via_traces`).

Route three is direct: assemble the block matrix at a concrete rational q and
run banded Gaussian elimination over truncated u-series (`det_direct`).

All three must agree; the test suite holds them to that.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .polyseries import (
    QPoly,
    USeries,
    qpoly_eval,
    rational_expand,
    series_add,
    series_exp,
    series_mono_mul,
    series_mul,
    series_one,
    series_scale,
    series_zero,
    u_monomial,
)
from . import transfer

_Q = QPoly((0, 1))
_MINUS_ONE = QPoly((-1,))
_MINUS_Q = QPoly((0, -1))
_MINUS_Q2 = QPoly((0, 0, -1))
_MINUS_Q_MINUS_1 = QPoly((1, -1))      # -(q-1)
_MINUS_Q2_MINUS_Q = QPoly((0, 1, -1))  # -(q^2-q)
_MINUS_Q2_MINUS_1 = QPoly((1, 0, -1))  # -(q^2-1)


class InvalidTruncation(ValueError):
    """Block matrices need a truncation level of at least 2."""


@dataclass(frozen=True)
class BlockSpec:
    """The four 3k x 3k blocks, as sparse maps of u-coefficients.

    Each map sends a 1-based (row, col) pair to the QPoly coefficient of u in
    that entry; A and B additionally carry an implicit 1 on the diagonal.
    """

    k: int
    a: Mapping[tuple[int, int], QPoly] = field(repr=False)
    b: Mapping[tuple[int, int], QPoly] = field(repr=False)
    c: Mapping[tuple[int, int], QPoly] = field(repr=False)
    d: Mapping[tuple[int, int], QPoly] = field(repr=False)

    @property
    def block_dim(self) -> int:
        return 3 * self.k


def build_blocks(k: int) -> BlockSpec:
    """Block entries for truncation level k (k >= 2)."""
    if k < 2:
        raise InvalidTruncation(f"truncation level must be >= 2, got {k}")
    dim = 3 * k
    b: dict[tuple[int, int], QPoly] = {(2, 1): _MINUS_Q2_MINUS_1}
    for s in range(1, k):
        b[(3 * s + 2, 3 * s + 1)] = _MINUS_Q_MINUS_1
    for s in range(2, k + 1):
        b[(3 * (s - 1), 3 * s)] = _MINUS_Q2
    for s in range(1, k + 1):
        b[(3 * s, 3 * s - 1)] = _MINUS_Q2_MINUS_Q
    a = dict(b)
    a[(1, 3)] = _MINUS_Q2
    for s in range(1, k):
        a[(3 * s + 1, 3 * s - 1)] = _MINUS_Q
    c: dict[tuple[int, int], QPoly] = {}
    for s in range(1, k + 1):
        c[(3 * s - 2, 3 * s - 2)] = _MINUS_ONE
    for s in range(1, k):
        c[(3 * s, 3 * s + 1)] = _MINUS_Q2_MINUS_Q
    d: dict[tuple[int, int], QPoly] = {(2, 3): _MINUS_Q2}
    for s in range(1, k):
        d[(3 * s + 2, 3 * s - 1)] = _MINUS_Q
    return BlockSpec(k=k, a=a, b=b, c=c, d=d)


def assemble_matrix(spec: BlockSpec, blocks: int) -> dict[tuple[int, int], QPoly]:
    """The full (3k*blocks)^2 matrix, as a sparse map of u-coefficients.

    Global indices are 0-based; the implicit unit diagonal is not included,
    so the represented matrix is I + u * (this map).
    """
    if blocks < 1:
        raise ValueError("need at least one block")
    dim = spec.block_dim
    out: dict[tuple[int, int], QPoly] = {}
    for bi in range(blocks):
        for bj in range(blocks):
            if bi == bj:
                block = spec.a if bi == 0 else spec.b
            elif bi == bj + 1:
                block = spec.c
            elif bj == bi + 1:
                block = spec.d
            else:
                continue
            base_r, base_c = bi * dim, bj * dim
            for (r, c), coeff in block.items():
                out[(base_r + r - 1, base_c + c - 1)] = coeff
    return out


@dataclass(frozen=True)
class AlphaTable:
    """State of the scalar Schur iteration: values a[(s,t)] at one iteration."""

    k: int
    iteration: int
    values: Mapping[tuple[int, int], USeries]
    converged: bool = False


def _alpha_base(k: int, order: int) -> dict[tuple[int, int], USeries]:
    vals = {}
    for s in range(1, k + 1):
        for t in range(1, k + 1):
            if s == t == 1:
                vals[(s, t)] = u_monomial(order, 1, _MINUS_Q2_MINUS_1)
            elif s == t:
                vals[(s, t)] = u_monomial(order, 1, _MINUS_Q_MINUS_1)
            else:
                vals[(s, t)] = series_zero(order)
    return vals


def _alpha_step(prev, k, order):
    nxt = {}
    for t in range(1, k + 1):
        if t == 1:
            acc = u_monomial(order, 1, _MINUS_Q2_MINUS_1)
        else:
            acc = u_monomial(order, t, _MINUS_Q_MINUS_1 * QPoly.q_power(2 * t - 1))
        for i in range(1, k + 1):
            coeff = QPoly((-1, 1)) * QPoly.q_power(2 * i + 1)  # (q-1)q^(2i+1)
            term = series_mono_mul(series_scale(prev[(i, t)], coeff), i + 2)
            acc = series_add(acc, term)
        nxt[(1, t)] = acc
        for s in range(2, k + 1):
            val = series_mono_mul(series_scale(prev[(s - 1, t)], _Q), 2)
            if s == t:
                val = series_add(val, u_monomial(order, 1, _MINUS_Q_MINUS_1))
            nxt[(s, t)] = val
    return nxt


def schur_iterate(spec_or_k, max_iter: int, order: int) -> AlphaTable:
    """Run the scalar Schur recurrences up to a fixed point.

    Accepts a BlockSpec or a bare level count k.  Stops as soon as an
    iteration reproduces the previous table at the working u-order, or after
    `max_iter` iterations, whichever comes first.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    k = spec_or_k.k if isinstance(spec_or_k, BlockSpec) else int(spec_or_k)
    if k < 1:
        raise ValueError("level count must be >= 1")
    values = _alpha_base(k, order)
    iteration = 1
    converged = False
    while iteration < max_iter:
        stepped = _alpha_step(values, k, order)
        iteration += 1
        if stepped == values:
            converged = True
            values = stepped
            break
        values = stepped
    return AlphaTable(k=k, iteration=iteration, values=values, converged=converged)


def alpha_limit(t: int, order: int) -> USeries:
    """Closed-form limit of the (1,t) Schur entry as the level bound grows.

    t = 1:  -(q^2-1)u (1-q^3 u^3) / (1-q^4 u^3)
    t >= 2: (-(q-1)q^(2t-1) u^t + (q-1)q^(2t+1) u^(t+3)) / (1-q^4 u^3)
    """
    if t < 1:
        raise ValueError("column index must be >= 1")
    if order < t:
        raise ValueError(f"order {order} < leading power {t}")
    den = [QPoly((1,)), QPoly(), QPoly(), QPoly((0, 0, 0, 0, -1))]
    if t == 1:
        num = [QPoly(), _MINUS_Q2_MINUS_1, QPoly(), QPoly(),
               QPoly((-1, 0, 1)) * QPoly.q_power(3)]  # (q^2-1)q^3
    else:
        num = [QPoly()] * (t + 4)
        num[t] = _MINUS_Q_MINUS_1 * QPoly.q_power(2 * t - 1)
        num[t + 3] = QPoly((-1, 1)) * QPoly.q_power(2 * t + 1)
    return rational_expand(num, den, order)


def det_via_alpha(order: int) -> USeries:
    """det(I - u T) from the closed-form Schur limits.

    Evaluates 1 + sum_{j>=2} q^(2j-3) u^(2j-3) alpha_j(u)
                + alpha_1(u) sum_{j>=1} q^(4j-1)(q-1) u^(3j-1),
    keeping exactly the terms that can reach the requested order.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    acc = series_one(order)
    if order == 0:
        return acc
    j = 2
    while 3 * (j - 1) <= order:  # term j enters at u^(3j-3)
        shifted = series_mono_mul(
            series_scale(alpha_limit(j, order), QPoly.q_power(2 * j - 3)),
            2 * j - 3,
        )
        acc = series_add(acc, shifted)
        j += 1
    tail = series_zero(order)
    j = 1
    while 3 * j <= order:  # term j enters at u^(3j)
        coeff = QPoly((-1, 1)) * QPoly.q_power(4 * j - 1)  # q^(4j-1)(q-1)
        tail = series_add(tail, u_monomial(order, 3 * j - 1, coeff))
        j += 1
    return series_add(acc, series_mul(alpha_limit(1, order), tail))


def det_via_traces(edge_type: int, order: int) -> USeries:
    """det(I - u^k T_k) from exact traces: exp(-sum Tr(T^n) u^(kn) / n).

    The type-k operator counts length in steps of k powers of u, so type 2
    produces the type-1 series with u replaced by u^2.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    n_max = order // edge_type
    log_det = series_zero(order)
    if n_max >= 1:
        traces = transfer.trace_powers(edge_type, n_max)
        for n in range(1, n_max + 1):
            coeff = traces[n - 1] * Fraction(-1, n)
            log_det = series_add(log_det, u_monomial(order, edge_type * n, coeff))
    return series_exp(log_det)


def _ser_mul(f, g, order):
    out = [0] * (order + 1)
    for i, a in enumerate(f):
        if a == 0 or i > order:
            continue
        for j, b in enumerate(g):
            if i + j > order:
                break
            if b:
                out[i + j] += a * b
    return out


def _ser_inv(f, order):
    if f[0] == 0:
        raise RuntimeError("singular leading minor")
    inv0 = Fraction(1, 1) / f[0]
    inv0 = int(inv0) if inv0.denominator == 1 else inv0
    out = [inv0]
    for n in range(1, order + 1):
        acc = 0
        for i in range(1, min(n, len(f) - 1) + 1):
            if f[i]:
                acc += f[i] * out[n - i]
        out.append(-inv0 * acc)
    return out


def det_direct(spec: BlockSpec, blocks: int, order: int, q_value) -> USeries:
    """Determinant of the assembled block matrix at a concrete rational q.

    Banded Gaussian elimination over u-series with rational coefficients:
    every pivot is 1 + O(u), so no pivoting is needed and the product of the
    pivots is the determinant.  This route never touches the Schur
    recurrences or the traces.
    """
    q_value = q_value if isinstance(q_value, (int, Fraction)) else Fraction(q_value)
    size = spec.block_dim * blocks
    rows: list[dict[int, list]] = [dict() for _ in range(size)]
    for r in range(size):
        rows[r][r] = [1] + [0] * order
    for (r, c), coeff in assemble_matrix(spec, blocks).items():
        entry = rows[r].get(c)
        if entry is None:
            entry = [0] * (order + 1)
            rows[r][c] = entry
        if order >= 1:
            entry[1] += qpoly_eval(coeff, q_value)

    band = 2 * spec.block_dim
    det = [1] + [0] * order
    for i in range(size):
        pivot = rows[i].get(i)
        if pivot is None or pivot[0] == 0:
            raise RuntimeError("singular leading minor")
        det = _ser_mul(det, pivot, order)
        inv_pivot = _ser_inv(pivot, order)
        row_i = [(c, v) for c, v in rows[i].items() if c > i and any(v)]
        for r in range(i + 1, min(size, i + band + 1)):
            entry = rows[r].pop(i, None)
            if entry is None or not any(entry):
                continue
            factor = _ser_mul(entry, inv_pivot, order)
            target = rows[r]
            for c, v in row_i:
                delta = _ser_mul(factor, v, order)
                cur = target.get(c)
                if cur is None:
                    target[c] = [-x for x in delta]
                else:
                    for idx in range(order + 1):
                        cur[idx] -= delta[idx]
    return USeries(order, tuple(QPoly((c,)) for c in det))
