"""Weighted transfer operators on labelled edges.

An edge e maps to the weighted sum of the same-type edges e' that can follow
it along a geodesic; the weight w(e, e') counts lifts to the building, so
every row of the full operator sums to q^2.  In (level a, offset b, leg)
coordinates the arrows are:

    leg 1, a = 0:   (q^2-1) (0, b, 2)    +  1 (0, b+1, 1)
    leg 1, a >= 1:  (q-1)  (a, b, 2)     +  (q^2-q) (a-1, b+1, 3)  +  1 (a, b+1, 1)
    leg 2:          (q^2-q) (a, b, 3)    +  q (a+1, 0, 1)      if b = 0
                    (q^2-q) (a, b, 3)    +  q (a+1, b-1, 2)    if b >= 1
    leg 3, a = 0:   q^2 (0, 0, 1)        if b = 0
                    q^2 (0, b-1, 2)      if b >= 1
    leg 3, a >= 1:  q^2 (a-1, b, 3)

The a = 0 rows fold in the reflection across the bottom boundary ray; the
leg-3 rows fold in the reflection across the diagonal.  Truncating at level k
keeps edges with level < k and drops the level-raising q-arrow out of leg-2
edges at level k-1, which is the one arrow that would leave the window.

Both edge types use this table verbatim.  For type 1 the produced arrows are
head-to-tail on the nose; for type 2, whose labels mirror the complex across
the sector diagonal, they are head-to-tail after swapping level and offset in
every label (see `quotient`).

Traces of operator powers count weighted closed edge paths.  They are finite
for each power because a closed path of length m can never leave levels and
offsets below m, so `trace_power` works in a finite window and certifies the
answer by enlarging the window until it stops changing.
"""

from fractions import Fraction
from typing import NamedTuple

from .polyseries import QPoly, qpoly_eval
from .quotient import EdgeLabel, Region, check_label, edges_in_region

W_ONE = QPoly((1,))
W_Q = QPoly((0, 1))
W_Q_MINUS_1 = QPoly((-1, 1))
W_Q2_MINUS_Q = QPoly((0, -1, 1))
W_Q2_MINUS_1 = QPoly((-1, 0, 1))
W_Q2 = QPoly((0, 0, 1))

WEIGHTS = (W_ONE, W_Q, W_Q_MINUS_1, W_Q2_MINUS_Q, W_Q2_MINUS_1, W_Q2)


class OutsideTruncation(ValueError):
    """The edge lies above the truncation level."""


class WeightedArrow(NamedTuple):
    target: EdgeLabel
    weight: QPoly


def out_neighbors(e: EdgeLabel, truncate: int | None = None) -> list[WeightedArrow]:
    """Weighted successors of e, in the full complex or truncated at a level.

    `truncate=k` restricts to edges with level < k (k >= 1); `None` means the
    full complex.
    """
    check_label(e)
    t, a, b, leg = e
    if truncate is not None:
        if truncate < 1:
            raise ValueError(f"truncation level must be >= 1, got {truncate}")
        if a >= truncate:
            raise OutsideTruncation(f"{e} has level {a} >= {truncate}")
    if leg == 1:
        if a == 0:
            return [
                WeightedArrow(EdgeLabel(t, 0, b, 2), W_Q2_MINUS_1),
                WeightedArrow(EdgeLabel(t, 0, b + 1, 1), W_ONE),
            ]
        return [
            WeightedArrow(EdgeLabel(t, a, b, 2), W_Q_MINUS_1),
            WeightedArrow(EdgeLabel(t, a - 1, b + 1, 3), W_Q2_MINUS_Q),
            WeightedArrow(EdgeLabel(t, a, b + 1, 1), W_ONE),
        ]
    if leg == 2:
        arrows = [WeightedArrow(EdgeLabel(t, a, b, 3), W_Q2_MINUS_Q)]
        if truncate is None or a < truncate - 1:
            if b == 0:
                arrows.append(WeightedArrow(EdgeLabel(t, a + 1, 0, 1), W_Q))
            else:
                arrows.append(WeightedArrow(EdgeLabel(t, a + 1, b - 1, 2), W_Q))
        return arrows
    # leg 3
    if a == 0:
        if b == 0:
            return [WeightedArrow(EdgeLabel(t, 0, 0, 1), W_Q2)]
        return [WeightedArrow(EdgeLabel(t, 0, b - 1, 2), W_Q2)]
    return [WeightedArrow(EdgeLabel(t, a - 1, b, 3), W_Q2)]


def row_sum(e: EdgeLabel, truncate: int | None = None) -> QPoly:
    """Total outgoing weight of e; q^2 in the full complex."""
    acc = QPoly()
    for _, w in out_neighbors(e, truncate):
        acc = acc + w
    return acc


def operator_matrix(edge_type: int, region: Region,
                    truncate: int | None = None) -> dict[tuple[int, int], QPoly]:
    """Sparse operator matrix on the region's edges.

    Entry (row of e', column of e) holds w(e, e'); indices follow the
    `edges_in_region` order and arrows leaving the region are dropped.  A
    truncation level, when given, must equal the region's level bound.
    """
    if truncate is not None and truncate != region.max_level:
        raise ValueError(
            f"truncation level {truncate} must match region level bound {region.max_level}"
        )
    edges = edges_in_region(edge_type, region)
    index = {e: i for i, e in enumerate(edges)}
    mat: dict[tuple[int, int], QPoly] = {}
    for col, e in enumerate(edges):
        for target, w in out_neighbors(e, truncate):
            row = index.get(target)
            if row is not None:
                mat[(row, col)] = w
    return mat


# --- traces of operator powers ---------------------------------------------
#
# Closed m-paths only visit edges whose shortest closed path is <= m.  The
# shortest-return lengths are computed once on a generous window and cached;
# labels outside that window cannot lie on a closed path shorter than the
# window size, so treating them as unreachable is safe.

_MIN_RETURN_FLOOR = 13
_min_return_cache: dict[tuple[int, int], dict[EdgeLabel, int]] = {}


def _min_return_lengths(edge_type: int, cutoff: int) -> dict[EdgeLabel, int]:
    """Shortest closed-path length through each label, where <= cutoff."""
    cutoff = max(cutoff, _MIN_RETURN_FLOOR)
    key = (edge_type, cutoff)
    cached = _min_return_cache.get(key)
    if cached is not None:
        return cached
    region = Region(cutoff + 2, cutoff + 3)
    edges = edges_in_region(edge_type, region)
    index = {e: i for i, e in enumerate(edges)}
    succ: list[list[int]] = [[] for _ in edges]
    preds: list[list[int]] = [[] for _ in edges]
    for i, e in enumerate(edges):
        for target, _ in out_neighbors(e):
            j = index.get(target)
            if j is not None:
                succ[i].append(j)
                preds[j].append(i)
    result: dict[EdgeLabel, int] = {}
    n = len(edges)
    for i, e in enumerate(edges):
        if not preds[i] or not succ[i]:
            continue
        closers = set(preds[i])
        seen = bytearray(n)
        seen[i] = 1
        frontier = [i]
        depth = 0
        while frontier and depth < cutoff:
            depth += 1
            nxt = []
            hit = False
            for x in frontier:
                for y in succ[x]:
                    if not seen[y]:
                        seen[y] = 1
                        nxt.append(y)
                        if y in closers:
                            hit = True
            if hit:
                result[e] = depth + 1
                break
            frontier = nxt
    _min_return_cache[key] = result
    return result


def _trace_sweep(edge_type, max_m, region, q_value):
    """Traces of powers 1..max_m of the operator restricted to the region."""
    min_ret = _min_return_lengths(edge_type, max_m)
    kept = [e for e in edges_in_region(edge_type, region)
            if min_ret.get(e, max_m + 1) <= max_m]
    index = {e: i for i, e in enumerate(kept)}
    succ: list[list[tuple[int, object]]] = []
    for e in kept:
        lst = []
        for target, w in out_neighbors(e):
            j = index.get(target)
            if j is not None:
                lst.append((j, w if q_value is None else qpoly_eval(w, q_value)))
        succ.append(lst)
    n = len(kept)
    one = QPoly((1,)) if q_value is None else 1
    paths = [{i: one} for i in range(n)]
    traces = []
    for _ in range(max_m):
        stepped = []
        for start in range(n):
            acc: dict[int, object] = {}
            for cur, val in paths[start].items():
                for j, w in succ[cur]:
                    prod = val * w
                    if j in acc:
                        acc[j] = acc[j] + prod
                    else:
                        acc[j] = prod
            stepped.append(acc)
        paths = stepped
        total = QPoly() if q_value is None else 0
        for start in range(n):
            hit = paths[start].get(start)
            if hit is not None:
                total = total + hit
        traces.append(total)
    return traces


def trace_powers_with_region(edge_type: int, max_m: int, q_value=None):
    """Stabilized traces for powers 1..max_m, plus the certified region.

    Starts from Region(max_m+2, max_m+3) and keeps doubling the offset bound
    until two consecutive enlargements leave every trace unchanged.
    """
    if max_m < 1:
        raise ValueError("power must be >= 1")
    if q_value is not None:
        q_value = q_value if isinstance(q_value, (int, Fraction)) else Fraction(q_value)
    base = Region(max_m + 2, max_m + 3)
    regions = [base]
    values = [_trace_sweep(edge_type, max_m, base, q_value)]
    while len(values) < 3 or not (values[-1] == values[-2] == values[-3]):
        grown = Region(base.max_level, regions[-1].max_offset * 2)
        if grown.max_offset > 512 * (max_m + 3):
            raise RuntimeError("trace failed to stabilize; transfer table is inconsistent")
        regions.append(grown)
        values.append(_trace_sweep(edge_type, max_m, grown, q_value))
    return values[-1], regions[-3]


def trace_powers(edge_type: int, max_m: int, q_value=None) -> list:
    """Stabilized traces of operator powers 1..max_m (symbolic if q is None)."""
    return trace_powers_with_region(edge_type, max_m, q_value)[0]


def trace_power(edge_type: int, m: int, q_value=None):
    """Trace of the m-th operator power: the weighted count of closed m-paths."""
    return trace_powers(edge_type, m, q_value)[m - 1]


def trace_power_in_region(edge_type: int, m: int, region: Region, q_value=None):
    """Trace of the m-th power over an explicitly chosen finite window."""
    if m < 1:
        raise ValueError("power must be >= 1")
    if q_value is not None:
        q_value = q_value if isinstance(q_value, (int, Fraction)) else Fraction(q_value)
    return _trace_sweep(edge_type, m, region, q_value)[m - 1]
