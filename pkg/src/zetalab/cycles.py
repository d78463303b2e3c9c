"""Brute-force enumeration of weighted closed edge paths.

This is the oracle against which the linear-algebra traces are checked: an
explicit depth-first search over the out-neighbor table, grouping closed
paths into rotation classes and multiplying step weights along the way.  It
deliberately shares nothing with the matrix machinery except the table
itself.

A closed n-path can only involve edges whose level and offset stay below n,
so the search runs inside the window Region(n+2, n+3).
"""

from typing import NamedTuple

from .polyseries import QPoly, qpoly_eval
from .quotient import EdgeLabel, Region, edges_in_region
from . import transfer


class Cycle(NamedTuple):
    edges: tuple[EdgeLabel, ...]
    weight: QPoly
    primitive_length: int


def _rotation_period(seq):
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and all(seq[i] == seq[(i + p) % n] for i in range(n)):
            return p
    return n


def _canonical_rotation(seq):
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def enumerate_cycles(edge_type: int, n: int) -> tuple[Cycle, ...]:
    """One representative per rotation class of closed n-paths.

    Representatives are the lexicographically least rotation of the label
    sequence; the weight multiplies every step around the cycle, and the
    primitive length is the least rotation period.
    """
    if n < 1:
        raise ValueError("cycle length must be >= 1")
    region = Region(n + 2, n + 3)
    edges = edges_in_region(edge_type, region)
    index = {e: i for i, e in enumerate(edges)}
    succ: list[list[tuple[int, QPoly]]] = [[] for _ in edges]
    preds: list[list[int]] = [[] for _ in edges]
    for i, e in enumerate(edges):
        for target, w in transfer.out_neighbors(e):
            j = index.get(target)
            if j is not None:
                succ[i].append((j, w))
                preds[j].append(i)

    total = len(edges)
    classes: dict[tuple, Cycle] = {}
    path = [0] * n

    for start in range(total):
        # Steps needed to get back to `start` from everywhere (reverse BFS);
        # used to cut dead branches early.
        dist_back = [-1] * total
        dist_back[start] = 0
        frontier = [start]
        depth = 0
        while frontier and depth < n:
            depth += 1
            nxt = []
            for x in frontier:
                for p in preds[x]:
                    if dist_back[p] < 0:
                        dist_back[p] = depth
                        nxt.append(p)
            frontier = nxt

        path[0] = start

        def walk(cur, depth, weight):
            # Only labels >= start may appear, so each rotation class is
            # produced exactly once: from its least label.
            if depth == n - 1:
                for j, w in succ[cur]:
                    if j == start:
                        seq = tuple(edges[i] for i in path)
                        canon = _canonical_rotation(seq)
                        if canon not in classes:
                            classes[canon] = Cycle(canon, weight * w,
                                                   _rotation_period(canon))
                return
            for j, w in succ[cur]:
                if j >= start and 0 <= dist_back[j] <= n - depth - 1:
                    path[depth + 1] = j
                    walk(j, depth + 1, weight * w)

        walk(start, 0, QPoly((1,)))

    return tuple(classes[key] for key in sorted(classes))


def weighted_count(edge_type: int, n: int, q_value=None):
    """Sum of weight times primitive length over rotation classes.

    This equals the trace of the n-th transfer-operator power; the two are
    computed by disjoint code on purpose.
    """
    total = QPoly() if q_value is None else 0
    for cyc in enumerate_cycles(edge_type, n):
        if q_value is None:
            total = total + cyc.weight * cyc.primitive_length
        else:
            total = total + qpoly_eval(cyc.weight, q_value) * cyc.primitive_length
    return total
