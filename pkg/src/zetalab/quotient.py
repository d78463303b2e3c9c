"""The modular quotient of the PGL(3) building over F_q((1/t)).

The quotient of the Bruhat-Tits building by PGL(3, F_q[t]) is a sector: its
vertices v_{m,n} are indexed by integer pairs with 0 <= n <= m, one chamber
(triangle) sits on each vertex pair (v_{m,n}, v_{m+1,n}, v_{m+1,n+1}), and the
boundary rays n = 0 and m = n carry reflection identifications that surface
only in the transfer weights, not in the vertex set itself.

Directed edges of a fixed type are labelled by (level, offset, leg):

* level  a = n, the height of the chamber's base vertex,
* offset b = m - n, its horizontal position,
* leg    1..3, the position around the chamber.

Type 1 runs the chamber counterclockwise starting along the bottom,

    leg 1: v_{m,n}     -> v_{m+1,n}
    leg 2: v_{m+1,n}   -> v_{m+1,n+1}
    leg 3: v_{m+1,n+1} -> v_{m,n}

while type 2 runs it clockwise starting along the diagonal,

    leg 1: v_{m,n}     -> v_{m+1,n+1}
    leg 2: v_{m+1,n+1} -> v_{m+1,n}
    leg 3: v_{m+1,n}   -> v_{m,n}

Type-2 labels are the mirror image of type-1 labels across the sector
diagonal: the whole type-2 edge dynamics reads identically to type 1 after
swapping the roles of level and offset.  A `Region` bounds chamber labels
strictly by level and offset; it is the finite window every matrix
computation works in.
"""

from typing import NamedTuple


class Vertex(NamedTuple):
    m: int
    n: int


class EdgeLabel(NamedTuple):
    edge_type: int
    level: int
    offset: int
    leg: int


class Region(NamedTuple):
    max_level: int
    max_offset: int


def vertex_is_valid(v: Vertex) -> bool:
    return 0 <= v.n <= v.m


def check_label(e: EdgeLabel) -> None:
    if e.edge_type not in (1, 2):
        raise ValueError(f"edge type must be 1 or 2, got {e.edge_type}")
    if e.level < 0 or e.offset < 0:
        raise ValueError(f"level and offset must be non-negative: {e}")
    if e.leg not in (1, 2, 3):
        raise ValueError(f"leg must be 1, 2 or 3, got {e.leg}")


def chamber_vertices(e: EdgeLabel) -> tuple[Vertex, Vertex, Vertex]:
    """The chamber (v_{m,n}, v_{m+1,n}, v_{m+1,n+1}) carrying the label."""
    a, b = e.level, e.offset
    return (Vertex(a + b, a), Vertex(a + b + 1, a), Vertex(a + b + 1, a + 1))


def edge_source(e: EdgeLabel) -> Vertex:
    check_label(e)
    base, right, top = chamber_vertices(e)
    if e.edge_type == 1:
        return (base, right, top)[e.leg - 1]
    return (base, top, right)[e.leg - 1]


def edge_target(e: EdgeLabel) -> Vertex:
    check_label(e)
    base, right, top = chamber_vertices(e)
    if e.edge_type == 1:
        return (right, top, base)[e.leg - 1]
    return (top, right, base)[e.leg - 1]


def vertices_adjacent(v: Vertex, w: Vertex) -> bool:
    """Whether the quotient complex has an edge between v and w.

    The neighbour set depends on where v sits: interior vertices have six
    neighbours, the two boundary rays have five, the corner has two.
    Invalid coordinates (outside 0 <= n <= m) are simply non-adjacent.
    """
    if not (vertex_is_valid(v) and vertex_is_valid(w)):
        return False
    m, n = v
    if m == 0 and n == 0:
        allowed = {(1, 0), (1, 1)}
    elif m > n > 0:
        allowed = {(m + 1, n), (m - 1, n), (m, n + 1), (m, n - 1),
                   (m + 1, n + 1), (m - 1, n - 1)}
    elif n == 0:
        allowed = {(m + 1, 0), (m - 1, 0), (m, 1), (m + 1, 1)}
    else:  # m == n > 0, the diagonal ray
        allowed = {(m + 1, n), (m, n - 1), (m + 1, n + 1), (m - 1, n - 1)}
    return (w.m, w.n) in allowed


def edges_in_region(edge_type: int, region: Region) -> list[EdgeLabel]:
    """All labels with level < max_level and offset < max_offset.

    The output is strictly ordered by (level, offset, leg); that order fixes
    the row/column convention of every matrix built on top of it.
    """
    if region.max_level < 1 or region.max_offset < 1:
        raise ValueError(f"region bounds must be >= 1, got {region}")
    if edge_type not in (1, 2):
        raise ValueError(f"edge type must be 1 or 2, got {edge_type}")
    return [
        EdgeLabel(edge_type, a, b, leg)
        for a in range(region.max_level)
        for b in range(region.max_offset)
        for leg in (1, 2, 3)
    ]
