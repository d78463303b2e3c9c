"""Exact edge zeta functions of the modular quotient of the PGL(3) building.

The package computes, entirely in exact arithmetic, the type-1 and type-2
edge transfer operators of the quotient of the Bruhat-Tits building of
PGL(3, F_q((1/t))) by PGL(3, F_q[t]), their weighted closed-cycle counts, and
the edge zeta function with its determinant representation - each by several
mutually independent methods that are required to agree.
"""

__version__ = "0.1.0"

from .polyseries import QPoly, USeries, qpoly_eval, rational_expand
from .quotient import EdgeLabel, Region, Vertex
from .zeta import counts_closed_form, counts_from_zeta, zeta_full, zeta_type1, zeta_type2

__all__ = [
    "QPoly",
    "USeries",
    "qpoly_eval",
    "rational_expand",
    "EdgeLabel",
    "Region",
    "Vertex",
    "counts_closed_form",
    "counts_from_zeta",
    "zeta_full",
    "zeta_type1",
    "zeta_type2",
    "__version__",
]
