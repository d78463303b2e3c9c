"""Edge zeta functions of the quotient complex and weighted cycle counts.

The type-1 and type-2 zeta functions are Euler products over primitive
closed geodesic edge cycles; both come out as rational functions in
u = q**-s built from factors (1 - q^a u^b), and the full zeta function is
their product.  The logarithmic derivative of the type-1 function generates
the weighted counts N_m of closed cycles of length m, which vanish off
multiples of 3 and have the closed form 3q^(6r) - 6q^(4r) + 3q^(3r) at
m = 3r.
"""

from dataclasses import dataclass

from .polyseries import (
    QPoly,
    USeries,
    rational_expand,
    series_derivative,
    series_log,
)


def _upoly_mul(f: tuple[QPoly, ...], g: tuple[QPoly, ...]) -> tuple[QPoly, ...]:
    out = [QPoly() for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = out[i + j] + a * b
    return tuple(out)


def _factor_upoly(a: int, b: int) -> tuple[QPoly, ...]:
    """The u-polynomial 1 - q^a u^b."""
    out = [QPoly() for _ in range(b + 1)]
    out[0] = QPoly((1,))
    out[b] = QPoly.q_power(a, -1)
    return tuple(out)


@dataclass(frozen=True)
class RationalFunction:
    """A ratio of u-polynomials with QPoly coefficients.

    The factor lists record the (a, b) pairs of the factors (1 - q^a u^b)
    the polynomials were built from; they drive the q^-s display only.
    """

    numerator: tuple[QPoly, ...]
    denominator: tuple[QPoly, ...]
    num_factors: tuple[tuple[int, int], ...] = ()
    den_factors: tuple[tuple[int, int], ...] = ()

    def series(self, order: int) -> USeries:
        return rational_expand(self.numerator, self.denominator, order)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            numerator=_upoly_mul(self.numerator, other.numerator),
            denominator=_upoly_mul(self.denominator, other.denominator),
            num_factors=self.num_factors + other.num_factors,
            den_factors=self.den_factors + other.den_factors,
        )

    def s_expression(self) -> str:
        """Render as a product of (1-q^(a-b*s)) factors in the s variable."""

        def render(factors):
            counts: dict[tuple[int, int], int] = {}
            for f in factors:
                counts[f] = counts.get(f, 0) + 1
            parts = []
            for (a, b), mult in sorted(counts.items(), key=lambda kv: (kv[0][1], kv[0][0])):
                body = f"(1-q^({a}-{b}s))"
                parts.append(body if mult == 1 else f"{body}^{mult}")
            return "*".join(parts)

        num = render(self.num_factors) or "1"
        den = render(self.den_factors)
        return f"{num} / ({den})" if den else num


def _from_factors(num_factors, den_factors) -> RationalFunction:
    num: tuple[QPoly, ...] = (QPoly((1,)),)
    for a, b in num_factors:
        num = _upoly_mul(num, _factor_upoly(a, b))
    den: tuple[QPoly, ...] = (QPoly((1,)),)
    for a, b in den_factors:
        den = _upoly_mul(den, _factor_upoly(a, b))
    return RationalFunction(num, den, tuple(num_factors), tuple(den_factors))


def zeta_type1() -> RationalFunction:
    """(1-q^4 u^3)^2 / ((1-q^3 u^3)(1-q^6 u^3)); reciprocal of det(I-uT_1)."""
    return _from_factors([(4, 3), (4, 3)], [(3, 3), (6, 3)])


def zeta_type2() -> RationalFunction:
    """(1-q^4 u^6)^2 / ((1-q^3 u^6)(1-q^6 u^6)): type 1 with u -> u^2."""
    return _from_factors([(4, 6), (4, 6)], [(3, 6), (6, 6)])


def zeta_full() -> RationalFunction:
    """Product of the type-1 and type-2 zeta functions, multiplied out."""
    return zeta_type1() * zeta_type2()


@dataclass(frozen=True)
class CountTable:
    """Weighted closed-cycle counts N_m, keyed by geometric length m."""

    entries: dict[int, QPoly]


def counts_from_zeta(order: int) -> CountTable:
    """Extract N_m for m <= order from u * Z'(u)/Z(u) of the type-1 zeta.

    The coefficient of u^m in u * d/du log Z equals m times the u^m
    coefficient of log Z.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    log_z = series_log(zeta_type1().series(order))
    dlog = series_derivative(log_z)
    entries = {m: dlog.coeffs[m - 1] for m in range(1, order + 1)}
    return CountTable(entries)


def counts_closed_form(m: int) -> QPoly:
    """3q^(6r) - 6q^(4r) + 3q^(3r) when m = 3r, and 0 otherwise."""
    if m < 1:
        raise ValueError("length must be >= 1")
    if m % 3:
        return QPoly()
    r = m // 3
    return (
        QPoly.q_power(6 * r, 3)
        + QPoly.q_power(4 * r, -6)
        + QPoly.q_power(3 * r, 3)
    )
