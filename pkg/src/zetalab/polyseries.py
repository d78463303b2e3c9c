"""Exact arithmetic for polynomials in q and truncated power series in u.

`QPoly` is a dense polynomial in the formal variable q with arbitrary-precision
rational coefficients.  Coefficients are kept as plain Python ints whenever the
denominator is 1, and as `fractions.Fraction` otherwise, so integer pipelines
stay on the fast path while log/exp may introduce denominators.  `USeries` is a
power series in a second variable u (standing for q**-s), truncated at an
explicit order, with QPoly coefficients.

Everything here is exact: no floats, no rounding, ever.  Binary series
operations truncate to the smaller of the two operand orders so precision loss
is always visible at the call site.
"""

from fractions import Fraction


class NonUnitConstantTerm(ArithmeticError):
    """Series inversion needs a nonzero rational constant term."""


class ConstantTermNotOne(ArithmeticError):
    """Formal logarithm needs constant term exactly 1."""


class NonzeroConstantTerm(ArithmeticError):
    """Formal exponential needs constant term exactly 0."""


def _exact(c):
    """Coerce a coefficient to int or Fraction; reject inexact types."""
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class QPoly:
    """Polynomial in q, dense coefficient tuple, trailing zeros trimmed.

    Index i of `coeffs` holds the coefficient of q**i.  Instances are
    immutable; all arithmetic returns new objects.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cleaned = [_exact(c) for c in coeffs]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        self.coeffs = tuple(cleaned)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def q_power(cls, k, coeff=1):
        """coeff * q**k."""
        if k < 0:
            raise ValueError("q exponent must be non-negative")
        return cls((0,) * k + (coeff,))

    @property
    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly((other,))
        elif not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly((other,))
        elif not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return QPoly()
            return QPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = QPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, q_value):
        """Evaluate at a rational point, exactly (Horner)."""
        q_value = _exact(q_value if isinstance(q_value, (int, Fraction)) else Fraction(q_value))
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q_value + c
        return _exact(acc) if isinstance(acc, Fraction) else acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly((other,))
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        """Canonical form: descending powers, explicit signs, no spaces."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = str(a)
            else:
                qpow = "q" if k == 1 else f"q^{k}"
                body = qpow if a == 1 else f"{a}*{qpow}"
            parts.append(sign + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    __repr__ = __str__


QP_ZERO = QPoly()
QP_ONE = QPoly((1,))
Q = QPoly((0, 1))


def qpoly_eval(p, q_value):
    """Specialize the variable q to an exact rational value."""
    return p(q_value)


def _as_qpoly(c):
    if isinstance(c, QPoly):
        return c
    return QPoly((c,))


class USeries:
    """Power series in u truncated at `order`, with QPoly coefficients.

    `coeffs` always has exactly order+1 entries (powers u**0 .. u**order).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=()):
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = tuple(_as_qpoly(c) for c in coeffs)
        if len(coeffs) > order + 1:
            raise ValueError("more coefficients than order allows")
        self.order = order
        self.coeffs = coeffs + (QP_ZERO,) * (order + 1 - len(coeffs))

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                cs = str(c)
                if len(c.coeffs) > 1 or i == 0:
                    cs = f"({cs})" if i else cs
                terms.append(cs if i == 0 else f"{cs}*u^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O(u^{self.order + 1})>"


def series_zero(order):
    return USeries(order)


def series_one(order):
    return USeries(order, (QP_ONE,))


def u_monomial(order, power, coeff=QP_ONE):
    """coeff * u**power, truncated at `order` (zero if power > order)."""
    if power > order:
        return USeries(order)
    return USeries(order, (QP_ZERO,) * power + (_as_qpoly(coeff),))


def series_truncate(f, order):
    if order >= f.order:
        return f if order == f.order else USeries(order, f.coeffs + (QP_ZERO,) * (order - f.order))
    return USeries(order, f.coeffs[: order + 1])


def series_add(f, g):
    order = min(f.order, g.order)
    return USeries(order, tuple(f.coeffs[i] + g.coeffs[i] for i in range(order + 1)))


def series_sub(f, g):
    order = min(f.order, g.order)
    return USeries(order, tuple(f.coeffs[i] - g.coeffs[i] for i in range(order + 1)))


def series_neg(f):
    return USeries(f.order, tuple(-c for c in f.coeffs))


def series_scale(f, c):
    """Multiply every coefficient by a QPoly or rational scalar."""
    c = c if isinstance(c, QPoly) else _as_qpoly(c)
    return USeries(f.order, tuple(c * fc for fc in f.coeffs))


def series_mono_mul(f, power, order=None):
    """Multiply by u**power; result truncated at `order` (default f.order)."""
    if order is None:
        order = f.order
    out = [QP_ZERO] * (order + 1)
    for i, c in enumerate(f.coeffs):
        if i + power > order:
            break
        out[i + power] = c
    return USeries(order, out)


def series_mul(f, g):
    """Cauchy product, truncated at min(f.order, g.order)."""
    order = min(f.order, g.order)
    out = [QP_ZERO] * (order + 1)
    for i, ci in enumerate(f.coeffs):
        if i > order or not ci:
            continue
        for j, cj in enumerate(g.coeffs):
            if i + j > order:
                break
            if cj:
                out[i + j] = out[i + j] + ci * cj
    return USeries(order, out)


def series_inv(f):
    """Multiplicative inverse up to truncation order.

    The constant term must be a nonzero rational (a unit of the coefficient
    ring); inverting a genuine polynomial in q would leave the ring.
    """
    c0 = f.coeffs[0]
    if not c0 or not c0.is_constant():
        raise NonUnitConstantTerm(f"constant term {c0} is not a nonzero rational")
    inv0 = Fraction(1, 1) / c0.coeffs[0]
    out = [_as_qpoly(_exact(inv0))]
    for k in range(1, f.order + 1):
        acc = QP_ZERO
        for i in range(1, k + 1):
            ci = f.coeffs[i]
            if ci:
                acc = acc + ci * out[k - i]
        out.append(acc * (-inv0) if acc else QP_ZERO)
    return USeries(f.order, out)


def series_log(f):
    """Formal logarithm -sum((1-f)**n / n); requires constant term 1."""
    if f.coeffs[0] != QP_ONE:
        raise ConstantTermNotOne(f"constant term {f.coeffs[0]} != 1")
    x = series_sub(series_one(f.order), f)
    acc = series_zero(f.order)
    p = x
    for n in range(1, f.order + 1):
        acc = series_sub(acc, series_scale(p, Fraction(1, n)))
        if n < f.order:
            p = series_mul(p, x)
    return acc


def series_exp(f):
    """Formal exponential sum(f**n / n!); requires constant term 0."""
    if f.coeffs[0]:
        raise NonzeroConstantTerm(f"constant term {f.coeffs[0]} != 0")
    acc = series_one(f.order)
    p = series_one(f.order)
    for n in range(1, f.order + 1):
        p = series_scale(series_mul(p, f), Fraction(1, n))
        acc = series_add(acc, p)
    return acc


def series_derivative(f):
    """Termwise d/du; the order drops by one."""
    if f.order == 0:
        return USeries(0)
    return USeries(f.order - 1, tuple((k + 1) * f.coeffs[k + 1] for k in range(f.order)))


def series_power_substitute(f, k, order):
    """Substitute u -> u**k, truncating at `order`."""
    out = [QP_ZERO] * (order + 1)
    for i, c in enumerate(f.coeffs):
        if i * k > order:
            break
        out[i * k] = c
    return USeries(order, out)


def series_from_upoly(coeffs, order):
    """Build a series from a dense u-polynomial (sequence of QPoly/rationals)."""
    return USeries(order, tuple(_as_qpoly(c) for c in coeffs[: order + 1]))


def rational_expand(numerator, denominator, order):
    """Expand numerator/denominator as a series up to u**order.

    Both arguments are dense u-polynomials given as sequences of QPoly (or
    rational) coefficients; the denominator needs a unit constant term.
    """
    num = series_from_upoly(numerator, order)
    den = series_from_upoly(denominator, order)
    return series_mul(num, series_inv(den))


def specialize_q(f, q_value):
    """Evaluate every coefficient at q = q_value, keeping the series shape."""
    return USeries(f.order, tuple(_as_qpoly(c(q_value)) for c in f.coeffs))
