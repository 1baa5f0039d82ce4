"""Truncated Laurent series, expansion of rational functions, residues, formal flat sections."""

from __future__ import annotations

from .errors import PoleAtBasepoint
from .polys import RatFunc
from .scalars import ONE, ZERO, Scalar

DEFAULT_ORDER = 8


class TruncSeries:
    """sum_{k=valuation}^{order} c_k (z - center)^k + O((z - center)^(order+1)).

    coeffs[j] is the coefficient of (z - center)^(valuation + j). Leading zeros are
    stripped, so a series known to vanish up to its order has no coefficients and
    valuation order + 1.
    """

    __slots__ = ("center", "valuation", "coeffs", "order")

    def __init__(self, center, valuation, coeffs, order=None):
        center = Scalar.coerce(center)
        cs = [Scalar.coerce(c) for c in coeffs]
        if order is None:
            order = valuation + len(cs) - 1
        cs = cs[: max(0, order - valuation + 1)]
        cs += [ZERO] * (order - valuation + 1 - len(cs))
        k = 0
        while k < len(cs) and not cs[k]:
            k += 1
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "valuation", valuation + k if k < len(cs) else order + 1)
        object.__setattr__(self, "coeffs", tuple(cs[k:]))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def constant(cls, c, center=0, order=DEFAULT_ORDER):
        return cls(center, 0, [c], order)

    @classmethod
    def variable(cls, center=0, order=DEFAULT_ORDER):
        """The series of z itself, i.e. center + t."""
        c = Scalar.coerce(center)
        return cls(c, 0, [c, ONE], order)

    def coeff(self, k) -> Scalar:
        if k > self.order:
            raise ValueError(f"coefficient {k} is beyond the truncation order {self.order}")
        j = k - self.valuation
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else ZERO

    def is_zero(self):
        return not self.coeffs

    def _check(self, o):
        if self.center != o.center:
            raise ValueError("series have different centers")

    def __add__(self, o):
        if not isinstance(o, TruncSeries):
            o = TruncSeries.constant(o, self.center, self.order)
        self._check(o)
        lo = min(self.valuation, o.valuation)
        hi = min(self.order, o.order)
        return TruncSeries(self.center, lo, [self.coeff(k) + o.coeff(k) for k in range(lo, hi + 1)], hi)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.center, self.valuation, [-c for c in self.coeffs], self.order)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (Scalar, int)):
            o = Scalar.coerce(o)
            return TruncSeries(self.center, self.valuation, [c * o for c in self.coeffs], self.order)
        if not isinstance(o, TruncSeries):
            return NotImplemented
        self._check(o)
        order = min(self.order + o.valuation, o.order + self.valuation)
        val = self.valuation + o.valuation
        n = order - val + 1
        if n <= 0:
            return TruncSeries(self.center, order + 1, [], order)
        out = [ZERO] * n
        a, b = self.coeffs, o.coeffs
        for i, x in enumerate(a[:n]):
            if not x:
                continue
            for j, y in enumerate(b[: n - i]):
                out[i + j] = out[i + j] + x * y
        return TruncSeries(self.center, val, out, order)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("series has no nonzero coefficient within its order")
        v = self.valuation
        n = len(self.coeffs)
        a = self.coeffs
        inv0 = a[0].inverse()
        out = [inv0]
        for k in range(1, n):
            acc = ZERO
            for j in range(1, k + 1):
                acc = acc + a[j] * out[k - j]
            out.append(-acc * inv0)
        return TruncSeries(self.center, -v, out, self.order - 2 * v)

    def __truediv__(self, o):
        if isinstance(o, (Scalar, int)):
            return self * Scalar.coerce(o).inverse()
        return self * o.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return TruncSeries.constant(ONE, self.center, self.order - self.valuation)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def derivative(self):
        cs = [c * (self.valuation + j) for j, c in enumerate(self.coeffs)]
        return TruncSeries(self.center, self.valuation - 1, cs, self.order - 1)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise truncation order")
        return TruncSeries(self.center, self.valuation, self.coeffs, order)

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """self(g(z)) where g(g.center) = self.center and self has valuation >= 0."""
        if self.valuation < 0:
            raise ValueError("compose needs a regular outer series")
        h = g - self.center
        if h.valuation < 1:
            raise ValueError("inner series must map its center to the outer center")
        order = min(g.order, self.order)
        out = TruncSeries(g.center, 0, [self.coeff(0)], order)
        pw = TruncSeries.constant(ONE, g.center, order)
        for k in range(1, order + 1):
            pw = pw * h
            c = self.coeff(k) if k <= self.order else ZERO
            if c:
                out = out + pw * c
        return out.truncate(order)

    def __eq__(self, o):
        if not isinstance(o, TruncSeries):
            return NotImplemented
        if self.center != o.center:
            return False
        hi = min(self.order, o.order)
        lo = min(self.valuation, o.valuation)
        return all(self.coeff(k) == o.coeff(k) for k in range(lo, hi + 1))

    __hash__ = None

    def agrees_with(self, f: RatFunc) -> bool:
        return self == series_expand(f, self.center, self.order)

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"TruncSeries(center={self.center}, valuation={self.valuation}, coeffs=({terms}), order={self.order})"


def series_expand(f, center, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Laurent expansion of f at center through (z - center)^order."""
    f = RatFunc.coerce(f)
    center = Scalar.coerce(center)
    if not f:
        return TruncSeries(center, order + 1, [], order)
    num = f.num.shift(center).coeffs
    den = f.den.shift(center).coeffs
    j = next(k for k, c in enumerate(num) if c)
    k = next(k for k, c in enumerate(den) if c)
    n0, d0 = num[j:], den[k:]
    val = j - k
    n = order - val + 1
    if n <= 0:
        return TruncSeries(center, order + 1, [], order)
    inv = d0[0].inverse()
    out = []
    for m in range(n):
        acc = n0[m] if m < len(n0) else ZERO
        for i in range(1, min(m, len(d0) - 1) + 1):
            acc = acc - d0[i] * out[m - i]
        out.append(acc * inv)
    return TruncSeries(center, val, out, order)


def residue_at(w, p) -> Scalar:
    """Coefficient of (z - p)^(-1) of w."""
    return series_expand(w, p, -1).coeff(-1)


def _check_regular(A, p):
    for row in A:
        for a in row:
            if not RatFunc.coerce(a).is_regular_at(p):
                raise PoleAtBasepoint(f"connection entry {a} has a pole at {p}")


def solve_flat_sections(A, p, init, order: int = DEFAULT_ORDER):
    """Formal solution of v' + A v = 0 with v(p) = init, through (z-p)^order."""
    p = Scalar.coerce(p)
    n = len(A)
    _check_regular(A, p)
    init = [Scalar.coerce(c) for c in init]
    ser = [[series_expand(A[i][j], p, max(order - 1, 0)) for j in range(n)] for i in range(n)]
    acoef = [[[ser[i][j].coeff(k) for k in range(max(order, 1))] for j in range(n)] for i in range(n)]
    v = [[c] for c in init]
    for k in range(order):
        for i in range(n):
            acc = ZERO
            for j in range(n):
                row = acoef[i][j]
                for m in range(k + 1):
                    a = row[m]
                    if a:
                        acc = acc + a * v[j][k - m]
            v[i].append(-acc / (k + 1))
    return [TruncSeries(p, 0, vi, order) for vi in v]
