"""Jets of sections of K^b (x) O(mS) in a chart, and their chart transitions."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import NonInvertibleChart, PoleAtPoint
from .linalg import Mat
from .polys import Poly, RatFunc
from .scalars import ONE, ZERO, Scalar
from .series import TruncSeries, series_expand
from .sl2 import MoebiusMap


@dataclass(frozen=True)
class BundleSymbol:
    """K^b (x) O(mS); the tangent bundle is b = -1."""

    b: int
    m: int = 0

    def tensor(self, other: "BundleSymbol") -> "BundleSymbol":
        return BundleSymbol(self.b + other.b, self.m + other.m)

    __mul__ = tensor


TX = BundleSymbol(-1, 0)
K = BundleSymbol(1, 0)
TWISTED_T = BundleSymbol(-1, 1)  # TX (x) O(S)

RAW = "raw-derivative"
ADAPTED = "adapted"


@dataclass(frozen=True)
class JetFrame:
    chart: str = "z"
    symbol: BundleSymbol = TX
    tag: str = RAW
    order: int = 2


@dataclass(frozen=True)
class JetVec:
    comps: tuple
    frame: JetFrame = None

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(Scalar.coerce(c) for c in self.comps))

    @property
    def k(self):
        return len(self.comps) - 1

    def __getitem__(self, i):
        return self.comps[i]

    def is_zero(self):
        return not any(self.comps)


# standard filtration of an order-2 jet space: F1 = {v0 = v1 = 0}, F2 = {v0 = 0}
F1_BASIS = ((ZERO, ZERO, ONE),)
F2_BASIS = ((ZERO, ONE, ZERO), (ZERO, ZERO, ONE))


class StdFiltration:
    F1 = F1_BASIS
    F2 = F2_BASIS

    @staticmethod
    def in_F1(v):
        return not v[0] and not v[1]

    @staticmethod
    def in_F2(v):
        return not v[0]


def jet_of(f, k: int, p=None) -> JetVec:
    """(f(p), f'(p), ..., f^(k)(p)). f may be a TruncSeries (p defaults to its center), Poly or RatFunc."""
    if isinstance(f, TruncSeries):
        if p is not None and Scalar.coerce(p) != f.center:
            raise ValueError("series jets are only available at the center")
        if f.valuation < 0:
            raise PoleAtPoint(f"series has a pole at {f.center}")
        if f.order < k:
            raise ValueError(f"series order {f.order} too small for a {k}-jet")
        return JetVec(tuple(f.coeff(j) * factorial(j) for j in range(k + 1)))
    f = RatFunc.coerce(f)
    p = ZERO if p is None else Scalar.coerce(p)
    if not f.is_regular_at(p):
        raise PoleAtPoint(f"{f} has a pole at {p}")
    return jet_of(series_expand(f, p, k), k)


def jet_project(v: JetVec) -> JetVec:
    if v.k < 1:
        raise ValueError("cannot project an order-0 jet")
    return JetVec(v.comps[:-1], v.frame)


def jet_include_top(c, k: int) -> JetVec:
    """The jet (0, ..., 0, c): the kernel direction of jet_project."""
    return JetVec((ZERO,) * k + (Scalar.coerce(c),))


def nested_jet(v: JetVec):
    """Order-1 jet of the order-2 jet curve: ((v0, v1, v2), (v1, v2, v3))."""
    if v.k != 3:
        raise ValueError("nested_jet takes an order-3 jet")
    c = v.comps
    return JetVec(c[:3]), JetVec(c[1:])


def _chart_data(phi, center):
    """Returns (phi as ring element, value of phi at the center, center)."""
    if isinstance(phi, MoebiusMap):
        phi = phi.as_ratfunc()
    if isinstance(phi, Poly):
        phi = RatFunc.coerce(phi)
    if isinstance(phi, TruncSeries):
        if phi.valuation < 0:
            raise NonInvertibleChart("chart map has a pole at the center")
        return phi, phi.coeff(0), phi.center
    phi = RatFunc.coerce(phi)
    c = ZERO if center is None else Scalar.coerce(center)
    return phi, (phi(c) if phi.is_regular_at(c) else None), c


def _divide_by_t(h, c):
    if isinstance(h, TruncSeries):
        if h.valuation < 1:
            raise NonInvertibleChart("twist factor needs the marked point at the center")
        return TruncSeries(h.center, h.valuation - 1, h.coeffs, h.order - 1)
    return h / RatFunc(Poly.linear_root(c))


def jet_transition_matrix(phi, L: BundleSymbol = TX, k: int = 2, center=None):
    """Matrix T(z) with jets of g at phi(z) = T(z) . jets of f at z, where g(phi(z)) = (phi')^(-b) (phi/z)^m f(z).

    Entries are functions of z of the same kind as phi (TruncSeries or RatFunc);
    `transition_at` evaluates at the center.
    """
    phi, phi0, c = _chart_data(phi, center)
    d = phi.derivative()
    if isinstance(phi, TruncSeries):
        if d.valuation != 0:
            raise NonInvertibleChart("phi' vanishes at the center")
        zero = TruncSeries(c, phi.order + 1, [], phi.order)
    else:
        if not d.is_regular_at(c) or not d(c):
            raise NonInvertibleChart("phi' vanishes or has a pole at the center")
        zero = RatFunc.zero()
    dinv = d.inverse()
    factor = d ** (-L.b) if L.b else None
    if L.m:
        if phi0 is None:
            raise NonInvertibleChart("chart map has a pole at the center")
        tw = _divide_by_t(phi - phi0, c) ** L.m
        factor = tw if factor is None else factor * tw
    if factor is None:
        factor = TruncSeries.constant(ONE, c, phi.order) if isinstance(phi, TruncSeries) else RatFunc.one()
    rows = [[factor] + [zero] * k]
    for j in range(k):
        prev = rows[-1]
        new = []
        for i in range(k + 1):
            acc = prev[i].derivative()
            if i > 0:
                acc = acc + prev[i - 1]
            new.append(acc * dinv)
        rows.append(new)
    return Mat._raw(rows)


def transition_at(phi, L: BundleSymbol = TX, k: int = 2, center=None) -> Mat:
    """Pointwise transition matrix at the center (Scalar entries)."""
    T = jet_transition_matrix(phi, L, k, center)
    if isinstance(T[0][0], TruncSeries):
        return T.map(lambda s: s.coeff(0))
    _, _, c = _chart_data(phi, center)
    return T(c)


def det_jet_transition(phi, center=None):
    """Determinant of the order-2 tangent-bundle transition; identically 1 for every chart change."""
    return jet_transition_matrix(phi, TX, 2, center).det()
