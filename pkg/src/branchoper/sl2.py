"""Moebius maps, sl2 as quadratic vector fields on the projective line, and the Killing form."""

from __future__ import annotations

from .errors import NonTraceless
from .linalg import Mat
from .polys import Poly, RatFunc
from .scalars import Scalar


class MoebiusMap:
    """z -> (az+b)/(cz+d). Stored up to scale: the first nonzero entry of (a, b, c, d) is 1."""

    __slots__ = ("m",)

    def __init__(self, m):
        (a, b), (c, d) = [[Scalar.coerce(x) for x in r] for r in m]
        if not (a * d - b * c):
            raise ValueError("Moebius matrix must be invertible")
        lead = next(x for x in (a, b, c, d) if x).inverse()
        object.__setattr__(self, "m", ((a * lead, b * lead), (c * lead, d * lead)))

    def __setattr__(self, name, value):
        raise AttributeError("MoebiusMap is immutable")

    @classmethod
    def identity(cls):
        return cls([[1, 0], [0, 1]])

    def as_ratfunc(self) -> RatFunc:
        (a, b), (c, d) = self.m
        return RatFunc(Poly([b, a]), Poly([d, c]))

    def act(self, f) -> RatFunc:
        """Post-compose: (a f + b)/(c f + d)."""
        f = RatFunc.coerce(f)
        (a, b), (c, d) = self.m
        return (f * a + RatFunc.const(b)) / (f * c + RatFunc.const(d))

    def __call__(self, z):
        return self.act(z)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self o other."""
        return MoebiusMap((Mat(self.m, Scalar) * Mat(other.m, Scalar)).rows)

    def inverse(self) -> "MoebiusMap":
        (a, b), (c, d) = self.m
        return MoebiusMap([[d, -b], [-c, a]])

    def __eq__(self, o):
        if not isinstance(o, MoebiusMap):
            return NotImplemented
        return self.m == o.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        (a, b), (c, d) = self.m
        return f"MoebiusMap(({a}, {b}; {c}, {d}))"


class Sl2Elt:
    __slots__ = ("m",)

    def __init__(self, m):
        rows = tuple(tuple(Scalar.coerce(x) for x in r) for r in m)
        if rows[0][0] + rows[1][1]:
            raise NonTraceless(f"trace is {rows[0][0] + rows[1][1]}, not 0")
        object.__setattr__(self, "m", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Sl2Elt is immutable")

    def bracket(self, o: "Sl2Elt") -> "Sl2Elt":
        x, y = Mat(self.m, Scalar), Mat(o.m, Scalar)
        return Sl2Elt((x * y - y * x).rows)

    def __add__(self, o):
        return Sl2Elt((Mat(self.m, Scalar) + Mat(o.m, Scalar)).rows)

    def scale(self, c):
        return Sl2Elt(Mat(self.m, Scalar).scale(Scalar.coerce(c)).rows)

    def __eq__(self, o):
        return isinstance(o, Sl2Elt) and self.m == o.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"Sl2Elt({[[str(x) for x in r] for r in self.m]})"


E = Sl2Elt([[0, 1], [0, 0]])
H = Sl2Elt([[1, 0], [0, -1]])
F = Sl2Elt([[0, 0], [1, 0]])


class VectorFieldPoly:
    """p(z) d/dz with deg p <= 2."""

    __slots__ = ("p",)

    def __init__(self, p):
        p = p if isinstance(p, Poly) else Poly(p)
        if p.degree > 2:
            raise ValueError("global vector fields on the projective line have degree <= 2")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("VectorFieldPoly is immutable")

    def coords(self):
        """Coordinates in the basis (d/dz, z d/dz, z^2 d/dz)."""
        return tuple(self.p.coeff(k) for k in range(3))

    def __add__(self, o):
        return VectorFieldPoly(self.p + o.p)

    def __neg__(self):
        return VectorFieldPoly(-self.p)

    def scale(self, c):
        return VectorFieldPoly(self.p * Scalar.coerce(c))

    def __eq__(self, o):
        return isinstance(o, VectorFieldPoly) and self.p == o.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"VectorFieldPoly(({self.p})d/dz)"


BASIS = (VectorFieldPoly([1]), VectorFieldPoly([0, 1]), VectorFieldPoly([0, 0, 1]))


def sl2_to_vf(M) -> VectorFieldPoly:
    """(a, b; c, d) -> (b + (a - d) z - c z^2) d/dz."""
    if not isinstance(M, Sl2Elt):
        M = Sl2Elt(M)
    (a, b), (c, d) = M.m
    return VectorFieldPoly([b, a - d, -c])


def vf_bracket(u, v):
    """[u d, v d] = (u v' - v u') d. Accepts VectorFieldPoly, Poly, RatFunc or TruncSeries coefficients."""
    if isinstance(u, VectorFieldPoly):
        return VectorFieldPoly(u.p * v.p.derivative() - v.p * u.p.derivative())
    return u * v.derivative() - v * u.derivative()


def ad_matrix(u: VectorFieldPoly):
    """Matrix of ad(u) on the basis (d/dz, z d/dz, z^2 d/dz); column k = coords of [u, basis_k]."""
    cols = [vf_bracket(u, b).coords() for b in BASIS]
    return Mat.from_columns(cols)


def killing_matrix():
    """kappa_jk = trace(ad(u_j) ad(u_k)) in the basis (d/dz, z d/dz, z^2 d/dz)."""
    ads = [ad_matrix(b) for b in BASIS]
    return Mat._raw([[(ads[j] * ads[k]).trace() for k in range(3)] for j in range(3)])


def is_moebius(f):
    """The Moebius matrix of f if f = (az+b)/(cz+d) with ad - bc != 0, else None."""
    f = RatFunc.coerce(f)
    if f.num.degree > 1 or f.den.degree > 1:
        return None
    b, a = f.num.coeff(0), f.num.coeff(1)
    d, c = f.den.coeff(0), f.den.coeff(1)
    if not (a * d - b * c):
        return None
    return MoebiusMap([[a, b], [c, d]])


__all__ = [
    "MoebiusMap", "Sl2Elt", "VectorFieldPoly", "E", "H", "F", "BASIS",
    "sl2_to_vf", "vf_bracket", "ad_matrix", "killing_matrix", "is_moebius",
]
