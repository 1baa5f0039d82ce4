"""Logarithmic connections on 2-jets at a branch divisor: residues, twisted second
fundamental forms, the local branched model and elementary (Hecke) modifications."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import EigenspaceDimensionMismatch, NonIntegerEigenvalue, NotLogarithmic, ResidueDoesNotPreserve
from .jets import ADAPTED, RAW, BundleSymbol, JetFrame
from .linalg import Mat, complete_basis, integer_eigendata, rank, rref, span_contains
from .oper import Connection, sff
from .polys import Poly, RatFunc
from .scalars import Scalar
from .series import residue_at


@dataclass(frozen=True)
class BranchDivisor:
    points: tuple = ()

    def __post_init__(self):
        pts = tuple(Scalar.coerce(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("branch points must be distinct")
        object.__setattr__(self, "points", pts)

    @property
    def degree(self):
        return len(self.points)

    def __contains__(self, p):
        return Scalar.coerce(p) in self.points

    def poly(self) -> Poly:
        """Monic polynomial with simple zeros at the points."""
        out = Poly.one()
        for p in self.points:
            out = out * Poly.linear_root(p)
        return out


@dataclass(frozen=True)
class LogConnection:
    """Connection matrix (coefficient of dz) with poles allowed on the divisor."""

    A: Mat
    divisor: BranchDivisor = field(default_factory=BranchDivisor)
    frame: JetFrame = field(default_factory=lambda: JetFrame(symbol=BundleSymbol(-1, 1)))

    def __post_init__(self):
        A = self.A if isinstance(self.A, Mat) else Mat(self.A, RatFunc)
        object.__setattr__(self, "A", A.to_rat())

    def pole_order(self, p) -> int:
        return max(a.pole_order(p) for r in self.A for a in r)

    @property
    def is_logarithmic(self) -> bool:
        return all(self.pole_order(p) <= 1 for p in self.divisor.points)

    def poles_off_divisor(self) -> bool:
        return not all(a.poles_within(self.divisor.points) for r in self.A for a in r)

    def as_connection(self) -> Connection:
        return Connection(self.A, self.frame)

    def gauge(self, g: Mat, tag=None) -> "LogConnection":
        D = self.as_connection().gauge(g)
        frame = self.frame if tag is None else replace(self.frame, tag=tag)
        return LogConnection(D.A, self.divisor, frame)


@dataclass(frozen=True)
class ResidueReport:
    point: Scalar
    matrix: Mat
    eigenvalues: tuple
    eigenspaces: dict
    nilpotent_part_zero: bool
    geometric: dict = field(default_factory=dict)
    algebraic: dict = field(default_factory=dict)


def residue_matrix(D: LogConnection, p) -> Mat:
    p = Scalar.coerce(p)
    order = D.pole_order(p)
    if order > 1:
        raise NotLogarithmic(f"pole of order {order} at {p}")
    return D.A.map(lambda a: residue_at(a, p))


def residue(D: LogConnection, p) -> ResidueReport:
    p = Scalar.coerce(p)
    if p not in D.divisor:
        M = Mat.zeros(3)
    else:
        M = residue_matrix(D, p)
    try:
        ed = integer_eigendata(M)
    except NonIntegerEigenvalue as exc:
        raise NonIntegerEigenvalue(f"at {p}: {exc}", point=p) from None
    semisimple = all(ed["geometric"][k] == ed["algebraic"][k] for k in ed["algebraic"])
    return ResidueReport(p, M, tuple(ed["eigenvalues"]), ed["eigenspaces"], semisimple, ed["geometric"], ed["algebraic"])


def is_regular_at(D, p) -> bool:
    p = Scalar.coerce(p)
    A = D if isinstance(D, Mat) else D.A
    return all(a.is_regular_at(p) for r in A for a in r)


def lattice_tag(lattice: str) -> str:
    if lattice in ("raw", RAW):
        return RAW
    if lattice == ADAPTED:
        return ADAPTED
    raise ValueError(f"unknown lattice {lattice!r}")


def adapted_lattice_change(P: Poly, n: int = 1) -> Mat:
    """raw = g . adapted, where the adapted third coordinate is f'' - n f' P'/P."""
    P = RatFunc.coerce(P)
    c = P.derivative() / P * n if P.num.degree > 0 else RatFunc.zero()
    z0, o = RatFunc.zero(), RatFunc.one()
    return Mat._raw([[o, z0, z0], [z0, o, z0], [z0, c, o]])


def branched_model_frame(n: int, lattice: str = RAW) -> Mat:
    """Flat frame of the pulled back oper under w = x^(n+1), in the T-frame of TX (x) O(nS)."""
    x = RatFunc.z()
    cols = []
    for j in range(3):
        r = x ** ((n + 1) * j) / (n + 1)
        cols.append([r, r.derivative(), r.derivative().derivative()])
    G = Mat.from_columns(cols)
    if lattice_tag(lattice) == ADAPTED:
        G = adapted_lattice_change(Poly.z(), n).inverse() * G
    return G


def branched_model_connection(n: int, lattice: str = RAW) -> LogConnection:
    """A = -G' G^-1 for the branched model at 0. The raw jet lattice is the default."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    G = branched_model_frame(n, lattice)
    A = -(G.derivative() * G.inverse())
    return LogConnection(A, BranchDivisor((0,)), JetFrame("x", BundleSymbol(-1, n), lattice_tag(lattice)))


def sff_log(D: LogConnection, level: int) -> RatFunc:
    """Twisted second fundamental forms, as multiples of the canonical section 1 of O(S)."""
    return sff(D.as_connection(), level)


@dataclass(frozen=True)
class HeckeResult:
    D: LogConnection
    frame_map: Mat
    basis: tuple


def _restricted_matrix(R: Mat, L):
    """Matrix of R restricted to span(L) in the basis L (assumes invariance)."""
    cols = []
    Lm = Mat.from_columns(list(L))
    for v in L:
        w = R.apply(v)
        # solve Lm c = w
        aug = [list(Lm[i]) + [w[i]] for i in range(3)]
        m, piv = rref(aug)
        cols.append([m[i][-1] for i in range(len(L))])
    return Mat.from_columns(cols)


def hecke_modify(D: LogConnection, p, L, strict: bool = False) -> HeckeResult:
    """Sections whose value at p lies in span(L): new frame (L basis, (z-p) * complement)."""
    p = Scalar.coerce(p)
    L = [tuple(Scalar.coerce(x) for x in v) for v in L]
    if rank(L) != len(L):
        raise ValueError("subspace basis is not independent")
    if len(L) == 3:
        return HeckeResult(D, Mat.identity(3, RatFunc), tuple(L))
    R = residue_matrix(D, p)
    for v in L:
        if not span_contains(L, R.apply(v)):
            raise ResidueDoesNotPreserve(f"residue at {p} does not preserve the subspace")
    if strict and L:
        ed = integer_eigendata(_restricted_matrix(R, L))
        if any(ed["geometric"][k] != ed["algebraic"][k] for k in ed["algebraic"]):
            raise EigenspaceDimensionMismatch("subspace is not spanned by residue eigenvectors")
    basis = complete_basis(L, 3)
    C = Mat.from_columns(basis).to_rat()
    t = RatFunc(Poly.linear_root(p))
    diag = [RatFunc.one()] * len(L) + [t] * (3 - len(L))
    g = C * Mat.diag(diag, RatFunc)
    return HeckeResult(D.gauge(g, tag=D.frame.tag + "+hecke"), g, tuple(basis))


def eigenspace(D: LogConnection, p, lam):
    return residue(D, p).eigenspaces.get(lam, [])


def predicted_spectrum(R: Mat, L):
    """Eigenvalues on span(L) unchanged, transverse ones shifted by +1."""
    if len(L) == 0:
        return sorted(k + 1 for k in integer_eigendata(R)["eigenvalues"])
    inner = integer_eigendata(_restricted_matrix(R, L))["eigenvalues"]
    full = list(integer_eigendata(R)["eigenvalues"])
    for k in inner:
        full.remove(k)
    return sorted(list(inner) + [k + 1 for k in full])


__all__ = [
    "BranchDivisor", "LogConnection", "ResidueReport", "HeckeResult", "residue", "residue_matrix",
    "is_regular_at", "branched_model_connection", "branched_model_frame", "adapted_lattice_change",
    "sff_log", "hecke_modify", "eigenspace", "predicted_spectrum", "lattice_tag",
]
