"""Unbranched oper theory in an affine chart: jets of global fields, delta_0, the oper
connection, the Killing form on 2-jets and the oper-condition checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FrameMismatch, NotNested
from .jets import JetFrame, JetVec, jet_of, jet_transition_matrix
from .linalg import Mat
from .polys import Poly, RatFunc
from .scalars import ONE, ZERO, Scalar
from .series import DEFAULT_ORDER, TruncSeries, solve_flat_sections
from .sl2 import MoebiusMap, killing_matrix, vf_bracket

R0 = RatFunc.zero()
R1 = RatFunc.one()


@dataclass(frozen=True)
class ThirdOrderOp:
    """f d/dz -> (f''' + a2 f'' + a1 f' + a0 f) dz^2."""

    a2: RatFunc = R0
    a1: RatFunc = R0
    a0: RatFunc = R0

    def __post_init__(self):
        for name in ("a2", "a1", "a0"):
            object.__setattr__(self, name, RatFunc.coerce(getattr(self, name)))

    def coeffs(self):
        return self.a0, self.a1, self.a2

    def add_quadratic(self, theta) -> "ThirdOrderOp":
        return ThirdOrderOp(self.a2, self.a1, self.a0 + RatFunc.coerce(theta))

    def apply(self, f):
        """Apply to a RatFunc/Poly or a regular TruncSeries (the result loses three orders)."""
        if isinstance(f, TruncSeries):
            from .series import series_expand
            d1 = f.derivative()
            d2 = d1.derivative()
            d3 = d2.derivative()
            out = d3
            for a, g in ((self.a2, d2), (self.a1, d1), (self.a0, f)):
                if a:
                    out = out + series_expand(a, f.center, f.order) * g
            return out
        f = RatFunc.coerce(f)
        d1 = f.derivative()
        d2 = d1.derivative()
        return d2.derivative() + self.a2 * d2 + self.a1 * d1 + self.a0 * f

    def apply_jet(self, v: JetVec, p=0) -> Scalar:
        p = Scalar.coerce(p)
        a0, a1, a2 = (a(p) for a in self.coeffs())
        return a0 * v[0] + a1 * v[1] + a2 * v[2] + v[3]

    def __eq__(self, o):
        return isinstance(o, ThirdOrderOp) and self.coeffs() == o.coeffs()

    def __hash__(self):
        return hash(self.coeffs())


@dataclass(frozen=True)
class Connection:
    """v is flat iff v' + A v = 0."""

    A: Mat
    frame: JetFrame = field(default_factory=JetFrame)

    def __post_init__(self):
        A = self.A if isinstance(self.A, Mat) else Mat(self.A, RatFunc)
        object.__setattr__(self, "A", A.to_rat())

    def same_frame(self, other):
        if self.frame != other.frame:
            raise FrameMismatch(f"{self.frame} vs {other.frame}")

    def __sub__(self, other):
        self.same_frame(other)
        return self.A - other.A

    def gauge(self, g: Mat) -> "Connection":
        """Connection in the new frame e' = e g: g^-1 A g + g^-1 g'."""
        g = g.to_rat()
        gi = g.inverse()
        return Connection(gi * self.A * g + gi * g.derivative(), self.frame)


@dataclass(frozen=True)
class BilinearTwisted:
    """Symmetric form with values in O(twist * S), stored as a meromorphic matrix."""

    Bmat: Mat
    twist: int = 0

    def __post_init__(self):
        B = self.Bmat if isinstance(self.Bmat, Mat) else Mat(self.Bmat, RatFunc)
        B = B.to_rat()
        if B != B.T:
            raise ValueError("bilinear form must be symmetric")
        object.__setattr__(self, "Bmat", B)

    def pair(self, u, v):
        return sum(
            (RatFunc.coerce(u[i]) * self.Bmat[i][j] * RatFunc.coerce(v[j]) for i in range(3) for j in range(3)),
            RatFunc.zero(),
        )

    def det(self):
        return self.Bmat.det()

    def is_nondegenerate(self):
        return bool(self.det())


def is_covariant(B: Mat, A: Mat) -> bool:
    """B' - A^T B - B A == 0 for the flatness convention v' + A v = 0."""
    B, A = B.to_rat(), A.to_rat()
    return (B.derivative() - A.T * B - B * A).is_zero()


def psi_matrix(k: int = 2) -> Mat:
    """Columns are the order-k jets of the fields d/dz, z d/dz, z^2 d/dz."""
    z = Poly.z()
    cols = []
    for f in (Poly.one(), z, z * z):
        cols.append([RatFunc.coerce(f)])
        for _ in range(k):
            cols[-1].append(cols[-1][-1].derivative())
    return Mat.from_columns(cols)


def delta0() -> ThirdOrderOp:
    return ThirdOrderOp(R0, R0, R0)


def varpi(op: ThirdOrderOp, frame: JetFrame = None) -> Connection:
    """Companion connection: flat sections are the 2-jet curves of solutions of op."""
    a0, a1, a2 = op.coeffs()
    A = Mat._raw([[R0, -R1, R0], [R0, R0, -R1], [a0, a1, a2]])
    return Connection(A, frame or JetFrame())


def sff(D: Connection, level: int) -> RatFunc:
    """Second fundamental forms of F1 (level 1) and F2/F1 (level 2), normalized so D_0 gives 1."""
    A = D.A
    if level == 1:
        return -A[1][2]
    if level == 2:
        if A[0][2]:
            raise NotNested("D(F1) is not contained in F2 (x) K")
        return -A[0][1]
    raise ValueError("level must be 1 or 2")


def oper_conditions(D: Connection) -> dict:
    A = D.A
    c1 = not A[0][2]
    c2 = sff(D, 1) == R1
    c3 = c1 and sff(D, 2) == R1
    return {"c1": c1, "c2": c2, "c3": c3}


def killing_form_B0() -> BilinearTwisted:
    Gi = psi_matrix(2).inverse()
    return BilinearTwisted(Gi.T * killing_matrix().to_rat() * Gi, 0)


TEST_POINTS = (Fraction(1, 3), Fraction(-2, 5), Fraction(3, 7))


def f_d_is_identity(D: Connection, N: int = DEFAULT_ORDER, points=TEST_POINTS) -> bool:
    """Flat-extend each basis vector, keep the value component and re-jet it at the same point."""
    for p in points:
        for j in range(3):
            e = [ONE if i == j else ZERO for i in range(3)]
            v = solve_flat_sections(D.A, p, e, max(N, 2))
            if jet_of(v[0], 2).comps != tuple(e):
                return False
    return True


def det_connection_trivial(D: Connection) -> bool:
    return not D.A.trace()


def formal_solutions(op: ThirdOrderOp, p, order: int):
    """Three solutions with initial jets e_0, e_1, e_2 at p, through (z-p)^order."""
    A = varpi(op).A
    sols = []
    for j in range(3):
        e = [ONE if i == j else ZERO for i in range(3)]
        sols.append(solve_flat_sections(A, p, e, order)[0])
    return sols


def bracket_closure(op: ThirdOrderOp, N: int = DEFAULT_ORDER, p=Fraction(1, 3)) -> bool:
    """op([s, t]) vanishes through order N for every pair of formal solutions at p."""
    sols = formal_solutions(op, p, N + 4)
    for i in range(3):
        for j in range(i + 1, 3):
            r = op.apply(vf_bracket(sols[i], sols[j]))
            if any(r.coeff(k) for k in range(min(r.valuation, 0), N + 1)):
                return False
    return True


def projective_operator_check(op: ThirdOrderOp, N: int = DEFAULT_ORDER) -> bool:
    return det_connection_trivial(varpi(op)) and bracket_closure(op, N)


def induced_operator(D: Connection):
    """The operator whose companion is D, if D has companion shape; else None."""
    A = D.A
    if A[0] != (R0, -R1, R0) or A[1] != (R0, R0, -R1):
        return None
    return ThirdOrderOp(A[2][2], A[2][1], A[2][0])


def varpi_image_criterion(D: Connection, N: int = DEFAULT_ORDER) -> bool:
    """Oper conditions, F_D = Id, trivial determinant connection and bracket closure together."""
    if not all(oper_conditions(D).values()):
        return False
    if not f_d_is_identity(D, N) or not det_connection_trivial(D):
        return False
    op = induced_operator(D)
    return op is not None and bracket_closure(op, N)


def pullback_connection(A: Mat, g: MoebiusMap) -> Mat:
    """Connection matrix in z of a connection given by A in w = g(z), using jet transitions."""
    gz = g.as_ratfunc()
    T = jet_transition_matrix(gz, k=2)
    Ti = T.inverse()
    Ag = A.to_rat().map(lambda a: a.compose(gz))
    return Ti * T.derivative() + (Ti * Ag * T).scale(gz.derivative())


def pullback_form(B: Mat, g: MoebiusMap) -> Mat:
    gz = g.as_ratfunc()
    T = jet_transition_matrix(gz, k=2)
    Bg = B.to_rat().map(lambda b: b.compose(gz))
    return T.T * Bg * T


def pullback_operator_row(op: ThirdOrderOp, g: MoebiusMap):
    """Row (a0, a1, a2, 1) of the pulled back operator acting on z-jets."""
    gz = g.as_ratfunc()
    T3 = jet_transition_matrix(gz, k=3)
    row = [a.compose(gz) for a in op.coeffs()] + [R1]
    d2 = gz.derivative() ** 2
    return tuple(sum((row[i] * T3[i][j] for i in range(4)), R0) * d2 for j in range(4))


def moebius_equivariance_check(g: MoebiusMap) -> dict:
    op = delta0()
    A0 = varpi(op).A
    B0 = killing_form_B0().Bmat
    return {
        "delta0": pullback_operator_row(op, g) == tuple(op.coeffs()) + (R1,),
        "d0": pullback_connection(A0, g) == A0,
        "b0": pullback_form(B0, g) == B0,
    }
