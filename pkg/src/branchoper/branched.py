"""Branched SO(3)-opers: the ad(V) model from a developing map, the jet map Phi, the pair
(B, D) on 2-jets of T = TX (x) O(S), the five pair conditions, the phi obstruction and
the two-stage reconstruction."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ConditionViolation, EigenspaceDimensionMismatch, NonReducedDivisor, NotAnOper, NotLogarithmic
from .jets import ADAPTED, RAW, BundleSymbol, JetFrame, jet_of
from .linalg import Mat, generalized_kernel, kernel, rref, span_contains, span_equal
from .logconn import (BranchDivisor, LogConnection, adapted_lattice_change, hecke_modify, is_regular_at,
                      lattice_tag, residue, residue_matrix)
from .oper import BilinearTwisted, is_covariant
from .polys import Poly, RatFunc, split_roots
from .scalars import ONE, ZERO, Scalar
from .series import series_expand, solve_flat_sections

R0 = RatFunc.zero()
R1 = RatFunc.one()

# trace form tr(XY) on trace-free 2x2 matrices in the basis (E, H, F)
B_TRACE = Mat([[0, 0, 1], [0, 2, 0], [1, 0, 0]], Scalar)
W_BASIS_NAMES = ("E", "H", "F")
E_COLS = tuple(tuple(ONE if i == j else ZERO for i in range(3)) for j in range(3))


def coords_to_matrix(v):
    """(E, H, F) coordinates -> 2x2 matrix [[h, e], [f, -h]]."""
    e, h, f = v
    return ((h, e), (f, -h))


@dataclass(frozen=True)
class Sl2Oper:
    """ad(V) model with trivial connection, developing map z -> [1 : sigma(z)].

    W coordinates are taken in the frame `frame` (constant 3x3): a vector with
    coordinates x' stands for frame . x' in the (E, H, F) basis.
    """

    sigma: Poly
    divisor: BranchDivisor
    B_W: Mat
    F1_frame: tuple
    F2_frame: tuple
    A_W: Mat
    frame: Mat = field(default_factory=lambda: Mat.identity(3))

    @property
    def P(self) -> Poly:
        """Monic polynomial vanishing simply on the branch points."""
        return self.sigma.derivative().monic()

    @property
    def lc(self) -> Scalar:
        return self.sigma.derivative().lc

    def q_row(self):
        """q0: W -> T in the T-frame d/dz / P: X |-> P (c - 2 a sigma - b sigma^2) / sigma'."""
        s = RatFunc.coerce(self.sigma)
        c = RatFunc.coerce(self.P) / RatFunc.coerce(self.sigma.derivative())
        row = [-(s * s) * c, s * c * (-2), c]
        F = self.frame.to_rat()
        return tuple(sum((row[i] * F[i][j] for i in range(3)), R0) for j in range(3))

    def reframe(self, C: Mat) -> "Sl2Oper":
        """Same model in the W-frame frame . C (C constant)."""
        C = C.map(Scalar.coerce)
        Ci = C.inverse()
        Cr, Cir = C.to_rat(), Ci.to_rat()
        return replace(
            self,
            B_W=C.T * self.B_W * C,
            F1_frame=tuple(Cir.apply(v) for v in self.F1_frame),
            F2_frame=tuple(Cir.apply(v) for v in self.F2_frame),
            A_W=Cir * self.A_W * Cr + Cir * Cr.derivative(),
            frame=self.frame * C,
        )


def _model_filtration(sigma: Poly):
    s = RatFunc.coerce(sigma)
    n = (R1, -s, -(s * s))  # nilpotent [[-s, 1], [-s^2, s]]: image and kernel are span(1, s)
    m = (R0, R1, s * 2)  # Borel element preserving span(1, s)
    return (n,), (n, m)


def build_sl2_model(sigma) -> Sl2Oper:
    if isinstance(sigma, str):
        sigma = RatFunc.parse(sigma).num
    sigma = sigma if isinstance(sigma, Poly) else RatFunc.coerce(sigma).num
    d = sigma.derivative()
    if not d:
        raise ValueError("developing map must be nonconstant")
    if not d.is_squarefree():
        raise NonReducedDivisor(f"sigma' = {d} has a multiple zero")
    roots = split_roots(d)
    if roots is None:
        raise ValueError(f"branch points of {sigma} are not Gaussian rationals")
    F1, F2 = _model_filtration(sigma)
    return Sl2Oper(sigma, BranchDivisor(tuple(roots)), B_TRACE, F1, F2, Mat.zeros(3, kind=RatFunc))


def _pair_vec(B: Mat, u, v):
    acc = R0
    for i in range(3):
        for j in range(3):
            if u[i] and v[j] and B[i][j]:
                acc = acc + RatFunc.coerce(u[i]) * RatFunc.coerce(B[i][j]) * RatFunc.coerce(v[j])
    return acc


def _derive_vec(A: Mat, v):
    """Covariant derivative v' + A v of a rational vector."""
    Av = A.to_rat().apply([RatFunc.coerce(x) for x in v])
    return tuple(RatFunc.coerce(x).derivative() + y for x, y in zip(v, Av))


def _solve_in_basis(basis, v):
    """Coordinates of v in the given basis (vectors over a field); None if v is outside the span."""
    n = len(v)
    aug = [[b[i] for b in basis] + [v[i]] for i in range(n)]
    m, piv = rref(aug)
    if len(basis) in piv:
        return None
    out = [R0 if isinstance(v[0], RatFunc) else ZERO] * len(basis)
    for r, c in enumerate(piv):
        out[c] = m[r][-1]
    return out


def perp(B: Mat, vectors):
    """B-orthogonal complement of span(vectors), over the coefficient field."""
    rows = [[_pair_vec(B, v, e) for e in E_COLS] for v in vectors]
    return kernel(rows)


def sff_untwisted(o: Sl2Oper) -> RatFunc:
    """Coefficient of the SFF of F1 with respect to the frames n of F1 and m of F2/F1."""
    n = o.F1_frame[0]
    dn = _derive_vec(o.A_W, n)
    coords = _solve_in_basis(list(o.F2_frame), dn)
    if coords is None:
        return None
    return coords[1]


def branched_oper_conditions(o: Sl2Oper) -> dict:
    n = o.F1_frame[0]
    B = o.B_W.to_rat()
    dn = _derive_vec(o.A_W, n)
    sff = sff_untwisted(o)
    # F1 <-> -lc P dz identifies the SFF with a multiple of the canonical section 1 of O(S)
    norm = RatFunc.coerce(o.P) * (-o.lc)
    return {
        "isotropic_F1": not _pair_vec(B, n, n),
        "F1_perp_is_F2": span_equal(perp(B, o.F1_frame), list(o.F2_frame)),
        "connection_preserves_B": is_covariant(B, o.A_W),
        "det_connection_trivial": not o.A_W.trace(),
        "D_F1_in_F2": span_contains(list(o.F2_frame), dn),
        "sff_is_canonical_section": sff is not None and sff / norm == R1,
    }


def phi_map(o: Sl2Oper, lattice: str = RAW) -> Mat:
    """Rows are q0 and its successive covariant derivatives: Phi . w = 2-jet of q0(w~) for flat w~."""
    rows = [o.q_row()]
    A = o.A_W.to_rat()
    for _ in range(2):
        r = rows[-1]
        rA = [sum((r[i] * A[i][j] for i in range(3)), R0) for j in range(3)]
        rows.append(tuple(x.derivative() - y for x, y in zip(r, rA)))
    Phi = Mat._raw(rows)
    if lattice_tag(lattice) == ADAPTED:
        Phi = adapted_lattice_change(o.P).inverse() * Phi
    return Phi


def phi_at_point(o: Sl2Oper, p, order: int = 3) -> Mat:
    """Phi at p from flat extensions of the W basis (raw lattice)."""
    q = o.q_row()
    cols = []
    for j in range(3):
        e = [ONE if i == j else ZERO for i in range(3)]
        w = solve_flat_sections(o.A_W, p, e, order)
        val = sum((series_expand(q[i], p, order) * w[i] for i in range(3)), series_expand(R0, p, order))
        cols.append(jet_of(val, 2).comps)
    return Mat.from_columns(cols)


@dataclass(frozen=True)
class PairBD:
    B: BilinearTwisted
    D: LogConnection
    variable: str = "z"
    frames: dict = field(default_factory=dict)

    @property
    def divisor(self):
        return self.D.divisor


def build_pair(o: Sl2Oper, lattice: str = RAW) -> PairBD:
    tag = lattice_tag(lattice)
    Phi = phi_map(o, tag)
    Pi = Phi.inverse()
    A = Phi * o.A_W.to_rat() * Pi - Phi.derivative() * Pi
    B = Pi.T * o.B_W.to_rat() * Pi
    D = LogConnection(A, o.divisor, JetFrame("z", BundleSymbol(-1, 1), tag))
    return PairBD(BilinearTwisted(B, 2), D)


# ---------------------------------------------------------------- pair conditions

F1_T = ((ZERO, ZERO, ONE),)
F2_T = ((ZERO, ONE, ZERO), (ZERO, ZERO, ONE))


@dataclass
class PairConditions:
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    reasons: dict = field(default_factory=dict)
    residues: dict = field(default_factory=dict)

    def as_tuple(self):
        return (self.c1, self.c2, self.c3, self.c4, self.c5)

    def all(self):
        return all(self.as_tuple())


def twist_admissible(pair: PairBD) -> bool:
    """P^m B has no finite poles and a nonzero constant determinant (m = twist)."""
    P = RatFunc.coerce(pair.divisor.poly()) ** pair.B.twist
    Bt = pair.B.Bmat.scale(P)
    if not all(x.is_poly() for r in Bt for x in r):
        return False
    d = Bt.det()
    return bool(d) and d.is_constant()


def df1_inclusion_with_image(D: LogConnection) -> bool:
    """D(F1) lands in F2 (x) K (x) O(S) with nonzero image in (F2/F1) (x) K (x) O(S)."""
    A = D.A
    pts = D.divisor.points
    col = [A[i][2] for i in range(3)]
    if A[0][2]:
        return False
    if any(a.pole_order(p) > 1 for a in col for p in pts) or not all(a.poles_within(pts) for a in col):
        return False
    return bool(A[1][2])


def _condition3(D: LogConnection):
    A = D.A
    pts = D.divisor.points
    if not df1_inclusion_with_image(D):
        return False, "D(F1) is not F2 (x) K (x) O(S)"
    col = [A[i][1] for i in range(3)]
    if any(a.pole_order(p) > 1 for a in col for p in pts) or not all(a.poles_within(pts) for a in col):
        return False, "D(F2) has poles beyond K (x) O(S)"
    if not A[0][1]:
        return False, "D(F2) does not reach the top quotient"
    return True, ""


def pair_conditions(pair: PairBD) -> PairConditions:
    B, D = pair.B.Bmat, pair.D
    reasons = {}
    # (1) isotropy, orthogonality and nondegeneracy
    nondeg = bool(B.det())
    iso = not B[2][2] and not B[2][1]
    perp_ok = nondeg and span_equal(perp(B, [tuple(RatFunc.coerce(x) for x in F1_T[0])]),
                                    [tuple(RatFunc.coerce(x) for x in v) for v in F2_T])
    adm = nondeg and twist_admissible(pair)
    c1 = nondeg and iso and perp_ok and adm
    if not c1:
        reasons["1"] = ", ".join(k for k, ok in (("nondegenerate", nondeg), ("isotropic", iso),
                                                  ("F1_perp_is_F2", perp_ok), ("twist", adm)) if not ok)
    # (2) covariant constancy
    c2 = is_covariant(B, D.A)
    if not c2:
        reasons["2"] = "B is not covariant constant"
    # (3) filtration shape
    c3, why = _condition3(D)
    if not c3:
        reasons["3"] = why
    # (4) logarithmic with residue spectrum {-2, -1, 0}; (5) eigenspaces
    residues = {}
    c4 = c5 = True
    if D.poles_off_divisor():
        c4 = c5 = False
        reasons["4"] = "poles off the divisor"
    elif not D.is_logarithmic:
        c4 = c5 = False
        reasons["4"] = "not logarithmic"
    else:
        for p in D.divisor.points:
            rep = residue(D, p)
            residues[p] = rep
            if rep.eigenvalues != (-2, -1, 0):
                c4 = False
                reasons["4"] = f"residue eigenvalues {list(rep.eigenvalues)} at {p}"
            sp = rep.eigenspaces
            ok5 = (-2 in sp and span_equal(sp[-2], list(F1_T))
                   and -1 in sp and all(span_contains(list(F2_T), v) for v in sp[-1]))
            if not ok5:
                c5 = False
                reasons["5"] = f"eigenspaces at {p}"
    return PairConditions(c1, c2, c3, c4, c5, reasons, residues)


# ---------------------------------------------------------------- phi obstruction

@dataclass(frozen=True)
class PhiReport:
    point: Scalar
    value: Scalar
    method: str
    generalized: bool = False


def residue_eigenbasis(D: LogConnection, p):
    """(l2, l1, l0): residue eigenvectors for -2, -1, 0, first nonzero coordinate 1."""
    sp = residue(D, p).eigenspaces
    return sp[-2][0], sp[-1][0], sp[0][0]


def _t(p):
    return RatFunc(Poly.linear_root(p))


def _require_conditions(pair):
    cond = pair_conditions(pair)
    if not cond.all():
        raise ConditionViolation(f"pair conditions fail: {cond.reasons}")
    return cond


def phi_ledger(pair: PairBD, p) -> Scalar:
    """Extend l1 as t l1, apply D, divide by t and read the l2 coordinate at p."""
    p = Scalar.coerce(p)
    D = pair.D
    l2, l1, l0 = residue_eigenbasis(D, p)
    t = _t(p)
    v = tuple(t * x for x in l1)
    Dv = _derive_vec(D.A, v)
    if not all(x.valuation(p) >= 1 for x in Dv):
        raise ConditionViolation(f"D(v~) does not vanish at {p}")
    w = tuple((x / t)(p) for x in Dv)
    coords = _solve_in_basis([l2, l1, l0], w)
    return coords[0]


@dataclass(frozen=True)
class TwoStage:
    point: Scalar
    D1: LogConnection
    D2: LogConnection
    g1: Mat
    g2: Mat
    spectra: tuple
    generalized: bool


def two_stage_modification(D: LogConnection, p, strict: bool = False) -> TwoStage:
    """Modify along the 0-eigenspace of the residue, twice."""
    p = Scalar.coerce(p)
    r0 = residue(D, p)
    L = r0.eigenspaces.get(0, [])
    st1 = hecke_modify(D, p, L, strict=True)
    r1 = residue(st1.D, p)
    M = r1.eigenspaces.get(0, [])
    generalized = False
    if len(M) != r1.algebraic.get(0, 0):
        if strict:
            raise EigenspaceDimensionMismatch(
                f"0-eigenspace of the stage-one residue at {p} has dimension {len(M)}, "
                f"algebraic multiplicity {r1.algebraic.get(0, 0)}")
        M = generalized_kernel(r1.matrix, 0)
        generalized = True
    st2 = hecke_modify(st1.D, p, M, strict=strict)
    r2 = residue(st2.D, p)
    return TwoStage(p, st1.D, st2.D, st1.frame_map, st2.frame_map,
                    (r0.eigenvalues, r1.eigenvalues, r2.eigenvalues), generalized)


def _valuation_vec(v, p):
    return min(x.valuation(p) for x in v)


def _leading(v, p):
    """(k, u): v = t^k (u + O(t)) at p."""
    k = _valuation_vec(v, p)
    t = _t(p)
    return k, tuple((x / t ** k)(p) for x in v)


def saturate(vectors, p):
    """Fiber at p of the saturation of the module spanned by the vectors (rational columns)."""
    t = _t(p)
    cols = []
    for v in vectors:
        k = _valuation_vec(v, p)
        cols.append(tuple(x / t ** k for x in v))
    for _ in range(64):
        vals = [tuple(x(p) for x in c) for c in cols]
        ker = kernel([[vals[j][i] for j in range(len(cols))] for i in range(3)])
        if not ker:
            return cols, vals
        rel = ker[0]
        j = max(i for i, c in enumerate(rel) if c)
        comb = tuple(sum((cols[i][r] * rel[i] for i in range(len(cols)) if rel[i]), R0) for r in range(3))
        cols[j] = tuple(x / t for x in comb)
    raise RuntimeError("saturation did not terminate")


def phi_residue(pair: PairBD, p, strict: bool = False):
    """Component F~2/F~1 -> F~1 of the residue after the two modifications, in the l-frames."""
    p = Scalar.coerce(p)
    D = pair.D
    l2, l1, l0 = residue_eigenbasis(D, p)
    ts = two_stage_modification(D, p, strict)
    g = ts.g1 * ts.g2
    gi = g.inverse()
    e2 = tuple(RatFunc.coerce(x) for x in F1_T[0])
    e1 = tuple(RatFunc.coerce(x) for x in F2_T[0])
    S1s, f1s = saturate([gi.apply(e2)], p)
    S1, f1 = S1s[0], f1s[0]
    S2s, f2s = saturate([gi.apply(e1), gi.apply(e2)], p)
    j = next(i for i, f in enumerate(f2s) if not span_contains([f1], f))
    S2, f2 = S2s[j], f2s[j]
    R2 = residue_matrix(ts.D2, p)
    if any(R2.apply(f1)):
        raise ConditionViolation(f"twice-modified residue does not kill F~1 at {p}")
    img = R2.apply(f2)
    coords = _solve_in_basis([f1, f2], img)
    if coords is None:
        raise ConditionViolation(f"twice-modified residue does not preserve F~2 at {p}")
    r = coords[0]
    _, u1 = _leading(g.apply(S1), p)
    _, u2 = _leading(g.apply(S2), p)
    a1 = _solve_in_basis([l2, l1, l0], u1)[0]
    a2 = _solve_in_basis([l2, l1, l0], u2)[1]
    return r * a1 / a2, ts.generalized


def phi_obstruction(pair: PairBD, p, method: str = "ledger", strict: bool = False) -> PhiReport:
    _require_conditions(pair)
    p = Scalar.coerce(p)
    if method == "ledger":
        return PhiReport(p, phi_ledger(pair, p), "ledger")
    if method == "residue":
        val, gen = phi_residue(pair, p, strict)
        return PhiReport(p, val, "residue", gen)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class Criterion:
    is_branched_oper: bool
    phi: list
    reason: str = ""


def oper_criterion(pair: PairBD, strict: bool = False) -> Criterion:
    try:
        cond = pair_conditions(pair)
    except NotLogarithmic:
        return Criterion(False, [], "conditions")
    if not cond.all():
        return Criterion(False, [], "conditions")
    reports = []
    for p in pair.divisor.points:
        reports.append(phi_obstruction(pair, p, "ledger"))
        reports.append(phi_obstruction(pair, p, "residue", strict))
    ok = all(not r.value for r in reports)
    return Criterion(ok, reports, "" if ok else "phi")


def monodromy_trivial(pair: PairBD, strict: bool = False) -> bool:
    """After both modifications every residue vanishes."""
    _require_conditions(pair)
    for p in pair.divisor.points:
        ts = two_stage_modification(pair.D, p, strict)
        if not residue_matrix(ts.D2, p).is_zero():
            return False
    return True


# ---------------------------------------------------------------- reconstruction

@dataclass(frozen=True)
class ReconstructedOper:
    connection: LogConnection
    B: Mat
    F1: tuple
    F2: tuple
    frame_map: Mat
    spectra: dict
    generalized: bool


def reconstruct_oper(pair: PairBD, strict: bool = False) -> ReconstructedOper:
    crit = oper_criterion(pair, strict)
    if not crit.is_branched_oper:
        raise NotAnOper(f"criterion fails ({crit.reason})")
    D = pair.D
    g = Mat.identity(3, RatFunc)
    spectra = {}
    gen = False
    for p in pair.divisor.points:
        ts = two_stage_modification(D, p, strict)
        spectra[p] = ts.spectra
        gen = gen or ts.generalized
        D = ts.D2
        g = g * ts.g1 * ts.g2
    gi = g.inverse()
    Bn = g.T * pair.B.Bmat * g
    F1 = [gi.apply(tuple(RatFunc.coerce(x) for x in v)) for v in F1_T]
    F2 = [gi.apply(tuple(RatFunc.coerce(x) for x in v)) for v in F2_T]
    return ReconstructedOper(D, Bn, tuple(F1), tuple(F2), g, spectra, gen)


@dataclass
class RoundTrip:
    ok: bool
    checks: dict
    frame: Mat  # the constant frame matrix C
    gauge: Mat  # h = Phi^-1 g


def roundtrip_check(o: Sl2Oper, pair: PairBD, rec: ReconstructedOper, base_point=None) -> RoundTrip:
    """Compare the reconstruction with the model it came from.

    h = Phi^-1 g carries the reconstructed lattice to W. In the frame Y = h^-1 C with
    C = h(z0) the reconstructed connection is trivial, and the data equal the model
    conjugated by the constant matrix C; rebuilding the pair from that model must give
    back the same pair.
    """
    tag = pair.D.frame.tag
    Phi = phi_map(o, tag)
    h = Phi.inverse() * rec.frame_map
    hi = h.inverse()
    A_W = o.A_W.to_rat()
    checks = {}
    checks["connection_is_gauge_of_model"] = rec.connection.A == hi * A_W * h + hi * h.derivative()
    pts = o.divisor.points
    checks["gauge_holomorphic_invertible"] = all(
        is_regular_at(h, p) and bool(h(p).det()) for p in pts) and h.det().is_constant()
    checks["form_matches"] = rec.B == h.T * o.B_W.to_rat() * h
    checks["final_connection_regular"] = all(is_regular_at(rec.connection, p) for p in pts)
    hF1 = [h.apply(v) for v in rec.F1]
    hF2 = [h.apply(v) for v in rec.F2]
    checks["filtration_matches"] = span_equal(hF1, list(o.F1_frame)) and span_equal(hF2, list(o.F2_frame))
    z0 = base_point
    if z0 is None:
        z0 = next(Scalar(k) for k in range(0, 50)
                  if all(x.is_regular_at(k) for r in h for x in r) and h(k).det())
    C = h(z0)
    Y = hi * C.to_rat()
    checks["flat_frame"] = (Y.derivative() + rec.connection.A * Y).is_zero()
    flatB = Y.T * rec.B * Y
    checks["constant_form"] = flatB == (C.T * o.B_W * C).to_rat()
    rebuilt = build_pair(o.reframe(C), tag)
    checks["pair_reproduced"] = rebuilt.D.A == pair.D.A and rebuilt.B.Bmat == pair.B.Bmat
    return RoundTrip(all(checks.values()), checks, C, h)


# ---------------------------------------------------------------- perturbed witnesses

def _eigenframe(pair: PairBD, p):
    l2, l1, l0 = residue_eigenbasis(pair.D, p)
    return Mat.from_columns([l0, l1, l2])


def perturbed_pair(c=1, sigma="z^2", lattice: str = ADAPTED) -> PairBD:
    """Add c (N10 + N21) to the connection, in the residue eigenframe (l0, l1, l2) at the branch point.

    N10 sends l0 to l1 and N21 sends l1 to l2; their sum is B-skew, so B stays covariant.
    """
    base = build_pair(build_sl2_model(sigma), lattice)
    p = base.divisor.points[0]
    Ce = _eigenframe(base, p)
    X = Mat([[0, 0, 0], [1, 0, 0], [0, 1, 0]], Scalar)
    Xr = (Ce * X * Ce.inverse()).to_rat().scale(Scalar.coerce(c))
    D = replace(base.D, A=base.D.A + Xr)
    return replace(base, D=D)


def gauge_perturbed_pair(c=1, sigma="z^2", lattice: str = ADAPTED) -> PairBD:
    """Gauge by g = I + c (z - x) N21 with N21: l1 -> l2; a holomorphic flag-preserving change."""
    base = build_pair(build_sl2_model(sigma), lattice)
    p = base.divisor.points[0]
    Ce = _eigenframe(base, p)
    N = Ce * Mat([[0, 0, 0], [0, 0, 0], [0, 1, 0]], Scalar) * Ce.inverse()
    g = Mat.identity(3, RatFunc) + N.to_rat().scale(_t(p) * Scalar.coerce(c))
    D = base.D.gauge(g)
    B = g.T * base.B.Bmat * g
    return PairBD(BilinearTwisted(B, base.B.twist), D)


def pair_residue_diag(diag, p=0) -> PairBD:
    """Pair with D = diag(...)/(z - p) and the model's form; used for negative checks."""
    t = _t(p)
    D = LogConnection(Mat.diag([RatFunc.const(d) / t for d in diag], RatFunc), BranchDivisor((p,)))
    base = build_pair(build_sl2_model("z^2"), ADAPTED)
    return PairBD(base.B, D)


__all__ = [
    "Sl2Oper", "PairBD", "PhiReport", "PairConditions", "Criterion", "ReconstructedOper", "RoundTrip",
    "TwoStage", "B_TRACE", "F1_T", "F2_T", "build_sl2_model", "branched_oper_conditions", "phi_map",
    "phi_at_point", "build_pair", "pair_conditions", "twist_admissible", "df1_inclusion_with_image",
    "phi_obstruction", "phi_ledger", "phi_residue", "oper_criterion", "monodromy_trivial",
    "reconstruct_oper", "roundtrip_check", "two_stage_modification", "perturbed_pair",
    "gauge_perturbed_pair", "pair_residue_diag", "residue_eigenbasis", "sff_untwisted", "perp",
    "saturate", "coords_to_matrix",
]
