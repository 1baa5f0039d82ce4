"""Verification suites behind the command line. Every check names a fault it can be
forced to fail under (``--mutate KEY``), so a suite never passes vacuously."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import branched as br
from . import oper as op
from .errors import BranchOperError, NotLogarithmic
from .jets import K, det_jet_transition, jet_include_top, jet_transition_matrix
from .linalg import Mat, kernel, span_contains, span_equal
from .logconn import BranchDivisor, branched_model_connection, is_regular_at, residue, sff_log
from .oper import BilinearTwisted
from .polys import Poly, RatFunc
from .scalars import Scalar
from .series import TruncSeries, series_expand, solve_flat_sections
from .sl2 import MoebiusMap, killing_matrix

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class CheckResult:
    id: str
    anchor: str
    status: str
    witness: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks)

    @property
    def status(self):
        return PASS if self.passed else FAIL

    def get(self, cid):
        return next(c for c in self.checks if c.id == cid)

    def to_json(self, timing=False) -> str:
        obj = {
            "suite": self.suite,
            "params": self.params,
            "status": self.status,
            "checks": [
                {"id": c.id, "anchor": c.anchor, "status": c.status, "witness": c.witness}
                for c in sorted(self.checks, key=lambda c: c.id)
            ],
        }
        if timing:
            obj["wall_time"] = round(self.wall_time, 3)
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        out = [f"suite {self.suite} {json.dumps(self.params, sort_keys=True)}"]
        for c in sorted(self.checks, key=lambda c: c.id):
            wit = "; ".join(f"{k}={v}" for k, v in sorted(c.witness.items()))
            out.append(f"  [{c.status.upper():4}] {c.id:28} {c.anchor}" + (f"  ({wit})" if wit else ""))
        out.append(f"overall: {self.status.upper()}  ({self.wall_time:.2f}s)")
        return "\n".join(out) + "\n"


@dataclass
class Ctx:
    order: int = 8
    mutate: str = None
    lattice: str = "raw"

    def hit(self, key):
        return self.mutate == key


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    mutate: str
    fn: object


def _s(x):
    if isinstance(x, Mat):
        return [[str(v) for v in r] for r in x]
    if isinstance(x, (list, tuple)):
        return [_s(v) for v in x]
    return str(x)


def run_suite(name, checks, ctx, params) -> SuiteReport:
    t0 = time.perf_counter()
    results = []
    for ch in checks:
        try:
            status, wit = ch.fn(ctx)
        except BranchOperError as exc:
            status, wit = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        results.append(CheckResult(ch.id, ch.anchor, status, wit))
    return SuiteReport(name, params, results, time.perf_counter() - t0)


def _ok(flag):
    return PASS if flag else FAIL


# ---------------------------------------------------------------- canonical (unbranched) suite

def _psi(ctx):
    G = op.psi_matrix(2)
    if ctx.hit("psi"):
        G = Mat._raw([list(G[0]), list(G[1]), [RatFunc.zero(), RatFunc.zero(), RatFunc.z()]])
    d = G.det()
    pts = [Fraction(1, 2), Fraction(-3, 4), Fraction(5, 3), Fraction(7, 2), Fraction(-2, 9)]
    inj = all(not kernel(G(p)) for p in pts)
    return _ok(d == RatFunc.const(2) and inj), {"det": str(d), "injective_points": len(pts) if inj else 0}


def _delta0(ctx):
    d = op.ThirdOrderOp(a0=1) if ctx.hit("delta0") else op.delta0()
    split = all(d.apply_jet(jet_include_top(c, 3)) == c for c in (Scalar(1), Scalar(-7, 2), Scalar(3, 5)))
    N = ctx.order
    # kernel on polynomials of degree <= N through exact coefficients
    cols = []
    for k in range(N + 1):
        img = d.apply(RatFunc.coerce(Poly.z() ** k))
        s = series_expand(img, 0, N)
        cols.append([s.coeff(j) for j in range(N + 1)])
    ker = kernel([[cols[k][j] for k in range(N + 1)] for j in range(N + 1)])
    std = [tuple(Scalar(1) if i == j else Scalar(0) for i in range(N + 1)) for j in range(3)]
    kern_ok = span_equal(ker, std) if ker else False
    return _ok(split and kern_ok), {"splitting": split, "kernel_dim": len(ker)}


def _d0(ctx):
    D = op.varpi(op.delta0())
    A = D.A
    if ctx.hit("d0"):
        A = A + Mat.diag([RatFunc.z(), 0, 0], RatFunc)
    G = op.psi_matrix(2)
    frame_ok = A == -(G.derivative() * G.inverse())
    cols_ok = True
    for j in range(3):
        init = [x(0) for x in G.col(j)]
        sol = solve_flat_sections(A, 0, init, ctx.order)
        cols_ok = cols_ok and all(s.agrees_with(g) for s, g in zip(sol, G.col(j)))
    return _ok(frame_ok and cols_ok), {"A_is_-G'G^-1": frame_ok, "flat_sections_are_psi_columns": cols_ok}


def _operc(ctx):
    D = op.varpi(op.delta0())
    if ctx.hit("oper"):
        D = op.Connection(D.A + Mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]], RatFunc))
    if ctx.hit("sff"):
        D = op.Connection(D.A + Mat([[0, 0, 0], [0, 0, -1], [0, 0, 0]], RatFunc))
    c = op.oper_conditions(D)
    return _ok(all(c.values())), {k: v for k, v in c.items()}


def _sff(ctx):
    D = op.varpi(op.delta0())
    if ctx.hit("sff"):
        D = op.Connection(D.A + Mat([[0, 0, 0], [0, 0, -1], [0, 0, 0]], RatFunc))
    s1, s2 = op.sff(D, 1), op.sff(D, 2)
    return _ok(s1 == RatFunc.one() and s2 == RatFunc.one()), {"sff1": str(s1), "sff2": str(s2)}


def _killing_oracle():
    """4 tr(XY) on the 2x2 matrices E, H/2, -F realizing d/dz, z d/dz, z^2 d/dz up to the bracket sign."""
    E = Mat([[0, 1], [0, 0]], Scalar)
    Hh = Mat([[Fraction(1, 2), 0], [0, Fraction(-1, 2)]], Scalar)
    Fm = Mat([[0, 0], [-1, 0]], Scalar)
    b = [E, Hh, Fm]
    return Mat._raw([[(b[j] * b[k]).trace() * 4 for k in range(3)] for j in range(3)])


def _killing(ctx):
    kap = killing_matrix()
    if ctx.hit("killing"):
        kap = kap + Mat([[1, 0, 0], [0, 0, 0], [0, 0, 0]], Scalar)
    frozen = Mat([[0, 0, -4], [0, 2, 0], [-4, 0, 0]], Scalar)
    return _ok(kap == _killing_oracle() and kap == frozen), {"kappa": _s(kap)}


def _filtration(ctx):
    B = op.killing_form_B0().Bmat
    if ctx.hit("b0"):
        B = B + Mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]], RatFunc)
    A = op.varpi(op.delta0()).A
    e2 = (RatFunc.zero(), RatFunc.zero(), RatFunc.one())
    e1 = (RatFunc.zero(), RatFunc.one(), RatFunc.zero())
    iso = not B[2][2]
    orth = not B[2][1]
    perp_ok = span_equal(br.perp(B, [e2]), [e1, e2])
    cov = op.is_covariant(B, A)
    return _ok(iso and orth and perp_ok and cov), {"B(F1,F1)=0": iso, "B(F1,F2)=0": orth,
                                                   "F1_perp=F2": perp_ok, "covariant": cov}


def _projective_ops(ctx):
    z = RatFunc.z()
    good = op.ThirdOrderOp(0, z * 4, 2)
    if ctx.hit("bracket"):
        good = op.ThirdOrderOp(0, z * 4, 3)
    N = ctx.order
    g_ok = op.projective_operator_check(good, N)
    bad1 = op.bracket_closure(op.ThirdOrderOp(0, 0, 1), N)
    bad2 = op.bracket_closure(op.ThirdOrderOp(0, z * 4, 0), N)
    det_bad = op.det_connection_trivial(op.varpi(op.ThirdOrderOp(1, 0, 0)))
    return _ok(g_ok and not bad1 and not bad2 and not det_bad), {
        "(0,4z,2)": g_ok, "(0,0,1)": bad1, "(0,4z,0)": bad2, "a2=1 det trivial": det_bad}


COUNTER_FD = Mat([[0, -2, 0], [0, 0, -1], [0, 0, 0]], RatFunc)


def _varpi_image(ctx):
    z = RatFunc.z()
    D = op.varpi(op.ThirdOrderOp(0, z * 4, 2))
    if ctx.hit("fd"):
        D = op.Connection(COUNTER_FD)
    comp = op.f_d_is_identity(D, ctx.order)
    counter = op.f_d_is_identity(op.Connection(COUNTER_FD), ctx.order)
    conj = op.varpi_image_criterion(D, ctx.order)
    return _ok(comp and not counter and conj), {"companion_F_D=Id": comp, "counterexample_F_D=Id": counter,
                                                "conjunction": conj}


MOEBIUS_SAMPLES = (("z+1", MoebiusMap([[1, 1], [0, 1]])), ("2z", MoebiusMap([[2, 0], [0, 1]])),
                   ("z/(1-z)", MoebiusMap([[1, 0], [-1, 1]])))


class _Chart:
    """A chart change that is not Moebius, accepted wherever a MoebiusMap is pulled back."""

    def __init__(self, f):
        self.f = RatFunc.coerce(f)

    def as_ratfunc(self):
        return self.f


def _equivariance(ctx):
    wit = {}
    for name, g in MOEBIUS_SAMPLES:
        if ctx.hit("moebius"):
            g = _Chart(g.as_ratfunc() + RatFunc.z() ** 2)
        r = op.moebius_equivariance_check(g)
        wit[name] = all(r.values())
    return _ok(all(wit.values())), wit


def random_charts(count=20, seed=20240611, order=6):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        c1 = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        cs = [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(order)]
        center = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        out.append(TruncSeries(center, 0, [Fraction(rng.randint(-4, 4)), c1] + cs, order))
    return out


def _jetdet(ctx):
    charts = random_charts()
    ok = True
    for phi in charts:
        if ctx.hit("jetdet"):
            d = jet_transition_matrix(phi, K, 2).det()
        else:
            d = det_jet_transition(phi)
        one = TruncSeries.constant(1, phi.center, d.order)
        ok = ok and d == one
    return _ok(ok), {"charts": len(charts)}


CANON = [
    Check("canon.01.psi_det", "jet map of the global fields is an isomorphism (det 2)", "psi", _psi),
    Check("canon.02.delta0", "delta_0 splitting and kernel span(1, z, z^2)", "delta0", _delta0),
    Check("canon.03.d0_frame", "oper connection D_0 has flat frame psi_2", "d0", _d0),
    Check("canon.04.oper_conditions", "D_0 satisfies the oper conditions", "oper", _operc),
    Check("canon.05.sff", "second fundamental forms of D_0 equal 1", "sff", _sff),
    Check("canon.06.killing", "Killing form trace(ad ad) in the global-field basis", "killing", _killing),
    Check("canon.07.filtration", "B_0 isotropy, orthogonality and D_0-covariance", "b0", _filtration),
    Check("canon.08.projective_ops", "determinant and bracket-closure criterion for operators", "bracket", _projective_ops),
    Check("canon.09.varpi_image", "F_D = Id and the oper-connection conjunction", "fd", _varpi_image),
    Check("canon.10.equivariance", "Moebius equivariance of delta_0, D_0 and B_0", "moebius", _equivariance),
    Check("canon.11.jet_det", "determinant of 2-jet transitions is 1", "jetdet", _jetdet),
]


def cmd_canon(order=8, mutate=None) -> SuiteReport:
    return run_suite("canon", CANON, Ctx(order, mutate), {"order": order, "mutate": mutate})


# ---------------------------------------------------------------- branched model suite

def _branch_model(ctx, n):
    D = branched_model_connection(n, ctx.lattice)
    t = RatFunc.z()
    if ctx.hit("residue"):
        D = replace(D, A=D.A + Mat.diag([RatFunc.const(-1) / t, 0, 0], RatFunc))
    if ctx.hit("eigenspace"):
        swap = Mat([[0, 0, 1], [0, 1, 0], [1, 0, 0]], RatFunc)
        D = D.gauge(swap)
    if ctx.hit("eigen1"):
        # moves the -1 eigenvector off F2
        D = D.gauge(Mat([[1, -1, 0], [0, 1, 0], [0, 0, 1]], RatFunc))
    if ctx.hit("sfflog"):
        D = replace(D, A=D.A + Mat([[0, 0, 0], [0, 0, -1], [0, 0, 0]], RatFunc))
    return D


def branch_checks(n):
    def status(ok):
        return _ok(ok) if n == 1 else INFO

    def res(ctx):
        D = _branch_model(ctx, n)
        try:
            r = residue(D, 0)
        except NotLogarithmic as exc:
            return status(False), {"error": f"NotLogarithmic: {exc}", "pole_order": D.pole_order(0)}
        return status(r.eigenvalues == (-2, -1, 0)), {"eigenvalues": list(r.eigenvalues), "residue": _s(r.matrix)}

    def esp2(ctx):
        D = _branch_model(ctx, n)
        try:
            r = residue(D, 0)
        except NotLogarithmic as exc:
            return status(False), {"error": f"NotLogarithmic: {exc}"}
        sp = r.eigenspaces.get(-2, [])
        ok = bool(sp) and span_equal(sp, list(br.F1_T))
        return status(ok), {"eigenspace": _s(sp)}

    def esp1(ctx):
        D = _branch_model(ctx, n)
        try:
            r = residue(D, 0)
        except NotLogarithmic as exc:
            return status(False), {"error": f"NotLogarithmic: {exc}"}
        sp = r.eigenspaces.get(-1, [])
        ok = bool(sp) and all(span_contains(list(br.F2_T), v) for v in sp)
        return status(ok), {"eigenspace": _s(sp)}

    def sffs(ctx):
        D = _branch_model(ctx, n)
        s1, s2 = sff_log(D, 1), sff_log(D, 2)
        return status(s1 == RatFunc.one() and s2 == RatFunc.one()), {"sff1": str(s1), "sff2": str(s2)}

    def away(ctx):
        D = _branch_model(ctx, n)
        if ctx.hit("oper"):
            D = replace(D, A=D.A + Mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]], RatFunc))
        c = op.oper_conditions(D.as_connection())
        return status(all(c.values())), dict(c)

    def log(ctx):
        D = _branch_model(ctx, n)
        if ctx.hit("logarithmic"):
            D = replace(D, A=D.A + Mat.diag([RatFunc.one() / RatFunc.z() ** 2, 0, 0], RatFunc))
        return status(D.is_logarithmic), {"pole_order": D.pole_order(0), "lattice": D.frame.tag}

    return [
        Check("branch.01.logarithmic", "branched pullback connection is logarithmic", "logarithmic", log),
        Check("branch.02.residue", "residue eigenvalues {-2, -1, 0} at the branch point", "residue", res),
        Check("branch.03.eigen_minus2", "eigenspace of -2 is the F^1 fiber", "eigenspace", esp2),
        Check("branch.04.eigen_minus1", "eigenspace of -1 lies in the F^2 fiber", "eigen1", esp1),
        Check("branch.05.sff_log", "twisted second fundamental forms equal 1", "sfflog", sffs),
        Check("branch.06.oper_off_S", "oper conditions away from the branch point", "oper", away),
    ]


def cmd_branch(n, order=8, mutate=None, lattice="raw") -> SuiteReport:
    if n < 1:
        raise ValueError("n must be a positive integer")
    params = {"n": n, "order": order, "mutate": mutate, "lattice": lattice,
              "mode": "verify" if n == 1 else "informational"}
    return run_suite("branch", branch_checks(n), Ctx(order, mutate, lattice), params)


# ---------------------------------------------------------------- pair suite

def _mutated_pair(pair, ctx):
    B, D = pair.B, pair.D
    pts = D.divisor.points
    p = pts[0] if pts else Scalar(0)
    t = RatFunc(Poly.linear_root(p))
    if ctx.hit("c1"):
        B = BilinearTwisted(B.Bmat + Mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]], RatFunc), B.twist)
    if ctx.hit("c2"):
        B = BilinearTwisted(B.Bmat.scale(RatFunc.z() + 7), B.twist)
    if ctx.hit("c3"):
        D = replace(D, A=D.A + Mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]], RatFunc))
    if ctx.hit("c4"):
        D = replace(D, A=D.A + Mat.diag([RatFunc.const(-1) / t, 0, 0], RatFunc),
                    divisor=D.divisor if pts else BranchDivisor((p,)))
    if ctx.hit("c5"):
        D = D.gauge(Mat([[0, 0, 1], [0, 1, 0], [1, 0, 0]], RatFunc))
    return br.PairBD(B, D, pair.variable, pair.frames)


def pair_checks(pair):
    cache = {}

    def conds(ctx):
        key = ctx.mutate
        if key not in cache:
            q = _mutated_pair(pair, ctx)
            cache[key] = (q, br.pair_conditions(q))
        return cache[key]

    def cond_check(i):
        def fn(ctx):
            _, c = conds(ctx)
            ok = c.as_tuple()[i - 1]
            wit = {"reason": c.reasons.get(str(i), "")} if not ok else {}
            if i == 4 and ok:
                wit = {str(p): list(r.eigenvalues) for p, r in c.residues.items()}
            return _ok(ok), wit
        return fn

    def phis(ctx):
        q, c = conds(ctx)
        if not c.all():
            return FAIL, {"error": "pair conditions fail"}
        wit, ok = {}, True
        for p in q.divisor.points:
            a = br.phi_obstruction(q, p, "ledger").value
            b = br.phi_obstruction(q, p, "residue").value
            if ctx.hit("phi"):
                b = b + 1
            wit[str(p)] = {"ledger": str(a), "residue": str(b)}
            ok = ok and a == b
        return _ok(ok), wit

    def verdict(ctx):
        q, c = conds(ctx)
        if not c.all():
            return FAIL, {"verdict": "non-oper", "reason": "conditions"}
        crit = br.oper_criterion(q)
        mono = br.monodromy_trivial(q)
        phi_zero = all(not r.value for r in crit.phi)
        if ctx.hit("monodromy"):
            mono = not mono
        # phi = 0 forces the final residue, hence the local monodromy, to vanish, and conversely here
        consistent = crit.is_branched_oper == phi_zero and mono == phi_zero
        return _ok(consistent), {"verdict": "oper" if crit.is_branched_oper else "non-oper",
                                 "monodromy_trivial": mono}

    def frames(ctx):
        q, c = conds(ctx)
        if not q.frames:
            return INFO, {"declared": False}
        if not c.c4:
            return FAIL, {"declared": True, "error": "residue spectrum is not {-2, -1, 0}"}
        ok = True
        for p, vecs in q.frames.items():
            got = br.residue_eigenbasis(q.D, p)
            if ctx.hit("frames"):
                got = tuple(reversed(got))
            ok = ok and tuple(vecs) == tuple(got)
        return _ok(ok), {"declared": True}

    return [
        Check("pair.1.isotropy", "B isotropy, orthogonality, nondegeneracy, twist", "c1", cond_check(1)),
        Check("pair.2.covariance", "B covariant constant for D", "c2", cond_check(2)),
        Check("pair.3.filtration", "D(F^1) = F^2 K(S) and D(F^2) = J^2 K(S)", "c3", cond_check(3)),
        Check("pair.4.residues", "residue eigenvalues {-2, -1, 0}", "c4", cond_check(4)),
        Check("pair.5.eigenspaces", "residue eigenspaces against the filtration", "c5", cond_check(5)),
        Check("pair.6.phi_methods", "phi obstruction: ledger and residue methods agree", "phi", phis),
        Check("pair.7.verdict", "criterion: oper iff every phi vanishes; monodromy", "monodromy", verdict),
        Check("pair.8.frames", "declared eigenframes match the residues", "frames", frames),
    ]


def cmd_pair_check(pair, order=8, mutate=None, path=None) -> SuiteReport:
    params = {"path": str(path) if path is not None else None, "order": order, "mutate": mutate}
    return run_suite("pair-check", pair_checks(pair), Ctx(order, mutate), params)


# ---------------------------------------------------------------- round trip suite

def roundtrip_checks(sigma_text):
    state = {}

    def model(ctx):
        o = br.build_sl2_model(sigma_text)
        if ctx.hit("model"):
            # non-Borel complement in place of F2
            z = RatFunc.z()
            o = replace(o, F2_frame=(o.F1_frame[0], (RatFunc.one(), z, RatFunc.zero())))
        state["o"] = br.build_sl2_model(sigma_text)
        c = br.branched_oper_conditions(o)
        return _ok(all(c.values())), dict(c)

    def pair_ok(ctx):
        o = state.get("o") or br.build_sl2_model(sigma_text)
        pair = br.build_pair(o, ctx.lattice)
        state["pair"] = pair
        if ctx.hit("pair"):
            pair = _mutated_pair(pair, Ctx(ctx.order, "c4"))
        c = br.pair_conditions(pair)
        return _ok(c.all()), {"conditions": list(c.as_tuple()), **({"reasons": c.reasons} if c.reasons else {})}

    def phi(ctx):
        pair = state["pair"]
        if ctx.hit("criterion") and pair.divisor.points:
            pair = br.perturbed_pair(1, sigma_text, ctx.lattice)
        crit = br.oper_criterion(pair)
        vals = [f"{r.method}@{r.point}={r.value}" for r in crit.phi]
        return _ok(crit.is_branched_oper), {"phi": vals, "reason": crit.reason}

    def spectra(ctx):
        pair = state["pair"]
        rec = br.reconstruct_oper(pair)
        state["rec"] = rec
        want = ((-2, -1, 0), (-1, 0, 0), (0, 0, 0))
        spectra = dict(rec.spectra)
        if ctx.hit("spectra"):
            # report as if the second modification had been skipped
            spectra = {p: (v[0], v[1], v[1]) for p, v in spectra.items()}
        got = {str(p): [list(s) for s in v] for p, v in spectra.items()}
        ok = all(v == want for v in spectra.values())
        return _ok(ok), {"spectra": got, "generalized_eigenspace": rec.generalized}

    def regular(ctx):
        rec = state["rec"]
        D = rec.connection
        if ctx.hit("regular"):
            D = replace(D, A=D.A + Mat.diag([RatFunc.z() ** -1, 0, 0], RatFunc),
                        divisor=D.divisor if D.divisor.points else BranchDivisor((0,)))
        pts = D.divisor.points
        ok = all(is_regular_at(D, p) for p in pts)
        return _ok(ok), {"points": [str(p) for p in pts]}

    def rt(ctx):
        o, pair, rec = state["o"], state["pair"], state["rec"]
        if ctx.hit("roundtrip"):
            rec = replace(rec, B=rec.B.scale(RatFunc.const(2)))
        r = br.roundtrip_check(o, pair, rec)
        return _ok(r.ok), {"frame_matrix": _s(r.frame), **{k: v for k, v in r.checks.items()}}

    def mono(ctx):
        pair = state["pair"]
        if ctx.hit("monodromy") and pair.divisor.points:
            pair = br.perturbed_pair(1, sigma_text, ctx.lattice)
        return _ok(br.monodromy_trivial(pair)), {}

    def detphi(ctx):
        o = state.get("o") or br.build_sl2_model(sigma_text)
        d = br.phi_map(o).det()
        P3 = RatFunc.coerce(o.P) ** 3
        if ctx.hit("detphi"):
            d = d * RatFunc.coerce(o.P)
        orders = {str(p): d.valuation(p) for p in o.divisor.points}
        q = d / P3
        return _ok(q.is_constant() and bool(q)), {"det_Phi": str(d), "vanishing_orders": orders}

    return [
        Check("rt.1.model", "model satisfies the branched oper conditions", "model", model),
        Check("rt.2.pair", "built pair satisfies the five conditions", "pair", pair_ok),
        Check("rt.3.criterion", "criterion holds with every phi = 0", "criterion", phi),
        Check("rt.4.spectra", "residue spectra across the two modifications", "spectra", spectra),
        Check("rt.5.regular", "twice-modified connection is regular", "regular", regular),
        Check("rt.6.roundtrip", "reconstruction equals the model up to a constant frame", "roundtrip", rt),
        Check("rt.7.monodromy", "local monodromy is trivial", "monodromy", mono),
        Check("rt.8.det_phi", "det Phi is a nonzero constant times P^3", "detphi", detphi),
    ]


def cmd_roundtrip(sigma_text, order=8, mutate=None, lattice="raw", emit=None) -> SuiteReport:
    """Model -> pair -> criterion -> reconstruction -> comparison. With `emit`, the built pair
    (with its residue eigenframes when the conditions hold) is written there as a pair file."""
    o = br.build_sl2_model(sigma_text)  # input errors surface before any check runs
    params = {"sigma": sigma_text, "order": order, "mutate": mutate, "lattice": lattice}
    if emit is not None:
        from .pairfile import dump
        pair = br.build_pair(o, lattice)
        if br.pair_conditions(pair).all():
            pair = replace(pair, frames={p: br.residue_eigenbasis(pair.D, p) for p in pair.divisor.points})
        dump(pair, emit)
    checks = roundtrip_checks(sigma_text)
    ctx = Ctx(order, mutate, lattice)
    t0 = time.perf_counter()
    results = []
    halted = None
    for ch in checks:
        if halted is not None and ch.mutate != "detphi":
            results.append(CheckResult(ch.id, ch.anchor, FAIL, {"skipped": f"after failure in {halted}"}))
            continue
        try:
            status, wit = ch.fn(ctx)
        except (BranchOperError, KeyError) as exc:
            status, wit = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        results.append(CheckResult(ch.id, ch.anchor, status, wit))
        if status == FAIL and ch.id in ("rt.2.pair", "rt.3.criterion", "rt.4.spectra"):
            halted = ch.id
    return SuiteReport("roundtrip", params, results, time.perf_counter() - t0)


SUITE_MUTATIONS = {
    "canon": sorted({c.mutate for c in CANON}),
    "branch": sorted({c.mutate for c in branch_checks(1)}),
    "pair-check": sorted({c.mutate for c in pair_checks(None)}),
    "roundtrip": sorted({c.mutate for c in roundtrip_checks("z")}),
}
