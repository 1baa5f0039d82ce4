import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import small_frac
from branchoper.errors import NonInvertibleChart, PoleAtPoint
from branchoper.jets import (K, TX, TWISTED_T, BundleSymbol, JetVec, StdFiltration, det_jet_transition, jet_of,
                             jet_project, jet_transition_matrix, nested_jet, transition_at)
from branchoper.linalg import Mat
from branchoper.polys import Poly, RatFunc
from branchoper.scalars import Scalar
from branchoper.series import TruncSeries
from branchoper.sl2 import MoebiusMap
from branchoper.suite import random_charts

z = RatFunc.z()
CHARTS = [MoebiusMap([[1, 1], [0, 1]]), MoebiusMap([[2, 0], [0, 1]]), MoebiusMap([[1, 0], [-1, 1]])]


def test_jet_of_examples():
    assert jet_of(z * z, 2, 0).comps == (0, 0, 2)
    assert jet_of(1 + z, 1, 1).comps == (2, 1)
    assert jet_of(z ** 3, 3, 0).comps == (0, 0, 0, 6)
    with pytest.raises(PoleAtPoint):
        jet_of(1 / z, 2, 0)


def test_project_and_nested():
    v = JetVec((Scalar(0), Scalar(0), Scalar(2)))
    assert jet_project(v).comps == (0, 0)
    assert jet_project(jet_project(JetVec((Scalar(3), Scalar(1), Scalar(2))))).comps == (3,)
    assert jet_project(JetVec((Scalar(0), Scalar(0), Scalar(5)))).is_zero()
    a, b = nested_jet(JetVec(tuple(Scalar(x) for x in (0, 0, 0, 6))))
    assert a.comps == (0, 0, 0) and b.comps == (0, 0, 6)
    a, b = nested_jet(JetVec(tuple(Scalar(x) for x in (1, 0, 0, 0))))
    assert a.comps == (1, 0, 0) and b.comps == (0, 0, 0)


def test_bundle_symbol_tensor():
    assert TX.tensor(K) == BundleSymbol(0, 0)
    assert TX.tensor(BundleSymbol(0, 1)) == TWISTED_T


def test_transition_examples():
    I3 = Mat.identity(3)
    assert transition_at(z, TX, 2) == I3 and transition_at(z, K, 2) == I3
    assert jet_transition_matrix(z + 5, TX, 2) == Mat.identity(3, RatFunc)
    a = Scalar(3, 1)
    assert jet_transition_matrix(z * a, TX, 2) == Mat.diag([a, 1, 1 / a], RatFunc)
    with pytest.raises(NonInvertibleChart):
        jet_transition_matrix(z * z, TX, 2, 0)


@pytest.mark.parametrize("g", CHARTS)
@pytest.mark.parametrize("L", [TX, K, BundleSymbol(2, 0)])
def test_naturality(g, L):
    """jets of g(w) = (phi')^(-b) f(phi^-1 w) at phi(p) equal T(p) . jets of f at p."""
    phi, psi = g.as_ratfunc(), g.inverse().as_ratfunc()
    f = RatFunc.parse("z^3-2*z+1/2")
    d = phi.derivative().compose(psi)
    gw = f.compose(psi) * d ** (-L.b) if L.b else f.compose(psi)
    p = Scalar(Fraction(1, 3))
    lhs = jet_of(gw, 3, phi(p)).comps
    rhs = transition_at(phi, L, 3, p).apply(jet_of(f, 3, p).comps)
    assert tuple(lhs) == tuple(rhs)


def test_functoriality():
    phi, psi = RatFunc.parse("z/(1-z)"), RatFunc.parse("2*z+1")
    comp = phi.compose(psi)
    c = Fraction(1, 3)
    lhs = jet_transition_matrix(comp, TX, 2, c)
    rhs = jet_transition_matrix(phi, TX, 2, psi(c)).map(lambda a: a.compose(psi)) * jet_transition_matrix(psi, TX, 2, c)
    assert lhs == rhs


def test_det_examples():
    assert det_jet_transition(z * 7) == RatFunc.one()
    assert det_jet_transition(RatFunc.parse("z/(1-z)")) == RatFunc.one()
    s = TruncSeries(0, 0, [0, 1, 1], 8)  # z + z^2
    assert det_jet_transition(s) == TruncSeries.constant(1, 0, 7)
    assert det_jet_transition(RatFunc.parse("z+z^2")) == RatFunc.one()


def test_det_random_charts():
    for phi in random_charts(20, seed=7):
        d = det_jet_transition(phi)
        assert d == TruncSeries.constant(1, phi.center, d.order)


@given(st.lists(small_frac, min_size=4, max_size=4), small_frac.filter(bool))
def test_filtration_stable(cs, c1):
    phi = TruncSeries(0, 0, [cs[0], c1] + cs[1:], 6)
    T = transition_at(phi, TX, 2)
    # lower triangular: F2 = {v0 = 0} and F1 = {v0 = v1 = 0} are preserved
    assert T[0][1] == 0 and T[0][2] == 0 and T[1][2] == 0
    e2 = T.apply((0, 0, 1))
    assert StdFiltration.in_F1(JetVec(tuple(e2)))
    assert StdFiltration.in_F2(JetVec(tuple(T.apply((0, 1, 0)))))


def test_twisted_transition_needs_center():
    phi = RatFunc.parse("2*z+z^2")
    T = jet_transition_matrix(phi, TWISTED_T, 2, 0)
    # (phi')^1 (phi/z)^1 at 0 = 2 * 2
    assert T[0][0](0) == 4
