import itertools

import pytest
import sympy as sp

from branchoper.errors import NonTraceless
from branchoper.linalg import Mat
from branchoper.polys import Poly, RatFunc
from branchoper.sl2 import (BASIS, E, F, H, MoebiusMap, Sl2Elt, VectorFieldPoly, ad_matrix, is_moebius,
                            killing_matrix, sl2_to_vf, vf_bracket)

z = RatFunc.z()
KAPPA = [[0, 0, -4], [0, 2, 0], [-4, 0, 0]]


def test_sl2_to_vf_examples():
    assert sl2_to_vf(E) == VectorFieldPoly([1])
    assert sl2_to_vf(H) == VectorFieldPoly([0, 2])
    assert sl2_to_vf([[0, 0], [0, 0]]) == VectorFieldPoly([])
    with pytest.raises(NonTraceless):
        Sl2Elt([[1, 0], [0, 0]])


@pytest.mark.parametrize("M,N", list(itertools.product([E, H, F], repeat=2)))
def test_sl2_to_vf_reverses_brackets(M, N):
    # matrix commutators go to minus the vector-field bracket (left action on the line)
    assert sl2_to_vf(M.bracket(N)) == -vf_bracket(sl2_to_vf(M), sl2_to_vf(N))


def test_vf_bracket_examples():
    d, zd, z2d = BASIS
    assert vf_bracket(d, zd) == d
    assert vf_bracket(zd, z2d) == z2d
    assert vf_bracket(z2d, z2d) == VectorFieldPoly([])


def test_jacobi():
    for a, b, c in itertools.product(BASIS, repeat=3):
        s = vf_bracket(a, vf_bracket(b, c)) + vf_bracket(b, vf_bracket(c, a)) + vf_bracket(c, vf_bracket(a, b))
        assert s == VectorFieldPoly([])


def test_killing_against_sympy():
    # independent oracle: ad matrices from the bracket of polynomial fields computed in sympy
    x = sp.Symbol("z")
    basis = [sp.Integer(1), x, x ** 2]

    def coords(p):
        p = sp.Poly(sp.expand(p), x)
        return [p.coeff_monomial(x ** k) for k in range(3)]

    ads = [sp.Matrix([coords(u * sp.diff(v, x) - v * sp.diff(u, x)) for v in basis]).T for u in basis]
    oracle = sp.Matrix(3, 3, lambda j, k: (ads[j] * ads[k]).trace())
    assert oracle.tolist() == KAPPA
    assert killing_matrix() == Mat(KAPPA)


def test_killing_ad_invariant():
    kap = killing_matrix()
    for x in BASIS:
        ad = ad_matrix(x)
        assert (ad.T * kap + kap * ad).is_zero()


def test_killing_borel_picture():
    kap = killing_matrix()
    n = (0, 0, 1)
    assert kap[2][2] == 0
    perp = [v for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] if sum(kap[i][j] * n[j] for i in range(3) for j in range(3) if v[i]) == 0]
    assert perp == [(0, 1, 0), (0, 0, 1)]


def test_moebius():
    assert is_moebius(z) == MoebiusMap.identity()
    assert is_moebius(RatFunc.parse("(2*z+1)/(z+1)")) == MoebiusMap([[2, 1], [1, 1]])
    assert is_moebius(z * z) is None
    g = MoebiusMap([[1, 2], [3, 5]])
    assert g.compose(g.inverse()) == MoebiusMap.identity()
    assert g.compose(g.inverse()).act(z * z + 1) == z * z + 1
    assert MoebiusMap([[2, 4], [6, 10]]) == g
