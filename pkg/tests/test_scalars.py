from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import nonzero_polys, polys, ratfuncs, scalars, small_frac
from branchoper.errors import NonIntegerEigenvalue, ParseError, PoleAtBasepoint, PoleAtPoint
from branchoper.linalg import Mat, integer_eigendata
from branchoper.polys import Poly, RatFunc, split_roots
from branchoper.scalars import I, Scalar
from branchoper.series import TruncSeries, residue_at, series_expand, solve_flat_sections

z = RatFunc.z()


X = sp.Symbol("z")


def _sym(c: Scalar):
    return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)


def to_sympy(f: RatFunc):
    num = sum((_sym(c) * X ** k for k, c in enumerate(f.num.coeffs)), sp.Integer(0))
    den = sum((_sym(c) * X ** k for k, c in enumerate(f.den.coeffs)), sp.Integer(0))
    return num / den


# ---------------------------------------------------------------- Scalar

@given(scalars, scalars)
def test_add_sub_roundtrip(a, b):
    assert (a + b) - b == a


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if b:
        assert (a / b) * b == a


@given(scalars)
def test_format_parse_roundtrip(a):
    assert Scalar.parse(a.format()) == a


def test_scalar_canonical_and_text():
    assert Scalar(Fraction(2, 4), 0) == Scalar(Fraction(1, 2))
    assert Scalar(1, 1) * Scalar(1, -1) == 2
    assert I * I == -1
    assert Scalar.parse("1/2+3/4*i") == Scalar(Fraction(1, 2), Fraction(3, 4))
    assert hash(Scalar(3)) == hash(Scalar.coerce(3))
    assert Scalar(-2).is_integer() and not Scalar(0, 1).is_integer()


# ---------------------------------------------------------------- Poly / RatFunc

@given(nonzero_polys, nonzero_polys)
def test_degree_of_product(p, q):
    assert (p * q).degree == p.degree + q.degree


@given(polys, nonzero_polys)
def test_divmod(p, d):
    q, r = p.divmod(d)
    assert q * d + r == p
    assert not r or r.degree < d.degree


@given(ratfuncs, ratfuncs)
def test_ratfunc_canonical(f, g):
    h = f + g
    assert h.den.lc == 1
    assert h.num.gcd(h.den).degree == 0
    assert h - g == f


@settings(max_examples=6)
@given(ratfuncs, ratfuncs)
def test_ratfunc_matches_sympy(f, g):
    lhs = to_sympy(f * g + f.derivative())
    rhs = to_sympy(f) * to_sympy(g) + sp.diff(to_sympy(f), X)
    assert sp.expand(sp.numer(sp.together(lhs - rhs))) == 0


def test_ratfunc_text():
    f = RatFunc.parse("(2*z+1)/(z+1)")
    assert f.format() == "(2*z+1)/(z+1)"
    assert RatFunc.parse("(1+i)*z^2 - z/3 + 2").num.format() == "(1+i)*z^2-1/3*z+2"
    assert RatFunc.parse("z**2") == z * z


@pytest.mark.parametrize("bad,col", [("1+*z", 3), ("(z+1", 5), ("z^z", 3), ("2 $ z", 3)])
def test_parse_errors_carry_column(bad, col):
    with pytest.raises(ParseError) as e:
        RatFunc.parse(bad)
    assert e.value.line == 1 and e.value.col == col


def test_evaluation_at_pole():
    with pytest.raises(PoleAtPoint):
        (1 / z)(0)


def test_split_roots():
    assert sorted(split_roots(Poly([0, 2, 3])), key=lambda s: s.re) == [Scalar(Fraction(-2, 3)), Scalar(0)]
    assert set(split_roots(Poly([1, 0, 1]))) == {I, -I}
    assert split_roots(Poly([-2, 0, 1])) is None


# ---------------------------------------------------------------- series

def coeffs(s, lo, hi):
    return [s.coeff(k) for k in range(lo, hi + 1)]


def test_series_examples():
    assert coeffs(series_expand(1 / (1 - z), 0, 3), 0, 3) == [1, 1, 1, 1]
    s = series_expand(1 / z, 0, 2)
    assert s.valuation == -1 and coeffs(s, -1, 2) == [1, 0, 0, 0]
    assert coeffs(series_expand(RatFunc.parse("(2*z+1)/(z+1)"), 0, 2), 0, 2) == [1, 1, -1]


@settings(max_examples=6)
@given(ratfuncs, st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(-3)]))
def test_series_agrees_with_sympy(f, p):
    s = series_expand(f, p, 4)
    t = sp.Symbol("t")
    ser = sp.series(to_sympy(f).subs(X, t + sp.Rational(p)), t, 0, 5).removeO()
    ser = sp.expand(ser)
    for k in range(s.valuation, 5):
        got = s.coeff(k)
        want = ser.coeff(t, k)
        assert sp.expand(_sym(got) - want) == 0


@given(ratfuncs, st.sampled_from([0, 1, -2]))
def test_series_mul_inverse(f, p):
    s = series_expand(f, p, 6)
    if s.is_zero():
        return
    assert (s * s.inverse()).agrees_with(RatFunc.one())


def test_residue_examples():
    assert residue_at(1 / z, 0) == 1
    assert residue_at(1 / z ** 2, 0) == 0
    assert residue_at(3 / (z - I), I) == 3


@given(st.integers(-2, 2), small_frac, st.lists(small_frac, min_size=1, max_size=3).filter(lambda c: c[0] != 0))
def test_residue_of_log_derivative(k, p, gc):
    t = z - p
    g = RatFunc(Poly([Scalar(c) for c in gc]).shift(-Scalar(p)))  # g(p) = gc[0] != 0
    f = t ** k * g
    assert residue_at(f.derivative() / f, p) == k


def test_flat_sections_examples():
    A = Mat([[0, -1, 0], [0, 0, -1], [0, 0, 0]], RatFunc)
    v = solve_flat_sections(A, 0, [0, 0, 2], 8)
    assert [x.agrees_with(f) for x, f in zip(v, (z * z, 2 * z, RatFunc.const(2)))] == [True] * 3
    v0 = solve_flat_sections(Mat.zeros(3, kind=RatFunc), 0, [0, 1, 0], 5)
    assert [x.agrees_with(RatFunc.const(c)) for x, c in zip(v0, (0, 1, 0))] == [True] * 3
    e = solve_flat_sections(Mat([[1]], RatFunc), 0, [1], 6)[0]
    from math import factorial
    assert coeffs(e, 0, 6) == [Scalar(Fraction((-1) ** k, factorial(k))) for k in range(7)]
    with pytest.raises(PoleAtBasepoint):
        solve_flat_sections(Mat.diag([1 / z, 0, 0], RatFunc), 0, [1, 0, 0], 3)


@given(st.lists(small_frac, min_size=3, max_size=3), st.lists(small_frac, min_size=3, max_size=3))
def test_flat_sections_linear(u, w):
    A = Mat([[z, -1, 0], [0, 1 / (z + 3), -1], [z * z, 2, 0]], RatFunc)
    su = solve_flat_sections(A, 0, u, 6)
    sw = solve_flat_sections(A, 0, w, 6)
    sb = solve_flat_sections(A, 0, [a + b for a, b in zip(u, w)], 6)
    assert all(a + b == c for a, b, c in zip(su, sw, sb))


def test_truncseries_order_contract():
    a = TruncSeries(0, 0, [1, 2, 3], 5)
    b = TruncSeries(0, -1, [1, 1], 4)
    assert (a * b).order == min(a.order + b.valuation, b.order + a.valuation)


# ---------------------------------------------------------------- integer eigendata

def test_eigendata_examples():
    d = integer_eigendata(Mat.diag([-2, -1, 0]))
    assert d["eigenvalues"] == [-2, -1, 0]
    assert all(len(d["eigenspaces"][k]) == 1 for k in (-2, -1, 0))
    n = integer_eigendata(Mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert n["eigenvalues"] == [0, 0, 0] and n["geometric"][0] == 1
    with pytest.raises(NonIntegerEigenvalue):
        integer_eigendata(Mat([[0, 0, 1], [1, 0, -1], [0, 1, 1]]))  # t^3 - t^2 + t - 1


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_eigendata_trace_det(ev, entries):
    P = Mat([entries[0:3], entries[3:6], entries[6:9]])
    if not P.det():
        P = Mat.identity(3)
    M = P * Mat.diag(ev) * P.inverse()
    d = integer_eigendata(M)
    assert sum(d["eigenvalues"]) == M.trace()
    prod = Scalar(1)
    for e in d["eigenvalues"]:
        prod = prod * e
    assert prod == M.det()
