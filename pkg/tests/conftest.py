from fractions import Fraction

from hypothesis import settings, strategies as st

from branchoper.polys import Poly, RatFunc
from branchoper.scalars import Scalar

settings.register_profile("repo", max_examples=25, deadline=None, derandomize=True)
settings.load_profile("repo")

small_frac = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
scalars = st.builds(Scalar, small_frac, small_frac)
real_scalars = st.builds(Scalar, small_frac)
polys = st.lists(scalars, min_size=0, max_size=4).map(Poly)
nonzero_polys = polys.filter(bool)
ratfuncs = st.builds(RatFunc, polys, nonzero_polys)
