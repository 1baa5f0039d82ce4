"""Small dense matrices over Scalar or RatFunc, plus integer eigendata."""

from __future__ import annotations

from math import isqrt

from .errors import NonIntegerEigenvalue
from .polys import Poly, RatFunc
from .scalars import ONE, ZERO, Scalar


def _zero_like(x):
    return RatFunc.zero() if isinstance(x, RatFunc) else ZERO


def _one_like(x):
    return RatFunc.one() if isinstance(x, RatFunc) else ONE


class Mat:
    """Immutable matrix; entries are Scalars or RatFuncs (not mixed)."""

    __slots__ = ("rows",)

    def __init__(self, rows, kind=None):
        conv = kind.coerce if kind is not None else None
        if conv is None:
            is_rat = any(isinstance(x, (RatFunc, Poly, str)) for r in rows for x in r)
            conv = RatFunc.coerce if is_rat else Scalar.coerce
        object.__setattr__(self, "rows", tuple(tuple(conv(x) for x in r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def _raw(cls, rows):
        m = object.__new__(cls)
        object.__setattr__(m, "rows", tuple(tuple(r) for r in rows))
        return m

    @classmethod
    def identity(cls, n, kind=Scalar):
        z, o = kind.zero(), kind.one()
        return cls._raw([[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n, m=None, kind=Scalar):
        m = n if m is None else m
        return cls._raw([[kind.zero()] * m for _ in range(n)])

    @classmethod
    def diag(cls, entries, kind=None):
        n = len(entries)
        kind = kind or (RatFunc if any(isinstance(e, (RatFunc, Poly)) for e in entries) else Scalar)
        es = [kind.coerce(e) for e in entries]
        z = kind.zero()
        return cls._raw([[es[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        return cls._raw(list(zip(*cols)))

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_rational(self):
        return bool(self.rows) and isinstance(self.rows[0][0], RatFunc)

    def __getitem__(self, i):
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.shape[1])]

    @property
    def T(self):
        return Mat._raw(list(zip(*self.rows)))

    def map(self, f):
        return Mat._raw([[f(x) for x in r] for r in self.rows])

    def to_rat(self):
        return self.map(RatFunc.coerce)

    def __add__(self, o):
        return Mat._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __sub__(self, o):
        return Mat._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c):
        return self.map(lambda x: x * c)

    def __mul__(self, o):
        if not isinstance(o, Mat):
            return self.scale(o)
        n, k = self.shape
        k2, m = o.shape
        if k != k2:
            raise ValueError("shape mismatch")
        oc = o.cols()
        out = []
        for r in self.rows:
            row = []
            for c in oc:
                acc = None
                for a, b in zip(r, c):
                    if not a or not b:
                        continue
                    t = a * b
                    acc = t if acc is None else acc + t
                if acc is None:
                    rat = isinstance(r[0], RatFunc) or isinstance(c[0], RatFunc)
                    acc = RatFunc.zero() if rat else ZERO
                row.append(acc)
            out.append(row)
        return Mat._raw(out)

    def apply(self, v):
        """Matrix times a column vector given as a sequence."""
        out = []
        for r in self.rows:
            acc = None
            for a, b in zip(r, v):
                if not a or not b:
                    continue
                t = a * b
                acc = t if acc is None else acc + t
            if acc is None:
                acc = RatFunc.zero() if (isinstance(r[0], RatFunc) or isinstance(v[0], RatFunc)) else ZERO
            out.append(acc)
        return tuple(out)

    def derivative(self):
        return self.map(lambda x: x.derivative())

    def __call__(self, p):
        return self.map(lambda x: x(p))

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, len(self.rows)):
            acc = acc + self.rows[i][i]
        return acc

    def det(self):
        n = len(self.rows)
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        if n == 3:
            (a, b, c), (d, e, f), (g, h, i) = self.rows
            return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        m = [list(r) for r in self.rows]
        sign = 1
        acc = _one_like(m[0][0])
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k]), None)
            if piv is None:
                return _zero_like(m[0][0])
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            acc = acc * m[k][k]
            inv = m[k][k].inverse()
            for i in range(k + 1, n):
                if m[i][k]:
                    f = m[i][k] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[k])]
        return acc if sign > 0 else -acc

    def inverse(self):
        n = len(self.rows)
        one = _one_like(self.rows[0][0])
        zero = _zero_like(self.rows[0][0])
        m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            m[k], m[piv] = m[piv], m[k]
            inv = m[k][k].inverse()
            m[k] = [x * inv for x in m[k]]
            for i in range(n):
                if i != k and m[i][k]:
                    f = m[i][k]
                    m[i] = [x - f * y for x, y in zip(m[i], m[k])]
        return Mat._raw([r[n:] for r in m])

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def __eq__(self, o):
        if not isinstance(o, Mat):
            return NotImplemented
        return self.rows == o.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Mat([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]


def rref(rows):
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    m = [[x if isinstance(x, (Scalar, RatFunc)) else Scalar.coerce(x) for x in r] for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def rank(vectors):
    if not vectors:
        return 0
    return len(rref(vectors)[1])


def kernel(M):
    """Basis of the null space of M, each vector normalized so its first nonzero entry is 1."""
    rows = [list(r) for r in M]
    nc = len(rows[0])
    m, pivots = rref(rows)
    zero = _zero_like(rows[0][0])
    one = _one_like(rows[0][0])
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * nc
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(normalize_vector(v))
    return basis


def normalize_vector(v):
    lead = next((x for x in v if x), None)
    if lead is None:
        return tuple(v)
    inv = lead.inverse()
    return tuple(x * inv for x in v)


def span_contains(basis, v) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)]) == rank(list(basis))


def span_equal(a, b) -> bool:
    return all(span_contains(a, v) for v in b) and all(span_contains(b, v) for v in a)


def complete_basis(vectors, n):
    """Extend independent vectors by standard basis vectors to a basis of the n-space."""
    kind = type(vectors[0][0]) if vectors else Scalar
    out = [tuple(v) for v in vectors]
    for j in range(n):
        if len(out) == n:
            break
        e = tuple(kind.one() if i == j else kind.zero() for i in range(n))
        if not span_contains(out, e):
            out.append(e)
    return out


def charpoly(M) -> Poly:
    """det(t I - M) for a square Scalar matrix."""
    n = len(M)
    if n == 3:
        a = M
        tr = a[0][0] + a[1][1] + a[2][2]
        minors = (a[0][0] * a[1][1] - a[0][1] * a[1][0]
                  + a[0][0] * a[2][2] - a[0][2] * a[2][0]
                  + a[1][1] * a[2][2] - a[1][2] * a[2][1])
        d = Mat._raw(M.rows if isinstance(M, Mat) else M).det()
        return Poly([-d, minors, -tr, ONE])
    t = RatFunc.z()
    tm = Mat._raw([[(t if i == j else RatFunc.zero()) - RatFunc.const(M[i][j]) for j in range(n)] for i in range(n)])
    return tm.det().num


def _divisors(n):
    n = abs(n)
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def integer_roots(p: Poly):
    """Integer roots of p with multiplicity; also returns the leftover cofactor."""
    roots = []
    q = p
    while q.degree > 0:
        if not q.coeff(0):
            roots.append(0)
            q = q // Poly.z()
            continue
        # an integer root is a root of the real part and of the imaginary part
        part = [c.re for c in q.coeffs]
        if not any(part):
            part = [c.im for c in q.coeffs]
        den = 1
        for c in part:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in part]
        low = next(c for c in ints if c)
        found = None
        for d in _divisors(low):
            for cand in (d, -d):
                if not q(cand):
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        q = q // Poly.linear_root(found)
    return roots, q


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def integer_eigendata(M):
    """Integer eigenvalues (with multiplicity) and eigenspaces of a square Scalar matrix.

    Returns dict with keys eigenvalues (sorted list), eigenspaces {lambda: basis},
    geometric {lambda: dim}, algebraic {lambda: multiplicity}.
    """
    M = M if isinstance(M, Mat) else Mat(M, Scalar)
    n = len(M)
    roots, rest = integer_roots(charpoly(M))
    if rest.degree > 0:
        raise NonIntegerEigenvalue(f"characteristic polynomial has non-integer roots (cofactor {rest})")
    roots.sort()
    spaces, geo, alg = {}, {}, {}
    for lam in sorted(set(roots)):
        shifted = M - Mat.identity(n).scale(Scalar(lam))
        spaces[lam] = kernel(shifted)
        geo[lam] = len(spaces[lam])
        alg[lam] = roots.count(lam)
    return {"eigenvalues": roots, "eigenspaces": spaces, "geometric": geo, "algebraic": alg}


def generalized_kernel(M, lam, power=None):
    """Kernel of (M - lam I)^power; power defaults to the matrix size."""
    M = M if isinstance(M, Mat) else Mat(M, Scalar)
    n = len(M)
    shifted = M - Mat.identity(n).scale(Scalar.coerce(lam))
    acc = shifted
    for _ in range((power or n) - 1):
        acc = acc * shifted
    return kernel(acc)


def constant_matrix_of(M):
    return M.map(lambda x: RatFunc.coerce(x).constant_value())


__all__ = [
    "Mat", "rref", "rank", "kernel", "normalize_vector", "span_contains", "span_equal",
    "complete_basis", "charpoly", "integer_roots", "integer_eigendata", "generalized_kernel",
]
