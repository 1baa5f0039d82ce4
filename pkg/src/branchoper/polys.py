"""Univariate polynomials and rational functions over the Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction

from .errors import PoleAtPoint
from .scalars import ONE, ZERO, Scalar


def _strip(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class Poly:
    """Coefficients in ascending order; the zero polynomial has no coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _strip([Scalar.coerce(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, coeffs):
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", _strip(coeffs))
        return p

    @classmethod
    def zero(cls):
        return cls._raw(())

    @classmethod
    def one(cls):
        return cls._raw((ONE,))

    @classmethod
    def z(cls):
        return cls._raw((ZERO, ONE))

    @classmethod
    def const(cls, c):
        return cls._raw((Scalar.coerce(c),))

    @classmethod
    def linear_root(cls, p):
        """The monic polynomial z - p."""
        return cls._raw((-Scalar.coerce(p), ONE))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    @staticmethod
    def _wrap(o):
        if isinstance(o, Poly):
            return o
        if isinstance(o, (Scalar, int, Fraction)):
            return Poly.const(o)
        return None

    def __add__(self, o):
        o = Poly._wrap(o)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, o):
        o = Poly._wrap(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Scalar) or isinstance(o, int):
            o = Scalar.coerce(o)
            return Poly._raw([c * o for c in self.coeffs])
        o = Poly._wrap(o)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly.zero()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out, base = Poly.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, d: "Poly"):
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dd = d.degree
        inv = d.lc.inverse()
        if len(r) - 1 < dd:
            return Poly.zero(), self
        q = [ZERO] * (len(r) - dd)
        for k in range(len(r) - 1 - dd, -1, -1):
            c = r[k + dd] * inv
            q[k] = c
            if c:
                for j, y in enumerate(d.coeffs):
                    r[k + j] = r[k + j] - c * y
        return Poly._raw(q), Poly._raw(r[:dd])

    def __floordiv__(self, d):
        return self.divmod(Poly._wrap(d))[0]

    def __mod__(self, d):
        return self.divmod(Poly._wrap(d))[1]

    def monic(self):
        if not self:
            return self
        inv = self.lc.inverse()
        return Poly._raw([c * inv for c in self.coeffs])

    def gcd(self, o: "Poly") -> "Poly":
        a, b = self, o
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def derivative(self):
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        x = Scalar.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c) -> "Poly":
        """p(z + c)."""
        c = Scalar.coerce(c)
        if not c:
            return self
        out = Poly.zero()
        lin = Poly._raw((c, ONE))
        for a in reversed(self.coeffs):
            out = out * lin + Poly.const(a)
        return out

    def compose(self, q: "Poly") -> "Poly":
        out = Poly.zero()
        for a in reversed(self.coeffs):
            out = out * q + Poly.const(a)
        return out

    def root_multiplicity(self, p) -> int:
        """Order of vanishing at p (the zero polynomial raises)."""
        if not self:
            raise ValueError("zero polynomial has no finite root multiplicity")
        sh = self.shift(p).coeffs
        k = 0
        while not sh[k]:
            k += 1
        return k

    def is_squarefree(self):
        if self.degree <= 0:
            return True
        return self.gcd(self.derivative()).degree == 0

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.coeffs == o.coeffs
        w = Poly._wrap(o)
        if w is None:
            return NotImplemented
        return self.coeffs == w.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.format()})"

    def __str__(self):
        return self.format()

    def format(self, var="z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                t = c.format()
                if c.re and c.im:
                    t = f"({t})"
            elif c == 1:
                t = mono
            elif c == -1:
                t = "-" + mono
            elif not c.im or not c.re:
                t = f"{c.format()}*{mono}"
            else:
                t = f"({c.format()})*{mono}"
            parts.append(t)
        out = parts[0]
        for t in parts[1:]:
            out += t if t.startswith("-") else "+" + t
        return out


class RatFunc:
    """num/den with gcd 1 and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly._wrap(num) if not isinstance(num, Poly) else num
        if den is None:
            den = Poly.one()
        else:
            den = Poly._wrap(den) if not isinstance(den, Poly) else den
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = Poly.zero(), Poly.one()
        elif den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        if den.lc != 1:
            inv = den.lc.inverse()
            num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        object.__setattr__(r, "num", num)
        object.__setattr__(r, "den", den)
        return r

    @classmethod
    def zero(cls):
        return _RZERO

    @classmethod
    def one(cls):
        return _RONE

    @classmethod
    def z(cls):
        return cls._raw(Poly.z(), Poly.one())

    @classmethod
    def const(cls, c):
        return cls._raw(Poly.const(c), Poly.one())

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls._raw(x, Poly.one())
        if isinstance(x, str):
            return cls.parse(x)
        return cls.const(x)

    @classmethod
    def parse(cls, text, var="z"):
        from .parsing import parse_ratfunc
        return parse_ratfunc(text, var)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_poly(self):
        return self.den.degree == 0

    def is_constant(self):
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def __add__(self, o):
        if not isinstance(o, RatFunc):
            try:
                o = RatFunc.coerce(o)
            except TypeError:
                return NotImplemented
        if self.den == o.den:
            if self.den.degree == 0:
                return RatFunc._raw(self.num + o.num, self.den)
            return RatFunc(self.num + o.num, self.den)
        if o.den.degree == 0:
            return RatFunc._raw(self.num + o.num * self.den, self.den)
        if self.den.degree == 0:
            return RatFunc._raw(self.num * o.den + o.num, o.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, o):
        if not isinstance(o, RatFunc):
            try:
                o = RatFunc.coerce(o)
            except TypeError:
                return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (Scalar, int)):
            o = Scalar.coerce(o)
            if not o:
                return _RZERO
            return RatFunc._raw(self.num * o, self.den)
        if not isinstance(o, RatFunc):
            try:
                o = RatFunc.coerce(o)
            except TypeError:
                return NotImplemented
        if not self.num or not o.num:
            return _RZERO
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc._raw(self.num * o.num, self.den)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("RatFunc division by zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o):
        if isinstance(o, (Scalar, int)):
            return self * Scalar.coerce(o).inverse()
        if not isinstance(o, RatFunc):
            try:
                o = RatFunc.coerce(o)
            except TypeError:
                return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return RatFunc.coerce(o) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def derivative(self):
        if self.den.degree == 0:
            return RatFunc._raw(self.num.derivative(), self.den)
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def valuation(self, p) -> int:
        """Order at p: positive for zeros, negative for poles. Large sentinel for zero."""
        if not self.num:
            return 10 ** 9
        return self.num.root_multiplicity(p) - self.den.root_multiplicity(p)

    def pole_order(self, p) -> int:
        return max(0, -self.valuation(p))

    def is_regular_at(self, p) -> bool:
        return bool(self.den(p))

    def __call__(self, p):
        p = Scalar.coerce(p)
        d = self.den(p)
        if not d:
            raise PoleAtPoint(f"{self} has a pole at {p}")
        return self.num(p) / d

    def compose(self, g: "RatFunc") -> "RatFunc":
        """self(g(z))."""
        g = RatFunc.coerce(g)
        out_n, out_d = _RZERO, _RZERO
        for a in reversed(self.num.coeffs):
            out_n = out_n * g + RatFunc.const(a)
        for a in reversed(self.den.coeffs):
            out_d = out_d * g + RatFunc.const(a)
        return out_n / out_d

    def poles_within(self, points) -> bool:
        """True iff every root of the denominator lies in `points`."""
        d = self.den
        for p in points:
            while d.degree > 0 and not d(p):
                d = d // Poly.linear_root(p)
        return d.degree == 0

    def __eq__(self, o):
        if isinstance(o, RatFunc):
            return self.num == o.num and self.den == o.den
        try:
            o = RatFunc.coerce(o)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.format()})"

    def __str__(self):
        return self.format()

    def format(self, var="z") -> str:
        if self.den.degree == 0:
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"


_RZERO = RatFunc._raw(Poly.zero(), Poly.one())
_RONE = RatFunc._raw(Poly.one(), Poly.one())


def _rational_sqrt(q):
    from math import isqrt
    from fractions import Fraction as Fr
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fr(rn, rd)
    return None


def gaussian_sqrt(c: Scalar):
    """A square root of c in Q(i), or None."""
    a, b = c.re, c.im
    if not b:
        r = _rational_sqrt(a)
        if r is not None:
            return Scalar(r)
        r = _rational_sqrt(-a)
        return Scalar(0, r) if r is not None else None
    m = _rational_sqrt(a * a + b * b)
    if m is None:
        return None
    x = _rational_sqrt((a + m) / 2)
    if x is None or not x:
        return None
    return Scalar(x, b / (2 * x))


def split_roots(p: Poly):
    """Roots of p in Q(i) with multiplicity, or None if p does not split there.

    Rational roots are peeled off first; a remaining quadratic is solved directly.
    """
    from fractions import Fraction as Fr
    from math import gcd, isqrt

    def divisors(n):
        n = abs(n)
        out = set()
        for d in range(1, isqrt(n) + 1):
            if n % d == 0:
                out.update((d, n // d))
        return out

    roots = []
    q = p.monic()
    while q.degree > 0:
        if not q.coeff(0):
            roots.append(ZERO)
            q = q // Poly.z()
            continue
        if q.degree == 1:
            roots.append(-q.coeff(0))
            break
        if q.degree == 2:
            c, b = q.coeff(0), q.coeff(1)
            s = gaussian_sqrt(b * b - c * 4)
            if s is None:
                return None
            roots += [(-b + s) / 2, (-b - s) / 2]
            break
        if any(c.im for c in q.coeffs):
            return None
        den = 1
        for c in q.coeffs:
            den = den * c.re.denominator // gcd(den, c.re.denominator)
        ints = [int(c.re * den) for c in q.coeffs]
        found = None
        for a in sorted(divisors(ints[0])):
            for b in sorted(divisors(ints[-1])):
                for cand in (Fr(a, b), Fr(-a, b)):
                    if not q(cand):
                        found = Scalar(cand)
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        q = q // Poly.linear_root(found)
    return roots
