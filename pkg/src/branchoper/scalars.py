"""Gaussian rationals: exact complex numbers re + im*i with rational parts."""

from __future__ import annotations

from fractions import Fraction


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def zero(cls):
        return ZERO

    @classmethod
    def one(cls):
        return ONE

    # arithmetic
    def __add__(self, o):
        if not isinstance(o, Scalar):
            if isinstance(o, (int, Fraction)):
                return Scalar(self.re + o, self.im)
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, o):
        if not isinstance(o, Scalar):
            if isinstance(o, (int, Fraction)):
                return Scalar(self.re - o, self.im)
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Scalar):
            if isinstance(o, (int, Fraction)):
                return Scalar(self.re * o, self.im * o)
            return NotImplemented
        if not self.im and not o.im:
            return Scalar(self.re * o.re)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, o):
        if not isinstance(o, Scalar):
            if isinstance(o, (int, Fraction)):
                if o == 0:
                    raise ZeroDivisionError("Scalar division by zero")
                return Scalar(self.re / o, self.im / o)
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return Scalar.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self):
        return Scalar(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not self

    def is_integer(self):
        return not self.im and self.re.denominator == 1

    def __eq__(self, o):
        if isinstance(o, Scalar):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return not self.im and self.re == o
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        """Canonical text "a/b+c/d*i" with zero parts dropped."""
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}*i"
        if not re:
            return ims
        if ims.startswith("-"):
            return f"{re}{ims}"
        return f"{re}+{ims}"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        from .parsing import parse_scalar
        return parse_scalar(text)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def S(x) -> Scalar:
    """Shorthand coercion."""
    return Scalar.coerce(x)
