"""Exact arithmetic in the spectral parameter lambda.

Everything here is exact: coefficients are fractions.Fraction, polynomial
division is exact division over Q, rational functions are kept gcd-reduced
with monic denominator so equality is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def _frac(x):
    # ints and Fractions only; floats are rejected to keep the core exact
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class LambdaPoly:
    """Polynomial in lambda with Fraction coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "LambdaPoly":
        return LambdaPoly([_frac(c)])

    @staticmethod
    def x() -> "LambdaPoly":
        """The polynomial lambda itself."""
        return LambdaPoly([0, 1])

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LambdaRat):
            return NotImplemented  # let LambdaRat handle mixed products
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return LambdaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = LambdaPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return LambdaPoly([a / c for a in self.coeffs])
        if isinstance(other, LambdaPoly):
            return LambdaRat(self, other)
        if isinstance(other, LambdaRat):
            return LambdaRat(self, LambdaPoly([1])) / other
        return NotImplemented

    def __rtruediv__(self, other):
        return LambdaRat(_as_poly(other), self)

    def divmod(self, other: "LambdaPoly"):
        """Exact polynomial long division, returns (quotient, remainder)."""
        if not isinstance(other, LambdaPoly):
            other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        q = [Fraction(0)] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lead
            q[i - d] = f
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] -= f * b
        return LambdaPoly(q), LambdaPoly(rem)

    def __call__(self, x):
        """Evaluate at a Fraction (exact) or float (Horner either way)."""
        acc = 0 if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (float(c) if isinstance(x, float) else c)
        return acc

    def derivative(self) -> "LambdaPoly":
        return LambdaPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, c) -> "LambdaPoly":
        """Precompose with lambda -> lambda + c, exactly."""
        c = _frac(c)
        # Horner in (lambda + c)
        out = LambdaPoly()
        lam_c = LambdaPoly([c, 1])
        for coef in reversed(self.coeffs):
            out = out * lam_c + coef
        return out

    def monic(self) -> "LambdaPoly":
        if self.is_zero():
            return self
        return self / self.leading()

    def __repr__(self):
        if self.is_zero():
            return "LambdaPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*L")
            else:
                parts.append(f"{c}*L^{i}")
        return "LambdaPoly(" + " + ".join(parts) + ")"


def _as_poly(x):
    if isinstance(x, LambdaPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LambdaPoly([x])
    return NotImplemented


def poly_gcd(a: LambdaPoly, b: LambdaPoly) -> LambdaPoly:
    """Monic gcd over Q by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


class LambdaRat:
    """Rational function in lambda, stored gcd-reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        if num is NotImplemented:
            raise TypeError("numerator must be a polynomial or rational number")
        if den is None:
            den = LambdaPoly([1])
        else:
            den = _as_poly(den)
            if den is NotImplemented:
                raise TypeError("denominator must be a polynomial or rational number")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = num / lead
            den = den / lead
        if num.is_zero():
            den = LambdaPoly([1])
        self.num = num
        self.den = den

    @staticmethod
    def const(c) -> "LambdaRat":
        return LambdaRat(LambdaPoly([c]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> LambdaPoly:
        if not self.is_polynomial():
            raise ValueError("rational function has a nontrivial denominator")
        return self.num / self.den.coeffs[0]

    def __eq__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return LambdaRat(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return LambdaRat(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return LambdaRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return LambdaRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("rational function powers must be integers")
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return LambdaRat(self.den, self.num) ** (-k)
        return LambdaRat(self.num ** k, self.den ** k)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"evaluation at pole lambda = {x}")
        return self.num(x) / d

    def derivative(self) -> "LambdaRat":
        return LambdaRat(self.num.derivative() * self.den - self.num * self.den.derivative(),
                         self.den * self.den)

    def shift(self, c) -> "LambdaRat":
        return LambdaRat(self.num.shift(c), self.den.shift(c))

    def __repr__(self):
        if self.is_polynomial():
            return f"LambdaRat({self.num!r})"
        return f"LambdaRat({self.num!r} / {self.den!r})"


def _as_rat(x):
    if isinstance(x, LambdaRat):
        return x
    if isinstance(x, (int, Fraction, LambdaPoly)):
        return LambdaRat(_as_poly(x))
    return NotImplemented


LAMBDA = LambdaPoly.x()


def pochhammer(x, m: int):
    """Rising factorial (x)_m = x (x+1) ... (x+m-1), with (x)_0 = 1.

    Works for Fraction, int, LambdaPoly and LambdaRat arguments; the result
    lives in the same ring as the input.
    """
    if not isinstance(m, int) or m < 0:
        raise ValueError("pochhammer index must be a nonnegative integer")
    if isinstance(x, int):
        x = Fraction(x)
    out = None
    for k in range(m):
        f = x + k
        out = f if out is None else out * f
    if out is None:
        if isinstance(x, LambdaPoly):
            return LambdaPoly([1])
        if isinstance(x, LambdaRat):
            return LambdaRat.const(1)
        return Fraction(1)
    return out


def falling(x, m: int):
    """Falling factorial x (x-1) ... (x-m+1)."""
    if not isinstance(m, int) or m < 0:
        raise ValueError("falling factorial index must be a nonnegative integer")
    if isinstance(x, int):
        x = Fraction(x)
    out = None
    for k in range(m):
        f = x - k
        out = f if out is None else out * f
    if out is None:
        return Fraction(1)
    return out


def binomial(n: int, k: int) -> Fraction:
    """Exact binomial coefficient, zero outside the usual range."""
    if k < 0 or k > n:
        return Fraction(0)
    return falling(Fraction(n), k) / pochhammer(Fraction(1), k)


def interpolate(points) -> LambdaPoly:
    """Exact Lagrange interpolation through (x_i, y_i) pairs of Fractions.

    Raises ValueError on duplicate abscissae. Degree of the result is at
    most len(points) - 1.
    """
    pts = [(_frac(x), _frac(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation data")
    total = LambdaPoly()
    for i, (xi, yi) in enumerate(pts):
        if yi == 0:
            continue
        basis = LambdaPoly([1])
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = basis * LambdaPoly([-xj, 1])
            denom *= (xi - xj)
        total = total + basis * (yi / denom)
    return total


def divides(a: LambdaPoly, b: LambdaPoly) -> bool:
    """True if polynomial a divides b exactly (a nonzero)."""
    if a.is_zero():
        return b.is_zero()
    return b.divmod(a)[1].is_zero()
