"""Truncated formal power series over exact coefficient rings.

Coefficients may be Fraction, LambdaPoly or LambdaRat (mixed freely; the
integer 0 stands for the zero of whatever ring the neighbours live in).
A series carries an explicit truncation order: it is known modulo s^(order+1).
"""

from __future__ import annotations

from fractions import Fraction

from .lambda_algebra import falling, pochhammer


class FormalSeries:
    """Power series sum_k c_k s^k known through s^order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        coeffs = coeffs[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    @staticmethod
    def zero(order):
        return FormalSeries([], order)

    @staticmethod
    def one(order):
        return FormalSeries([Fraction(1)], order)

    @staticmethod
    def x(order):
        return FormalSeries([0, Fraction(1)], order)

    def __getitem__(self, k):
        if k < 0:
            raise IndexError("negative series index")
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def valuation(self):
        """Index of first nonzero known coefficient, None if all vanish."""
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return k
        return None

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend truncation order {self.order} to {order}")
        return FormalSeries(self.coeffs[: order + 1], order)

    def __add__(self, other):
        other = _as_series(other, self.order)
        n = min(self.order, other.order)
        return FormalSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = _as_series(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FormalSeries):
            n = min(self.order, other.order)
            out = [0] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if _is_zero(a):
                    continue
                for j in range(0, n + 1 - i):
                    b = other.coeffs[j]
                    if not _is_zero(b):
                        out[i + j] = out[i + j] + a * b
            return FormalSeries(out, n)
        # scalar
        return FormalSeries([c * other for c in self.coeffs], self.order)

    def __rmul__(self, other):
        return self * other

    def shift(self, k):
        """Multiply by s^k."""
        if k < 0:
            raise ValueError("shift exponent must be nonnegative")
        return FormalSeries([0] * k + self.coeffs, self.order + k)

    def compose(self, inner):
        """Substitute s -> inner(s); inner must have valuation >= 1."""
        if not isinstance(inner, FormalSeries):
            raise TypeError("composition target must be a FormalSeries")
        v = inner.valuation()
        if v is not None and v == 0:
            raise ValueError("composition requires a series of valuation >= 1")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = FormalSeries.zero(n)
        for c in reversed(self.coeffs[: n + 1]):
            acc = acc * inner + _promote(c, n)
        return acc

    def compose_monomial(self, k):
        """Substitute s -> s^k for integer k >= 1."""
        if not isinstance(k, int) or k < 1:
            raise ValueError("monomial exponent must be a positive integer")
        n = k * (self.order + 1) - 1
        out = [0] * (n + 1)
        for j, c in enumerate(self.coeffs):
            out[k * j] = c
        return FormalSeries(out, n)

    def inverse(self):
        """Multiplicative inverse; constant term must be invertible (nonzero)."""
        c0 = self.coeffs[0]
        if _is_zero(c0):
            raise ZeroDivisionError("cannot invert a series with zero constant term")
        n = self.order
        inv0 = _invert(c0)
        out = [inv0] + [0] * n
        for k in range(1, n + 1):
            s = 0
            for j in range(1, k + 1):
                a = self.coeffs[j]
                if not _is_zero(a):
                    s = s + a * out[k - j]
            out[k] = -inv0 * s if not _is_zero(s) else 0
        return FormalSeries(out, n)

    def __truediv__(self, other):
        if isinstance(other, FormalSeries):
            return self * other.inverse()
        return FormalSeries([c / other for c in self.coeffs], self.order)

    def agrees_with(self, other, through=None) -> bool:
        """Coefficientwise equality through the given order (default: min)."""
        if through is None:
            through = min(self.order, other.order)
        if through > min(self.order, other.order):
            raise ValueError("comparison order exceeds a truncation order")
        for k in range(through + 1):
            if not _eq(self.coeffs[k], other.coeffs[k]):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.order == other.order and self.agrees_with(other, self.order)

    def __repr__(self):
        head = ", ".join(repr(c) for c in self.coeffs[:4])
        tail = ", ..." if self.order >= 4 else ""
        return f"FormalSeries([{head}{tail}], order={self.order})"


def _is_zero(c):
    return c == 0 if not isinstance(c, (int, Fraction)) else c == 0


def _eq(a, b):
    if _is_zero(a) and _is_zero(b):
        return True
    return a == b


def _invert(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(1) / c
    return 1 / c  # LambdaPoly/LambdaRat support rtruediv


def _promote(c, order):
    s = FormalSeries.zero(order)
    s.coeffs[0] = c
    return s


def _as_series(x, order):
    if isinstance(x, FormalSeries):
        return x
    return _promote(x, order)


def geometric(ratio_coeff, order):
    """1/(1 - c s) through the given order."""
    out = [Fraction(1)]
    for _ in range(order):
        out.append(out[-1] * ratio_coeff)
    return FormalSeries(out, order)


def binomial_series(alpha, order):
    """(1 + s)^alpha; alpha may be a Fraction or a LambdaPoly."""
    out = []
    for k in range(order + 1):
        out.append(falling(alpha, k) / pochhammer(Fraction(1), k))
    return FormalSeries(out, order)
