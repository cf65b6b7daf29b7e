"""Truncated univariate power series with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from math import factorial

Rational = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PowerSeries:
    """``c_0 + c_1 x + ... + c_N x^N`` with everything above ``x^N`` dropped.

    Parameters
    ----------
    coeffs : sequence of rationals
        Coefficients from the constant term upward.
    order : int, optional
        Truncation order ``N``.  Defaults to ``len(coeffs) - 1``; missing
        coefficients are zero.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [_q(c) for c in coeffs]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[: order + 1] + [Fraction(0)] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.order = order

    # construction -----------------------------------------------------------
    @classmethod
    def constant(cls, c, order: int) -> "PowerSeries":
        return cls([c], order)

    @classmethod
    def exp(cls, a, order: int) -> "PowerSeries":
        """``exp(a x)``."""
        a = _q(a)
        return cls([a**k / factorial(k) for k in range(order + 1)], order)

    @classmethod
    def sinh(cls, a, order: int) -> "PowerSeries":
        a = _q(a)
        return cls([a**k / factorial(k) if k % 2 else 0 for k in range(order + 1)], order)

    @classmethod
    def cosh(cls, a, order: int) -> "PowerSeries":
        a = _q(a)
        return cls([0 if k % 2 else a**k / factorial(k) for k in range(order + 1)], order)

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = _q(other)
            return PowerSeries([c * a for a in self.coeffs], self.order)
        order = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            if a[i]:
                for j in range(order + 1 - i):
                    out[i + j] += a[i] * b[j]
        return PowerSeries(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.inverse()
        return self * (1 / _q(other))

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coeffs]})"

    def inverse(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / a[0]]
        for k in range(1, self.order + 1):
            s = sum(a[i] * out[k - i] for i in range(1, k + 1))
            out.append(-s / a[0])
        return PowerSeries(out, self.order)

    def log(self) -> "PowerSeries":
        """Logarithm of a series with constant term 1."""
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log needs constant term 1")
        # f * (log f)' = f'
        out = [Fraction(0)] * (self.order + 1)
        for k in range(1, self.order + 1):
            s = k * a[k] - sum(j * out[j] * a[k - j] for j in range(1, k))
            out[k] = s / k
        return PowerSeries(out, self.order)

    def exponential(self) -> "PowerSeries":
        """``exp`` of a series with zero constant term."""
        a = self.coeffs
        if a[0] != 0:
            raise ValueError("exponential needs zero constant term")
        out = [Fraction(1)] + [Fraction(0)] * self.order
        for k in range(1, self.order + 1):
            out[k] = sum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k
        return PowerSeries(out, self.order)

    def scale(self, a) -> "PowerSeries":
        """``f(a x)``."""
        a = _q(a)
        return PowerSeries([c * a**k for k, c in enumerate(self.coeffs)], self.order)

    def shift_down(self, k: int = 1) -> "PowerSeries":
        """Divide by ``x^k``; the dropped low coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ValueError(f"series is not divisible by x^{k}")
        return PowerSeries(self.coeffs[k:], self.order - k)

    def is_even(self) -> bool:
        return not any(self.coeffs[1::2])

    def is_odd(self) -> bool:
        return not any(self.coeffs[0::2])

    def in_square(self) -> "PowerSeries":
        """For even ``g`` return ``h`` with ``h(x**2) = g(x)``."""
        if not self.is_even():
            raise ValueError("series has odd terms")
        return PowerSeries(self.coeffs[0::2], self.order // 2)

    def of_square(self) -> "PowerSeries":
        """``h(x**2)`` as a series in ``x``."""
        out = [Fraction(0)] * (2 * self.order + 1)
        out[0::2] = self.coeffs
        return PowerSeries(out, 2 * self.order)


def ahat_root_series(order: int) -> PowerSeries:
    """``(x/2) / sinh(x/2)`` in the root variable ``x``."""
    return (PowerSeries.sinh(Fraction(1, 2), order + 1).shift_down(1) * 2).inverse()


def l_root_series(order: int) -> PowerSeries:
    """``x / tanh(x)`` in the root variable ``x``."""
    cosh = PowerSeries.cosh(1, order + 1)
    sinh_over_x = PowerSeries.sinh(1, order + 1).shift_down(1)
    return PowerSeries(cosh.coeffs[: order + 1], order) * sinh_over_x.inverse()


def ahat_series(order: int) -> PowerSeries:
    """``(sqrt(y)/2) / sinh(sqrt(y)/2)`` in ``y = x^2``, through ``y**order``."""
    return ahat_root_series(2 * order).in_square()


def l_series(order: int) -> PowerSeries:
    """``sqrt(y) / tanh(sqrt(y))`` in ``y = x^2``, through ``y**order``."""
    return l_root_series(2 * order).in_square()
