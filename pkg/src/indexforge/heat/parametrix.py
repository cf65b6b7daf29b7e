"""Parametrix symbol recursion and heat coefficients for scalar Laplace-type operators.

The model operator has symbol ``|xi|^2 + a_1(x, xi) + a_0(x)`` with
``a_1 = sum_i c_i(x) xi_i``.  Every parametrix term is a finite sum
``P(x, xi) * r^{1+j}`` with ``r = (|xi|^2 - lambda)^{-1}``; the contour
integral is replaced by its residue and the ``xi`` integral by Gaussian
moments, so each ``Phi_k(0)`` comes out as an exact (Gaussian) rational
multiple of ``(4 pi)^{-n/2}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, pi
from typing import Sequence

from .jets import GaussianRational, JetPoly

__all__ = [
    "SymbolTerm",
    "HeatCoefficient",
    "ModelOperator",
    "free_laplacian",
    "schrodinger",
    "magnetic_laplacian",
    "parametrix_recursion",
    "heat_coefficients",
    "gaussian_moment",
]

_NEG_I = GaussianRational(0, -1)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _multi_indices(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _multi_indices(n - 1, total - first):
            yield (first,) + rest


def _factorial_multi(alpha) -> int:
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


@dataclass(frozen=True)
class SymbolTerm:
    """``P(x, xi) * (|xi|^2 - lambda)^{-1-pole}``.

    ``poly`` maps ``(x-multi-index, xi-multi-index)`` to an exact coefficient.
    """

    pole: int
    poly: dict

    @property
    def xi_degree(self) -> int:
        return max((sum(b) for _, b in self.poly), default=0)

    @property
    def x_degree(self) -> int:
        return max((sum(a) for a, _ in self.poly), default=0)

    def at_origin(self) -> dict:
        """The ``xi``-polynomial ``P(0, xi)``."""
        return {b: c for (a, b), c in self.poly.items() if not any(a)}

    def __str__(self):
        return f"[{len(self.poly)} monomials] * r^{self.pole + 1}"


class _Symbol:
    """Mutable accumulator ``{(pole, x-index, xi-index): coefficient}``."""

    def __init__(self, n: int, x_order: int):
        self.n = n
        self.x_order = x_order
        self.data: dict = {}

    def add(self, pole, a, b, c):
        if not c or sum(a) > self.x_order:
            return
        key = (pole, a, b)
        v = self.data.get(key, 0) + c
        if v:
            self.data[key] = v
        else:
            self.data.pop(key, None)

    def items(self):
        return self.data.items()

    def terms(self) -> list[SymbolTerm]:
        by_pole: dict = {}
        for (pole, a, b), c in self.data.items():
            by_pole.setdefault(pole, {})[(a, b)] = c
        return [SymbolTerm(p, by_pole[p]) for p in sorted(by_pole)]

    def xi_derivative(self, i: int) -> "_Symbol":
        """``d/dxi_i`` using ``d r^m / dxi_i = -2 m xi_i r^{m+1}``."""
        out = _Symbol(self.n, self.x_order)
        unit = tuple(int(k == i) for k in range(self.n))
        for (pole, a, b), c in self.data.items():
            if b[i]:
                lower = list(b)
                lower[i] -= 1
                out.add(pole, a, tuple(lower), c * b[i])
            out.add(pole + 1, a, _add(b, unit), c * (-2 * (pole + 1)))
        return out

    def times_poly(self, poly: dict) -> "_Symbol":
        """Multiply by an ``r``-free polynomial ``{(a, b): c}``."""
        out = _Symbol(self.n, self.x_order)
        for (pole, a, b), c in self.data.items():
            for (a2, b2), c2 in poly.items():
                out.add(pole, _add(a, a2), _add(b, b2), c * c2)
        return out

    def shift_pole(self, by: int = 1) -> "_Symbol":
        out = _Symbol(self.n, self.x_order)
        out.data = {(p + by, a, b): c for (p, a, b), c in self.data.items()}
        return out

    def __iadd__(self, other: "_Symbol"):
        for (p, a, b), c in other.items():
            self.add(p, a, b, c)
        return self

    def scale(self, s) -> "_Symbol":
        out = _Symbol(self.n, self.x_order)
        for (p, a, b), c in self.data.items():
            out.add(p, a, b, c * s)
        return out


@dataclass(frozen=True)
class ModelOperator:
    """A scalar operator ``sum_i D_i^2 + sum_i c_i(x) D_i + a_0(x)``, ``D = -i d/dx``.

    ``a1`` holds the jets ``c_i``; ``a0`` the potential jet (either may be
    ``None``).
    """

    n: int
    a1: tuple | None = None
    a0: JetPoly | None = None
    label: str = "operator"

    def symbol(self, l: int, order: int) -> dict:
        """``a_{2-l}`` as ``{(x-index, xi-index): coefficient}`` truncated in ``x``."""
        n = self.n
        zero = (0,) * n
        if l == 0:
            return {(zero, tuple(2 * int(k == i) for k in range(n))): Fraction(1) for i in range(n)}
        if l == 1:
            out = {}
            for i, jet in enumerate(self.a1 or ()):
                unit = tuple(int(k == i) for k in range(n))
                for a, c in jet.with_order(order).coeffs.items():
                    out[(a, unit)] = c
            return out
        if l == 2:
            if self.a0 is None:
                return {}
            return {(a, zero): c for a, c in self.a0.with_order(order).coeffs.items()}
        return {}


def free_laplacian(n: int) -> ModelOperator:
    return ModelOperator(n, label="free")


def schrodinger(V: JetPoly | int | Fraction, n: int | None = None, order: int = 4) -> ModelOperator:
    """``-Delta + V``."""
    if not isinstance(V, JetPoly):
        if n is None:
            raise ValueError("a constant potential needs the dimension n")
        V = JetPoly.constant(Fraction(V), n, order)
    return ModelOperator(V.nvars, None, V, label="potential")


def magnetic_laplacian(A: Sequence[JetPoly]) -> ModelOperator:
    """``sum_i (D_i + A_i)^2`` for a real potential ``A``.

    Expands to ``|D|^2 + 2 A_i D_i + (sum_i A_i^2 - i div A)``.
    """
    n = len(A)
    order = min(a.order for a in A)
    a1 = tuple(a * 2 for a in A)
    a0 = JetPoly.zero(n, order)
    for i, a in enumerate(A):
        a0 = a0 + a * a + a.diff(i).with_order(order) * _NEG_I
    return ModelOperator(n, a1, a0, label="magnetic")


def parametrix_recursion(op: ModelOperator, k_max: int) -> list[list[SymbolTerm]]:
    """Symbols ``b_{-2-k}``, ``k = 0..k_max``, of the parametrix of ``op - lambda``.

    ``b_{-2} = r`` and ``b_{-2-k} = -(sum 1/alpha! d_xi^alpha b_{-2-j} D_x^alpha a_{2-l}) r``
    over ``|alpha| + j + l = k``, ``j < k``.
    """
    n = op.n
    order = k_max
    # D_x^alpha a_{2-l}, cached
    dsym: dict = {}

    def d_symbol(alpha, l):
        key = (alpha, l)
        if key not in dsym:
            base = op.symbol(l, order)
            out = {}
            for (a, b), c in base.items():
                if all(x >= y for x, y in zip(a, alpha)):
                    coeff = c
                    for x, y in zip(a, alpha):
                        for t in range(y):
                            coeff = coeff * (x - t)
                    coeff = coeff * _NEG_I ** sum(alpha) if sum(alpha) else coeff
                    out[(tuple(x - y for x, y in zip(a, alpha)), b)] = coeff
            dsym[key] = out
        return dsym[key]

    zero = (0,) * n
    b0 = _Symbol(n, order)
    b0.add(0, zero, zero, Fraction(1))
    bs = [b0]
    # xi-derivatives of each b_{-2-j}, keyed by alpha
    derivs: list[dict] = [{zero: b0}]

    def xi_deriv(j, alpha):
        table = derivs[j]
        if alpha not in table:
            i = next(k for k, v in enumerate(alpha) if v)
            lower = tuple(v - (k == i) for k, v in enumerate(alpha))
            table[alpha] = xi_deriv(j, lower).xi_derivative(i)
        return table[alpha]

    for k in range(1, k_max + 1):
        acc = _Symbol(n, order)
        for j in range(k):
            for l in range(0, 3):
                m = k - j - l
                if m < 0:
                    continue
                for alpha in _multi_indices(n, m):
                    poly = d_symbol(alpha, l)
                    if not poly:
                        continue
                    term = xi_deriv(j, alpha).times_poly(poly)
                    acc += term.scale(Fraction(1, _factorial_multi(alpha)))
        bk = acc.shift_pole(1).scale(-1)
        bs.append(bk)
        derivs.append({zero: bk})
    return [b.terms() for b in bs]


def gaussian_moment(beta: Sequence[int]) -> Fraction:
    """``int xi^beta e^{-|xi|^2} dxi / pi^{n/2}``; zero if any exponent is odd."""
    out = Fraction(1)
    for b in beta:
        if b % 2:
            return Fraction(0)
        # (b - 1)!! / 2^{b/2}
        dfact = 1
        for t in range(b - 1, 0, -2):
            dfact *= t
        out *= Fraction(dfact, 2 ** (b // 2))
    return out


@dataclass(frozen=True)
class HeatCoefficient:
    """``Phi_k(0) = value * (4 pi)^{-n/2}``.

    ``odd_moments`` counts ``xi``-monomials with an odd exponent; they
    integrate to zero and are reported rather than silently dropped.
    """

    k: int
    n: int
    value: GaussianRational
    odd_moments: int = 0

    @property
    def numeric(self) -> complex:
        return complex(self.value) * (4 * pi) ** (-self.n / 2)

    def __str__(self):
        return f"Phi_{self.k} = ({self.value}) * (4 pi)^(-{self.n}/2)"


def heat_coefficients(terms: list[list[SymbolTerm]], n: int, k: int) -> HeatCoefficient:
    """``Phi_k(0) = (2 pi)^{-n} int dxi (1/2 pi i) oint_clockwise e^{-lambda} b_{-2-k}(0, xi, lambda) dlambda``.

    The clockwise residue of ``e^{-lambda} (|xi|^2 - lambda)^{-1-j}`` is
    ``e^{-|xi|^2} / j!``, and ``(2 pi)^{-n} int xi^beta e^{-|xi|^2} dxi =
    (4 pi)^{-n/2} * gaussian_moment(beta)``.
    """
    if not 0 <= k < len(terms):
        raise ValueError(f"parametrix terms available for k = 0..{len(terms) - 1}, requested {k}")
    total = GaussianRational(0)
    odd = 0
    for term in terms[k]:
        for beta, c in term.at_origin().items():
            if len(beta) != n:
                raise ValueError(f"symbol lives in {len(beta)} variables, not {n}")
            if any(b % 2 for b in beta):
                odd += 1
                continue
            total = total + GaussianRational(c) * (gaussian_moment(beta) / factorial(term.pole))
    return HeatCoefficient(k, n, total, odd)
