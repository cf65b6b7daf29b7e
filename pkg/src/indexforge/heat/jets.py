"""Truncated polynomial jets in normal coordinates and their Taylor recursions.

Curvature components follow the normalisation in which the radial-gauge
connection of a uniform field ``F`` reads ``Gamma_k = sum_l x^l K_{lk}`` with
``K = F / 2``; likewise ``R^i_{klj}`` carries half the Riemann tensor, with
the sign fixed so the round sphere has ``sum_{kl} R^i_{klj} x^k x^l =
(1/2)(|x|^2 delta_ij - x_i x_j)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from math import factorial
from numbers import Rational
from typing import Mapping, Sequence

__all__ = [
    "GaussianRational",
    "JetPoly",
    "FrameCurvature",
    "constant_curvature",
    "round_sphere",
    "taylor_A_inverse",
    "metric_jet",
    "taylor_connection",
    "uniform_field",
    "sphere_metric_jet",
    "radial_gauge",
]


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = other.re**2 + other.im**2
        if not d:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(other.re / d, -other.im / d)

    def __pow__(self, k: int):
        out = GaussianRational(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"{self.re}+{self.im}*i" if self.im > 0 else f"{self.re}-{-self.im}*i"


I = GaussianRational(0, 1)


def _add_index(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class JetPoly:
    """Polynomial in ``x_1..x_n`` truncated at total degree ``order``.

    Coefficients are exact scalars (``Fraction`` or :class:`GaussianRational`);
    arithmetic drops every monomial of degree above the smaller truncation.
    """

    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars: int, order: int, coeffs: Mapping[tuple, object] | None = None):
        if nvars < 1 or order < 0:
            raise ValueError("JetPoly needs nvars >= 1 and order >= 0")
        self.nvars = nvars
        self.order = order
        clean = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars or min(alpha) < 0:
                raise ValueError(f"bad multi-index {alpha} for {nvars} variables")
            if sum(alpha) <= order and c:
                clean[alpha] = clean.get(alpha, 0) + c
        self.coeffs = {a: c for a, c in clean.items() if c}

    # constructors
    @classmethod
    def zero(cls, nvars, order):
        return cls(nvars, order)

    @classmethod
    def constant(cls, value, nvars, order):
        return cls(nvars, order, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, alpha: Sequence[int], nvars, order, value=1):
        return cls(nvars, order, {tuple(alpha): Fraction(value) if isinstance(value, int) else value})

    @classmethod
    def variable(cls, i: int, nvars, order):
        alpha = [0] * nvars
        alpha[i] = 1
        return cls(nvars, order, {tuple(alpha): Fraction(1)})

    # structure
    def _like(self, coeffs, order=None):
        return JetPoly(self.nvars, self.order if order is None else order, coeffs)

    def _check(self, other):
        if isinstance(other, JetPoly) and other.nvars != self.nvars:
            raise ValueError("jets in different numbers of variables")

    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=-1)

    def homogeneous(self, d: int) -> "JetPoly":
        return self._like({a: c for a, c in self.coeffs.items() if sum(a) == d})

    def truncate(self, order: int) -> "JetPoly":
        return self._like(self.coeffs, min(order, self.order))

    def with_order(self, order: int) -> "JetPoly":
        """Same coefficients with a new truncation (raising it is allowed)."""
        return self._like(self.coeffs, order)

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, JetPoly):
            return self + JetPoly.constant(other, self.nvars, self.order)
        self._check(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0) + c
        return self._like(out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return self._like({a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, JetPoly):
            return self._like({a: c * other for a, c in self.coeffs.items()})
        self._check(other)
        order = min(self.order, other.order)
        out: dict = {}
        for a, c in self.coeffs.items():
            da = sum(a)
            for b, d in other.coeffs.items():
                if da + sum(b) <= order:
                    key = _add_index(a, b)
                    out[key] = out.get(key, 0) + c * d
        return self._like(out, order)

    __rmul__ = __mul__

    def diff(self, i: int) -> "JetPoly":
        """``d/dx_i``; the truncation order drops by one."""
        out = {}
        for a, c in self.coeffs.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                out[tuple(b)] = c * a[i]
        return self._like(out, max(self.order - 1, 0))

    def derivative(self, alpha: Sequence[int]) -> "JetPoly":
        out = self
        for i, k in enumerate(alpha):
            for _ in range(k):
                out = out.diff(i)
        return out

    def laplacian(self) -> "JetPoly":
        out = JetPoly.zero(self.nvars, max(self.order - 2, 0))
        for i in range(self.nvars):
            out = out + self.diff(i).diff(i)
        return out

    def __call__(self, point: Sequence[float]) -> complex:
        total = 0
        for a, c in self.coeffs.items():
            term = complex(c) if isinstance(c, GaussianRational) else float(c)
            for x, k in zip(point, a):
                term *= x**k
            total += term
        return total

    def __eq__(self, other):
        if isinstance(other, JetPoly):
            return self.nvars == other.nvars and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __repr__(self):
        return f"JetPoly(nvars={self.nvars}, order={self.order}, {self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for a in sorted(self.coeffs, key=lambda a: (sum(a), tuple(-k for k in a))):
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(a) if k)
            parts.append(f"({self.coeffs[a]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _matrix(n, order, fill=None):
    return [[fill(i, j) if fill else JetPoly.zero(n, order) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Riemannian jets

class FrameCurvature:
    """Curvature whose frame components ``R^i_{klb}`` are constant.

    The recursion for ``A^{-1}`` needs ``R^i_{klj}`` with ``j`` a coordinate
    slot; those jets are ``sum_b R^i_{klb} (A^{-1})^b_j``, so they are built
    on the fly from the lower orders of the same recursion.
    """

    def __init__(self, components: Mapping[tuple, Fraction], n: int):
        self.n = n
        self.components = {tuple(k): Fraction(v) for k, v in components.items() if v}
        for key in self.components:
            if len(key) != 4 or not all(0 <= i < n for i in key):
                raise ValueError(f"bad curvature index {key} for dimension {n}")

    def get(self, i, k, l, b) -> Fraction:
        return self.components.get((i, k, l, b), Fraction(0))


def constant_curvature(n: int, K=1) -> FrameCurvature:
    """Space form of sectional curvature ``K`` in the normalisation above."""
    K = Fraction(K)
    comps = {}
    for i, k, l, j in _cartesian(range(n), repeat=4):
        v = K / 2 * ((i == j) * (k == l) - (i == l) * (k == j))
        if v:
            comps[(i, k, l, j)] = v
    return FrameCurvature(comps, n)


def round_sphere(n: int = 2) -> FrameCurvature:
    return constant_curvature(n, 1)


def _contract_xx(R_jet, n, order):
    """``sum_{k,l} x^k x^l R^i_{klj}`` as an ``n x n`` jet matrix."""
    xs = [JetPoly.variable(k, n, order) for k in range(n)]
    out = _matrix(n, order)
    for i in range(n):
        for j in range(n):
            acc = JetPoly.zero(n, order)
            for k in range(n):
                for l in range(n):
                    r = R_jet(i, k, l, j)
                    if not r.is_zero():
                        acc = acc + xs[k] * xs[l] * r
            out[i][j] = acc
    return out


def taylor_A_inverse(R_jets, order: int, n: int | None = None):
    """Taylor expansion of ``A^{-1}`` in a normal trivialization.

    Parameters
    ----------
    R_jets : FrameCurvature or mapping
        Either frame-constant curvature, or explicit jets
        ``{(i, k, l, j): JetPoly}`` of ``R^i_{klj}`` valid to degree
        ``order - 2``.
    order : int
        Truncation degree of the result.

    Returns
    -------
    list of list of JetPoly
        ``T[i][j]`` with ``T[0] = delta``, ``T[1] = 0`` and
        ``(d^2 + d) T[d] = -2 sum_{kl} x^k x^l R^i_{klj}[d - 2]``.

    Raises
    ------
    ValueError
        If explicit jets are given to a lower order than ``order - 2``.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if isinstance(R_jets, FrameCurvature):
        n = R_jets.n
    else:
        if n is None:
            n = 1 + max((max(key) for key in R_jets), default=0)
        short = [key for key, jet in R_jets.items() if jet.order < order - 2]
        if short:
            raise ValueError(f"curvature jets known to degree {min(R_jets[k].order for k in short)}, "
                             f"but order {order} needs degree {order - 2}")
    T = _matrix(n, order, lambda i, j: JetPoly.constant(Fraction(int(i == j)), n, order))
    zero = JetPoly.zero(n, order)
    for d in range(2, order + 1):
        if isinstance(R_jets, FrameCurvature):
            lower = [[T[b][j].homogeneous(d - 2) for j in range(n)] for b in range(n)]

            def R_jet(i, k, l, j, lower=lower):
                acc = zero
                for b in range(n):
                    c = R_jets.get(i, k, l, b)
                    if c:
                        acc = acc + lower[b][j] * c
                return acc
        else:
            def R_jet(i, k, l, j, d=d):
                jet = R_jets.get((i, k, l, j))
                return jet.with_order(order).homogeneous(d - 2) if jet is not None else zero
        xx = _contract_xx(R_jet, n, order)
        scale = Fraction(-2, d * d + d)
        for i in range(n):
            for j in range(n):
                T[i][j] = T[i][j] + xx[i][j] * scale
    return T


def metric_jet(A_inv) -> list[list[JetPoly]]:
    """``g_ij = sum_k (A^{-1})^k_i (A^{-1})^k_j``."""
    n = len(A_inv)
    return [[sum((A_inv[k][i] * A_inv[k][j] for k in range(1, n)), A_inv[0][i] * A_inv[0][j])
             for j in range(n)] for i in range(n)]


def sphere_metric_jet(n: int, order: int) -> list[list[JetPoly]]:
    """Round-sphere metric in normal coordinates from ``sin^2 r / r^2``.

    ``g = delta + (sin^2 r / r^2 - 1)(delta - x x^T / r^2)``, expanded as a
    series in ``r^2`` (an independent closed form for testing).
    """
    # sin^2 r / r^2 = sum_m (-1)^m 2^{2m+1} r^{2m} / (2m+2)!
    def s(m):
        return Fraction((-1) ** m * 2 ** (2 * m + 1), factorial(2 * m + 2))

    xs = [JetPoly.variable(k, n, order + 2) for k in range(n)]
    r2 = sum((x * x for x in xs), JetPoly.zero(n, order + 2))
    out = _matrix(n, order, lambda i, j: JetPoly.constant(Fraction(int(i == j)), n, order))
    power = JetPoly.constant(Fraction(1), n, order + 2)  # r^{2(m-1)}
    for m in range(1, order // 2 + 1):
        # (sin^2 r/r^2 - 1) (r^2 delta - x x^T) / r^2: coefficient s(m) r^{2m-2}
        for i in range(n):
            for j in range(n):
                proj = r2 * Fraction(int(i == j)) - xs[i] * xs[j]
                out[i][j] = out[i][j] + (power * proj * s(m)).truncate(order)
        power = power * r2
    return out


# ---------------------------------------------------------------------------
# connection jets

def taylor_connection(K_jets: Mapping[tuple, JetPoly], order: int, n: int | None = None) -> list[JetPoly]:
    """Taylor expansion of an abelian connection form in a normal trivialization.

    Parameters
    ----------
    K_jets : mapping
        ``{(l, k): JetPoly}``, jets of the curvature ``K_{lk}`` valid to
        degree ``order - 1`` (missing pairs are zero).
    order : int
        Truncation degree of the result.

    Returns
    -------
    list of JetPoly
        ``Gamma_k`` with ``Gamma[0] = 0`` and
        ``(d + 1) Gamma_k[d] = 2 sum_l x^l K_{lk}[d - 1]``.
    """
    if n is None:
        n = 1 + max((max(key) for key in K_jets), default=0)
    short = [key for key, jet in K_jets.items() if jet.order < order - 1]
    if short:
        raise ValueError(f"connection curvature jets known to degree {min(K_jets[k].order for k in short)}, "
                         f"but order {order} needs degree {order - 1}")
    xs = [JetPoly.variable(l, n, order) for l in range(n)]
    gamma = [JetPoly.zero(n, order) for _ in range(n)]
    for d in range(1, order + 1):
        for k in range(n):
            acc = JetPoly.zero(n, order)
            for l in range(n):
                jet = K_jets.get((l, k))
                if jet is not None:
                    acc = acc + xs[l] * jet.with_order(order).homogeneous(d - 1)
            gamma[k] = gamma[k] + acc * Fraction(2, d + 1)
    return gamma


def uniform_field(B, order: int, n: int = 2) -> dict:
    """Curvature jets of a uniform field ``F_{12} = B`` (so ``K_{12} = B/2``)."""
    B = Fraction(B)
    return {(0, 1): JetPoly.constant(B / 2, n, order), (1, 0): JetPoly.constant(-B / 2, n, order)}


def radial_gauge(F: Mapping[tuple, JetPoly], order: int, n: int) -> list[JetPoly]:
    """``A_k(x) = int_0^1 t x^l F_{lk}(t x) dt`` term by term (the radial-gauge oracle)."""
    xs = [JetPoly.variable(l, n, order) for l in range(n)]
    out = [JetPoly.zero(n, order) for _ in range(n)]
    for (l, k), jet in F.items():
        for alpha, c in jet.coeffs.items():
            d = sum(alpha)
            # int_0^1 t^{1+d} dt = 1/(d+2)
            mono = JetPoly.monomial(alpha, n, order, c)
            out[k] = out[k] + xs[l] * mono * Fraction(1, d + 2)
    return out

