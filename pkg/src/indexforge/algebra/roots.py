"""Chern-root calculus: from symmetric expressions in roots to Pontryagin classes.

A rank-``2l`` real bundle splits formally with Chern roots ``+-x_1 .. +-x_l``.
Symmetric functions of ``y_j = x_j**2`` are polynomials in
``p_i = e_i(y_1, .., y_l)``; the product ``x_1 ... x_l`` is the Euler class.

Two independent conversion routes are provided:

* :func:`chern_root_expression`, through power sums and Newton's identities;
* :func:`expand_roots` followed by :meth:`RootPolynomial.to_graded`, through an
  explicit polynomial in the roots and leading-term elimination.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian
from math import comb

from .graded import GradedClass, Monomial
from .partitions import Partition
from .series import PowerSeries, ahat_root_series, ahat_series, l_root_series, l_series


# ---------------------------------------------------------------------------
# power sums and multiplicative sequences

def power_sums(n: int, kmax: int, max_degree: int | None = None) -> list[GradedClass]:
    """``s_k = sum_j y_j**k`` for ``k = 0..kmax`` in terms of the ``p_i``.

    ``s_0 = l``.  Uses Newton's identities with ``p_i = 0`` for ``i > l``.
    """
    l = n // 2
    s = [GradedClass.scalar(l, n, max_degree)]

    def p(i):
        return GradedClass.p(i, n, max_degree) if i <= l else GradedClass.zero(n, max_degree)

    for k in range(1, kmax + 1):
        acc = p(k) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + p(i) * s[k - i] * (-1) ** (i - 1)
        s.append(acc)
    return s


def _check_series(f: PowerSeries, order: int, what: str) -> None:
    if f.order < order:
        raise ValueError(f"{what}: series known to order {f.order}, need {order}")


def multiplicative_sequence(f: PowerSeries, n: int, max_degree: int | None = None) -> GradedClass:
    """The genus ``prod_j f(x_j**2)`` as a polynomial in Pontryagin classes.

    Parameters
    ----------
    f : PowerSeries
        Series in ``y = x**2`` with ``f(0) = 1``; must be known through
        ``y**(max_degree // 4)``.
    n : int
        Ambient dimension.
    max_degree : int, optional
        Truncation degree of the result (default ``n``).
    """
    if f[0] != 1:
        raise ValueError(f"multiplicative sequence needs f(0) = 1, got {f[0]}")
    cap = n if max_degree is None else max_degree
    kmax = cap // 4
    _check_series(f, kmax, "multiplicative_sequence")
    log_f = PowerSeries(f.coeffs[: kmax + 1], kmax).log()
    s = power_sums(n, kmax, cap)
    acc = GradedClass.zero(n, cap)
    for k in range(1, kmax + 1):
        if log_f[k]:
            acc = acc + s[k] * log_f[k]
    return acc.exp()


def ahat_class(n: int, max_degree: int | None = None) -> GradedClass:
    """The A-hat polynomial, ``-p1/24 + ...``."""
    cap = n if max_degree is None else max_degree
    return multiplicative_sequence(ahat_series(cap // 4), n, cap)


def l_class(n: int, max_degree: int | None = None) -> GradedClass:
    """Hirzebruch's L-polynomial, ``p1/3 + (7p2 - p1^2)/45 + ...``."""
    cap = n if max_degree is None else max_degree
    return multiplicative_sequence(l_series(cap // 4), n, cap)


# ---------------------------------------------------------------------------
# structured root expressions

def _series_for(f, order: int) -> PowerSeries:
    series = f(order) if callable(f) else f
    _check_series(series, order, "root expression")
    return series


class RootExpr:
    """A formal expression in the Chern roots ``x_1 .. x_l``.

    Build from :class:`RootConst`, :class:`RootSum` and :class:`RootProduct`
    with ``+`` and ``*`` (scalars are promoted to constants).
    """

    def __add__(self, other):
        return RootAdd((self, _promote(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return RootMul((self, _promote(other)))

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + _promote(other) * -1

    def __rsub__(self, other):
        return _promote(other) + self * -1


def _promote(x) -> RootExpr:
    return x if isinstance(x, RootExpr) else RootConst(Fraction(x))


class RootConst(RootExpr):
    def __init__(self, value):
        self.value = Fraction(value)

    def __repr__(self):
        return f"RootConst({self.value})"


class RootSum(RootExpr):
    """``sum_j f(x_j)``; ``f`` is a PowerSeries in ``x`` or ``order -> PowerSeries``."""

    def __init__(self, f, name: str = "f"):
        self.f = f
        self.name = name

    def __repr__(self):
        return f"RootSum({self.name})"


class RootProduct(RootExpr):
    """``prod_j f(x_j)``; ``f`` is a PowerSeries in ``x`` or ``order -> PowerSeries``."""

    def __init__(self, f, name: str = "f"):
        self.f = f
        self.name = name

    def __repr__(self):
        return f"RootProduct({self.name})"


class RootAdd(RootExpr):
    def __init__(self, args):
        self.args = tuple(args)


class RootMul(RootExpr):
    def __init__(self, args):
        self.args = tuple(args)


def _even_product(h: PowerSeries, n: int, cap: int) -> GradedClass:
    """``prod_j h(x_j)`` for even ``h`` with ``h(0) != 0``."""
    h0 = h[0]
    g = (h * (1 / h0)).in_square()
    return multiplicative_sequence(g, n, cap) * (h0 ** (n // 2))


def chern_root_expression(expr: RootExpr, n: int, max_degree: int | None = None) -> GradedClass:
    """Expand a root expression into the characteristic-class ring.

    Every :class:`RootSum` needs an even function.  Every
    :class:`RootProduct` needs either an even function with non-zero constant
    term, or ``x * h(x)`` with ``h`` such a function, giving one factor of the
    Euler class.  Anything else is not symmetric under sign flips of the
    roots (nor Euler-odd) and is rejected.
    """
    cap = n if max_degree is None else max_degree
    order = cap // 2  # each root has degree 2
    l = n // 2

    def ev(node: RootExpr) -> GradedClass:
        if isinstance(node, RootConst):
            return GradedClass.scalar(node.value, n, cap)
        if isinstance(node, RootAdd):
            out = GradedClass.zero(n, cap)
            for a in node.args:
                out = out + ev(a)
            return out
        if isinstance(node, RootMul):
            out = GradedClass.one(n, cap)
            for a in node.args:
                out = out * ev(a)
            return out
        if isinstance(node, RootSum):
            f = _series_for(node.f, order)
            if not f.is_even():
                raise ValueError(f"sum over roots of {node.name} is not symmetric under x -> -x")
            s = power_sums(n, order // 2, cap)
            out = GradedClass.scalar(f[0] * l, n, cap)
            for m in range(1, order // 2 + 1):
                if f[2 * m]:
                    out = out + s[m] * f[2 * m]
            return out
        if isinstance(node, RootProduct):
            f = _series_for(node.f, order)
            if f.is_even() and f[0]:
                return _even_product(f, n, cap)
            if f.is_odd() and f[1] and l > 0:
                # the Euler factor already has degree n, so h is needed only to cap - n
                h = _even_product(f.shift_down(1), n, max(cap - n, 0))
                return GradedClass.euler(n, cap) * GradedClass(n, h.terms, cap)
            raise ValueError(
                f"product over roots of {node.name} is neither sign-symmetric nor a multiple of the Euler class"
            )
        raise TypeError(f"not a root expression: {node!r}")

    return ev(expr)


# ---------------------------------------------------------------------------
# catalog of standard root expressions

def ahat_expr() -> RootProduct:
    """``prod_j (x_j/2) / sinh(x_j/2)``."""
    return RootProduct(ahat_root_series, "ahat")


def ahat_inverse_expr() -> RootProduct:
    """``prod_j 2 sinh(x_j/2) / x_j``."""
    return RootProduct(lambda order: ahat_root_series(order).inverse(), "2sinh(x/2)/x")


def l_expr() -> RootProduct:
    return RootProduct(l_root_series, "x/tanh(x)")


def exp_pair_sum_expr(k: int = 1) -> RootSum:
    """``sum_j (e^{k x_j} + e^{-k x_j})``, the k-th power sum of ``T_C``'s Chern character."""
    return RootSum(lambda order: PowerSeries.cosh(k, order) * 2, f"2cosh({k}x)")


def exterior_power_expr(j: int) -> RootExpr:
    """``ch(Lambda^j T_C) = e_j({e^{+-x_i}})`` built by Newton's identities.

    The identities are expressed with rank-independent coefficients, so the
    same expression works in every dimension; ``Lambda^{-1} = 0``.
    """
    if j < 0:
        return RootConst(0)
    e: list[RootExpr] = [RootConst(1)]
    for m in range(1, j + 1):
        acc: RootExpr = RootConst(0)
        for i in range(1, m + 1):
            acc = acc + e[m - i] * exp_pair_sum_expr(i) * Fraction((-1) ** (i - 1), m)
        e.append(acc)
    return e[j]


def tangent_character(n: int, max_degree: int | None = None) -> GradedClass:
    """``ch(T_C M) = sum_j 2cosh(x_j)``; rank ``n``, degree-4 part ``p1``."""
    return chern_root_expression(exp_pair_sum_expr(1), n, max_degree)


def exterior_power_character(j: int, n: int, max_degree: int | None = None) -> GradedClass:
    """``ch(Lambda^j T_C M)`` as a graded class (zero for ``j < 0``)."""
    if j < 0:
        return GradedClass.zero(n, max_degree)
    cap = n if max_degree is None else max_degree
    psum = [None] + [chern_root_expression(exp_pair_sum_expr(i), n, cap) for i in range(1, j + 1)]
    e = [GradedClass.one(n, cap)]
    for m in range(1, j + 1):
        acc = GradedClass.zero(n, cap)
        for i in range(1, m + 1):
            acc = acc + e[m - i] * psum[i] * Fraction((-1) ** (i - 1), m)
        e.append(acc)
    return e[j]


# ---------------------------------------------------------------------------
# explicit root polynomials (independent oracle route)

class RootPolynomial:
    """A polynomial in ``x_1 .. x_l`` truncated at total x-degree ``order``.

    Stored as ``{exponent tuple: Fraction}``.
    """

    def __init__(self, l: int, order: int, terms=None):
        self.l = l
        self.order = order
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v and sum(k) <= order}

    @classmethod
    def constant(cls, c, l: int, order: int) -> "RootPolynomial":
        return cls(l, order, {(0,) * l: c})

    @classmethod
    def univariate(cls, f: PowerSeries, j: int, l: int, order: int) -> "RootPolynomial":
        terms = {}
        for k in range(order + 1):
            if f[k]:
                exps = [0] * l
                exps[j] = k
                terms[tuple(exps)] = f[k]
        return cls(l, order, terms)

    def __add__(self, other: "RootPolynomial") -> "RootPolynomial":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return RootPolynomial(self.l, min(self.order, other.order), terms)

    def __mul__(self, other):
        if not isinstance(other, RootPolynomial):
            c = Fraction(other)
            return RootPolynomial(self.l, self.order, {k: v * c for k, v in self.terms.items()})
        order = min(self.order, other.order)
        out: dict = {}
        for k1, v1 in self.terms.items():
            d1 = sum(k1)
            for k2, v2 in other.terms.items():
                if d1 + sum(k2) > order:
                    continue
                key = tuple(a + b for a, b in zip(k1, k2))
                out[key] = out.get(key, 0) + v1 * v2
        return RootPolynomial(self.l, order, out)

    def is_symmetric(self) -> bool:
        """Invariant under permutations of the roots."""
        return all(self.terms.get(tuple(sorted(k, reverse=True)), 0) == v for k, v in self.terms.items())

    def to_graded(self, n: int, max_degree: int | None = None) -> GradedClass:
        """Convert to Pontryagin (and Euler) classes by leading-term elimination.

        Raises ``ValueError`` when the polynomial is not symmetric, or when it
        mixes even and odd exponents in a way no class can represent.
        """
        cap = n if max_degree is None else max_degree
        if not self.is_symmetric():
            raise ValueError("root polynomial is not symmetric under permutations")
        even = {k: v for k, v in self.terms.items() if all(a % 2 == 0 for a in k)}
        odd = {k: v for k, v in self.terms.items() if all(a % 2 == 1 for a in k)}
        if len(even) + len(odd) != len(self.terms) or (odd and self.l == 0):
            raise ValueError("root polynomial is not sign-flip symmetric")
        result = self._eliminate({tuple(a // 2 for a in k): v for k, v in even.items()}, n, cap)
        if odd:
            quotient = self._eliminate({tuple((a - 1) // 2 for a in k): v for k, v in odd.items()}, n, cap)
            result = result + GradedClass.euler(n, cap) * quotient
        return result

    def _eliminate(self, poly: dict, n: int, cap: int) -> GradedClass:
        l = self.l
        ymax = self.order // 2
        elem = []  # elementary symmetric polynomials in y as dicts
        for i in range(l + 1):
            terms = {}
            for idx in cartesian((0, 1), repeat=l):
                if sum(idx) == i:
                    terms[idx] = Fraction(1)
            elem.append(terms)

        def mul(a, b):
            out = {}
            for k1, v1 in a.items():
                for k2, v2 in b.items():
                    key = tuple(x + y for x, y in zip(k1, k2))
                    if sum(key) <= ymax:
                        out[key] = out.get(key, 0) + v1 * v2
            return out

        poly = {k: v for k, v in poly.items() if v}
        terms: dict[Monomial, Fraction] = {}
        while poly:
            lead = max(poly)
            c = poly[lead]
            if list(lead) != sorted(lead, reverse=True):
                raise ValueError("root polynomial is not symmetric")
            powers = [lead[i] - (lead[i + 1] if i + 1 < l else 0) for i in range(l)]
            mono = {(0,) * l: Fraction(1)}
            parts = []
            for i, r in enumerate(powers, start=1):
                for _ in range(r):
                    mono = mul(mono, elem[i])
                    parts.append(i)
            for k, v in mono.items():
                poly[k] = poly.get(k, 0) - c * v
                if not poly[k]:
                    del poly[k]
            key = Monomial(Partition(parts), 0, ())
            terms[key] = terms.get(key, 0) + c
        return GradedClass(n, terms, cap)


def expand_roots(expr: RootExpr, n: int, max_degree: int | None = None) -> RootPolynomial:
    """Expand a root expression into an explicit :class:`RootPolynomial`."""
    cap = n if max_degree is None else max_degree
    order = cap // 2
    l = n // 2

    def ev(node):
        if isinstance(node, RootConst):
            return RootPolynomial.constant(node.value, l, order)
        if isinstance(node, RootAdd):
            out = RootPolynomial(l, order)
            for a in node.args:
                out = out + ev(a)
            return out
        if isinstance(node, RootMul):
            out = RootPolynomial.constant(1, l, order)
            for a in node.args:
                out = out * ev(a)
            return out
        if isinstance(node, RootSum):
            f = _series_for(node.f, order)
            out = RootPolynomial(l, order)
            for j in range(l):
                out = out + RootPolynomial.univariate(f, j, l, order)
            return out
        if isinstance(node, RootProduct):
            f = _series_for(node.f, order)
            out = RootPolynomial.constant(1, l, order)
            for j in range(l):
                out = out * RootPolynomial.univariate(f, j, l, order)
            return out
        raise TypeError(f"not a root expression: {node!r}")

    return ev(expr)


def binomial_rank(n: int, j: int) -> int:
    """Rank of ``Lambda^j`` of an ``n``-dimensional space (0 outside range)."""
    return comb(n, j) if 0 <= j <= n else 0
