from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from indexforge.algebra import (
    GradedClass,
    Monomial,
    Partition,
    PowerSeries,
    RootConst,
    RootPolynomial,
    RootProduct,
    RootSum,
    ahat_class,
    ahat_expr,
    ahat_inverse_expr,
    ahat_series,
    chern_root_expression,
    expand_roots,
    exterior_power_character,
    exterior_power_expr,
    l_class,
    l_series,
    multiplicative_sequence,
    partition_count,
    partitions,
    power_sums,
    tangent_character,
)
from indexforge.algebra.roots import exp_pair_sum_expr

from .strategies import graded_classes, small_fractions

# ---------------------------------------------------------------------------
# partitions


def test_partitions_small():
    assert partitions(0) == [Partition(())]
    assert partitions(2) == [Partition((2,)), Partition((1, 1))]
    assert len(partitions(4)) == 5
    assert [str(p) for p in partitions(4)] == ["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]


def _brute_partitions(k, largest=None):
    largest = k if largest is None else largest
    if k == 0:
        return [()]
    out = []
    for first in range(min(k, largest), 0, -1):
        out += [(first,) + rest for rest in _brute_partitions(k - first, first)]
    return out


@pytest.mark.parametrize("k", range(0, 11))
def test_partitions_match_brute_force_in_order(k):
    assert [p.parts for p in partitions(k)] == _brute_partitions(k)


def _pentagonal_count(kmax):
    p = [1] + [0] * kmax
    for k in range(1, kmax + 1):
        total, j = 0, 1
        while True:
            g1, g2 = j * (3 * j - 1) // 2, j * (3 * j + 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p


def test_partition_count_matches_recurrence_up_to_20():
    expected = _pentagonal_count(20)
    for k in range(21):
        assert partition_count(k) == expected[k] == len(partitions(k))


@given(st.lists(st.integers(min_value=1, max_value=9), max_size=6))
def test_partition_invariants(parts):
    P = Partition(parts)
    assert list(P.parts) == sorted(parts, reverse=True)
    assert P.weight == sum(parts)
    assert Partition.parse(str(P)) == P


def test_partition_rejects_nonpositive():
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ValueError):
        partitions(-1)


# ---------------------------------------------------------------------------
# power series and genera

x = sp.symbols("x")


def _sympy_coeffs(expr, var, order):
    ser = sp.series(expr, var, 0, order + 1).removeO()
    return [Fraction(str(sp.nsimplify(ser.coeff(var, k)))) for k in range(order + 1)]


def test_ahat_and_l_series_against_sympy():
    y = sp.symbols("y", positive=True)
    ahat = (sp.sqrt(y) / 2) / sp.sinh(sp.sqrt(y) / 2)
    lser = sp.sqrt(y) / sp.tanh(sp.sqrt(y))
    assert list(ahat_series(4).coeffs) == _sympy_coeffs(ahat, y, 4)
    assert list(l_series(4).coeffs) == _sympy_coeffs(lser, y, 4)


def test_series_log_exp_roundtrip():
    f = PowerSeries([1, Fraction(1, 3), Fraction(-2, 5), 7], 6)
    assert f.log().exponential() == f


def test_multiplicative_sequence_examples():
    assert multiplicative_sequence(PowerSeries.constant(1, 3), 8) == 1
    A = ahat_class(4)
    assert A == GradedClass(4, {Monomial.make(): 1, Monomial.make((1,)): Fraction(-1, 24)})
    L = l_class(8)
    assert L.homogeneous(8) == GradedClass(
        8, {Monomial.make((2,)): Fraction(7, 45), Monomial.make((1, 1)): Fraction(-1, 45)}
    )


def test_multiplicative_sequence_rejects_bad_constant():
    with pytest.raises(ValueError):
        multiplicative_sequence(PowerSeries([2, 1], 3), 4)


def test_ahat_degree_12_standard_coefficients():
    top = ahat_class(12).homogeneous(12)
    assert top.coefficient("p3") == Fraction(-16, 967680)
    assert top.coefficient("p2*p1") == Fraction(44, 967680)
    assert top.coefficient("p1^3") == Fraction(-31, 967680)


@given(
    st.lists(small_fractions, min_size=3, max_size=3),
    st.lists(small_fractions, min_size=3, max_size=3),
    st.sampled_from([4, 8, 12]),
)
def test_genus_multiplicativity(a, b, n):
    f = PowerSeries([1] + a, 3)
    g = PowerSeries([1] + b, 3)
    assert multiplicative_sequence(f * g, n) == multiplicative_sequence(f, n) * multiplicative_sequence(g, n)


def test_power_sums_newton():
    s = power_sums(8, 2)
    assert s[1] == GradedClass.p(1, 8)
    assert s[2] == GradedClass.p(1, 8) ** 2 - GradedClass.p(2, 8) * 2


# ---------------------------------------------------------------------------
# graded ring


@given(graded_classes(12), graded_classes(12), graded_classes(12))
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert all(m.degree(12) <= 12 for m in (a * b).terms)
    assert a.truncate(8).truncate(8) == a.truncate(8)


@given(graded_classes(4), graded_classes(4))
def test_euler_square_rewrites_to_top_pontryagin_n4(a, b):
    e = GradedClass.euler(4, 8)
    lhs = GradedClass(4, a.terms, 8) * e * e * GradedClass(4, b.terms, 8)
    rhs = GradedClass(4, a.terms, 8) * GradedClass.p(2, 4, 8) * GradedClass(4, b.terms, 8)
    assert lhs == rhs


@given(graded_classes(8, max_degree=16))
def test_euler_square_rewrites_to_top_pontryagin_n8(a):
    e = GradedClass.euler(8, 16)
    assert a * e * e == a * GradedClass.p(4, 8, 16)
    assert all(m.e <= 1 for m in (a * e * e * e).terms)


def test_euler_square_examples():
    assert GradedClass.euler(4, 8) ** 2 == GradedClass.p(2, 4, 8)
    with pytest.raises(ValueError):
        GradedClass.p(3, 4)


def test_inverse_and_exp_log_consistency():
    a = ahat_class(12)
    assert a * a.inverse() == 1
    nil = GradedClass.p(1, 8) * Fraction(1, 3) - GradedClass.p(2, 8)
    assert nil.exp() * (-nil).exp() == 1


def test_json_roundtrip_and_labels():
    c = GradedClass(8, {Monomial.make((2, 1)): 3, Monomial.make((), 1): Fraction(1, 2),
                        Monomial.make((), 0, (2,)): -1})
    data = c.to_json()
    assert GradedClass.from_json(data, 8) == c
    assert Monomial.parse("ch2*e*p2^2*p1").label() == "ch2*e*p2^2*p1"


# ---------------------------------------------------------------------------
# Chern roots


@pytest.mark.parametrize("n", [4, 8, 12])
def test_ahat_via_roots_equals_multiplicative_sequence(n):
    assert chern_root_expression(ahat_expr(), n) == ahat_class(n)
    assert expand_roots(ahat_expr(), n).to_graded(n) == ahat_class(n)


@pytest.mark.parametrize("n", [4, 8, 12])
def test_ahat_inverse_identity(n):
    assert chern_root_expression(ahat_inverse_expr(), n) * ahat_class(n) == 1


def test_tangent_character_degree4():
    ch = tangent_character(4)
    assert ch == GradedClass(4, {Monomial.make(): 4, Monomial.make((1,)): 1})
    assert chern_root_expression(exp_pair_sum_expr(1), 4) == ch


def test_tangent_character_against_sympy_chern_classes():
    # ch_2 = (c1^2 - 2 c2)/2 with c(T_C) = prod (1 + x_j)(1 - x_j) for n = 4
    x1, x2 = sp.symbols("x1 x2")
    roots = [x1, -x1, x2, -x2]
    c1 = sum(roots)
    c2 = sum(roots[i] * roots[j] for i in range(4) for j in range(i + 1, 4))
    ch2 = sp.expand((c1**2 - 2 * c2) / 2)
    # p1 = x1^2 + x2^2, so ch2 should be p1
    assert sp.simplify(ch2 - (x1**2 + x2**2)) == 0
    assert tangent_character(4).homogeneous(4).coefficient("p1") == 1


@pytest.mark.parametrize("j", range(0, 4))
def test_exterior_powers_two_routes(j):
    n = 8
    newton = exterior_power_character(j, n)
    explicit = expand_roots(exterior_power_expr(j), n).to_graded(n)
    assert newton == explicit
    assert newton.degree0() == comb(n, j)


def test_odd_root_product_gives_euler_factor():
    two_sinh = lambda order: PowerSeries.sinh(1, order) * 2  # noqa: E731
    c = chern_root_expression(RootProduct(two_sinh, "2sinh"), 4, 8)
    assert c == GradedClass(4, {Monomial.make((), 1): 4, Monomial.make((1,), 1): Fraction(2, 3)}, 8)
    assert expand_roots(RootProduct(two_sinh, "2sinh"), 4, 8).to_graded(4, 8) == c


def test_non_symmetric_input_rejected():
    odd_sum = RootSum(PowerSeries.sinh(1, 6), "sinh")
    with pytest.raises(ValueError):
        chern_root_expression(odd_sum, 4)
    lop = RootPolynomial.univariate(PowerSeries([0, 1], 3), 0, 2, 3)
    with pytest.raises(ValueError):
        lop.to_graded(4)


def test_constant_expression():
    assert chern_root_expression(RootConst(5), 4) == 5
