from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from indexforge.algebra import GradedClass, Monomial, ahat_class, l_class
from indexforge.manifolds import k3, pair
from indexforge.operators import (
    OperatorSpec,
    c1,
    dirac_euler_quotient,
    higher_dirac_integrand,
    higher_signature_bundles,
    higher_signature_integrand,
    rarita_schwinger_integrand,
    signature_ch_closed_form,
    signature_ch_recurrence,
    signature_offdiag_closed_form,
    twisted_integrand,
)
from indexforge.spin_rep import weyl_dim

P1 = GradedClass.p(1, 4)


def test_dirac_is_ahat():
    for n in (2, 4, 8, 12):
        assert higher_dirac_integrand(0, n) == ahat_class(n)


def test_rarita_schwinger_degree4_against_roots():
    # ch T_C with roots +-x1, +-x2: 4 + (x1^2 + x2^2) = 4 + p1, so (5 + p1)(1 - p1/24)
    top = rarita_schwinger_integrand(4).top()
    assert top == P1 * Fraction(19, 24)
    assert rarita_schwinger_integrand(8) == higher_dirac_integrand(1, 8)


def test_rarita_schwinger_n8_only_pontryagin_monomials():
    top = rarita_schwinger_integrand(8).top()
    assert {m.label() for m in top.terms} == {"p2", "p1^2"}


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_higher_dirac_rank(n):
    for j in range(n // 2):
        c = higher_dirac_integrand(j, n)
        assert c.degree0() == comb(n, j) + (comb(n, j - 1) if j else 0)


@pytest.mark.parametrize("n", [4, 8])
def test_flat_integrands_have_no_top_degree(n):
    for j in range(n // 2):
        c = higher_dirac_integrand(j, n)
        flat = sum((v for m, v in c.terms.items() if m.degree(n) == n and not m.p), Fraction(0))
        assert flat == 0


def test_higher_dirac_range():
    with pytest.raises(ValueError):
        higher_dirac_integrand(2, 4)
    with pytest.raises(ValueError):
        OperatorSpec("higher-dirac", 4, j=2)


def test_spec_validation():
    assert OperatorSpec("rs", 4).j == 1
    assert OperatorSpec("RS", 8).family == "rarita-schwinger"
    with pytest.raises(ValueError):
        OperatorSpec("signature", 8)
    with pytest.raises(ValueError):
        OperatorSpec("dirac", 5)
    with pytest.raises(ValueError):
        OperatorSpec("laplace", 4)
    with pytest.raises(ValueError):
        OperatorSpec("higher-signature", 4, mu=-1)
    assert OperatorSpec("higher-signature", 4, mu=2).structure == "oriented"
    assert OperatorSpec("dirac", 4).requires_spin


@pytest.mark.parametrize("spec", [OperatorSpec("dirac", 4), OperatorSpec("rs", 6), OperatorSpec("higher-dirac", 8, j=2),
                                  OperatorSpec("higher-signature", 4, mu=3)])
def test_chiral_data(spec):
    cd = spec.chiral_data()
    assert cd.rank_positive == cd.rank_negative
    assert cd.reversed().positive == cd.negative
    assert cd.reversed().reversed() == cd


def test_signature_closed_forms():
    assert signature_ch_closed_form(0) == 1
    for b in "+-":
        assert signature_ch_closed_form(1, b) == c1(b) + 3
        assert signature_ch_closed_form(2, b) == c1(b) * 5 + 5
    assert c1("+") - c1("-") == GradedClass.euler(4) * 4


@pytest.mark.parametrize("branch", ["+", "-"])
def test_recurrence_matches_closed_forms(branch):
    rec = signature_ch_recurrence(10, branch)
    for mu in range(11):
        assert rec.diagonal[mu] == signature_ch_closed_form(mu, branch)
        assert rec.off_diagonal[mu] == signature_offdiag_closed_form(mu, branch)
        assert rec.diagonal[mu].degree0() == weyl_dim((mu, mu), 4) == 1 + 2 * mu
        assert rec.off_diagonal[mu].degree0() == weyl_dim((mu + 1, mu), 4)


def test_recurrence_rejects_bad_input():
    with pytest.raises(ValueError):
        signature_ch_recurrence(0)
    with pytest.raises(ValueError):
        signature_ch_recurrence(3, "+", max_degree=6)
    with pytest.raises(ValueError):
        signature_ch_closed_form(1, "x")


def test_higher_signature_integrand():
    assert higher_signature_integrand(0) == l_class(4).top()
    assert higher_signature_integrand(3) == P1 * Fraction(4, 3)
    for mu in range(6):
        assert pair(higher_signature_integrand(mu), k3()) == -16 * (1 + mu)


def test_higher_signature_bundles_have_equal_rank():
    for mu in range(5):
        wp, wm = higher_signature_bundles(mu)
        assert wp.degree0() == wm.degree0()
        quotient = (wp - wm).div_euler()
        assert GradedClass(4, quotient.terms, 4) == -4 * (1 + mu)


def test_higher_signature_with_degree8_characters():
    # keeping degree-8 character terms changes the degree-4 quotient
    for mu in range(5):
        expected = P1 * Fraction(-(1 + mu) * (2 * mu**2 + 4 * mu + 1), 3)
        assert higher_signature_integrand(mu, character_degree=8) == expected
    with pytest.raises(ValueError):
        higher_signature_integrand(1, character_degree=6)


@pytest.mark.parametrize("n", [4, 8])
def test_euler_quotient_reduces_to_dirac(n):
    q = dirac_euler_quotient(n)
    a = ahat_class(n)
    sign = -1 if (n // 2) % 2 else 1
    assert q * a * sign == 1
    assert q * a * a * sign == a


def test_euler_quotient_on_k3():
    q = dirac_euler_quotient(4)
    assert pair(q * ahat_class(4) * ahat_class(4), k3()) == 2


def test_twisted_integrand_default_character():
    spec = OperatorSpec("dirac", 4)
    t = twisted_integrand(spec)
    assert t.coefficient(Monomial.make((), 0, (2,))) == 1
    assert t.coefficient(Monomial.make((1,), 0, (0,))) == Fraction(-1, 24)


@given(st.integers(min_value=-5, max_value=5), st.sampled_from([4, 8]), st.integers(min_value=0, max_value=3))
def test_twist_linearity_in_character(N, n, j):
    j = min(j, n // 2 - 1)
    spec = OperatorSpec("higher-dirac", n, j=j)
    ch = GradedClass.chern_character(n)
    assert twisted_integrand(spec, ch * N) == twisted_integrand(spec) * N
    other = GradedClass.ch(1, n) + GradedClass.ch(0, n) * 2
    assert twisted_integrand(spec, ch + other) == twisted_integrand(spec, ch) + twisted_integrand(spec, other)
