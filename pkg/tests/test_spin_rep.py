from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from indexforge.spin_rep import (
    DominantWeight,
    GradientSelector,
    classify_minimal_elliptic,
    dim_defect,
    dominant_weights,
    elliptic_gradients,
    fegan_targets,
    is_dominant,
    is_elliptic_gradient,
    module_type,
    parse_target,
    passes_adjoint_test,
    shift,
    target_label,
    weyl_dim,
)

H = Fraction(1, 2)


def test_is_dominant_examples():
    assert is_dominant((Fraction(3, 2), H), 4)
    assert not is_dominant((H, Fraction(3, 2)), 4)
    assert not is_dominant((1, H), 4)
    assert is_dominant((H, -H), 4)
    assert not is_dominant((H, -H), 5)
    assert not is_dominant((1,), 4)
    assert not is_dominant("a,b", 4)


def test_weyl_dim_examples():
    assert weyl_dim((1, 0), 4) == 4
    for mu in range(6):
        assert weyl_dim((mu, mu), 4) == 1 + 2 * mu
    assert weyl_dim((H, H, H), 6) == 4
    with pytest.raises(ValueError):
        weyl_dim((0, 1), 4)


def _harmonic(n, k):
    return comb(n + k - 1, k) - (comb(n + k - 3, k - 2) if k >= 2 else 0)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 10])
def test_weyl_dim_against_classical_dimensions(n):
    m = n // 2
    zeros = (0,) * (m - 1)
    # harmonic polynomials of degree k
    for k in range(6):
        assert weyl_dim((k,) + zeros, n) == _harmonic(n, k)
    # spinors
    spin = 2 ** m if n % 2 else 2 ** (m - 1)
    assert weyl_dim((H,) * m, n) == spin
    # exterior powers Lambda^p for p < n/2
    for p in range(1, (n - 1) // 2 + 1):
        lam = (1,) * p + (0,) * (m - p)
        assert weyl_dim(lam, n) == comb(n, p)


@pytest.mark.parametrize("l1,l2", [(a, b) for a in range(6) for b in range(-a, a + 1)])
def test_weyl_dim_n4_closed_form(l1, l2):
    assert weyl_dim((l1, l2), 4) == (1 + l1 + l2) * (1 + l1 - l2)
    hl = (l1 + H, l2 + H) if l2 + H <= l1 + H and abs(l2 + H) <= l1 + H else None
    if hl:
        assert weyl_dim(hl, 4) == (1 + hl[0] + hl[1]) * (1 + hl[0] - hl[1])


def test_fegan_examples():
    assert set(fegan_targets((H, H), 4)) == {1, -2}
    assert fegan_targets((0, 0), 4) == (1,)
    assert set(fegan_targets((Fraction(3, 2), H), 4)) == {1, -1, 2, -2}
    assert 0 in fegan_targets((H, H), 5)
    assert 0 not in fegan_targets((1, 0), 5)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_fegan_dimension_sum(n):
    for w in dominant_weights(n, 4):
        total = sum(weyl_dim(shift(w, eps), n) for eps in fegan_targets(w, n))
        assert total == n * weyl_dim(w, n), str(w)


def test_target_labels_roundtrip():
    for eps in (-3, -1, 0, 1, 2):
        assert parse_target(target_label(eps)) == eps
    with pytest.raises(ValueError):
        parse_target("e")


def test_classification_examples():
    assert frozenset({0}) in classify_minimal_elliptic((H, H), 5)
    assert frozenset({1}) in classify_minimal_elliptic((H, H), 5)
    assert frozenset({-2}) in classify_minimal_elliptic((H, H), 4)
    assert frozenset({2}) in classify_minimal_elliptic((H, -H), 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_minimal_elliptic_sets_are_fegan_targets(n):
    for w in dominant_weights(n, 3):
        allowed = set(fegan_targets(w, n)) | {0}
        for s in classify_minimal_elliptic(w, n):
            assert s <= allowed


def test_elliptic_gradient_examples():
    assert is_elliptic_gradient(GradientSelector((H, H), ["-e2"], 4))
    for mu in range(6):
        assert is_elliptic_gradient(GradientSelector((mu + 1, mu), [-1, 2], 4))
    assert not is_elliptic_gradient(GradientSelector((Fraction(3, 2), Fraction(3, 2)), [-2], 4))


def test_selector_rejects_absent_targets():
    with pytest.raises(ValueError):
        GradientSelector((0, 0), [-1], 4)
    with pytest.raises(ValueError):
        GradientSelector((0, 0), [], 4)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_corollary_matches_brute_force_adjoint_test(n):
    for w in dominant_weights(n, Fraction(5, 2)):
        T = fegan_targets(w, n)
        for r in range(1, len(T) + 1):
            for I in combinations(T, r):
                expected = passes_adjoint_test(w, I, n)
                assert is_elliptic_gradient(GradientSelector(w, I)) == expected, (str(w), I)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_adjoint_restriction_for_corollary_selectors(n):
    for w in dominant_weights(n, Fraction(7, 2)):
        for I in elliptic_gradients(w, n):
            for eps in I:
                target = DominantWeight(shift(w, eps), n)
                assert frozenset({-eps}) in classify_minimal_elliptic(target, n)


def test_dim_defect_examples():
    assert dim_defect((4, 3)) == 0
    assert dim_defect((3, 1)) == 5
    assert dim_defect((2, -1), "-") == 0
    with pytest.raises(ValueError):
        dim_defect((1, 1))
    with pytest.raises(ValueError):
        dim_defect((2, 1), "x")


def test_dim_defect_scan():
    for l1 in range(1, 11):
        for l2 in range(0, l1):
            d = dim_defect((l1, l2), "+")
            assert d == -2 * l2 - 1 + l1**2 - l2**2
            assert d >= 0 and (d == 0) == (l1 == l2 + 1)
            d = dim_defect((l1, -l2), "-")
            assert d >= 0 and (d == 0) == (l1 == 1 + l2)
    for l1 in [Fraction(k, 2) for k in range(3, 21, 2)]:
        for l2 in [Fraction(k, 2) for k in range(1, 21, 2) if Fraction(k, 2) <= l1 - 1]:
            d = dim_defect((l1, l2), "+")
            assert d >= 0 and (d == 0) == (l1 == l2 + 1)


def test_module_type_examples():
    t, c = module_type((1, 0), 4)
    assert t == "I" and c == DominantWeight((1, 0), 4)
    t, c = module_type((H, H), 4)
    assert t == "II" and c == DominantWeight((H, -H), 4)
    assert module_type((0, 0), 4)[0] == "I"
    with pytest.raises(ValueError):
        module_type((1, 0), 5)


@given(st.sampled_from([4, 6, 8]), st.data())
def test_conjugation_is_an_involution(n, data):
    w = data.draw(st.sampled_from(dominant_weights(n, 3)))
    _, c = module_type(w, n)
    _, cc = module_type(c, n)
    assert cc == w
    assert weyl_dim(c, n) == weyl_dim(w, n)


@given(st.lists(st.integers(min_value=-8, max_value=8), min_size=1, max_size=4), st.booleans())
def test_dominance_agrees_with_definition(raw, half):
    w = [Fraction(x) + (H if half else 0) for x in raw]
    for n in (2 * len(w), 2 * len(w) + 1):
        ordered = all(w[i] >= w[i + 1] for i in range(len(w) - 1))
        if n % 2:
            expected = ordered and w[-1] >= 0
        else:
            expected = all(w[i] >= w[i + 1] for i in range(len(w) - 2)) and (
                len(w) == 1 or w[-2] >= abs(w[-1]))
        assert is_dominant(w, n) == expected
