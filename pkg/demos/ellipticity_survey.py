"""Elliptic generalized gradients of Spin(n) and the vector-tensor selection rule.

For each dominant weight, ``R^n (x) V_lambda`` splits into the summands
``V_{lambda + eps}`` listed by :func:`fegan_targets`; the script checks the
dimension count and lists which target sets give elliptic operators.
"""
from fractions import Fraction
from itertools import combinations

from indexforge.spin_rep import (
    GradientSelector,
    dominant_weights,
    elliptic_gradients,
    fegan_targets,
    passes_adjoint_test,
    shift,
    target_label,
    weyl_dim,
)


def survey(n, max_entry=Fraction(5, 2)):
    weights = dominant_weights(n, max_entry)
    print(f"Spin({n}): {len(weights)} dominant weights with entries <= {max_entry}")
    for w in weights:
        targets = fegan_targets(w, n)
        total = sum(weyl_dim(shift(w, e), n) for e in targets)
        assert total == n * weyl_dim(w, n)
        listed = elliptic_gradients(w, n)
        if listed:
            names = ["{" + ", ".join(GradientSelector(w, s).labels) + "}" for s in listed]
            print(f"  {str(w):<22} dim {weyl_dim(w, n):>4}   elliptic: {' '.join(names)}")


def cross_check(n, max_entry=Fraction(5, 2)):
    """Compare the elliptic list with a brute-force test over all target subsets."""
    agree = total = 0
    for w in dominant_weights(n, max_entry):
        targets = fegan_targets(w, n)
        for r in range(1, len(targets) + 1):
            for I in combinations(targets, r):
                total += 1
                listed = frozenset(I) in elliptic_gradients(w, n)
                agree += listed == passes_adjoint_test(w, I, n)
    print(f"  brute-force agreement for n={n}: {agree}/{total}")


if __name__ == "__main__":
    for n in (4, 6):
        survey(n)
        cross_check(n)
    print("\nsummands of R^5 (x) V(1/2,1/2):",
          " ".join(target_label(e) for e in fegan_targets((Fraction(1, 2), Fraction(1, 2)), 5)))
