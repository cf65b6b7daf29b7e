"""Indices of the cataloged operators on the generator manifolds.

Run with ``python3 demos/index_table.py``.  Every number printed is an exact
rational; on spin manifolds the Dirac-family values come out as integers.
"""
from fractions import Fraction

from indexforge import manifolds as mf
from indexforge.algebra import GradedClass
from indexforge.index import evaluate_index
from indexforge.operators import OperatorSpec, higher_signature_integrand


def dirac_family_table():
    rows = [("K3", mf.k3()), ("T4", mf.torus(4)), ("K3 x K3", mf.product(mf.k3(), mf.k3())),
            ("HP2", mf.hpn(2)), ("HP3", mf.hpn(3))]
    print("Dirac family (untwisted)")
    print(f"  {'manifold':<10} {'dirac':>8} {'rarita-schwinger':>18} {'D_2':>8}")
    for label, M in rows:
        dirac = evaluate_index(OperatorSpec("dirac", M.dim), M)
        rs = evaluate_index(OperatorSpec("rs", M.dim), M)
        d2 = evaluate_index(OperatorSpec("higher-dirac", M.dim, j=2), M) if M.dim >= 6 else "-"
        print(f"  {label:<10} {str(dirac):>8} {str(rs):>18} {str(d2):>8}")


def higher_signature_law():
    print("\nHigher signature operators P_mu on oriented 4-manifolds")
    p1 = GradedClass.p(1, 4)
    for mu in range(5):
        density = higher_signature_integrand(mu)
        assert density == p1 * Fraction(1 + mu, 3)
        k3 = evaluate_index(OperatorSpec("higher-signature", 4, mu=mu), mf.k3())
        cp2 = evaluate_index(OperatorSpec("higher-signature", 4, mu=mu), mf.cpn(2))
        print(f"  mu={mu}: density {density}   K3 -> {k3}   CP2 -> {cp2}")

    # The law above uses bundle characters through degree 4.  Keeping their
    # degree-8 parts changes the degree-4 part of (ch W+ - ch W-)/e.
    print("  with degree-8 characters kept:")
    for mu in range(3):
        print(f"    mu={mu}: {higher_signature_integrand(mu, character_degree=8)}")


def twisted_surfaces():
    print("\nTwisting by line bundles on surface factors")
    M = mf.product(mf.cp1(), mf.k3())
    spec = OperatorSpec("dirac", 6)
    for c in (-2, 1, 3):
        print(f"  CP1 x K3, c1 = {c:>2}: index {evaluate_index(spec, M, ((c,),))}")
    both = mf.direct_sum(((3,),), ((-1,),))
    print(f"  Whitney sum of c1 = 3 and c1 = -1: index {evaluate_index(spec, M, both)}")


if __name__ == "__main__":
    dirac_family_table()
    higher_signature_law()
    twisted_surfaces()
