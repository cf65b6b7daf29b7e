"""Recovering an index density from index values alone.

An index density in dimension ``n`` has the shape
``sum_k ch_k(xi) sum_I b_{k,I} p_I``.  Evaluating the index on
``(CP1)^k x M_J`` with ``M_J`` products of K3 and HP^i pins every
coefficient, because the matrices ``(p_I[M_J])`` are invertible.
"""
from indexforge.index import (
    coefficient_match,
    index_oracle,
    induced_oracle,
    random_evaluations,
    thom_determinant,
    thom_matrix,
)
from indexforge.operators import OperatorSpec

for k in (1, 2, 3):
    print(f"Thom matrix k={k}: {[[str(x) for x in row] for row in thom_matrix(k)]}  det {thom_determinant(k)}")

for spec in (OperatorSpec("dirac", 4), OperatorSpec("rs", 4), OperatorSpec("dirac", 8),
             OperatorSpec("higher-dirac", 8, j=2)):
    vec = coefficient_match(index_oracle(spec), spec.n)
    print(f"\n{spec.name} in dimension {spec.n}")
    for (k, I), v in vec.nonzero().items():
        print(f"  ch_{k} * p_[{I}]   {v}")

    # held-out check on random twisted products
    oracle, induced = index_oracle(spec), induced_oracle(vec)
    samples = random_evaluations(spec.n, count=20, seed=1)
    ok = sum(induced(M, t) == oracle(M, t) for M, t in samples)
    print(f"  reproduces the oracle on {ok}/{len(samples)} held-out products")

# a different sign for the CP1 twist gives the same answer
spec = OperatorSpec("rs", 4)
assert coefficient_match(index_oracle(spec), 4, c1_integral=2) == coefficient_match(index_oracle(spec), 4)
