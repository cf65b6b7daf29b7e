"""Heat coefficients from the parametrix, checked against spectra.

1. Exact coefficients ``Phi_k(0)`` of ``-Delta + V`` and of a magnetic
   Laplacian from the symbol recursion.
2. The same ``Phi_2`` read off a least-squares fit of a flat-torus heat trace.
3. The supertrace of the twisted torus Dirac operator, which is the index at
   every ``t``.
4. Heat traces under a constant rescaling of the metric.
"""
from fractions import Fraction

import numpy as np

from indexforge.heat import (
    JetPoly,
    fit_divergent_terms,
    fit_schrodinger_coefficients,
    heat_coefficients,
    magnetic_laplacian,
    parametrix_recursion,
    scaling_check,
    schrodinger,
    taylor_connection,
    torus_spectral_supertrace,
    uniform_field,
)


def exact_coefficients(op, kmax=4):
    terms = parametrix_recursion(op, kmax)
    return [heat_coefficients(terms, op.n, k).value for k in range(kmax + 1)]


x = JetPoly.variable(0, 2, 4)
y = JetPoly.variable(1, 2, 4)
print("units of (4 pi)^(-n/2)")
print("  -Delta + 3               :", [str(v) for v in exact_coefficients(schrodinger(3, 2))])
print("  -Delta + 1 + x^2 + 2xy   :", [str(v) for v in exact_coefficients(schrodinger(x * x + x * y * 2 + 1))])
A = taylor_connection(uniform_field(2, 4), 4)
print("  uniform field B = 2      :", [str(v) for v in exact_coefficients(magnetic_laplacian(A))])

print("\nPhi_2 of -Delta + V: exact vs torus fit")
for n in (1, 2):
    for V in (0.5, 2.0):
        exact = -V * (4 * np.pi) ** (-n / 2)
        fit = fit_schrodinger_coefficients(V, n)
        print(f"  n={n} V={V}: exact {exact:.12f}  fit {fit.phi(2):.12f}  rel {abs(fit.phi(2) / exact - 1):.1e}")

print("\nsupertrace of exp(-t D^2) on the twisted torus")
for c in (-2, 0, 3):
    values = [torus_spectral_supertrace(c, t) for t in (0.05, 1.0, 20.0)]
    fit = fit_divergent_terms(c)
    print(f"  c={c:>2}: {values}  divergent fit terms {fit.divergent[0]:.1e}, {fit.divergent[1]:.1e}")

print("\nrescaling the metric by s^2")
for s in (0.5, 2.0, 5.0):
    for model in ("free", "landau"):
        r = scaling_check(s, model)
        print(f"  s={s} {model:<6}: eigenvalue dev {r.eigenvalue_deviation:.1e}, trace dev {r.trace_deviation:.1e}")
