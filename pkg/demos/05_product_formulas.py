"""Split-step (Lie-Trotter) products: exact for commuting pairs, O(1/n) otherwise."""

import numpy as np

from semiapprox import approximants, ensembles
from semiapprox.harness import fit_rate, pow2_grid

print("commuting diagonal pair: the product formula is exact for every n")
pair = approximants.GeneratorPair(
    np.diag([1.0, 0.3, 0.7]).astype(complex),
    np.diag([0.2, 2.0, 0.9]).astype(complex),
)
ref = approximants.reference_semigroup(pair.sum, 1.0)
for n in (1, 8, 512):
    err = approximants.approx_error(approximants.trotter_approx(pair, 1.0, n), ref)
    print(f"  n={n:>4}: error = {err:.2e}")

print("\nnon-commuting Hermitian pair: error decays like 1/n")
a = ensembles.random_m_sectorial(4, 0.0, seed=41)
b = ensembles.random_m_sectorial(4, 0.0, seed=43)
pair = approximants.GeneratorPair(a, b)
ref = approximants.reference_semigroup(pair.sum, 1.0)
cells = []
for n in pow2_grid(512):
    err = approximants.approx_error(approximants.trotter_approx(pair, 1.0, n), ref)
    cells.append((n, err))
    print(f"  n={n:>4}: error = {err:.6e}")
est = fit_rate(cells)
print(f"fitted slope: n^-{est.exponent_p:.3f} (r^2={est.r_squared:.5f})")

print("\nthe same product viewed as a contraction family Phi(s) = e^{-sA} e^{-sB}:")
phi = approximants.trotter_family(a, b)
for n in (1, 16, 256):
    power = approximants.chernoff_power(phi, 1.0, n)
    partner = approximants.chernoff_exp(phi, 1.0, n)
    print(f"  n={n:>4}: ||Phi(t/n)^n - e^(n(Phi(t/n)-1))|| = "
          f"{approximants.approx_error(power, partner):.2e}")
