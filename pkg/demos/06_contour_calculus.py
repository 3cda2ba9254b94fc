"""Functional calculus along the boundary of D(alpha').

Reconstructs C^n (1-C) and C^n - e^{n(C-1)} for a certified quasi-sectorial
contraction by resolvent quadrature along the contour and compares against
direct matrix computation, then checks the resolvent majorants node by node.
"""

import math

import numpy as np

from semiapprox import contour, ensembles, linalg, numrange

alpha = math.pi / 8
a = ensembles.random_m_sectorial(5, alpha, seed=61)
c = ensembles.resolvent_contraction(a, 1.0)
assert numrange.certify_quasi_sectorial(c, alpha, 256).passed

alpha_prime = 0.5 * (alpha + math.pi / 2)
nodes = contour.build_contour(alpha_prime)
print(f"contour at alpha' = {alpha_prime:.4f}: {len(nodes)} nodes "
      f"(arc radius {math.sin(alpha_prime):.4f}, line length {math.cos(alpha_prime):.4f})")
print(f"interior winding check at z=0.2: "
      f"{contour.winding_number(nodes, 0.2 + 0j):.12f}")

eye = np.eye(5)
for n in (1, 4, 16):
    direct = linalg.mat_pow(c, n) @ (eye - c)
    recon = contour.riesz_dunford(lambda z, n=n: z**n * (1 - z), c, nodes)
    print(f"n={n:>3}: ||reconstructed C^n(1-C) - direct|| = "
          f"{linalg.op_norm(recon - direct):.2e}")

report = contour.contour_norm_bound_check(c, alpha, alpha_prime, 16)
print(f"\nresolvent majorants at {report.node_count} nodes:")
print(f"  arc ratio   <= {report.worst_ratio_arc:.6f}")
print(f"  line ratio  <= {report.worst_ratio_lines:.6f}")
print(f"  dist ratio  <= {report.worst_dist_ratio:.6f}")
print(f"  max |z^n - e^(n(z-1))| on contour (n=16): {report.max_integrand_gap:.4f}")
print("\nthe nodewise integrand gap decays with n, which is exactly why the")
print("norm convergence follows from dominated convergence along the contour:")
for n in (16, 256, 4096):
    rep = contour.contour_norm_bound_check(c, alpha, alpha_prime, n)
    print(f"  n={n:>5}: max integrand gap = {rep.max_integrand_gap:.6f}")
