"""
Hasse-Witt matrix entries as exact polynomials
==============================================

Entries of the semilinear chain matrices are polynomials in the branch
points, here with the points at (0, 1, t, infinity) so everything
collapses to one variable after specialization.
"""

from cyclocover.hassewitt import (
    OrbitContext,
    phi_entry,
    phi_specialized,
    psi_entry,
    specialize_infty,
)
from cyclocover.monodromy import MonodromyDatum

d7 = MonodromyDatum(7, 4, (3, 1, 1, 2))
p = 13

# a full multivariate entry: one variable per finite branch point
entry = phi_entry(d7, p, 2, 1, 1)
print(f"phi entry (tau=2, row 1, col 1) at p={p}:")
print("  monomials:", entry.num_terms())

# sending x1 -> 0, x2 -> 1, x4 -> infinity leaves a polynomial in t = x3
one_var = specialize_infty(entry)
print("  specialized:", one_var.to_text())

print("\nanother entry, tau=3:")
print(" ", specialize_infty(phi_entry(d7, p, 3, 1, 1)).to_text())

# the specialized entries come straight from a three-parameter binomial
# family, no expansion needed; both routes must agree
ctx = OrbitContext(d7, p, 5)
direct = phi_specialized(ctx, 2, 1, 1)
print("\nclosed-form route agrees with expansion:", direct == one_var)

# psi entries cover the steps where the character walk leaves the
# signature-1 region
d5 = MonodromyDatum(5, 4, (1, 1, 1, 2))
ps = psi_entry(d5, 7, 3, 1, 1)
print("\npsi entry at m=5, p=7, tau=3:", ps.num_terms(), "monomials")
print("  specialized:", specialize_infty(ps).to_text())
