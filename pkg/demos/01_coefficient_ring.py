"""The coefficient ring C[eps] and the generalized signs.

The ring C[eps] = C[theta, eps1, eps2, ...] carries the relations
eps_i^2 = theta*eps_i and theta^2 = 2.  Its exp map packages products
of (1 - eps_i*eps_j) factors, which is exactly what reordering
generators costs.
"""

from itertools import permutations

from epsgrass import CoeffRing, ZZ, esgn, exp_map
from epsgrass.comodule import unit_words

coeff = CoeffRing(ZZ)
one, theta = coeff.one(), coeff.theta()
eps = coeff.eps

print("defining relations:")
print("  eps1 * eps1 =", (eps(1) * eps(1)).render())
print("  theta * theta =", (theta * theta).render())

print("\nthe exp map (multiplicities reduce mod 2):")
print("  exp{} =", exp_map(coeff, []).render())
print("  exp{(1,2)} =", exp_map(coeff, [(1, 2)]).render())
print("  exp{(1,2),(1,2)} =", exp_map(coeff, [(1, 2), (1, 2)]).render())
d = exp_map(coeff, [(1, 1)])
print("  exp{(1,1)} =", d.render(), " with square", (d * d).render())

print("\ngeneralized signs of S_3 (w = (e1, e2, e3)):")
for sigma in sorted(permutations((1, 2, 3))):
    value = esgn(coeff, unit_words(3), sigma)
    print(f"  {sigma}: {value.render()}")

print("\nevery sign squares to 1, e.g. for (3,2,1):")
s = esgn(coeff, unit_words(3), (3, 2, 1))
print("  esgn^2 =", (s * s).render())
