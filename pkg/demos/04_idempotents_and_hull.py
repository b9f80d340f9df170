"""Idempotents, supercommutative pieces and the hull factorization.

When 2 is invertible, the elements theta*eps_a/2 are idempotents; sign
patterns cut the algebra into pieces where the chosen generators
honestly anticommute or centralize.  Graded multilinear polynomials
evaluated on simple tensors factor through the sign involution.
"""

import random
from fractions import Fraction

from epsgrass import CoeffRing, GrassAlgebra, QQ
from epsgrass.hull import (
    GradedPoly,
    Matrix,
    grassmann_involution,
    hull_eval_factorization,
    idempotent_system_check,
    lambda_idempotent,
    phi_embed,
    projected_commutation_check,
)
from epsgrass.salg import SAlgebra

CQ = CoeffRing(QQ)

print("idempotents over Q:")
lam = lambda_idempotent(CQ, {1: -1})
print("  Lambda(1 -> -1) =", lam.render())
print("  squared:", (lam * lam).render())
print("  complete system on {1,2,3}:", idempotent_system_check(CQ, (1, 2, 3)))

A = GrassAlgebra(CQ)
print("\nprojected pieces (all sign patterns on {1,2}):")
for signs in ({1: -1, 2: -1}, {1: -1, 2: 1}, {1: 1, 2: 1}):
    ok = projected_commutation_check(A, signs)
    print(f"  {signs}: anticommuting/central as assigned -> {ok}")

print("\nembedding the free supercommutative algebra:")
S = SAlgebra(CQ)
odd1 = phi_embed(S.gen({1}, 1), {1: 1, 2: 1}, A)
odd2 = phi_embed(S.gen({2}, 2), {1: 1, 2: 1}, A)
print("  image of an odd generator:", odd1.render())
print("  anticommutation: a*b + b*a =", (odd1 * odd2 + odd2 * odd1).render())

print("\nthe involution twists coefficients by signs:")
grades = [frozenset({1}), frozenset({2})]
f = GradedPoly(CQ, grades, {(2, 1): CQ.one()})
print("  f = x2*x1 (both odd);  f* coefficient:",
      grassmann_involution(f).coeffs[(2, 1)].render())

print("\nhull factorization f(a (x) w) = f*(a) (x) prod(w):")
rng = random.Random(4)
mats = []
words = []
for i, g in enumerate(grades):
    rows = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
    mats.append((Matrix([[CQ.scalar(v) for v in row] for row in rows], CQ.zero()), g))
    words.append(S.monomial([(g, i + 1)]))
print("  holds on a random sample:", hull_eval_factorization(f, mats, words))
