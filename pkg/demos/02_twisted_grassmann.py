"""The twisted Grassmann algebra: arithmetic and its one identity.

Generators obey e_j e_i = (1 - eps_i eps_j) e_i e_j; squares are
central and theta*eps_i kills them.  Every commutator is central, and
that single fact generates all identities.
"""

import random

from epsgrass import (
    CoeffRing,
    GrassAlgebra,
    ZZ,
    commutator,
    eta_endomorphism,
    quotient_mod_theta,
    scommutator,
    word_from_letters,
)

A = GrassAlgebra(CoeffRing(ZZ))
e = A.gen

print("commutation:")
print("  e2*e1 =", (e(2) * e(1)).render())
print("  [e1,e2] =", commutator(e(1), e(2)).render())

print("\nthe nested commutator vanishes, even with repeated letters:")
print("  [e1,[e2,e3]] =", commutator(e(1), commutator(e(2), e(3))).render())
print("  [e1,[e1,e2]] =", commutator(e(1), commutator(e(1), e(2))).render())

print("\ntwisted commutators vanish for every pair of elements:")
rng = random.Random(1)
x = e(1) * e(2) + A.theta() * e(3)
y = e(2) * e(3) - A.from_int(2) * e(1)
print("  {x,y} =", scommutator(x, y).render())

print("\nsubstitution endomorphisms re-express generators by words:")
img = eta_endomorphism(A, [word_from_letters([2, 3])], A.eps(1))
print("  e1 -> e2*e3 sends eps1 to", img.render())

print("\nquotients:")
T = GrassAlgebra(CoeffRing(ZZ), truncated=True)
print("  truncated mode: e1*e1 =", (T.gen(1) * T.gen(1)).render())
q = quotient_mod_theta(commutator(e(1), e(2)))
print("  mod theta over Z/2: [e1,e2] =", q.render())
qc = q.algebra.coeff
print("  and eps1^2 there =", (qc.eps(1) * qc.eps(1)).render())
