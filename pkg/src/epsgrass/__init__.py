"""epsgrass: exact computer algebra for sign-twisted Grassmann algebras.

The package provides the coefficient ring C[eps] (eps_i^2 = theta*eps_i,
theta^2 = 2), the twisted Grassmann algebra it coefficients, generalized
permutation signs and their S_n co-module, idempotent/superalgebra
decompositions and hulls, and a normalizer for the free algebra with a
formal trace-like linear function.
"""

from .rings import (
    ZZ,
    QQ,
    GF,
    BaseRing,
    CapabilityError,
    IntegerRing,
    ModRing,
    RationalRing,
    RingError,
    RingMismatchError,
    ring_from_spec,
)
from .epsilon import CoeffRing, EpsPoly, eps_add, eps_mul, exp_map, phi_sigma
from .grassmann import (
    GrassAlgebra,
    GrassElem,
    Word,
    commutator,
    eps_of_grade,
    esgn,
    eta_endomorphism,
    permute_words,
    quotient_mod_theta,
    reorder_product,
    scommutator,
    word_from_letters,
    word_grade,
    word_letters,
)
from .salg import SAlgebra, SElem, s_mul, s_scommutator

__all__ = [
    "ZZ",
    "QQ",
    "GF",
    "BaseRing",
    "CapabilityError",
    "IntegerRing",
    "ModRing",
    "RationalRing",
    "RingError",
    "RingMismatchError",
    "ring_from_spec",
    "CoeffRing",
    "EpsPoly",
    "eps_add",
    "eps_mul",
    "exp_map",
    "phi_sigma",
    "GrassAlgebra",
    "GrassElem",
    "Word",
    "commutator",
    "eps_of_grade",
    "esgn",
    "eta_endomorphism",
    "permute_words",
    "quotient_mod_theta",
    "reorder_product",
    "scommutator",
    "word_from_letters",
    "word_grade",
    "word_letters",
    "SAlgebra",
    "SElem",
    "s_mul",
    "s_scommutator",
]
