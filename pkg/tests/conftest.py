import random

import pytest

from epsgrass import CoeffRing, GrassAlgebra, ZZ


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_eps_poly(rng, coeff, max_index=4, nterms=3, lo=-3, hi=3):
    base = coeff.base
    acc = coeff.zero()
    for _ in range(rng.randint(0, nterms)):
        t = rng.randint(0, 1)
        size = rng.randint(0, max_index)
        eps = tuple(sorted(rng.sample(range(1, max_index + 1), size)))
        acc = acc + coeff.monomial(t, eps, base.sample(rng, lo, hi))
    return acc


def random_word(rng, max_index=4, max_len=3):
    length = rng.randint(1, max_len)
    letters = [rng.randint(1, max_index) for _ in range(length)]
    from epsgrass import word_from_letters

    return word_from_letters(letters)


def random_grass_elem(rng, algebra, max_index=4, max_len=3, nterms=2, lo=-3, hi=3):
    acc = algebra.zero()
    for _ in range(rng.randint(1, nterms)):
        word = random_word(rng, max_index, max_len)
        coeff = random_eps_poly(rng, algebra.coeff, max_index, 2, lo, hi)
        acc = acc + algebra.monomial(word, coeff)
    return acc


def random_perm(rng, n):
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return tuple(images)


def zz_algebra(truncated=False):
    return GrassAlgebra(CoeffRing(ZZ), truncated=truncated)
