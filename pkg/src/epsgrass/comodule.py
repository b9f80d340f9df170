"""Multilinear polynomials, identity testing and the sign co-module.

A multilinear polynomial of arity n is a map from permutations of
{1..n} to coefficients; x_{s(1)}...x_{s(n)} is keyed by the image tuple
s.  Substituting the generators e_1..e_n decides membership in the
identity ideal of the twisted Grassmann algebra; the corresponding
vector of generalized signs spans a free module of rank 2^(n-1), with
an explicit spanning set (ascending prefix times a product of
commutators in ascending disjoint pairs).  Rank and freeness are
certified by exact integer linear algebra, and normal forms modulo the
identities are computed by solving against the sign images of the
spanning set.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Sequence

from .epsilon import CoeffRing, EpsPoly
from .grassmann import GrassAlgebra, GrassElem, esgn, word_from_letters
from .linalg import SmithSolver, rank_int, rank_mod, rank_rational
from .rings import BaseRing, IntegerRing, ModRing, RationalRing, RingMismatchError
from . import epsilon

MAX_COMODULE_ARITY = 8


class InternalError(Exception):
    """A contract the certified linear algebra guarantees was violated."""


class WordPoly:
    """Noncommutative polynomial in formal variables x_i (plumbing used to
    expand commutator products into monomial tables)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: BaseRing, terms: dict | None = None):
        self.ring = ring
        self.terms = terms or {}

    @classmethod
    def var(cls, ring: BaseRing, i: int) -> "WordPoly":
        return cls(ring, {(i,): ring.one()})

    @classmethod
    def const(cls, ring: BaseRing, c) -> "WordPoly":
        if ring.is_zero(c):
            return cls(ring, {})
        return cls(ring, {(): c})

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "WordPoly") -> "WordPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = self.ring.add(out.get(w, self.ring.zero()), c)
            if self.ring.is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s
        return WordPoly(self.ring, out)

    def __neg__(self) -> "WordPoly":
        return WordPoly(self.ring, {w: self.ring.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "WordPoly") -> "WordPoly":
        self._check(other)
        out: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                s = self.ring.add(out.get(w, self.ring.zero()), self.ring.mul(ca, cb))
                if self.ring.is_zero(s):
                    out.pop(w, None)
                else:
                    out[w] = s
        return WordPoly(self.ring, out)

    def commutator(self, other: "WordPoly") -> "WordPoly":
        return self * other - other * self

    def scale(self, c) -> "WordPoly":
        out = {}
        for w, v in self.terms.items():
            s = self.ring.mul(v, c)
            if not self.ring.is_zero(s):
                out[w] = s
        return WordPoly(self.ring, out)

    def is_zero(self):
        return not self.terms


class MultilinearPoly:
    """Arity-n multilinear polynomial: permutation tuple -> coefficient."""

    __slots__ = ("n", "ring", "coeffs")

    def __init__(self, n: int, ring: BaseRing, coeffs: dict):
        self.n = n
        self.ring = ring
        for key, c in coeffs.items():
            if sorted(key) != list(range(1, n + 1)):
                raise ValueError(f"{key} is not a permutation of 1..{n}")
            if ring.is_zero(c):
                raise ValueError("zero coefficient stored")
        self.coeffs = coeffs

    @classmethod
    def from_word_poly(cls, p: WordPoly, n: int) -> "MultilinearPoly":
        for w in p.terms:
            if sorted(w) != list(range(1, n + 1)):
                raise ValueError(
                    f"monomial {w} is not multilinear in x1..x{n}"
                )
        return cls(n, p.ring, dict(p.terms))

    @classmethod
    def monomial(cls, n: int, ring: BaseRing, perm: Sequence[int], c=None) -> "MultilinearPoly":
        coeff = ring.one() if c is None else c
        return cls(n, ring, {tuple(perm): coeff})

    def _check(self, other: "MultilinearPoly"):
        if self.n != other.n:
            raise ValueError("arity mismatch")
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = self.ring.add(out.get(k, self.ring.zero()), c)
            if self.ring.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return MultilinearPoly(self.n, self.ring, out)

    def __neg__(self):
        return MultilinearPoly(
            self.n, self.ring, {k: self.ring.neg(c) for k, c in self.coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MultilinearPoly":
        out = {}
        for k, v in self.coeffs.items():
            s = self.ring.mul(v, c)
            if not self.ring.is_zero(s):
                out[k] = s
        return MultilinearPoly(self.n, self.ring, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, MultilinearPoly)
            and other.n == self.n
            and other.ring == self.ring
            and other.coeffs == self.coeffs
        )

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for key in sorted(self.coeffs):
            c = self.ring.render(self.coeffs[key])
            word = "*".join(f"x{i}" for i in key)
            parts.append(f"[{c}]*{word}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultilinearPoly({self.render()})"


# -- evaluation and identity testing ------------------------------------


def evaluate(f: MultilinearPoly, subs: Sequence[GrassElem]) -> GrassElem:
    """Multilinear substitution x_i -> subs[i-1], product via the algebra."""
    if len(subs) != f.n:
        raise ValueError(f"expected {f.n} substitutions, got {len(subs)}")
    if not subs:
        raise ValueError("empty substitution")
    algebra = subs[0].algebra
    result = algebra.zero()
    for perm, c in f.coeffs.items():
        term = algebra.one()
        for i in perm:
            term = term * subs[i - 1]
        result = result + term.scale(c)
    return result


def identity_test_algebra(ring: BaseRing, truncated: bool = False) -> GrassAlgebra:
    return GrassAlgebra(CoeffRing(ring), truncated=truncated)


def is_identity(f: MultilinearPoly, truncated: bool = False) -> bool:
    """Membership in the identity ideal: f is an identity iff it vanishes
    on the generic substitution x_i -> e_i."""
    algebra = identity_test_algebra(f.ring, truncated)
    subs = [algebra.gen(i) for i in range(1, f.n + 1)]
    return evaluate(f, subs).is_zero()


def sn_act_poly(pi: Sequence[int], f: MultilinearPoly) -> MultilinearPoly:
    """Variable reordering action: keys sigma map to pi∘sigma."""
    out: dict = {}
    for key, c in f.coeffs.items():
        new = tuple(pi[i - 1] for i in key)
        out[new] = c
    return MultilinearPoly(f.n, f.ring, out)


# -- the sign co-module --------------------------------------------------


def unit_words(n: int):
    return [word_from_letters([i]) for i in range(1, n + 1)]


def psi(f: MultilinearPoly) -> EpsPoly:
    """Image of f in the sign module: sum of a_sigma * esgn(e., sigma)."""
    coeff = CoeffRing(f.ring)
    w = unit_words(f.n)
    acc = coeff.zero()
    for perm, c in f.coeffs.items():
        acc = acc + esgn(coeff, w, perm).scale(c)
    return acc


def sign_act(pi: Sequence[int], lam: EpsPoly, n: int | None = None) -> EpsPoly:
    """Twisted action on the sign module: pi(lam) = esgn(pi) phi_pi(lam)."""
    n = len(pi) if n is None else n
    coeff = lam.ring
    pmap = {i + 1: pi[i] for i in range(n)}
    return esgn(coeff, unit_words(n), pi) * epsilon.phi_sigma(pmap, lam)


def _monomial_columns(n: int):
    cols = []
    for t in (0, 1):
        for r in range(n + 1):
            for eps in combinations(range(1, n + 1), r):
                cols.append((t, eps))
    return cols


def _vectorize(p: EpsPoly, index: dict, ring: BaseRing):
    vec = [ring.zero()] * len(index)
    for key, c in p.terms.items():
        vec[index[key]] = c
    return vec


_SIGN_MATRIX_CACHE: dict = {}


def sign_matrix_int(n: int) -> tuple[list, list, list[list[int]]]:
    """All esgn rows over Z: (permutations, monomial columns, rows)."""
    if n in _SIGN_MATRIX_CACHE:
        return _SIGN_MATRIX_CACHE[n]
    coeff = CoeffRing(IntegerRing())
    w = unit_words(n)
    cols = _monomial_columns(n)
    index = {m: k for k, m in enumerate(cols)}
    perms = sorted(permutations(range(1, n + 1)))
    rows = [_vectorize(esgn(coeff, w, s), index, IntegerRing()) for s in perms]
    _SIGN_MATRIX_CACHE[n] = (perms, cols, rows)
    return perms, cols, rows


def comodule_rank(n: int, ring: BaseRing) -> int:
    """Rank of the module spanned by all generalized signs of S_n."""
    if not 1 <= n <= MAX_COMODULE_ARITY:
        raise ValueError(f"arity must be between 1 and {MAX_COMODULE_ARITY}")
    _, _, rows = sign_matrix_int(n)
    if isinstance(ring, IntegerRing):
        return rank_int(rows)
    if isinstance(ring, RationalRing):
        return rank_rational(rows)
    if isinstance(ring, ModRing):
        if not ring.is_field:
            raise ValueError("rank over Z/m needs a prime modulus")
        return rank_mod(rows, ring.m)
    raise ValueError(f"unsupported ring {ring}")


def matrix_dump(n: int) -> str:
    """Debug format: one esgn row per permutation (lexicographic order),
    entries in canonical monomial column order."""
    perms, cols, rows = sign_matrix_int(n)
    header = " ".join(
        ("theta*" if t else "") + ("*".join(f"eps{i}" for i in eps) or "1")
        for t, eps in cols
    )
    lines = [f"# columns: {header}"]
    for perm, row in zip(perms, rows):
        lines.append(f"{perm}: " + " ".join(str(v) for v in row))
    return "\n".join(lines)


# -- spanning terms and normal forms -------------------------------------


class SpanningTerm(tuple):
    """Prefix/tail partition of {1..n}: ascending prefix variables times a
    product of commutators of the ascending even-length tail, paired in
    consecutive twos."""

    def __new__(cls, prefix: Iterable[int], tail: Iterable[int]):
        prefix = tuple(prefix)
        tail = tuple(tail)
        if list(prefix) != sorted(prefix) or list(tail) != sorted(tail):
            raise ValueError("prefix and tail must be ascending")
        if len(tail) % 2 != 0:
            raise ValueError("tail must have even length")
        if set(prefix) & set(tail):
            raise ValueError("prefix and tail must be disjoint")
        return super().__new__(cls, (prefix, tail))

    @property
    def prefix(self):
        return self[0]

    @property
    def tail(self):
        return self[1]

    def arity(self) -> int:
        return len(self.prefix) + len(self.tail)

    def to_poly(self, ring: BaseRing) -> MultilinearPoly:
        p = WordPoly.const(ring, ring.one())
        for i in self.prefix:
            p = p * WordPoly.var(ring, i)
        for a, b in zip(self.tail[::2], self.tail[1::2]):
            p = p * WordPoly.var(ring, a).commutator(WordPoly.var(ring, b))
        return MultilinearPoly.from_word_poly(p, self.arity())

    def render(self) -> str:
        parts = [f"x{i}" for i in self.prefix]
        parts.extend(
            f"[x{a},x{b}]" for a, b in zip(self.tail[::2], self.tail[1::2])
        )
        return "*".join(parts) if parts else "1"


def spanning_terms(n: int) -> list[SpanningTerm]:
    out = []
    for r in range(0, n + 1, 2):
        for tail in combinations(range(1, n + 1), r):
            prefix = tuple(i for i in range(1, n + 1) if i not in tail)
            out.append(SpanningTerm(prefix, tail))
    return out


def _spanning_matrix_int(n: int):
    cols = _monomial_columns(n)
    index = {m: k for k, m in enumerate(cols)}
    terms = spanning_terms(n)
    zz = IntegerRing()
    rows = [
        _vectorize(psi(t.to_poly(zz)), index, zz) for t in terms
    ]
    return terms, cols, index, rows


_SOLVER_CACHE: dict = {}


def _spanning_solver(n: int):
    if n not in _SOLVER_CACHE:
        terms, cols, index, rows = _spanning_matrix_int(n)
        _SOLVER_CACHE[n] = (terms, cols, index, SmithSolver(rows))
    return _SOLVER_CACHE[n]


def freeness_certificate(n: int) -> bool:
    """Smith normal form of the spanning-set sign matrix has an all-ones
    diagonal of length 2^(n-1): the span is free over every base ring."""
    if not 1 <= n <= MAX_COMODULE_ARITY:
        raise ValueError(f"arity must be between 1 and {MAX_COMODULE_ARITY}")
    terms, _, _, solver = _spanning_solver(n)
    return solver.certified and solver.nrows == 2 ** (n - 1) == len(terms)


def grassmann_normal_form(f: MultilinearPoly) -> dict[SpanningTerm, object]:
    """Coordinates of f in the spanning basis, modulo the identity ideal.

    Solves psi(f) = sum c_B psi(B) with the integer certificate, then
    verifies the residual f - sum c_B B is an identity.
    """
    ring = f.ring
    if not (isinstance(ring, (IntegerRing, RationalRing)) or ring.is_field):
        raise ValueError("normal form needs Z or a field")
    if not freeness_certificate(f.n):
        raise InternalError(f"spanning set at arity {f.n} is not certified free")
    terms, cols, index, solver = _spanning_solver(f.n)
    vec = _vectorize(psi(f), index, ring)
    sol, ok = solver.solve(vec, ring)
    if not ok:
        raise InternalError("sign image not in the span of the spanning set")
    coords = {t: c for t, c in zip(terms, sol) if not ring.is_zero(c)}
    residual = f
    for t, c in coords.items():
        residual = residual - t.to_poly(ring).scale(c)
    if not (residual.is_zero() or is_identity(residual)):
        raise InternalError("normal-form residual is not an identity")
    return coords
