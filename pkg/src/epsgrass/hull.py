"""Idempotent decomposition, supercommutative embeddings and hulls.

When 2 is invertible, the products of the idempotents theta*eps_a/2 and
their complements split the coefficient ring into a complete system of
idempotents; each projected piece of the algebra is supercommutative
(odd generators anticommute, even ones are central).  The same
idempotents embed the free supercommutative algebra and transfer
multilinear graded identities through the sign involution
f* = sum esgn(sigma) a_sigma x_sigma(1)...x_sigma(n); evaluating a
graded polynomial on simple tensors (matrix (x) word) factors as
f*(matrices) (x) product of words.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterable, Sequence

from .epsilon import CoeffRing, EpsPoly
from .grassmann import GrassAlgebra, GrassElem, esgn
from .salg import SAlgebra, SElem
from .rings import RingMismatchError


class GradeMismatchError(ValueError):
    pass


# -- idempotents ---------------------------------------------------------


def lambda_idempotent(coeff: CoeffRing, signs: dict[int, int]) -> EpsPoly:
    """Product of theta*eps_a/2 over signs(a) = -1 and (1 - theta*eps_b/2)
    over signs(b) = +1.  Needs 1/2 in the base ring."""
    half = coeff.base.half()
    acc = coeff.one()
    for a in sorted(signs):
        s = signs[a]
        if s not in (-1, 1):
            raise ValueError(f"sign for index {a} must be +1 or -1")
        piece = (coeff.theta() * coeff.eps(a)).scale(half)
        if s == -1:
            acc = acc * piece
        else:
            acc = acc * (coeff.one() - piece)
    return acc


def all_sign_maps(indices: Iterable[int]):
    idx = sorted(indices)
    for values in iproduct((-1, 1), repeat=len(idx)):
        yield dict(zip(idx, values))


def idempotent_system_check(coeff: CoeffRing, indices: Iterable[int]) -> bool:
    """Idempotence, pairwise orthogonality and summation to 1."""
    lambdas = [lambda_idempotent(coeff, s) for s in all_sign_maps(indices)]
    total = coeff.zero()
    for lam in lambdas:
        if lam * lam != lam:
            return False
        total = total + lam
    if total != coeff.one():
        return False
    for i in range(len(lambdas)):
        for j in range(i + 1, len(lambdas)):
            if not (lambdas[i] * lambdas[j]).is_zero():
                return False
    return True


def projected_commutation_check(algebra: GrassAlgebra, signs: dict[int, int]) -> bool:
    """In the piece cut out by the idempotent: odd projected generators
    anticommute pairwise, even ones are central."""
    lam = lambda_idempotent(algebra.coeff, signs)
    proj = {a: algebra.gen(a).scale_coeff(lam) for a in signs}
    odd = [a for a, s in signs.items() if s == -1]
    even = [a for a, s in signs.items() if s == +1]
    for k, a in enumerate(odd):
        for b in odd[k + 1 :]:
            if proj[a] * proj[b] != -(proj[b] * proj[a]):
                return False
    for b in even:
        for c in signs:
            if proj[b] * proj[c] != proj[c] * proj[b]:
                return False
    return True


# -- embedding of the free supercommutative algebra ----------------------


def phi_embed(
    x: SElem, parity: dict[int, int], target: GrassAlgebra
) -> GrassElem:
    """Embed an element with single-index grades: an odd generator at
    index a maps to theta*eps_a/2 * e_a, an even one to
    (1 - theta*eps_b/2) * e_b.  ``parity`` maps index -> 1 (odd) or
    0 (even).  Needs 1/2."""
    coeff = target.coeff
    if x.algebra.coeff != coeff:
        raise RingMismatchError("element and target coefficient rings differ")
    half = coeff.base.half()
    images: dict[int, GrassElem] = {}

    def gen_image(key):
        grade, _tag = key
        if len(grade) != 1:
            raise ValueError("phi_embed needs single-index grades")
        (a,) = grade
        if a not in images:
            if a not in parity:
                raise ValueError(f"no parity assigned to index {a}")
            piece = (coeff.theta() * coeff.eps(a)).scale(half)
            if parity[a] % 2 == 1:
                images[a] = target.gen(a).scale_coeff(piece)
            else:
                images[a] = target.gen(a).scale_coeff(coeff.one() - piece)
        return images[a]

    result = target.zero()
    for word, c in x.terms.items():
        img = target.from_coeff(c)
        for key in word:
            img = img * gen_image(key)
        result = result + img
    return result


# -- matrices -------------------------------------------------------------


class Matrix:
    """Square matrix over any ring-like entries (+, -, *), with an
    explicit zero entry for sums."""

    __slots__ = ("rows", "zero")

    def __init__(self, rows: Sequence[Sequence], zero):
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        self.rows = [list(r) for r in rows]
        self.zero = zero

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, zero, one) -> "Matrix":
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)], zero
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_dim(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.zero,
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.rows], self.zero)

    def __sub__(self, other):
        return self + (-other)

    def _check_dim(self, other: "Matrix"):
        if not isinstance(other, Matrix) or other.n != self.n:
            raise ValueError("matrix dimension mismatch")

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_dim(other)
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.zero
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(out, self.zero)

    def scale(self, c) -> "Matrix":
        return Matrix([[a * c for a in row] for row in self.rows], self.zero)

    def trace(self):
        acc = self.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(a == self.zero for row in self.rows for a in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.n == self.n
            and all(
                a == b
                for ra, rb in zip(self.rows, other.rows)
                for a, b in zip(ra, rb)
            )
        )

    def render(self) -> str:
        return "\n".join(
            " | ".join(_render_entry(a) for a in row) for row in self.rows
        )

    def __repr__(self):
        return f"Matrix({self.rows!r})"


def _render_entry(a) -> str:
    return a.render() if hasattr(a, "render") else str(a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a * b


def mat_trace(m: Matrix):
    return m.trace()


# -- graded multilinear polynomials and the involution --------------------


class GradedPoly:
    """Multilinear polynomial with C[eps] coefficients and a grade per
    variable position."""

    __slots__ = ("n", "coeff", "grades", "coeffs")

    def __init__(
        self,
        coeff: CoeffRing,
        grades: Sequence[frozenset],
        coeffs: dict,
    ):
        self.coeff = coeff
        self.grades = tuple(frozenset(g) for g in grades)
        self.n = len(self.grades)
        for key, c in coeffs.items():
            if sorted(key) != list(range(1, self.n + 1)):
                raise ValueError(f"{key} is not a permutation of 1..{self.n}")
            if c.ring != coeff:
                raise RingMismatchError("coefficient ring mismatch")
        self.coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, GradedPoly)
            and other.coeff == self.coeff
            and other.grades == self.grades
            and other.coeffs == self.coeffs
        )

    def map_coeffs(self, fn) -> "GradedPoly":
        out = {}
        for k, c in self.coeffs.items():
            v = fn(k, c)
            if not v.is_zero():
                out[k] = v
        return GradedPoly(self.coeff, self.grades, out)


def grassmann_involution(f: GradedPoly) -> GradedPoly:
    """Multiply each coefficient by the generalized sign of its
    permutation, signs taken in the variables' grades."""
    supports = list(f.grades)
    return f.map_coeffs(lambda sigma, c: esgn(f.coeff, supports, sigma) * c)


# -- hull elements and the factorization law ------------------------------


class HullElem:
    """Formal sum of (matrix, word) tensors, collected on word keys."""

    __slots__ = ("salgebra", "terms")

    def __init__(self, salgebra: SAlgebra, terms: dict | None = None):
        self.salgebra = salgebra
        self.terms = {}
        if terms:
            for word, mat in terms.items():
                if not mat.is_zero():
                    self.terms[word] = mat

    def add_tensor(self, mat: Matrix, word_elem: SElem):
        """Accumulate mat (x) word_elem, distributing the word's C[eps]
        coefficients onto the matrix side.  The tensor is over C[eps], so
        matrix entries inherit the word's torsion reduction."""
        for word, c in word_elem.terms.items():
            piece = mat.scale(c)
            if word in self.terms:
                piece = self.terms[word] + piece
            piece = self._reduce_entries(word, piece)
            if piece.is_zero():
                self.terms.pop(word, None)
            else:
                self.terms[word] = piece

    def _reduce_entries(self, word, mat: Matrix) -> Matrix:
        reduce = self.salgebra._torsion_reduce
        return Matrix(
            [[reduce(word, entry) for entry in row] for row in mat.rows], mat.zero
        )

    def __eq__(self, other):
        return (
            isinstance(other, HullElem)
            and other.salgebra == self.salgebra
            and other.terms == self.terms
        )

    def is_zero(self):
        return not self.terms


def hull_word_grade(w: SElem) -> frozenset:
    """Grade of a single-word SElem."""
    comps = w.grade_components()
    if len(comps) != 1:
        raise ValueError("expected a homogeneous word")
    return next(iter(comps))


def hull_evaluate(
    f: GradedPoly, mats: Sequence[tuple[Matrix, frozenset]], words: Sequence[SElem]
) -> HullElem:
    """Evaluate f on the simple tensors (mats[i] (x) words[i])."""
    if len(mats) != f.n or len(words) != f.n:
        raise ValueError("substitution arity mismatch")
    salg = words[0].algebra
    for i, ((_, g), w) in enumerate(zip(mats, words)):
        if frozenset(g) != f.grades[i] or hull_word_grade(w) != f.grades[i]:
            raise GradeMismatchError(f"grade mismatch at position {i + 1}")
    result = HullElem(salg)
    for sigma, c in f.coeffs.items():
        mat = None
        welem = salg.one()
        for i in sigma:
            m = mats[i - 1][0]
            mat = m if mat is None else mat * m
            welem = welem * words[i - 1]
        result.add_tensor(mat.scale(c), welem)
    return result


def hull_eval_factorization(
    f: GradedPoly, mats: Sequence[tuple[Matrix, frozenset]], words: Sequence[SElem]
) -> bool:
    """Check f(a_i (x) w_i) = f*(a_1..a_n) (x) (w_1 ... w_n)."""
    lhs = hull_evaluate(f, mats, words)
    salg = words[0].algebra
    fstar = grassmann_involution(f)
    total = None
    for sigma, c in fstar.coeffs.items():
        mat = None
        for i in sigma:
            m = mats[i - 1][0]
            mat = m if mat is None else mat * m
        mat = mat.scale(c)
        total = mat if total is None else total + mat
    rhs = HullElem(salg)
    if total is not None:
        wprod = salg.one()
        for w in words:
            wprod = wprod * w
        rhs.add_tensor(total, wprod)
    return lhs == rhs
