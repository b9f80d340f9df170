"""The free twisted-commutative algebra on graded generators.

Generators carry a Z2-support grade g and a numeric tag n, written
e_g^(n).  The only relations are the twisted commutation law

    e_h^(m) e_g^(n) = exp(eps_g eps_h) e_g^(n) e_h^(m)

together with its self-instance, which forces the torsion
(1 - exp(eps_g eps_g)) x^2 = 0 for every generator x = e_g^(n).
Normal form: words sorted by (sorted grade support, tag); coefficients
of words with a repeated generator are reduced to canonical residues
modulo the corresponding torsion ideal (a Hermite-normal-form lattice
reduction over Z and Z/m, row reduction over fields).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .epsilon import CoeffRing, EpsPoly, exp_map
from .grassmann import word_parity_pairs
from .linalg import LatticeReducer
from .rings import IntegerRing, ModRing, RationalRing, RingMismatchError

# generator key: (grade support frozenset, tag)
GenKey = tuple[frozenset, int]


def _sort_key(key: GenKey):
    g, n = key
    return (tuple(sorted(g)), n)


def _enumerate_monomials(indices: Sequence[int]):
    idx = sorted(indices)
    out = []
    for t in (0, 1):
        for r in range(len(idx) + 1):
            for combo in combinations(idx, r):
                out.append((t, combo))
    return out


class _FieldReducer:
    """Canonical residues modulo a Q-span (row reduction with Fractions)."""

    def __init__(self, rows: list[list[Fraction]]):
        self.pivots: list[tuple[int, list[Fraction]]] = []
        for row in rows:
            row = list(row)
            row = self._eliminate(row)
            lead = next((j for j, v in enumerate(row) if v), None)
            if lead is None:
                continue
            inv = 1 / row[lead]
            row = [v * inv for v in row]
            self.pivots.append((lead, row))
            self.pivots.sort(key=lambda t: t[0])

    def _eliminate(self, row):
        for col, prow in self.pivots:
            if row[col]:
                c = row[col]
                row = [x - c * y for x, y in zip(row, prow)]
        return row

    def reduce(self, vec):
        return self._eliminate(list(vec))


class SAlgebra:
    """Context for the free twisted-commutative algebra over C[eps]."""

    def __init__(self, base):
        self.coeff = base if isinstance(base, CoeffRing) else CoeffRing(base)
        self.base = self.coeff.base
        self._reducers: dict = {}

    def __eq__(self, other):
        return isinstance(other, SAlgebra) and other.coeff == self.coeff

    def __hash__(self):
        return hash(("SAlgebra", self.coeff))

    def __repr__(self):
        return f"SAlgebra({self.coeff})"

    def zero(self) -> "SElem":
        return SElem(self, {})

    def one(self) -> "SElem":
        return self.from_coeff(self.coeff.one())

    def from_coeff(self, c: EpsPoly) -> "SElem":
        if c.is_zero():
            return self.zero()
        return SElem(self, {(): c})

    def gen(self, grade: Iterable[int], tag: int) -> "SElem":
        key = (frozenset(grade), tag)
        return SElem(self, {(key,): self.coeff.one()})

    def monomial(self, keys: Sequence[GenKey], coeff: EpsPoly | None = None) -> "SElem":
        word = tuple(sorted(keys, key=_sort_key))
        c = self.coeff.one() if coeff is None else coeff
        terms: dict = {}
        self._accumulate(terms, word, c)
        return SElem(self, terms)

    # -- torsion normalization ----------------------------------------

    def _torsion_reduce(self, word, coeff: EpsPoly) -> EpsPoly:
        repeated_grades = set()
        seen = set()
        for key in word:
            if key in seen:
                repeated_grades.add(key[0])
            seen.add(key)
        repeated_grades.discard(frozenset())  # exp(0)=1 gives no relation
        if not repeated_grades or coeff.is_zero():
            return coeff
        ambient = set(coeff.indices())
        for g in repeated_grades:
            ambient |= g
        reducer = self._get_reducer(frozenset(repeated_grades), frozenset(ambient))
        monos = _enumerate_monomials(sorted(ambient))
        index = {m: k for k, m in enumerate(monos)}
        vec = [self.base.zero()] * len(monos)
        for key, c in coeff.terms.items():
            vec[index[key]] = c
        reduced = reducer.reduce(vec)
        out = {}
        for k, c in enumerate(reduced):
            c = self.base.from_int(c) if isinstance(c, int) else c
            if not self.base.is_zero(c):
                out[monos[k]] = c
        return EpsPoly(self.coeff, out)

    def _get_reducer(self, grades: frozenset, ambient: frozenset):
        cache_key = (tuple(sorted(tuple(sorted(g)) for g in grades)), tuple(sorted(ambient)))
        if cache_key in self._reducers:
            return self._reducers[cache_key]
        monos = _enumerate_monomials(sorted(ambient))
        index = {m: k for k, m in enumerate(monos)}
        # torsion generators 1 - exp(eps_g eps_g), built over Z so the
        # lattice is independent of the working base ring
        int_ring = CoeffRing(IntegerRing())
        int_gens = [
            int_ring.one() - exp_map(int_ring, word_parity_pairs(g, g))
            for g in sorted(grades, key=lambda s: tuple(sorted(s)))
        ]
        rows = []
        for u in int_gens:
            for m in monos:
                prod = u * EpsPoly(int_ring, {m: 1})
                row = [0] * len(monos)
                ok = True
                for key, c in prod.terms.items():
                    if key not in index:
                        ok = False  # escapes the ambient monomial set
                        break
                    row[index[key]] = c
                if ok and any(row):
                    rows.append(row)
        base = self.base
        if isinstance(base, IntegerRing):
            reducer = LatticeReducer(rows, len(monos))
        elif isinstance(base, ModRing):
            lifted = rows + [
                [base.m if i == j else 0 for j in range(len(monos))]
                for i in range(len(monos))
            ]
            lattice = LatticeReducer(lifted, len(monos))
            reducer = _ModReducer(lattice, base)
        elif isinstance(base, RationalRing):
            reducer = _FieldReducer([[Fraction(v) for v in r] for r in rows])
        else:
            raise NotImplementedError(f"no torsion reducer over {base}")
        self._reducers[cache_key] = reducer
        return reducer

    def _accumulate(self, terms: dict, word, coeff: EpsPoly):
        coeff = self._torsion_reduce(word, coeff)
        if coeff.is_zero():
            return
        if word in terms:
            s = self._torsion_reduce(word, terms[word] + coeff)
            if s.is_zero():
                del terms[word]
            else:
                terms[word] = s
        else:
            terms[word] = coeff


class _ModReducer:
    def __init__(self, lattice: LatticeReducer, ring: ModRing):
        self.lattice = lattice
        self.ring = ring

    def reduce(self, vec):
        out = self.lattice.reduce([int(v) for v in vec])
        return [self.ring.from_int(v) for v in out]


class SElem:
    """Element of the free twisted-commutative algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: SAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "SElem"):
        if self.algebra != other.algebra:
            raise RingMismatchError(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other: "SElem") -> "SElem":
        self._check(other)
        alg = self.algebra
        terms = dict(self.terms)
        for word, c in other.terms.items():
            if word in terms:
                s = alg._torsion_reduce(word, terms[word] + c)
                if s.is_zero():
                    del terms[word]
                else:
                    terms[word] = s
            else:
                terms[word] = c
        return SElem(alg, terms)

    def __neg__(self) -> "SElem":
        alg = self.algebra
        out: dict = {}
        for w, c in self.terms.items():
            alg._accumulate(out, w, -c)
        return SElem(alg, out)

    def __sub__(self, other: "SElem") -> "SElem":
        return self + (-other)

    def __mul__(self, other: "SElem") -> "SElem":
        self._check(other)
        alg = self.algebra
        out: dict = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                pairs = []
                for kb in v:
                    sb = _sort_key(kb)
                    for ka in u:
                        if sb < _sort_key(ka):
                            pairs.extend(word_parity_pairs(ka[0], kb[0]))
                factor = exp_map(alg.coeff, pairs)
                merged = tuple(sorted(u + v, key=_sort_key))
                coeff = cu * cv if factor.is_one() else cu * cv * factor
                alg._accumulate(out, merged, coeff)
        return SElem(alg, out)

    def scale_coeff(self, c: EpsPoly) -> "SElem":
        alg = self.algebra
        out: dict = {}
        for w, cw in self.terms.items():
            alg._accumulate(out, w, cw * c)
        return SElem(alg, out)

    def scale_int(self, n: int) -> "SElem":
        return self.scale_coeff(self.algebra.coeff.from_int(n))

    def __eq__(self, other):
        return (
            isinstance(other, SElem)
            and other.algebra == self.algebra
            and other.terms == self.terms
        )

    def grade_components(self) -> dict[frozenset, "SElem"]:
        parts: dict[frozenset, dict] = {}
        for word, c in self.terms.items():
            g: frozenset = frozenset()
            for key in word:
                g = g.symmetric_difference(key[0])
            parts.setdefault(g, {})[word] = c
        return {g: SElem(self.algebra, t) for g, t in parts.items()}

    def render(self) -> str:
        if not self.terms:
            return "(0)"
        parts = []
        for word in sorted(self.terms, key=lambda w: tuple(_sort_key(k) for k in w)):
            c = self.terms[word]
            if word:
                gens = "*".join(
                    f"E[{{{','.join(map(str, sorted(g)))}}};{n}]" for g, n in word
                )
                parts.append(f"({c.render()}) * {gens}")
            else:
                parts.append(f"({c.render()})")
        return " + ".join(parts)

    def __repr__(self):
        return f"SElem({self.render()})"


def s_mul(a: SElem, b: SElem) -> SElem:
    return a * b


def s_scommutator(a: SElem, b: SElem) -> SElem:
    """{a,b} = ab - exp(eps_g eps_h) ba, bilinear over grade components."""
    a._check(b)
    alg = a.algebra
    result = alg.zero()
    for g, ag in a.grade_components().items():
        for h, bh in b.grade_components().items():
            factor = exp_map(alg.coeff, word_parity_pairs(g, h))
            result = result + ag * bh - (bh * ag).scale_coeff(factor)
    return result
