"""The free algebra with a formal linear function F and its identities.

Multilinear polynomials in letters x_1..x_n and a formal trace-like
function F are reduced to a canonical standard form.  Terms are either
commutator-structured,

    w * F(v_1)...F(v_k) * [w_1,F(u_1)]...[w_m,F(u_m)]
      * [F(u_{m+1}),F(u_{m+2})]... * F([s_1,t_1])...

with the trace words cyclically minimal, the u-words globally sorted,
the (s, t) pairs sorted and each s smaller than some letter of t, or
irreducible nested monomials: plain products whose trace arguments
contain further trace factors strictly in their interior (e.g.
F(x1*F(x2)*x3), which no combination of the structured terms can
express).

The reduction is computed semantically: polynomials are evaluated in a
graded model (a free algebra whose trace values twist-commute past
everything, with trace arguments identified up to twisted rotation) and
the coordinates in the basis are recovered by an exact integer linear
solve.  A Smith-normal-form certificate, computed once per block of the
basis, guarantees the coordinates are unique and valid over every base
ring.  Four defining identities generate everything:

    F(F(x)y) = F(x)F(y)        F(xF(y)) = F(x)F(y)
    [x, F([y,z])] = 0          [F(x), [F(y), z]] = 0

Matrix algebras over the twisted Grassmann algebra, with F the ordinary
matrix trace, satisfy all four; they provide the soundness checks and
the witness search for non-identities.
"""

from __future__ import annotations

import random
from itertools import permutations, product as iproduct
from typing import NamedTuple, Sequence

from .epsilon import CoeffRing, EpsPoly, exp_map
from .grassmann import GrassAlgebra, GrassElem
from .hull import Matrix
from .linalg import SmithSolver
from .rings import BaseRing, IntegerRing, RingMismatchError

MAX_TRACE_ARITY = 6


class NonMultilinearError(ValueError):
    pass


class TraceArgumentError(ValueError):
    """A trace argument without letters at its own level (e.g. F(F(x)))
    is outside the reducible fragment."""


class TraceInternalError(Exception):
    """A certified linear-algebra contract was violated."""


# -- trace polynomials ---------------------------------------------------
#
# atom: int (letter) | ("F", term); term: tuple of atoms


def _letters_of_term(term) -> list[int]:
    out: list[int] = []
    for atom in term:
        if isinstance(atom, int):
            out.append(atom)
        else:
            out.extend(_letters_of_term(atom[1]))
    return out


class TracePoly:
    """Finite sum of (coefficient, term) over a base ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: BaseRing, terms: dict | None = None):
        self.ring = ring
        self.terms = terms or {}

    @classmethod
    def zero(cls, ring: BaseRing) -> "TracePoly":
        return cls(ring, {})

    @classmethod
    def letter(cls, ring: BaseRing, i: int) -> "TracePoly":
        if i < 1:
            raise ValueError("letters are numbered from 1")
        return cls(ring, {(i,): ring.one()})

    def _check(self, other: "TracePoly"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "TracePoly") -> "TracePoly":
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = self.ring.add(out.get(t, self.ring.zero()), c)
            if self.ring.is_zero(s):
                out.pop(t, None)
            else:
                out[t] = s
        return TracePoly(self.ring, out)

    def __neg__(self) -> "TracePoly":
        return TracePoly(self.ring, {t: self.ring.neg(c) for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TracePoly") -> "TracePoly":
        self._check(other)
        out: dict = {}
        for ta, ca in self.terms.items():
            for tb, cb in other.terms.items():
                t = ta + tb
                s = self.ring.add(out.get(t, self.ring.zero()), self.ring.mul(ca, cb))
                if self.ring.is_zero(s):
                    out.pop(t, None)
                else:
                    out[t] = s
        return TracePoly(self.ring, out)

    def commutator(self, other: "TracePoly") -> "TracePoly":
        return self * other - other * self

    def trace(self) -> "TracePoly":
        """Apply F, linearly."""
        out: dict = {}
        for t, c in self.terms.items():
            key = (("F", t),)
            s = self.ring.add(out.get(key, self.ring.zero()), c)
            if self.ring.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return TracePoly(self.ring, out)

    def scale(self, c) -> "TracePoly":
        out = {}
        for t, v in self.terms.items():
            s = self.ring.mul(v, c)
            if not self.ring.is_zero(s):
                out[t] = s
        return TracePoly(self.ring, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TracePoly)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def require_multilinear(self) -> int:
        """Return the arity n; every term must use x_1..x_n exactly once."""
        n = None
        for term in self.terms:
            letters = sorted(_letters_of_term(term))
            if n is None:
                n = len(letters)
                if letters != list(range(1, n + 1)):
                    raise NonMultilinearError(
                        f"term uses letters {letters}, expected 1..{n} once each"
                    )
            elif letters != list(range(1, n + 1)):
                raise NonMultilinearError("terms differ in their letters")
        if n is None:
            return 0
        return n

    def render(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for term in sorted(self.terms, key=_term_sort_key):
            c = self.terms[term]
            text = self.ring.render(c)
            neg = text.startswith("-")
            mag = text[1:] if neg else text
            body = _render_term(term)
            if body and mag == "1":
                piece = body
            elif body:
                piece = f"{mag}*{body}"
            else:
                piece = mag
            if not chunks:
                chunks.append(f"-{piece}" if neg else piece)
            else:
                chunks.append(f"- {piece}" if neg else f"+ {piece}")
        return " ".join(chunks)

    def __repr__(self):
        return f"TracePoly({self.render()})"


def _term_sort_key(term):
    return tuple(
        (0, a, ()) if isinstance(a, int) else (1, 0, _term_sort_key(a[1]))
        for a in term
    )


def _render_term(term) -> str:
    parts = []
    for atom in term:
        if isinstance(atom, int):
            parts.append(f"x{atom}")
        else:
            parts.append(f"Tr({_render_term(atom[1])})")
    return "*".join(parts)


# -- the graded evaluation model -----------------------------------------
#
# Elements are C[eps]-combinations of monomials (w0, traces): a plain
# word of letters followed by formal trace factors.  Letters are graded
# by their own index; trace values twist-commute past everything, and a
# trace argument may be rotated at the cost of an exp factor.  The four
# defining identities hold here, so evaluation kills exactly their
# consequences (on multilinear input).


def _pairs(left, right):
    return [(a, b) for a in left for b in right]


class TraceModel:
    def __init__(self, coeff: CoeffRing):
        self.coeff = coeff

    def zero(self) -> "ModelElem":
        return ModelElem(self, {})

    def one(self) -> "ModelElem":
        return ModelElem(self, {((), ()): self.coeff.one()})

    def letter(self, i: int) -> "ModelElem":
        return ModelElem(self, {((i,), ()): self.coeff.one()})

    def _sorted_insert(self, traces: tuple, word: tuple) -> tuple[tuple, EpsPoly]:
        """Insert a trace word arriving from the right end; swapping two
        trace values costs exp(eps_v eps_v')."""
        factor = self.coeff.one()
        pos = len(traces)
        while pos > 0 and traces[pos - 1] > word:
            factor = factor * exp_map(self.coeff, _pairs(traces[pos - 1], word))
            pos -= 1
        return traces[:pos] + (word,) + traces[pos:], factor

    def _sorted_insert_left(self, traces: tuple, word: tuple) -> tuple[tuple, EpsPoly]:
        """Insert a trace word arriving from the left end."""
        factor = self.coeff.one()
        pos = 0
        while pos < len(traces) and traces[pos] < word:
            factor = factor * exp_map(self.coeff, _pairs(word, traces[pos]))
            pos += 1
        return traces[:pos] + (word,) + traces[pos:], factor

    def _canonical_rotation(self, word: tuple) -> tuple[tuple, EpsPoly]:
        """Rotate to the lexicographically minimal linearization; each
        left-rotation by one letter costs exp(eps_letter eps_rest)."""
        best = word
        best_factor = self.coeff.one()
        current = word
        factor = self.coeff.one()
        all_letters = set(word)
        for _ in range(len(word) - 1):
            head = current[0]
            factor = factor * exp_map(
                self.coeff, _pairs([head], all_letters - {head})
            )
            current = current[1:] + (current[0],)
            if current < best:
                best = current
                best_factor = factor
        return best, best_factor


class ModelElem:
    __slots__ = ("model", "terms")

    def __init__(self, model: TraceModel, terms: dict):
        self.model = model
        self.terms = terms

    def _add_term(self, key, coeff: EpsPoly):
        if coeff.is_zero():
            return
        if key in self.terms:
            s = self.terms[key] + coeff
            if s.is_zero():
                del self.terms[key]
            else:
                self.terms[key] = s
        else:
            self.terms[key] = coeff

    def __add__(self, other: "ModelElem") -> "ModelElem":
        out = ModelElem(self.model, dict(self.terms))
        for key, c in other.terms.items():
            out._add_term(key, c)
        return out

    def __mul__(self, other: "ModelElem") -> "ModelElem":
        model = self.model
        coeff = model.coeff
        out = ModelElem(model, {})
        for (w0a, ta), ca in self.terms.items():
            for (w0b, tb), cb in other.terms.items():
                # move the left trace factors past the right plain word
                c = ca * cb
                if ta and w0b:
                    pairs = []
                    for v in ta:
                        pairs.extend(_pairs(v, w0b))
                    c = c * exp_map(coeff, pairs)
                traces = ta
                for v in tb:
                    traces, factor = model._sorted_insert(traces, v)
                    if not factor.is_one():
                        c = c * factor
                out._add_term((w0a + w0b, traces), c)
        return out

    def scale(self, c: EpsPoly) -> "ModelElem":
        out = ModelElem(self.model, {})
        for key, v in self.terms.items():
            out._add_term(key, v * c)
        return out

    def estr(self) -> "ModelElem":
        """Apply the formal trace: pull existing trace factors out, then
        trace the plain word, canonically rotated."""
        model = self.model
        out = ModelElem(model, {})
        for (w0, traces), c in self.terms.items():
            if not w0:
                raise TraceArgumentError(
                    "trace argument has no letters at its own nesting level"
                )
            word, factor = model._canonical_rotation(w0)
            c = c * factor if not factor.is_one() else c
            # the fresh trace value sits to the left of the existing ones
            new_traces, sort_factor = model._sorted_insert_left(traces, word)
            if not sort_factor.is_one():
                c = c * sort_factor
            out._add_term(((), new_traces), c)
        return out

    def is_zero(self) -> bool:
        return not self.terms


def model_eval(f: TracePoly, coeff: CoeffRing) -> ModelElem:
    model = TraceModel(coeff)

    def eval_term(term) -> ModelElem:
        acc = model.one()
        for atom in term:
            if isinstance(atom, int):
                acc = acc * model.letter(atom)
            else:
                acc = acc * eval_term(atom[1]).estr()
        return acc

    result = model.zero()
    for term, c in f.terms.items():
        result = result + eval_term(term).scale(coeff.scalar(c))
    return result


# -- the standard form -----------------------------------------------------


class MonomialTerm(NamedTuple):
    """A plain multilinear monomial with nested trace factors that the
    five commutator-structured blocks cannot express: every trace
    argument starts and ends with a letter of its own level (boundary
    trace factors reduce away), but interior trace factors are
    irreducible and enlarge the basis."""

    term: tuple

    def letters(self) -> list[int]:
        return _letters_of_term(self.term)

    def pattern(self):
        outer = []
        parts = []

        def walk(term, top):
            own = []
            for atom in term:
                if isinstance(atom, int):
                    own.append(atom)
                else:
                    walk(atom[1], False)
            if top:
                outer.extend(own)
            else:
                parts.append(frozenset(own))

        walk(self.term, True)
        return frozenset(outer), frozenset(parts)

    def to_trace_poly(self, ring: BaseRing) -> TracePoly:
        return TracePoly(ring, {self.term: ring.one()})

    def render(self) -> str:
        return _render_term(self.term)


def _monomial_irreducible(term, top=True) -> bool:
    """No trace atom at the boundary of any trace argument, and every
    trace argument owns at least one letter."""
    for atom in term:
        if not isinstance(atom, int):
            arg = atom[1]
            if not arg:
                return False
            if not isinstance(arg[0], int) or not isinstance(arg[-1], int):
                return False
            if not _monomial_irreducible(arg, False):
                return False
    return True


class StandardTerm(NamedTuple):
    w: tuple  # outer word (letters, any order)
    vs: tuple  # trace words, cyclically minimal, sorted
    ms: tuple  # ((w_i word, u_i word), ...), u's sorted
    ffs: tuple  # ((u, u'), ...): commutators of trace values
    tcs: tuple  # ((s letter, t word), ...): traces of commutators

    def u_stack(self) -> list:
        return [u for _, u in self.ms] + [u for pair in self.ffs for u in pair]

    def letters(self) -> list[int]:
        out = list(self.w)
        for v in self.vs:
            out.extend(v)
        for wi, ui in self.ms:
            out.extend(wi)
            out.extend(ui)
        for u, u2 in self.ffs:
            out.extend(u)
            out.extend(u2)
        for s, t in self.tcs:
            out.append(s)
            out.extend(t)
        return out

    def pattern(self):
        outer = list(self.w)
        parts = []
        for _, ui in self.ms:
            parts.append(frozenset(ui))
        for wi, _ in self.ms:
            outer.extend(wi)
        for v in self.vs:
            parts.append(frozenset(v))
        for u, u2 in self.ffs:
            parts.append(frozenset(u))
            parts.append(frozenset(u2))
        for s, t in self.tcs:
            parts.append(frozenset((s,) + t))
        return frozenset(outer), frozenset(parts)

    def to_trace_poly(self, ring: BaseRing) -> TracePoly:
        acc = TracePoly(ring, {(): ring.one()})

        def word_poly(word):
            p = TracePoly(ring, {(): ring.one()})
            for i in word:
                p = p * TracePoly.letter(ring, i)
            return p

        for i in self.w:
            acc = acc * TracePoly.letter(ring, i)
        for v in self.vs:
            acc = acc * word_poly(v).trace()
        for wi, ui in self.ms:
            acc = acc * word_poly(wi).commutator(word_poly(ui).trace())
        for u, u2 in self.ffs:
            acc = acc * word_poly(u).trace().commutator(word_poly(u2).trace())
        for s, t in self.tcs:
            acc = acc * word_poly((s,)).commutator(word_poly(t)).trace()
        return acc

    def render(self) -> str:
        parts = []
        if self.w:
            parts.append("*".join(f"x{i}" for i in self.w))
        parts.extend("Tr(%s)" % "*".join(f"x{i}" for i in v) for v in self.vs)
        for wi, ui in self.ms:
            wtxt = "*".join(f"x{i}" for i in wi)
            utxt = "*".join(f"x{i}" for i in ui)
            parts.append(f"[{wtxt},Tr({utxt})]")
        for u, u2 in self.ffs:
            parts.append(
                "[Tr(%s),Tr(%s)]"
                % ("*".join(f"x{i}" for i in u), "*".join(f"x{i}" for i in u2))
            )
        for s, t in self.tcs:
            parts.append(
                "Tr([x%d,%s])" % (s, "*".join(f"x{i}" for i in t))
            )
        return "*".join(parts) if parts else "1"


def _is_cyclically_minimal(word: tuple) -> bool:
    return all(word <= word[k:] + word[:k] for k in range(1, len(word)))


def check_standard_term(term: StandardTerm, arity: int | None = None) -> None:
    """Raise AssertionError when a structural constraint is violated."""
    letters = term.letters()
    assert len(set(letters)) == len(letters), "letters repeat"
    if arity is not None:
        assert sorted(letters) == list(range(1, arity + 1)), "wrong letter set"
    for v in term.vs:
        assert v and _is_cyclically_minimal(v), f"trace word {v} not cyclic-minimal"
    assert list(term.vs) == sorted(term.vs), "trace words unsorted"
    for wi, ui in term.ms:
        assert wi, "empty word slot in a mixed commutator"
        assert ui and _is_cyclically_minimal(ui), f"{ui} not cyclic-minimal"
    for u, u2 in term.ffs:
        assert _is_cyclically_minimal(u) and _is_cyclically_minimal(u2)
    stack = term.u_stack()
    assert stack == sorted(stack), "u-words not globally sorted"
    for s, t in term.tcs:
        assert t, "empty commutator tail"
        assert any(s < x for x in t), f"x{s} is not below any letter of {t}"
    assert list(term.tcs) == sorted(term.tcs), "trace-commutator pairs unsorted"


def _basis_term_key(t):
    if isinstance(t, StandardTerm):
        return (0, t)
    return (1, _term_sort_key(t.term))


class StandardForm:
    """Sum of standard terms with coefficients, in canonical term order."""

    def __init__(self, ring: BaseRing, items: dict):
        self.ring = ring
        self.items = {t: c for t, c in items.items() if not ring.is_zero(c)}

    def is_zero(self) -> bool:
        return not self.items

    def __eq__(self, other):
        return (
            isinstance(other, StandardForm)
            and other.ring == self.ring
            and other.items == self.items
        )

    def to_trace_poly(self) -> TracePoly:
        acc = TracePoly.zero(self.ring)
        for t, c in self.items.items():
            acc = acc + t.to_trace_poly(self.ring).scale(c)
        return acc

    def render(self) -> str:
        if not self.items:
            return "0"
        chunks = []
        for t in sorted(self.items, key=_basis_term_key):
            c = self.ring.render(self.items[t])
            neg = c.startswith("-")
            mag = c[1:] if neg else c
            body = t.render()
            piece = body if mag == "1" else f"{mag}*{body}"
            if not chunks:
                chunks.append(f"-{piece}" if neg else piece)
            else:
                chunks.append(f"- {piece}" if neg else f"+ {piece}")
        return " ".join(chunks)

    def __repr__(self):
        return f"StandardForm({self.render()})"


# -- basis enumeration per block -------------------------------------------


def _cyclic_min_words(part: frozenset) -> list[tuple]:
    m = min(part)
    rest = sorted(part - {m})
    return [(m,) + p for p in permutations(rest)]


def _tc_options(part: frozenset) -> list[tuple]:
    out = []
    top = max(part)
    for s in sorted(part):
        if s == top:
            continue
        for t in permutations(sorted(part - {s})):
            out.append((s, t))
    return out


def _outer_arrangements(outer: frozenset, k: int):
    """All (w word, list of k nonempty words) arrangements of the outer
    letters."""
    letters = sorted(outer)
    results = []
    for assign in iproduct(range(k + 1), repeat=len(letters)):
        slots = [[] for _ in range(k + 1)]
        for letter, slot in zip(letters, assign):
            slots[slot].append(letter)
        if any(not slots[j] for j in range(1, k + 1)):
            continue
        for orders in iproduct(*(permutations(s) for s in slots)):
            results.append((orders[0], list(orders[1:])))
    return results


def enumerate_block_basis(outer: frozenset, parts: frozenset) -> list[StandardTerm]:
    part_list = sorted(parts, key=sorted)
    out = []
    for roles in iproduct(("v", "m", "ff", "tc"), repeat=len(part_list)):
        v_parts = [p for p, r in zip(part_list, roles) if r == "v"]
        m_parts = [p for p, r in zip(part_list, roles) if r == "m"]
        ff_parts = [p for p, r in zip(part_list, roles) if r == "ff"]
        tc_parts = [p for p, r in zip(part_list, roles) if r == "tc"]
        if len(ff_parts) % 2:
            continue
        if any(len(p) < 2 for p in tc_parts):
            continue
        if len(m_parts) > len(outer):
            continue
        arrangements = _outer_arrangements(outer, len(m_parts))
        for v_choice in iproduct(*(_cyclic_min_words(p) for p in v_parts)):
            vs = tuple(sorted(v_choice))
            for m_choice in iproduct(*(_cyclic_min_words(p) for p in m_parts)):
                us_m = sorted(m_choice)
                for ff_choice in iproduct(*(_cyclic_min_words(p) for p in ff_parts)):
                    us_ff = sorted(ff_choice)
                    if us_m and us_ff and us_m[-1] > us_ff[0]:
                        continue
                    ffs = tuple(
                        (us_ff[i], us_ff[i + 1]) for i in range(0, len(us_ff), 2)
                    )
                    for tc_choice in iproduct(*(_tc_options(p) for p in tc_parts)):
                        tcs = tuple(sorted(tc_choice))
                        for w, wm in arrangements:
                            ms = tuple(
                                (tuple(wm[j]), us_m[j]) for j in range(len(us_m))
                            )
                            out.append(StandardTerm(w, vs, ms, ffs, tcs))
    return out


def _acyclic_parent_maps(m: int):
    """All forests on m nodes: parents[i] in {-1 (root), 0..m-1} \\ {i}."""
    for parents in iproduct(range(-1, m), repeat=m):
        ok = True
        for i in range(m):
            if parents[i] == i:
                ok = False
                break
            seen = set()
            j = i
            while j != -1:
                if j in seen:
                    ok = False
                    break
                seen.add(j)
                j = parents[j]
            if not ok:
                break
        if ok:
            yield parents


def _interleavings(letters, fatoms, boundary_letters: bool):
    items = list(letters) + list(fatoms)
    out = []
    for perm in permutations(range(len(items))):
        seq = tuple(items[k] for k in perm)
        if boundary_letters and seq:
            if not isinstance(seq[0], int) or not isinstance(seq[-1], int):
                continue
        out.append(seq)
    return out


def enumerate_nested_monomials(outer: frozenset, parts: frozenset) -> list[MonomialTerm]:
    """Irreducible multilinear monomials with the given value pattern:
    each part is the own-letter set of one trace node, nested in every
    forest shape, with letters guarding every trace boundary."""
    part_list = sorted(parts, key=sorted)
    m = len(part_list)
    if m == 0:
        return []
    out = []
    for parents in _acyclic_parent_maps(m):
        children: dict = {i: [] for i in range(-1, m)}
        for i, p in enumerate(parents):
            children[p].append(i)
        if any(children[i] and len(part_list[i]) < 2 for i in range(m)):
            continue

        def node_options(i):
            child_opts = [node_options(j) for j in children[i]]
            seqs = []
            for picks in iproduct(*child_opts):
                fatoms = [("F", p) for p in picks]
                seqs.extend(
                    _interleavings(sorted(part_list[i]), fatoms, True)
                )
            return seqs

        top_opts = [node_options(j) for j in children[-1]]
        for picks in iproduct(*top_opts):
            fatoms = [("F", p) for p in picks]
            for seq in _interleavings(sorted(outer), fatoms, False):
                out.append(MonomialTerm(seq))
    return out


class _RationalSpan:
    """Incremental rational row space over sparse integer vectors."""

    def __init__(self):
        self.pivots: list[tuple[int, dict]] = []

    def add_if_new(self, vec: dict) -> bool:
        from fractions import Fraction

        row = {k: Fraction(v) for k, v in vec.items() if v}
        for col, prow in self.pivots:
            c = row.get(col)
            if c:
                for k, v in prow.items():
                    nv = row.get(k, Fraction(0)) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            return False
        lead = min(row)
        inv = 1 / row[lead]
        row = {k: v * inv for k, v in row.items()}
        self.pivots.append((lead, row))
        return True


_BLOCK_CACHE: dict = {}


def _block_solver(outer: frozenset, parts: frozenset):
    """Basis and integer solver for one block of the standard form.

    Candidates are taken in order: the five-block structured terms
    first, then irreducible nested monomials; a candidate joins the
    basis when its model value leaves the rational span of the earlier
    ones.  The Smith certificate of the chosen rows makes the
    coordinates valid over every base ring."""
    key = (outer, parts)
    if key in _BLOCK_CACHE:
        return _BLOCK_CACHE[key]
    candidates: list = list(enumerate_block_basis(outer, parts))
    candidates.extend(enumerate_nested_monomials(outer, parts))
    if not candidates:
        raise TraceInternalError(f"no basis candidates for block {key}")
    zz = IntegerRing()
    coeff = CoeffRing(zz)
    columns: dict = {}
    span = _RationalSpan()
    basis = []
    vectors = []
    for cand in candidates:
        value = model_eval(cand.to_trace_poly(zz), coeff)
        vec: dict = {}
        for mono_key, poly in value.terms.items():
            for eps_key, c in poly.terms.items():
                col = columns.setdefault((mono_key, eps_key), len(columns))
                vec[col] = c
        if span.add_if_new(vec):
            basis.append(cand)
            vectors.append(vec)
    rows = [[v.get(j, 0) for j in range(len(columns))] for v in vectors]
    solver = SmithSolver(rows)
    if not solver.certified:
        raise TraceInternalError(
            f"standard basis for block {key} is not unimodularly independent"
        )
    _BLOCK_CACHE[key] = (basis, columns, solver)
    return _BLOCK_CACHE[key]


# -- normalization -----------------------------------------------------------


def trace_normalize(f: TracePoly) -> StandardForm:
    """Canonical standard form of a multilinear polynomial, modulo the
    four defining identities."""
    n = f.require_multilinear()
    if n > MAX_TRACE_ARITY:
        raise ValueError(f"arity {n} exceeds the supported bound {MAX_TRACE_ARITY}")
    ring = f.ring
    value = model_eval(f, CoeffRing(ring))
    # group the value by block pattern
    groups: dict = {}
    for (w0, traces), poly in value.terms.items():
        pattern = (frozenset(w0), frozenset(frozenset(v) for v in traces))
        groups.setdefault(pattern, {})[(w0, traces)] = poly
    items: dict = {}
    for pattern, part_terms in groups.items():
        basis, columns, solver = _block_solver(*pattern)
        vec = [ring.zero()] * len(columns)
        for mono_key, poly in part_terms.items():
            for eps_key, c in poly.terms.items():
                col = columns.get((mono_key, eps_key))
                if col is None:
                    raise TraceInternalError(
                        "value outside the span of the standard basis"
                    )
                vec[col] = c
        sol, ok = solver.solve(vec, ring)
        if not ok:
            raise TraceInternalError("value not solvable in the standard basis")
        for term, c in zip(basis, sol):
            if not ring.is_zero(c):
                items[term] = c
    for term in items:
        if isinstance(term, StandardTerm):
            check_standard_term(term, n)
        else:
            assert _monomial_irreducible(term.term)
            assert sorted(term.letters()) == list(range(1, n + 1))
    return StandardForm(ring, items)


def is_trace_identity(f: TracePoly) -> bool:
    """True iff f is a consequence of the four defining identities."""
    return trace_normalize(f).is_zero()


# -- evaluation in matrix algebras -------------------------------------------


class SuperTraceContext:
    """Matrix size n over a twisted Grassmann algebra, with the trace-like
    function sending a matrix to (sum of diagonal entries) * identity."""

    def __init__(self, n: int, algebra: GrassAlgebra):
        self.n = n
        self.algebra = algebra

    def zero_matrix(self) -> Matrix:
        z = self.algebra.zero()
        return Matrix([[z for _ in range(self.n)] for _ in range(self.n)], z)

    def identity(self) -> Matrix:
        return Matrix.identity(self.n, self.algebra.zero(), self.algebra.one())

    def unit(self, r: int, c: int, value: GrassElem | None = None) -> Matrix:
        m = self.zero_matrix()
        m.rows[r][c] = value if value is not None else self.algebra.one()
        return m

    def estr(self, m: Matrix) -> Matrix:
        tr = m.trace()
        return self.identity().scale(tr)


def eval_trace_poly(f: TracePoly, ctx: SuperTraceContext, subs: Sequence[Matrix]) -> Matrix:
    """Evaluate with x_i -> subs[i-1] and F -> the context trace."""
    letters = set()
    for term in f.terms:
        letters.update(_letters_of_term(term))
    if letters and max(letters) > len(subs):
        raise ValueError(f"need {max(letters)} substitutions, got {len(subs)}")

    def eval_term(term) -> Matrix:
        acc = ctx.identity()
        for atom in term:
            if isinstance(atom, int):
                acc = acc * subs[atom - 1]
            else:
                acc = acc * ctx.estr(eval_term(atom[1]))
        return acc

    result = ctx.zero_matrix()
    for term, c in f.terms.items():
        result = result + eval_term(term).scale(ctx.algebra.scalar(c))
    return result


# -- witness search ------------------------------------------------------------


class Witness(NamedTuple):
    size: int
    assignments: dict  # letter -> (row, col, GrassElem coefficient)

    def matrices(self, ctx: SuperTraceContext) -> list[Matrix]:
        out = []
        for i in sorted(self.assignments):
            r, c, coeff = self.assignments[i]
            out.append(ctx.unit(r, c, coeff))
        return out

    def render(self) -> str:
        parts = [f"matrix size {self.size}"]
        for i in sorted(self.assignments):
            r, c, coeff = self.assignments[i]
            text = coeff.render_expr()
            if not (text.startswith("(") and text.endswith(")")):
                text = f"({text})"
            parts.append(f"x{i} -> {text} * E[{r + 1},{c + 1}]")
        return "; ".join(parts)


def witness_search(
    f: TracePoly,
    max_n: int,
    seed: int = 0,
    attempts_per_size: int = 400,
) -> Witness | None:
    """Search for a matrix substitution with a nonzero value.

    Substitutions follow the path/cycle schema: every letter becomes a
    coefficient times a matrix unit, where positions trace out a path or
    a disjoint union of a path and cycles, and coefficients are short
    generator monomials.  Returns the first nonzero hit, or None.
    """
    n_letters = f.require_multilinear()
    if n_letters == 0:
        return None
    rng = random.Random(seed)
    algebra = GrassAlgebra(CoeffRing(f.ring))
    coeff_pool = [algebra.one(), algebra.gen(1), algebra.gen(2), algebra.gen(1) * algebra.gen(2)]
    for size in range(2, max_n + 1):
        ctx = SuperTraceContext(size, algebra)
        for attempt in range(attempts_per_size):
            assignments = {}
            if attempt == 0 and size >= 2:
                # deterministic first shot: identity-order path with wraparound
                for i in range(1, n_letters + 1):
                    r = (i - 1) % size
                    c = i % size
                    assignments[i] = (r, c, algebra.one())
            else:
                letters = list(range(1, n_letters + 1))
                rng.shuffle(letters)
                # split into a path plus loops over the available positions
                for i in letters:
                    r = rng.randrange(size)
                    c = rng.randrange(size)
                    coeff = rng.choice(coeff_pool)
                    if rng.random() < 0.5:
                        coeff = coeff * rng.choice(coeff_pool)
                    assignments[i] = (r, c, coeff)
            witness = Witness(size, assignments)
            value = eval_trace_poly(f, ctx, witness.matrices(ctx))
            if not value.is_zero():
                return witness
    return None
