"""Exact linear algebra over Z, Q and GF(p).

Dense matrices are lists of int rows (arbitrary precision).  Rank
computations use a numpy int64 fast path with overflow guards and fall
back to pure-python big integers, so results are always exact.  The
Smith normal form keeps both transform matrices, which is what the
freeness certificates and the universal (base-ring independent) linear
solves need.
"""

from __future__ import annotations

from math import gcd

import numpy as np

_NP_LIMIT = 1 << 44  # leave headroom for products inside int64


def _row_gcd(row) -> int:
    g = 0
    for v in row:
        g = gcd(g, abs(v))
        if g == 1:
            return 1
    return g


def rank_int(rows: list[list[int]]) -> int:
    """Rank over the fraction field, by fraction-free elimination on Z rows."""
    if not rows:
        return 0
    ncols = len(rows[0])
    arr = np.array(rows, dtype=object)
    maxabs = max((abs(int(v)) for v in arr.flat), default=0)
    if maxabs < _NP_LIMIT:
        try:
            return _rank_int_np(np.array(rows, dtype=np.int64))
        except OverflowError:
            pass
    return _rank_int_py([list(map(int, r)) for r in rows], ncols)


def _rank_int_np(mat: np.ndarray) -> int:
    nrows, ncols = mat.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        sub = mat[rank:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        # smallest pivot keeps growth down
        pick = nz[np.argmin(np.abs(sub[nz]))] + rank
        mat[[rank, pick]] = mat[[pick, rank]]
        pivot_row = mat[rank]
        p = int(pivot_row[col])
        rows = np.nonzero(mat[rank + 1 :, col])[0] + rank + 1
        if rows.size:
            leads = mat[rows, col].copy()
            if max(abs(p), int(np.max(np.abs(leads)))) * int(
                np.max(np.abs(mat[rows])) + np.max(np.abs(pivot_row))
            ) > (1 << 62):
                raise OverflowError
            mat[rows] = mat[rows] * p - np.outer(leads, pivot_row)
            for r in rows:
                g = int(np.gcd.reduce(np.abs(mat[r])))
                if g > 1:
                    mat[r] //= g
            if int(np.max(np.abs(mat))) > _NP_LIMIT:
                raise OverflowError
        rank += 1
    return rank


def _rank_int_py(rows: list[list[int]], ncols: int) -> int:
    pivots: list[tuple[int, list[int]]] = []  # (pivot col, primitive row)
    for row in rows:
        row = row[:]
        for col, prow in pivots:
            if row[col]:
                a, b = prow[col], row[col]
                row = [a * x - b * y for x, y in zip(row, prow)]
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            continue
        g = _row_gcd(row)
        if g > 1:
            row = [v // g for v in row]
        pivots.append((lead, row))
        pivots.sort(key=lambda t: t[0])
    return len(pivots)


def rank_mod(rows: list[list[int]], p: int) -> int:
    """Rank over GF(p)."""
    if not rows:
        return 0
    mat = np.array(rows, dtype=np.int64) % p
    nrows, ncols = mat.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        sub = mat[rank:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        pick = nz[0] + rank
        mat[[rank, pick]] = mat[[pick, rank]]
        inv = pow(int(mat[rank, col]), -1, p)
        mat[rank] = (mat[rank] * inv) % p
        rows_nz = np.nonzero(mat[rank + 1 :, col])[0] + rank + 1
        if rows_nz.size:
            leads = mat[rows_nz, col].copy()
            mat[rows_nz] = (mat[rows_nz] - leads[:, None] * mat[rank]) % p
        rank += 1
    return rank


def rank_rational(rows) -> int:
    """Rank over Q.  Denominators are cleared; elimination is fraction-free."""
    from fractions import Fraction

    cleared = []
    for row in rows:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        cleared.append([int(v * den) for v in row])
    return rank_int(cleared)


# -- Smith normal form -------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat: list[list[int]]):
    """Return (diag, U, V) with U*A*V diagonal, U and V unimodular.

    ``diag`` lists the diagonal entries d_1 | d_2 | ... (nonzero first).
    Row/column operations are tracked in U (left, r x r) and V (right,
    c x c).
    """
    a = [list(map(int, row)) for row in mat]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    U = _identity(nr)
    V = _identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(nr, nc):
        # locate a minimal nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = abs(a[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    addmul_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        p = a[t][t]
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    addmul_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        p = a[t][t]
                        done = False
            if done:
                break
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            d1, d2 = a[i][i], a[i + 1][i + 1]
            if d1 and d2 % d1 != 0:
                addmul_col(i, i + 1, 1)
                # re-clear the 2x2 block
                while True:
                    p = a[i][i]
                    if a[i + 1][i]:
                        q = a[i + 1][i] // p
                        addmul_row(i + 1, i, -q)
                        if a[i + 1][i]:
                            swap_rows(i, i + 1)
                            continue
                    if a[i][i + 1]:
                        q = a[i][i + 1] // p
                        addmul_col(i + 1, i, -q)
                        if a[i][i + 1]:
                            swap_cols(i, i + 1)
                            continue
                    break
                if a[i][i] < 0:
                    negate_row(i)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    diag = [a[k][k] for k in range(min(nr, nc))]
    return diag, U, V


class SmithSolver:
    """Solve x * A = v over any base ring, for an integer matrix A whose
    Smith normal form has an all-ones diagonal (full row rank, unimodular
    content).  The integer transforms make the solution universal: the
    same U, V work after base change to any commutative ring.
    """

    def __init__(self, rows: list[list[int]]):
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        diag, U, V = smith_normal_form(rows)
        self.diag = diag
        self.U = U
        self.V = V
        self.certified = (
            len([d for d in diag if d != 0]) == self.nrows
            and all(d == 1 for d in diag[: self.nrows])
        )

    def solve(self, vec, ring):
        """Solve x*A = vec over ``ring``; vec has ring elements.

        Returns (x, residual_ok).  residual_ok is False when vec is not
        in the row span, in which case x is None.
        """
        if not self.certified:
            raise ValueError("matrix is not Smith-certified; cannot solve universally")
        add, mul, frm = ring.add, ring.mul, ring.from_int
        zero = ring.zero()
        # w = vec * V
        w = []
        for j in range(self.ncols):
            s = zero
            for i in range(self.ncols):
                vij = self.V[i][j]
                if vij:
                    s = add(s, mul(vec[i], frm(vij)))
            w.append(s)
        for j in range(self.nrows, self.ncols):
            if not ring.is_zero(w[j]):
                return None, False
        # x = w[:nrows] * U
        x = []
        for j in range(self.nrows):
            s = zero
            for i in range(self.nrows):
                uij = self.U[i][j]
                if uij:
                    s = add(s, mul(w[i], frm(uij)))
            x.append(s)
        return x, True


# -- lattice reduction (canonical residues modulo an integer row span) --


class LatticeReducer:
    """Canonical representatives modulo the Z-row-span of given vectors.

    Rows are put in Hermite normal form once; ``reduce`` then maps any
    integer vector to the unique representative with coordinates in
    [0, pivot) at each pivot column.  Used for coefficient torsion in
    quotient algebras.
    """

    def __init__(self, rows: list[list[int]], ncols: int):
        self.ncols = ncols
        basis: list[list[int]] = []
        for row in rows:
            basis.append(list(map(int, row)))
        self.hnf: list[tuple[int, list[int]]] = []  # (pivot col, row), pivot > 0
        for row in basis:
            self._insert(row)
        self.hnf.sort(key=lambda t: t[0])
        self._normalize_off_pivots()

    def _insert(self, row: list[int]):
        while True:
            lead = next((j for j, v in enumerate(row) if v), None)
            if lead is None:
                return
            found = None
            for k, (col, _) in enumerate(self.hnf):
                if col == lead:
                    found = k
                    break
            if found is None:
                if row[lead] < 0:
                    row = [-v for v in row]
                self.hnf.append((lead, row))
                self.hnf.sort(key=lambda t: t[0])
                return
            col, prow = self.hnf[found]
            a, b = prow[lead], row[lead]
            g = gcd(a, b)
            # replace pivot row by the gcd combination, continue with remainder
            x, y = _bezout(a, b, g)
            new_pivot = [x * u + y * v for u, v in zip(prow, row)]
            rem = [(a // g) * v - (b // g) * u for u, v in zip(prow, row)]
            self.hnf[found] = (col, new_pivot)
            row = rem

    def _normalize_off_pivots(self):
        # reduce entries above each pivot into [0, pivot)
        for k in range(len(self.hnf) - 1, -1, -1):
            col, row = self.hnf[k]
            p = row[col]
            for j in range(k):
                _, upper = self.hnf[j]
                q = upper[col] // p
                if q:
                    self.hnf[j] = (
                        self.hnf[j][0],
                        [u - q * v for u, v in zip(upper, row)],
                    )

    def reduce(self, vec: list[int]) -> list[int]:
        out = list(map(int, vec))
        for col, row in self.hnf:
            q = out[col] // row[col]
            if q:
                out = [u - q * v for u, v in zip(out, row)]
        return out


def _bezout(a: int, b: int, g: int) -> tuple[int, int]:
    # x*a + y*b == g
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r == g:
        return old_s, old_t
    # old_r == -g
    return -old_s, -old_t
