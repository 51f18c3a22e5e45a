"""Exact integer matrix kernels: Hermite/Smith reduction, solving, lattices.

Everything here is exact over the integers.  The row-echelon accumulator
runs on int64 numpy arrays with predictive overflow guards and lifts itself
to object dtype (arbitrary-precision Python ints) when a guard trips; the
Smith reduction works on object arrays throughout.  Pivoting is
deterministic with a swap-to-smallest rule to keep entries small.
"""

from __future__ import annotations

import numpy as np

_GUARD = 2**59


def _xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0."""
    old_r, r = int(a), int(b)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _maxabs(v):
    return int(np.abs(v).max()) if v.size else 0


class RowEchelon:
    """Incremental exact integer row-echelon accumulator.

    Rows are fed in one batch at a time; the accumulator maintains a
    Hermite-reduced basis of the row lattice seen so far.  The basis spans
    the same lattice as the input rows, so Smith invariants of a huge input
    matrix can be read off the (rank x ncols) accumulated basis.
    """

    def __init__(self, ncols, dtype=np.int64):
        self.ncols = int(ncols)
        self.dtype = dtype
        self._rows = {}  # pivot column -> row vector
        self._lifted = dtype == object

    def _lift(self):
        if not self._lifted:
            self._rows = {c: r.astype(object) for c, r in self._rows.items()}
            self._lifted = True
            self.dtype = object

    def add_rows(self, rows):
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        for i in range(rows.shape[0]):
            row = rows[i]
            if not self._lifted and rows.dtype == object:
                # incoming arbitrary-precision entries force the exact path
                if any(abs(int(x)) > _GUARD for x in row):
                    self._lift()
            self._add_one(np.array(row, dtype=self.dtype))

    def _add_one(self, v):
        start = 0
        while True:
            if self._lifted and v.dtype != object:
                # a guard may have lifted the accumulator mid-insertion
                # (inside _back_reduce); the in-flight row must follow, or
                # the skipped guards would let int64 products wrap
                v = v.astype(object)
            nz = np.flatnonzero(v[start:])
            if nz.size == 0:
                return
            j = start + int(nz[0])
            pivot_row = self._rows.get(j)
            if pivot_row is None:
                if int(v[j]) < 0:
                    v = -v
                self._rows[j] = v
                self._back_reduce(j)
                return
            a = int(pivot_row[j])
            b = int(v[j])
            if b % a == 0:
                q = b // a
                if not self._lifted and abs(q) * _maxabs(pivot_row) + _maxabs(v) > _GUARD:
                    self._lift()
                    pivot_row = self._rows[j]
                    v = v.astype(object)
                v = v - q * pivot_row
            else:
                g, x, y = _xgcd(a, b)
                if not self._lifted:
                    bound = (abs(x) + abs(b // g)) * _maxabs(pivot_row) + (abs(y) + abs(a // g)) * _maxabs(v)
                    if bound > _GUARD:
                        self._lift()
                        pivot_row = self._rows[j]
                        v = v.astype(object)
                combined = x * pivot_row + y * v
                v = (a // g) * v - (b // g) * pivot_row
                self._rows[j] = combined
                self._back_reduce(j)
            start = j  # leading entry of v is now past j

    def _back_reduce(self, j):
        # Hermite condition: entries of other rows in a pivot column stay
        # in [0, pivot).
        piv = self._rows[j]
        lead = int(piv[j])
        for c in list(self._rows):
            if c == j:
                continue
            r = self._rows[c]
            q = int(r[j]) // lead
            if q:
                if not self._lifted and abs(q) * _maxabs(piv) + _maxabs(r) > _GUARD:
                    self._lift()
                    self._back_reduce(j)
                    return
                self._rows[c] = r - q * piv

    @property
    def rank(self):
        return len(self._rows)

    def matrix(self):
        """Stacked basis rows ordered by pivot column (object dtype)."""
        if not self._rows:
            return np.zeros((0, self.ncols), dtype=object)
        ordered = [self._rows[c].astype(object) for c in sorted(self._rows)]
        return np.array(ordered, dtype=object)


def row_lattice_basis(A):
    """Hermite-reduced basis of the row lattice of A (rank x ncols)."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    acc = RowEchelon(A.shape[1])
    if A.size:
        acc.add_rows(A)
    return acc.matrix()


def column_lattice_basis(A):
    """Hermite-reduced basis (as columns) of the column lattice of A."""
    return row_lattice_basis(np.asarray(A).T).T


def smith(A, want_uinv=False, want_v=False, carry=None):
    """Smith normal form data for an integer matrix.

    Returns (diag, Uinv, V, carry_out) where diag lists the nonzero
    invariant factors d_1 | d_2 | ... of A, and unimodular U, V satisfy
    U @ A @ V = D.  U itself is never materialized: Uinv (its inverse,
    tracked by inverse column operations) is returned on request, and
    `carry` (a vector or matrix with as many rows as A) receives the same
    row operations as A, i.e. carry_out = U @ carry.
    """
    A = np.array(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("smith expects a 2-d matrix")
    m, n = A.shape
    Uinv = np.eye(m, dtype=object) if want_uinv else None
    V = np.eye(n, dtype=object) if want_v else None
    C = None
    if carry is not None:
        C = np.array(carry, dtype=object)
        if C.ndim == 1:
            C = C.reshape(-1, 1)
        if C.shape[0] != m:
            raise ValueError("carry must have as many rows as A")

    def row_op(i, j, q):  # row_i -= q * row_j
        A[i] -= q * A[j]
        if C is not None:
            C[i] -= q * C[j]
        if Uinv is not None:
            Uinv[:, j] += q * Uinv[:, i]

    def col_op(i, j, q):  # col_i -= q * col_j
        A[:, i] -= q * A[:, j]
        if V is not None:
            V[:, i] -= q * V[:, j]

    def row_swap(i, j):
        A[[i, j]] = A[[j, i]]
        if C is not None:
            C[[i, j]] = C[[j, i]]
        if Uinv is not None:
            Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def col_swap(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        if V is not None:
            V[:, [i, j]] = V[:, [j, i]]

    def row_negate(i):
        A[i] = -A[i]
        if C is not None:
            C[i] = -C[i]
        if Uinv is not None:
            Uinv[:, i] = -Uinv[:, i]

    k = 0
    while k < min(m, n):
        sub = A[k:, k:]
        nzr, nzc = np.nonzero(sub)
        if nzr.size == 0:
            break
        vals = np.abs(sub[nzr, nzc])
        best = int(np.argmin(vals))
        pi, pj = int(nzr[best]) + k, int(nzc[best]) + k
        if pi != k:
            row_swap(k, pi)
        if pj != k:
            col_swap(k, pj)
        while True:
            if int(A[k, k]) < 0:
                row_negate(k)
            pivot = int(A[k, k])
            clean = True
            for i in range(k + 1, m):
                if A[i, k]:
                    row_op(i, k, int(A[i, k]) // pivot)
                    if A[i, k]:
                        row_swap(k, i)
                        clean = False
                        break
            if not clean:
                continue
            for j in range(k + 1, n):
                if A[k, j]:
                    col_op(j, k, int(A[k, j]) // pivot)
                    if A[k, j]:
                        col_swap(k, j)
                        clean = False
                        break
            if clean:
                break
        pivot = int(A[k, k])
        if pivot != 1:
            block = A[k + 1:, k + 1:]
            if block.size:
                bad_rows = np.nonzero(np.mod(block, pivot).any(axis=1))[0]
                if bad_rows.size:
                    row_op(k, k + 1 + int(bad_rows[0]), -1)
                    continue
        k += 1

    diag = [abs(int(A[i, i])) for i in range(min(m, n)) if A[i, i]]
    return diag, Uinv, V, C


def invariant_factors(A):
    """Nonzero invariant factors of A (via a row-lattice precompression)."""
    A = np.asarray(A)
    if A.ndim != 2 or min(A.shape) == 0 or not np.any(A):
        return []
    R = row_lattice_basis(A)
    diag, _, _, _ = smith(R)
    return diag


def cokernel_torsion(A):
    """Invariant factors > 1 of Z^rows / (column lattice of A)."""
    return [d for d in invariant_factors(A) if d > 1]


def kernel_basis(A):
    """Columns form a basis of the integer kernel of A (saturated)."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=object)
    R = row_lattice_basis(A)
    if R.shape[0] == 0:
        return np.eye(n, dtype=object)
    diag, _, V, _ = smith(R, want_v=True)
    return V[:, len(diag):]


def solve(A, b):
    """One integer solution x of A @ x = b, or None if none exists."""
    X = solve_many(A, np.asarray(b).reshape(-1, 1))
    return None if X is None else X[:, 0]


def solve_many(A, B):
    """Solve A @ X = B over the integers; None if any column has no solution."""
    A = np.array(A, dtype=object)
    B = np.array(B, dtype=object)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    m, n = A.shape
    if B.shape[0] != m:
        raise ValueError("shape mismatch in solve")
    if n == 0:
        return np.zeros((0, B.shape[1]), dtype=object) if not np.any(B) else None
    diag, _, V, Y = smith(A, want_v=True, carry=B)
    r = len(diag)
    Z = np.zeros((n, B.shape[1]), dtype=object)
    for c in range(B.shape[1]):
        for i in range(r):
            q, rem = divmod(int(Y[i, c]), diag[i])
            if rem:
                return None
            Z[i, c] = q
        if np.any(Y[r:, c]):
            return None
    return V @ Z


def lattice_intersect(B1, B2):
    """Basis (columns) of the intersection of two column lattices in Z^N."""
    B1 = np.array(B1, dtype=object)
    B2 = np.array(B2, dtype=object)
    if B1.shape[1] == 0 or B2.shape[1] == 0:
        return np.zeros((B1.shape[0], 0), dtype=object)
    stacked = np.hstack([B1, -B2])
    K = kernel_basis(stacked)
    inter = B1 @ K[: B1.shape[1], :]
    return column_lattice_basis(inter)


def quotient_group(Bbig, Bsmall):
    """Structure of (lattice Bbig)/(lattice Bsmall) with generator lifts.

    Requires the columns of Bsmall to span a finite-index sublattice of the
    column lattice of Bbig.  Returns (orders, gens): orders are the
    invariant factors > 1 in ascending divisibility order, and gens[i] is a
    vector in the ambient space whose class has order orders[i]; together
    the classes generate the quotient.
    """
    Bbig = np.array(Bbig, dtype=object)
    Bsmall = np.array(Bsmall, dtype=object)
    k = Bbig.shape[1]
    X = solve_many(Bbig, Bsmall)
    if X is None:
        raise ValueError("second lattice is not contained in the first")
    diag, Uinv, _, _ = smith(X, want_uinv=True)
    if len(diag) < k:
        raise ValueError("quotient is not finite")
    orders, gens = [], []
    for i, d in enumerate(diag):
        if d > 1:
            orders.append(d)
            gens.append(Bbig @ Uinv[:, i])
    return orders, gens
