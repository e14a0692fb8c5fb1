"""Exact linear algebra over prime fields (numpy) and over ℚ (Fraction).

Prime-field matrices are int64 numpy arrays with entries in [0, p); p < 2^15.5
keeps every intermediate product inside int64. Row reduction pivots on the
first nonzero entry, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import FieldConfig


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form mod p. Returns (matrix, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    _, pivots = rref_mod(a, p)
    return len(pivots)


def kernel_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel {x : a·x = 0}, rows = basis vectors."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref_mod(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-r[j, fc]) % p
    return basis


def solve_in_rowspace_mod(rref_rows: np.ndarray, pivots, vectors: np.ndarray,
                          p: int) -> np.ndarray:
    """Coordinates of `vectors` in the RREF row basis (rows must lie in the span)."""
    if len(pivots) == 0:
        return np.zeros((vectors.shape[0], 0), dtype=np.int64)
    coords = vectors[:, pivots] % p
    residual = (vectors - coords @ rref_rows) % p
    if residual.any():
        raise ValueError("vector outside the row space")
    return coords


def rref_fraction(rows: list[list[Fraction]]):
    """RREF over ℚ. Returns (rows, pivot columns)."""
    a = [list(map(Fraction, row)) for row in rows]
    if not a:
        return [], []
    cols = len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r >= len(a):
            break
        sel = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


class ExactMatrix:
    """Field-dispatching wrapper used where both ℚ and GF(p) must work."""

    def __init__(self, field: FieldConfig, rows, ncols: int):
        self.field = field
        self.ncols = ncols
        if field.is_prime_field:
            self.data = (np.array(rows, dtype=np.int64).reshape(-1, ncols)
                         % field.characteristic)
        else:
            self.data = [list(map(Fraction, row)) for row in rows]

    def rref(self):
        if self.field.is_prime_field:
            r, pivots = rref_mod(self.data, self.field.characteristic)
            return r, pivots
        return rref_fraction(self.data)

    def rank(self) -> int:
        return len(self.rref()[1])


def matrix_rank(field: FieldConfig, rows, ncols: int) -> int:
    if not len(rows):
        return 0
    return ExactMatrix(field, rows, ncols).rank()


def invert_matrix(field: FieldConfig, m):
    """Exact inverse of a square matrix given as nested lists."""
    n = len(m)
    if field.is_prime_field:
        p = field.characteristic
        aug = np.hstack([np.array(m, dtype=np.int64) % p,
                         np.eye(n, dtype=np.int64)])
        r, pivots = rref_mod(aug, p)
        if pivots[:n] != list(range(n)):
            raise ValueError("singular matrix")
        return [[int(v) for v in row[n:]] for row in r]
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    r, pivots = rref_fraction(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in r]


def kernel_fraction(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel over ℚ."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)]
                for i in range(ncols)]
    r, pivots = rref_fraction(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for j, pc in enumerate(pivots):
            v[pc] = -r[j][fc]
        basis.append(v)
    return basis


def kernel_basis(field: FieldConfig, rows, ncols: int):
    """Right-kernel basis rows over either field; deterministic."""
    if field.is_prime_field:
        mat = (np.array(rows, dtype=np.int64).reshape(-1, ncols)
               if len(rows) else np.zeros((0, ncols), dtype=np.int64))
        return [[int(v) for v in row]
                for row in kernel_mod(mat, field.characteristic)]
    return kernel_fraction(rows, ncols)


class Echelon:
    """Incremental row echelon basis used for span growth and membership.

    Rows are kept sorted by pivot column; they are not mutually reduced, which
    is enough for residual computation and dimension counting.
    """

    def __init__(self, field: FieldConfig, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def residual(self, vec):
        f = self.field
        p = f.characteristic
        if p:
            v = np.array(vec, dtype=np.int64) % p
            for pivot, row in zip(self.pivots, self.rows):
                c = int(v[pivot])
                if c:
                    v = (v - c * row) % p
            return v
        v = list(map(Fraction, vec))
        for pivot, row in zip(self.pivots, self.rows):
            c = v[pivot]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert vec's residual; returns True when the span grew."""
        f = self.field
        p = f.characteristic
        v = self.residual(vec)
        if p:
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            pivot = int(nz[0])
            v = v * pow(int(v[pivot]), p - 2, p) % p
        else:
            pivot = next((i for i, c in enumerate(v) if c != 0), None)
            if pivot is None:
                return False
            inv = Fraction(1) / v[pivot]
            v = [c * inv for c in v]
        import bisect
        pos = bisect.bisect_left(self.pivots, pivot)
        self.pivots.insert(pos, pivot)
        self.rows.insert(pos, v)
        return True

    def contains(self, vec) -> bool:
        v = self.residual(vec)
        if self.field.is_prime_field:
            return not v.any()
        return all(c == 0 for c in v)


def mat_mul(field: FieldConfig, a, b):
    if field.is_prime_field:
        p = field.characteristic
        return ((np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)) % p).tolist()
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0))
             for j in range(m)] for i in range(n)]
