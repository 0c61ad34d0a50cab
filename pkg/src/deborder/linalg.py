"""Exact linear algebra over a field.

Entries may be ``Fraction`` or ``Scalar``; only field operations and
truthiness are used, so the elimination is exact and pivoting just takes the
first nonzero entry in each column.
"""

from __future__ import annotations

from typing import Hashable, Sequence


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]


def _zero_like(M, fallback=None):
    for row in M:
        for x in row:
            return x - x
    return fallback


def row_echelon(M: Sequence[Sequence], reduced: bool = True) -> tuple[list[list], list[int]]:
    """Return (R, pivot_columns) with R in (reduced) row echelon form."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv if x else x for x in R[r]]
        prow = R[r]
        rows = range(nrows) if reduced else range(r + 1, nrows)
        for i in rows:
            if i == r:
                continue
            f = R[i][c]
            if f:
                R[i] = [x - f * y if y else x for x, y in zip(R[i], prow)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(row_echelon(M, reduced=False)[1])


def kernel(M: Sequence[Sequence], ncols: int | None = None, zero=None) -> list[list]:
    """Basis of {x : M x = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    zero = _zero_like(M, zero)
    if zero is None:
        raise ValueError("cannot infer the field of an empty matrix; pass zero=")
    one = zero + 1
    R, pivots = row_echelon(M) if M else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def left_kernel(M: Sequence[Sequence], zero=None) -> list[list]:
    """Basis of {y : y M = 0}."""
    if not M:
        return []
    return kernel(transpose(M), ncols=len(M), zero=_zero_like(M, zero))


def solve(M: Sequence[Sequence], b: Sequence) -> list | None:
    """One solution of M x = b, or None when the system is inconsistent."""
    ncols = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = row_echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    zero = _zero_like(aug)
    x = [zero] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def inverse(M: Sequence[Sequence]) -> list[list]:
    n = len(M)
    zero = _zero_like(M)
    one = zero + 1
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ArithmeticError("matrix is singular")
    return [row[n:] for row in R]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = None
            for x, y in zip(row, col):
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            out_row.append(acc if acc is not None else row[0] - row[0])
        out.append(out_row)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in A:
        acc = None
        for x, y in zip(row, v):
            if x and y:
                acc = x * y if acc is None else acc + x * y
        out.append(acc if acc is not None else v[0] - v[0])
    return out


class IncrementalBasis:
    """Echelon basis of a growing subspace of sparse vectors.

    Vectors are dicts mapping a coordinate key to a nonzero field element.
    ``add`` reduces a candidate against the current basis and keeps it only
    when it is independent, so ``len(basis)`` is the rank seen so far.
    """

    def __init__(self):
        self.rows: list[tuple[Hashable, dict]] = []
        self._pivots: set = set()

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        for key, row in self.rows:
            c = v.get(key)
            if c:
                for k, x in row.items():
                    y = v.get(k)
                    y = -c * x if y is None else y - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        v = {k: x for k, x in v.items() if x}
        if not v:
            return False
        key = min(v, key=_sort_token)
        inv = 1 / v[key]
        self.rows.append((key, {k: x * inv for k, x in v.items()}))
        self._pivots.add(key)
        return True

    def contains(self, vec: dict) -> bool:
        return not any(self.reduce(vec).values())


def _sort_token(key):
    return (str(type(key)), key)
