"""Small dense linear algebra over a Field (matrices are lists of rows)."""

from __future__ import annotations

from typing import Sequence

from .field import Field
from .poly import _det


def rref(F: Field, M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    A = [list(r) for r in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    zero = F.zero
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, v) for v in A[r]]
        top = A[r]
        for i in range(rows):
            if i != r:
                f = A[i][c]
                if f != zero:
                    A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], top)]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, M: Sequence[Sequence]) -> int:
    return len(rref(F, M)[1])


def minimal_kernel_vector(F: Field, M: Sequence[Sequence], cols: int) -> tuple[list, int]:
    """Nonzero kernel vector whose last nonzero entry has the smallest index.

    It is unique up to scaling; returned with that entry equal to 1, together with
    the index.  Requires a nontrivial kernel.
    """
    A, pivots = rref(F, M)
    free = next((c for c in range(cols) if c not in pivots), None)
    if free is None:
        raise ValueError("matrix has trivial kernel")
    vec = [F.zero] * cols
    vec[free] = F.one
    for row, pc in zip(A, pivots):
        if pc < free:
            vec[pc] = F.neg(row[free])
    return vec, free


def maximal_minors(F: Field, M: Sequence[Sequence]) -> list:
    """Signed maximal minors of a k x (k+1) matrix: the cofactors of the first row of
    the (k+1) x (k+1) matrix obtained by stacking a symbolic row on top."""
    k = len(M)
    out = []
    for j in range(k + 1):
        sub = [[row[c] for c in range(k + 1) if c != j] for row in M]
        d = _det(F, sub) if k else F.one
        out.append(d if j % 2 == 0 else F.neg(d))
    return out
