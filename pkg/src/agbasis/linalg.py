"""Dense Gaussian elimination over GF(p^m) on arrays of integer codes."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .algebra import Field


def rref(F: Field, M: np.ndarray, columns: Sequence[int] | None = None):
    """Reduced row echelon form, visiting columns in the given order.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of row ``i``.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = R.shape
    order = range(cols) if columns is None else columns
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = F.vmul(R[r], np.full(cols, F.inv(int(R[r, c])), dtype=np.int64))
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if len(others):
            R[others] = F.vsub(R[others], F.vmul(R[others, c][:, None], R[r][None, :]))
        pivots.append(int(c))
        r += 1
    return R[:r], pivots


def rank(F: Field, M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def reduce_vector(F: Field, R: np.ndarray, pivots: Sequence[int], v: np.ndarray) -> np.ndarray:
    """Remainder of ``v`` after clearing every pivot column of the rref basis ``R``."""
    v = np.array(v, dtype=np.int64, copy=True)
    for row, c in zip(R, pivots):
        if v[c]:
            v = F.vsub(v, F.vmul(np.full(len(v), int(v[c]), dtype=np.int64), row))
    return v


def in_rowspace(F: Field, R: np.ndarray, pivots: Sequence[int], v: np.ndarray) -> bool:
    return not np.any(reduce_vector(F, R, pivots, v))
