"""Systematic encoding by division against a POT basis, and the generator-matrix baseline."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import Field
from .linalg import rref
from .orbits import OrbitDecomposition
from .potmod import (
    GroebnerBasis,
    ModMonomial,
    ModuleElement,
    ModuleError,
    divide,
    module_to_codeword,
)
from .rrspace import GenMatrix


class EncodingError(ValueError):
    pass


@dataclass(frozen=True)
class InfoPositions:
    monomials: tuple[ModMonomial, ...]  # decreasing POT
    columns: tuple[int, ...]            # matching codeword indices

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


def info_positions(G: GroebnerBasis, decomp: OrbitDecomposition) -> InfoPositions:
    """Nonstandard monomials t^l e_j with d_j <= l < |O_j|."""
    G.check_triangular()
    monos = [
        ModMonomial(j, ell)
        for j, d in enumerate(G.degrees)
        for ell in range(d, decomp.lengths[j])
    ]
    monos.sort(reverse=True)
    cols = tuple(decomp.offsets[m.row] + m.degree for m in monos)
    return InfoPositions(tuple(monos), cols)


def _check_message(w, k: int) -> list[int]:
    w = [int(v) for v in w]
    if len(w) != k:
        raise EncodingError(f"message has {len(w)} symbols, expected k = {k}")
    return w


def encode(w: Sequence[int], G: GroebnerBasis, decomp: OrbitDecomposition,
           positions: InfoPositions | None = None) -> np.ndarray:
    """c = f - R where f places w on the information positions and R = f mod G."""
    if positions is None:
        positions = info_positions(G, decomp)
    w = _check_message(w, len(positions))
    F = G.field
    rows = [[0] * L for L in decomp.lengths]
    for sym, m in zip(w, positions.monomials):
        rows[m.row][m.degree] = sym
    f = ModuleElement(F, tuple(tuple(r) for r in rows))
    _, R = divide(f, G)
    if not R.is_canonical(decomp.lengths):
        raise ModuleError("remainder is not a canonical representative")
    return module_to_codeword(f - R, decomp)


def extract_message(c, positions: InfoPositions) -> list[int]:
    """Symbols at the information positions.  No membership check is made."""
    c = np.asarray(c, dtype=np.int64)
    return [int(c[col]) for col in positions.columns]


@dataclass(frozen=True)
class SystematicGenMatrix:
    field: Field
    positions: InfoPositions
    matrix: np.ndarray  # k x n, identity on the information columns

    def encode(self, w: Sequence[int]) -> np.ndarray:
        w = _check_message(w, self.matrix.shape[0])
        F = self.field
        out = np.zeros(self.matrix.shape[1], dtype=np.int64)
        for sym, row in zip(w, self.matrix):
            if sym:
                out = F.vadd(out, F.vmul(np.full(len(row), sym, dtype=np.int64), row))
        return out


def systematic_genmatrix(gm: GenMatrix, positions: InfoPositions) -> SystematicGenMatrix:
    cols = list(positions.columns)
    if gm.k != len(cols):
        raise EncodingError(f"generator matrix has {gm.k} rows but there are {len(cols)} information positions")
    if not cols:
        return SystematicGenMatrix(gm.field, positions, np.zeros((0, gm.n), dtype=np.int64))
    R, pivots = rref(gm.field, gm.matrix, columns=cols)
    if pivots != cols:
        raise EncodingError("information columns of the generator matrix are singular")
    return SystematicGenMatrix(gm.field, positions, R)


def encode_genmatrix(w: Sequence[int], sgm: SystematicGenMatrix) -> np.ndarray:
    return sgm.encode(w)


@dataclass(frozen=True)
class StorageReport:
    n: int
    k: int
    rows: int
    gb_coeffs: int             # stored coefficients of the basis
    genmat_coeffs: int         # k * n
    genmat_systematic: int     # k * (n - k)
    gb_order: int              # rows * (n - k)

    @property
    def degenerate(self) -> bool:
        return self.k == 0

    @property
    def gb_smaller(self) -> bool | None:
        if self.degenerate:
            return None
        return self.gb_coeffs < self.genmat_coeffs

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "rows": self.rows,
            "gb_coeffs": self.gb_coeffs, "genmat_coeffs": self.genmat_coeffs,
            "genmat_systematic": self.genmat_systematic, "gb_order": self.gb_order,
            "degenerate": self.degenerate,
        }


def storage_report(G: GroebnerBasis, gm: GenMatrix) -> StorageReport:
    n, k = gm.n, gm.k
    rows = len(G.elements)
    gb = sum(len(r) for g in G.elements for r in g.rows)
    return StorageReport(n, k, rows, gb, k * n, k * (n - k), rows * (n - k))


def bench_encode(encoder, messages, repeat: int = 1) -> int:
    """Mean nanoseconds per encoded message."""
    if not messages:
        return 0
    start = time.perf_counter_ns()
    for _ in range(repeat):
        for w in messages:
            encoder(w)
    return (time.perf_counter_ns() - start) // (repeat * len(messages))
