"""Monomial basis of L(lambda P), evaluation at the points, generator matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

import numpy as np

from .algebra import Field, ProductForm
from .curve import CurveError, CurveSpec, semigroup_elements
from .linalg import rank
from .orbits import OrbitDecomposition


@dataclass(frozen=True)
class Monomial:
    beta: int   # exponent of x
    gamma: int  # exponent of y
    pole_order: int

    def __str__(self):
        if self.beta == 0 and self.gamma == 0:
            return "1"
        parts = []
        for var, e in (("x", self.beta), ("y", self.gamma)):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append(f"{var}^{e}")
        return "*".join(parts)


def monomial_basis(spec: CurveSpec, lam: int) -> list[Monomial]:
    """One monomial x^beta y^gamma per semigroup element <= lam, by pole order.

    Exponents come from the residue window gamma < a when a < b, and beta < b
    otherwise; either window gives each pole order exactly once.
    """
    a, b = spec.a, spec.b
    out = []
    for s in semigroup_elements(a, b, lam):
        if a < b:
            gamma = next(g for g in range(a) if (s - g * b) >= 0 and (s - g * b) % a == 0)
            beta = (s - gamma * b) // a
        else:
            beta = next(be for be in range(b) if (s - be * a) >= 0 and (s - be * a) % b == 0)
            gamma = (s - beta * a) // b
        out.append(Monomial(beta, gamma, s))
    return out


Function = Union[Monomial, ProductForm, Callable, Iterable]


def evaluate_codeword(func: Function, decomp: OrbitDecomposition) -> np.ndarray:
    """Values of ``func`` at the points in canonical order.

    ``func`` may be a :class:`Monomial`, a :class:`ProductForm`, a callable
    ``(xs, ys) -> values`` on code arrays, or an iterable of
    ``(coefficient, function)`` pairs taken as a linear combination.
    """
    F = decomp.spec.field
    xs, ys = decomp.xs, decomp.ys
    if isinstance(func, Monomial):
        return F.vmul(F.vpow(xs, func.beta), F.vpow(ys, func.gamma))
    if isinstance(func, ProductForm):
        return func.evaluate_many(xs, ys)
    if callable(func):
        return np.asarray(func(xs, ys), dtype=np.int64)
    acc = np.zeros(decomp.n, dtype=np.int64)
    for coeff, term in func:
        vals = evaluate_codeword(term, decomp)
        acc = F.vadd(acc, F.vmul(np.full(decomp.n, coeff, dtype=np.int64), vals))
    return acc


@dataclass(frozen=True)
class GenMatrix:
    field: Field
    lam: int
    basis: tuple[Monomial, ...]
    matrix: np.ndarray  # k x n array of codes

    @property
    def k(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]


def check_lambda(decomp: OrbitDecomposition, lam: int) -> None:
    if lam < 0:
        raise CurveError(f"lambda = {lam} must be non-negative")
    if lam >= decomp.n:
        raise CurveError(f"lambda = {lam} must be below the code length n = {decomp.n}")


def generator_matrix(spec: CurveSpec, decomp: OrbitDecomposition, lam: int) -> GenMatrix:
    check_lambda(decomp, lam)
    basis = monomial_basis(spec, lam)
    rows = [evaluate_codeword(mono, decomp) for mono in basis]
    mat = np.array(rows, dtype=np.int64).reshape(len(basis), decomp.n)
    return GenMatrix(spec.field, lam, tuple(basis), mat)


def code_dim(gm: GenMatrix) -> int:
    return rank(gm.field, gm.matrix)
