"""Interpolating functions on the long orbits and the evaluation-only basis construction.

For a long orbit O_i:

* ``M_i(y)`` is the product of (y - y') over the distinct y-values of O_i.  It
  vanishes on O_i and is a nonzero constant on every other orbit.
* ``B_ij(x, y)`` vanishes on O_i except at P_ij: y-factors remove the other
  y-values of the orbit, x-factors remove the other points sharing y_ij.
* ``F_i = M_1 ... M_(i-1)`` kills the earlier orbits and equals c_i on O_i.

Row functions f_i combine these so that the module image of ev(f_i) has
i - 1 leading zero rows and row i equal to the monic polynomial whose roots are
the marked boxes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ProductForm, UniPoly, peval, poly_from_root_codes
from .curve import CurveError, CurveSpec
from .diagram import RootDiagram
from .orbits import OrbitDecomposition
from .potmod import (
    GroebnerBasis,
    ModuleElement,
    codeword_to_module,
    kernel_generator,
    oracle_tail,
)

Poly = tuple[int, ...]


class InterpolationError(CurveError):
    pass


def build_M(decomp: OrbitDecomposition, i: int) -> UniPoly:
    """Orbit annihilator for long orbit ``i`` (0-based), checked on every orbit."""
    if i >= decomp.r:
        raise InterpolationError(f"row {i + 1} is not a long orbit")
    F = decomp.spec.field
    ys = decomp.orbits[i].ys
    M = UniPoly(F, poly_from_root_codes(F, ys), "y")
    for k, orbit in enumerate(decomp.orbits):
        vals = {peval(F, M.coeffs, y) for _, y in orbit.points}
        if k == i:
            if vals != {0}:
                raise InterpolationError(f"M_{i + 1} does not vanish on its own orbit")
        elif len(vals) != 1 or 0 in vals:
            raise InterpolationError(
                f"M_{i + 1} is not a nonzero constant on orbit {k + 1} (values {sorted(vals)})"
            )
    return M


def build_B(decomp: OrbitDecomposition, i: int, j: int) -> ProductForm:
    """Selector of P_ij within O_i, as a product of linear factors."""
    if i >= decomp.r:
        raise InterpolationError(f"row {i + 1} is not a long orbit")
    F = decomp.spec.field
    orbit = decomp.orbits[i]
    xj, yj = orbit.points[j]
    factors = [("y", y) for y in orbit.ys if y != yj]
    factors += [("x", x) for x, y in orbit.points if y == yj and x != xj]
    B = ProductForm(F, 1, tuple(factors))
    for k, (x, y) in enumerate(orbit.points):
        v = B.evaluate(x, y)
        if (k == j) != (v != 0):
            raise InterpolationError(f"B_{i + 1},{j} has the wrong vanishing pattern at P_{i + 1},{k}")
    return B


def prefix_product(decomp: OrbitDecomposition, i: int) -> ProductForm:
    """F_i = M_1 ... M_(i-1), kept in factored form."""
    F = decomp.spec.field
    factors = tuple(("y", y) for k in range(i) for y in decomp.orbits[k].ys)
    return ProductForm(F, 1, factors)


@dataclass(frozen=True)
class OrbitInterpolants:
    M: tuple[UniPoly, ...]
    prefix: tuple[ProductForm, ...]
    c: tuple[int, ...]
    B: tuple[tuple[ProductForm, ...], ...]
    B_at_point: tuple[tuple[int, ...], ...]


def build_interpolants(decomp: OrbitDecomposition) -> OrbitInterpolants:
    M, prefix, cs, Bs, Bvals = [], [], [], [], []
    for i in range(decomp.r):
        M.append(build_M(decomp, i))
        Fi = prefix_product(decomp, i)
        x0, y0 = decomp.orbits[i].base
        c = Fi.evaluate(x0, y0)
        if c == 0:
            raise InterpolationError(f"F_{i + 1} vanishes on orbit {i + 1}")
        prefix.append(Fi)
        cs.append(c)
        row = [build_B(decomp, i, j) for j in range(decomp.lengths[i])]
        Bs.append(tuple(row))
        Bvals.append(tuple(B.evaluate(*decomp.orbits[i].points[j]) for j, B in enumerate(row)))
    return OrbitInterpolants(tuple(M), tuple(prefix), tuple(cs), tuple(Bs), tuple(Bvals))


@dataclass(frozen=True)
class RowFunction:
    """f_i = (F_i / c_i) * sum_j a_j B_ij / B_ij(P_ij)."""

    row: int
    p: Poly
    prefix: ProductForm                      # carries the 1/c_i factor
    terms: tuple[tuple[int, ProductForm], ...]  # (a_j / B_ij(P_ij), B_ij)

    def evaluate(self, x: int, y: int) -> int:
        F = self.prefix.field
        pre = self.prefix.evaluate(x, y)
        if pre == 0:
            return 0
        acc = 0
        for coeff, B in self.terms:
            acc = F.add(acc, F.mul(coeff, B.evaluate(x, y)))
        return F.mul(pre, acc)

    def evaluate_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        F = self.prefix.field
        acc = np.zeros(len(xs), dtype=np.int64)
        for coeff, B in self.terms:
            acc = F.vadd(acc, B.scaled(coeff).evaluate_many(xs, ys))
        return F.vmul(self.prefix.evaluate_many(xs, ys), acc)


def build_f_i(decomp: OrbitDecomposition, interp: OrbitInterpolants, i: int,
              marked_roots) -> RowFunction:
    F = decomp.spec.field
    L = decomp.lengths[i]
    marked = sorted(set(marked_roots))
    if len(marked) >= L:
        raise InterpolationError(f"row {i + 1} is full; no row function is needed")
    p = poly_from_root_codes(F, marked)
    terms = tuple(
        (F.div(a_j, interp.B_at_point[i][j]), interp.B[i][j])
        for j, a_j in enumerate(p) if a_j
    )
    prefix = interp.prefix[i].scaled(F.inv(interp.c[i]))
    return RowFunction(i, p, prefix, terms)


def evaluate_proc(f_i: RowFunction, decomp: OrbitDecomposition, point: tuple[int, int]) -> int:
    """Value of f_i at a point of the decomposition."""
    if tuple(point) not in decomp.position:
        raise InterpolationError(f"{point} is not a point of the decomposition")
    return f_i.evaluate(*point)


def interpolation_basis(spec: CurveSpec, decomp: OrbitDecomposition, diagram: RootDiagram,
               interp: OrbitInterpolants | None = None) -> GroebnerBasis:
    """Non-reduced POT basis built from the root diagram by evaluation only.

    Non-full long rows use f_i; full rows use (t^|O_i| - 1) e_i.  Non-full short
    rows have no closed-form row function and take the oracle's element.
    """
    F = spec.field
    if interp is None:
        interp = build_interpolants(decomp)
    elements: list[ModuleElement] = []
    provenance: list[str] = []
    tail: GroebnerBasis | None = None
    for i in range(decomp.rows):
        row = diagram.rows[i]
        boxes = decomp.lengths[i]
        if len(row.marked) < boxes:
            if i < decomp.r:
                f_i = build_f_i(decomp, interp, i, row.marked)
                values = f_i.evaluate_many(decomp.xs, decomp.ys)
                m = codeword_to_module(values, decomp)
                elements.append(ModuleElement(F, ((),) * i + m.rows[i:]))
                provenance.append("fast")
            else:
                if tail is None:
                    tail = oracle_tail(spec, decomp, diagram.lam, decomp.r)
                elements.append(tail.elements[i - decomp.r])
                provenance.append("oracle")
        else:
            elements.append(kernel_generator(decomp, i))
            provenance.append("fast")
    G = GroebnerBasis(tuple(elements), False, tuple(provenance))
    G.check_triangular()
    return G
