"""The code as a submodule of F_q[t]^(r+s) under the POT order.

Codewords map to module elements block by block: the entries of orbit i,
listed by sigma-power j, become the coefficients of t^j in row i.  Row indices
are 0-based in code and rendered 1-based (``e1``, ``e2``, ...) in text.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import Field, pdivmod, pmonic, pxgcd
from .curve import CurveSpec
from .linalg import rref
from .orbits import OrbitDecomposition
from .rrspace import generator_matrix

Poly = tuple[int, ...]


class ModuleError(ValueError):
    pass


@functools.total_ordering
@dataclass(frozen=True)
class ModMonomial:
    """t^degree e_row.  Larger in POT means earlier row, then higher degree."""

    row: int
    degree: int

    def __lt__(self, other: "ModMonomial") -> bool:
        if self.row != other.row:
            return self.row > other.row
        return self.degree < other.degree

    def __str__(self):
        t = "" if self.degree == 0 else ("t" if self.degree == 1 else f"t^{self.degree}")
        return f"{t}e{self.row + 1}" if t else f"e{self.row + 1}"


def _trim(c) -> Poly:
    c = list(map(int, c))
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class ModuleElement:
    field: Field
    rows: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(_trim(r) for r in self.rows))

    @classmethod
    def zero(cls, field: Field, nrows: int) -> "ModuleElement":
        return cls(field, ((),) * nrows)

    @classmethod
    def unit(cls, field: Field, nrows: int, row: int, poly: Poly = (1,)) -> "ModuleElement":
        rows = [()] * nrows
        rows[row] = tuple(poly)
        return cls(field, tuple(rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    @property
    def leading_position(self) -> int | None:
        for i, r in enumerate(self.rows):
            if r:
                return i
        return None

    @property
    def leading_monomial(self) -> ModMonomial | None:
        i = self.leading_position
        return None if i is None else ModMonomial(i, len(self.rows[i]) - 1)

    @property
    def leading_coefficient(self) -> int:
        i = self.leading_position
        return 0 if i is None else self.rows[i][-1]

    def is_canonical(self, lengths: Sequence[int]) -> bool:
        return all(len(r) <= L for r, L in zip(self.rows, lengths))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        F = self.field
        return ModuleElement(F, tuple(_padd(F, a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        F = self.field
        return ModuleElement(
            F, tuple(_padd(F, a, [F.neg(c) for c in b]) for a, b in zip(self.rows, other.rows))
        )

    def scale(self, c: int) -> "ModuleElement":
        F = self.field
        return ModuleElement(F, tuple(tuple(F.mul(c, v) for v in r) for r in self.rows))

    def shift(self, e: int) -> "ModuleElement":
        return ModuleElement(self.field, tuple((0,) * e + r if r else () for r in self.rows))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _padd(F: Field, a, b) -> Poly:
    n = max(len(a), len(b))
    return _trim(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


@dataclass(frozen=True)
class GroebnerBasis:
    """Triangular POT basis: ``elements[i]`` has leading position ``i``."""

    elements: tuple[ModuleElement, ...]
    reduced: bool
    provenance: tuple[str, ...] = ()

    @property
    def field(self) -> Field:
        return self.elements[0].field

    @property
    def leading_polys(self) -> tuple[Poly, ...]:
        return tuple(g.rows[i] for i, g in enumerate(self.elements))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(p) - 1 for p in self.leading_polys)

    @functools.cached_property
    def log_terms(self) -> tuple:
        """Per element: (row, row length, [(degree, log coeff)]) for its nonzero rows."""
        F = self.field
        return tuple(
            tuple(
                (k, len(r), [(j, F.log(v)) for j, v in enumerate(r) if v])
                for k, r in enumerate(g.rows) if r
            )
            for g in self.elements
        )

    def check_triangular(self) -> None:
        for i, g in enumerate(self.elements):
            if g.leading_position != i:
                raise ModuleError(f"element {i + 1} has leading position {g.leading_position}")

    def to_json(self) -> dict:
        out = {"reduced": self.reduced, "elements": [g.to_json() for g in self.elements]}
        if self.provenance:
            out["provenance"] = list(self.provenance)
        return out

    @classmethod
    def from_json(cls, field: Field, data: dict) -> "GroebnerBasis":
        elems = tuple(ModuleElement(field, tuple(tuple(r) for r in e)) for e in data["elements"])
        return cls(elems, bool(data["reduced"]), tuple(data.get("provenance", ())))


# -- code <-> module

def codeword_to_module(c, decomp: OrbitDecomposition) -> ModuleElement:
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (decomp.n,):
        raise ModuleError(f"codeword length {c.shape} != n = {decomp.n}")
    F = decomp.spec.field
    return ModuleElement(F, tuple(tuple(c[decomp.block(i)].tolist()) for i in range(decomp.rows)))


def module_to_codeword(m: ModuleElement, decomp: OrbitDecomposition) -> np.ndarray:
    """Reduce each row modulo t^|O_i| - 1 and flatten."""
    F = m.field
    out = np.zeros(decomp.n, dtype=np.int64)
    for i, row in enumerate(m.rows):
        L, off = decomp.lengths[i], decomp.offsets[i]
        if len(row) <= L:
            out[off:off + len(row)] = row
            continue
        for j, v in enumerate(row):
            if v:
                out[off + j % L] = F.add(int(out[off + j % L]), v)
    return out


# -- division

def divide(f: ModuleElement, G: GroebnerBasis) -> tuple[list[Poly], ModuleElement]:
    """Division by a triangular POT basis: rows are cleared in POT order."""
    F = f.field
    exp_l, log_l = F._exp_l, F._log_l
    add = F.adder()
    rows = [list(r) for r in f.rows]
    quotients: list[list[int]] = [[] for _ in G.elements]
    for i, g in enumerate(G.elements):
        lead = g.rows[i]
        if not lead or lead[-1] == 0:
            raise ModuleError(f"basis element {i + 1} has no leading term in row {i + 1}")
        d = len(lead) - 1
        inv_lc = F.inv(lead[-1])
        terms = G.log_terms[i]
        ri, qi = rows[i], quotients[i]
        while len(ri) - 1 >= d:
            e = len(ri) - 1 - d
            c = F.mul(ri[-1], inv_lc)
            if len(qi) <= e:
                qi.extend([0] * (e + 1 - len(qi)))
            qi[e] = F.add(qi[e], c)
            nlc = log_l[F.neg(c)]
            for k, width, pairs in terms:
                rk = rows[k]
                if len(rk) < width + e:
                    rk.extend([0] * (width + e - len(rk)))
                for idx, lg in pairs:
                    rk[idx + e] = add(rk[idx + e], exp_l[nlc + lg])
                while rk and rk[-1] == 0:
                    rk.pop()
    return [_trim(qq) for qq in quotients], ModuleElement(F, tuple(tuple(r) for r in rows))


def combine(quotients: Sequence[Poly], G: GroebnerBasis, R: ModuleElement) -> ModuleElement:
    """sum_i a_i g_i + R, the exactness replay of :func:`divide`."""
    acc = R
    for a, g in zip(quotients, G.elements):
        for e, c in enumerate(a):
            if c:
                acc = acc + g.scale(c).shift(e)
    return acc


def is_member(f: ModuleElement, G: GroebnerBasis) -> bool:
    return divide(f, G)[1].is_zero()


def generates_same(G1: GroebnerBasis, G2: GroebnerBasis) -> bool:
    """Bidirectional zero-remainder check."""
    return all(is_member(g, G2) for g in G1.elements) and all(is_member(g, G1) for g in G2.elements)


def kernel_generator(decomp: OrbitDecomposition, i: int) -> ModuleElement:
    """(t^|O_i| - 1) e_i."""
    F = decomp.spec.field
    L = decomp.lengths[i]
    return ModuleElement.unit(F, decomp.rows, i, (F.neg(1),) + (0,) * (L - 1) + (1,))


def is_reduced(G: GroebnerBasis) -> bool:
    for i, g in enumerate(G.elements):
        if g.rows[i][-1] != 1:
            return False
        for j in range(i + 1, len(G.elements)):
            if len(g.rows[j]) - 1 >= G.degrees[j]:
                return False
    return True


# -- the oracle: triangularization over F_q[t] on canonical vectors
#
# Module elements are kept as canonical length-n code vectors (row i = block i,
# degree < |O_i|).  Multiplying by t^e rotates every block cyclically, which is
# the same as adding multiples of the kernel generators (t^|O_j| - 1) e_j.

class _Blocks:
    def __init__(self, decomp: OrbitDecomposition):
        self.F = decomp.spec.field
        self.offsets = decomp.offsets
        self.lengths = decomp.lengths
        self.n = decomp.n
        self.period = math.lcm(*self.lengths)
        rot = np.empty((self.period, self.n), dtype=np.int64)
        for e in range(self.period):
            for off, L in zip(self.offsets, self.lengths):
                j = np.arange(L)
                rot[e, off + j] = off + (j - e) % L
        self.rot = rot

    def degrees(self, V: np.ndarray, i: int) -> np.ndarray:
        off, L = self.offsets[i], self.lengths[i]
        nz = V[:, off:off + L] != 0
        last = L - 1 - np.argmax(nz[:, ::-1], axis=1)
        return np.where(nz.any(axis=1), last, -1)

    def poly_times(self, u: Poly, v: np.ndarray) -> np.ndarray:
        F = self.F
        acc = np.zeros(self.n, dtype=np.int64)
        for e, c in enumerate(u):
            if c:
                acc = F.vadd(acc, F.vmul(np.full(self.n, c, dtype=np.int64), v[self.rot[e % self.period]]))
        return acc

    def block_poly(self, v: np.ndarray, i: int) -> Poly:
        off, L = self.offsets[i], self.lengths[i]
        return _trim(v[off:off + L].tolist())


def _pick_pivot(V: np.ndarray, deg: np.ndarray) -> int:
    # smallest degree, ties broken by the lexicographically smallest code vector
    keys = tuple(V.T[::-1]) + (deg,)
    return int(np.lexsort(keys)[0])


def triangularize(decomp: OrbitDecomposition, generators: np.ndarray) -> list[np.ndarray | None]:
    """Leading-position gcd elimination.

    Returns, per row, a canonical vector whose row-i block is the gcd of the
    row-i ideal (not yet monic), or ``None`` when the row is full, i.e. when
    the kernel generator itself is the basis element.
    """
    B = _Blocks(decomp)
    F = B.F
    V = np.asarray(generators, dtype=np.int64).reshape(-1, decomp.n)
    V = V[np.any(V != 0, axis=1)]
    result: list[np.ndarray | None] = []
    for i in range(decomp.rows):
        off, L = B.offsets[i], B.lengths[i]
        deg = B.degrees(V, i)
        active, rest = V[deg >= 0], V[deg < 0]
        while len(active) > 1:
            deg = B.degrees(active, i)
            k = _pick_pivot(active, deg)
            p, dp = active[k], int(deg[k])
            inv_lc = F.inv(int(p[off + dp]))
            others = np.delete(active, k, axis=0)
            while True:
                od = B.degrees(others, i)
                mask = od >= dp
                if not mask.any():
                    break
                sel = np.nonzero(mask)[0]
                e = od[sel] - dp
                c = F.vmul(others[sel, off + od[sel]], np.full(len(sel), inv_lc, dtype=np.int64))
                others[sel] = F.vsub(others[sel], F.vmul(c[:, None], p[B.rot[e]]))
            od = B.degrees(others, i)
            rest = np.concatenate([rest, others[od < 0]])
            active = np.concatenate([p[None, :], others[od >= 0]])
        if len(active) == 0:
            result.append(None)
            V = rest
            continue
        p = active[0]
        h = B.block_poly(p, i)
        t_L = (F.neg(1),) + (0,) * (L - 1) + (1,)
        g, u, _ = pxgcd(F, h, t_L)
        gi = B.poly_times(u, p)
        cof = pdivmod(F, t_L, g)[0]
        z = B.poly_times(cof, p)
        if B.block_poly(gi, i) != g or np.any(z[off:off + L]):
            raise ModuleError(f"gcd step failed in row {i + 1}")
        result.append(gi)
        V = np.concatenate([rest, z[None, :]]) if np.any(z) else rest
    return result


def _interreduce(decomp: OrbitDecomposition, pivots: list[np.ndarray | None]) -> list[np.ndarray | None]:
    B = _Blocks(decomp)
    F = B.F
    out: list[np.ndarray | None] = []
    for i, v in enumerate(pivots):
        if v is None:
            out.append(None)
            continue
        d = int(B.degrees(v[None, :], i)[0])
        out.append(F.vmul(v, np.full(B.n, F.inv(int(v[B.offsets[i] + d])), dtype=np.int64)))
    for i, v in enumerate(out):
        if v is None:
            continue
        for j in range(i + 1, decomp.rows):
            w = out[j]
            if w is None:
                continue
            dj = int(B.degrees(w[None, :], j)[0])
            while True:
                dv = int(B.degrees(v[None, :], j)[0])
                if dv < dj:
                    break
                c = int(v[B.offsets[j] + dv])
                v = F.vsub(v, F.vmul(np.full(B.n, c, dtype=np.int64), w[B.rot[dv - dj]]))
        out[i] = v
    return out


def basis_from_vectors(
    decomp: OrbitDecomposition, vectors: list[np.ndarray | None], reduced: bool, provenance=()
) -> GroebnerBasis:
    F = decomp.spec.field
    elems = []
    for i, v in enumerate(vectors):
        if v is None:
            elems.append(kernel_generator(decomp, i))
        else:
            m = codeword_to_module(v, decomp)
            elems.append(ModuleElement(F, ((),) * i + m.rows[i:]))
    G = GroebnerBasis(tuple(elems), reduced, tuple(provenance))
    G.check_triangular()
    return G


def oracle_gb(spec: CurveSpec, decomp: OrbitDecomposition, lam: int) -> GroebnerBasis:
    """Unique reduced POT basis of the module of the code C(D, lam P)."""
    gm = generator_matrix(spec, decomp, lam)
    pivots = _interreduce(decomp, triangularize(decomp, gm.matrix))
    return basis_from_vectors(decomp, pivots, True, ["oracle"] * decomp.rows)


def module_leading_poly(G: GroebnerBasis, i: int) -> Poly:
    return pmonic(G.field, G.leading_polys[i])


def oracle_tail(spec: CurveSpec, decomp: OrbitDecomposition, lam: int, start: int) -> GroebnerBasis:
    """Reduced basis elements for rows ``start..`` only.

    The submodule of elements vanishing on rows ``< start`` corresponds to the
    subcode vanishing on the first ``start`` orbits; it is cut out by an
    echelon form that visits those columns first, then triangularized on its
    own.  Its reduced basis coincides with the tail of the full reduced basis.
    """
    F = spec.field
    gm = generator_matrix(spec, decomp, lam)
    cut = decomp.offsets[start] if start < decomp.rows else decomp.n
    R, pivots = rref(F, gm.matrix)
    sub = R[[k for k, c in enumerate(pivots) if c >= cut]] if len(R) else R
    pivots_tail = _interreduce(decomp, triangularize(decomp, sub))
    if any(v is not None for v in pivots_tail[:start]):
        raise ModuleError("subcode does not vanish on the leading orbits")
    full = basis_from_vectors(
        decomp, [None] * start + pivots_tail[start:], True, ["oracle"] * decomp.rows
    )
    return GroebnerBasis(full.elements[start:], True, full.provenance[start:])
