"""Root diagrams: one row per orbit, one box per root of t^|O_i| - 1.

A box is marked when its root is a root of the leading polynomial of the
row's basis element; unmarked boxes count the code dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Field, root_codes
from .curve import CurveSpec, semigroup_dim
from .orbits import OrbitDecomposition
from .potmod import GroebnerBasis, oracle_gb, oracle_tail
from .rrspace import check_lambda


class DiagramMismatch(AssertionError):
    """Closed-form row data disagrees with the dimension count or the oracle."""


@dataclass(frozen=True)
class DiagramRow:
    boxes: tuple[int, ...]  # root codes, by ascending generator exponent
    marked: frozenset[int]
    source: str = "oracle"

    @property
    def empty(self) -> frozenset[int]:
        return frozenset(self.boxes) - self.marked

    @property
    def empty_count(self) -> int:
        return len(self.boxes) - len(self.marked)

    @property
    def is_full(self) -> bool:
        return len(self.marked) == len(self.boxes)

    @property
    def is_empty(self) -> bool:
        return not self.marked

    def render(self) -> str:
        return "".join("X" if b in self.marked else "." for b in self.boxes)


@dataclass(frozen=True)
class RootDiagram:
    field: Field
    lam: int
    rows: tuple[DiagramRow, ...]

    def render(self) -> str:
        return "\n".join(f"{i + 1:>3} {row.render()}" for i, row in enumerate(self.rows))

    def to_json(self) -> dict:
        F = self.field
        return {
            "lambda": self.lam,
            "rows": [
                {
                    "boxes": [F.log(b) for b in row.boxes],
                    "marked": sorted(F.log(b) for b in row.marked),
                    "source": row.source,
                }
                for row in self.rows
            ],
        }


def box_set(F: Field, length: int) -> tuple[int, ...]:
    """The length-th roots of unity, by ascending generator exponent."""
    step = (F.q - 1) // length
    return tuple(F.exp(step * k) for k in range(length))


def empty_boxes(d: RootDiagram) -> int:
    return sum(row.empty_count for row in d.rows)


def _row_from_basis(F: Field, G: GroebnerBasis, i: int, length: int) -> DiagramRow:
    boxes = box_set(F, length)
    marked = frozenset(root_codes(F, G.leading_polys[i]))
    if not marked <= set(boxes):
        raise DiagramMismatch(f"row {i + 1}: leading polynomial has roots outside the box set")
    return DiagramRow(boxes, marked, "oracle")


def diagram_from_basis(decomp: OrbitDecomposition, G: GroebnerBasis, lam: int) -> RootDiagram:
    F = decomp.spec.field
    rows = tuple(_row_from_basis(F, G, i, L) for i, L in enumerate(decomp.lengths))
    return RootDiagram(F, lam, rows)


def diagram_oracle(spec: CurveSpec, decomp: OrbitDecomposition, lam: int,
                   G: GroebnerBasis | None = None) -> RootDiagram:
    if G is None:
        G = oracle_gb(spec, decomp, lam)
    return diagram_from_basis(decomp, G, lam)


def partial_row_empties(spec: CurveSpec, decomp: OrbitDecomposition, lam: int, i: int) -> frozenset[int]:
    """Unmarked roots of long row ``i`` (0-based) in the partial regime.

    The roots alpha^-(beta + t gamma) over 0 <= beta < b, 0 <= gamma < rho1 with
    i rho1 b + beta a + gamma b <= lam.
    """
    F = spec.field
    a, b = spec.a, spec.b
    rho1 = decomp.rho[0]
    base = i * rho1 * b
    return frozenset(
        F.pow(spec.alpha, -(beta + spec.t_exp * gamma))
        for beta in range(b)
        for gamma in range(rho1)
        if base + beta * a + gamma * b <= lam
    )


def diagram_fast(spec: CurveSpec, decomp: OrbitDecomposition, lam: int,
                 check_against: RootDiagram | None = None) -> RootDiagram:
    """Long rows from the closed-form thresholds; the remaining rows from the oracle.

    A long row i (0-based) is empty once lam >= rho2 a + rho3 b + i rho1 b and
    partial, with unmarked set given by :func:`partial_row_empties`, once
    lam >= i rho1 b.  Rows below both thresholds, and all short rows, are
    resolved by the oracle restricted to the trailing rows.
    """
    check_lambda(decomp, lam)
    F = spec.field
    a, b = spec.a, spec.b
    rho1, rho2, rho3 = decomp.rho
    rows: list[DiagramRow | None] = []
    for i in range(decomp.r):
        boxes = box_set(F, decomp.lengths[i])
        if lam >= rho2 * a + rho3 * b + i * rho1 * b:
            rows.append(DiagramRow(boxes, frozenset(), "fast-empty"))
        elif lam >= i * rho1 * b:
            empties = partial_row_empties(spec, decomp, lam, i)
            if not empties <= set(boxes):
                raise DiagramMismatch(f"row {i + 1}: closed-form empty set leaves the box set")
            rows.append(DiagramRow(boxes, frozenset(boxes) - empties, "fast-partial"))
        else:
            rows.append(None)
    start = next((i for i, row in enumerate(rows) if row is None), decomp.r)
    if any(row is not None for row in rows[start:]):
        raise DiagramMismatch("closed-form rows are not a prefix of the long rows")
    rows = rows[:start]
    if start < decomp.rows:
        tail = oracle_tail(spec, decomp, lam, start)
        for k, g in enumerate(tail.elements):
            i = start + k
            lead = g.rows[i]
            boxes = box_set(F, decomp.lengths[i])
            rows.append(DiagramRow(boxes, frozenset(root_codes(F, lead)), "oracle"))
    d = RootDiagram(F, lam, tuple(rows))
    expected = semigroup_dim(a, b, lam)
    if empty_boxes(d) != expected:
        raise DiagramMismatch(
            f"lambda={lam}: {empty_boxes(d)} empty boxes but dim L(lambda P) = {expected}; "
            "the closed-form empty sets disagree with the dimension count"
        )
    if check_against is not None:
        diff = diagram_diff(d, check_against, rows=range(decomp.r))
        if diff:
            raise DiagramMismatch("fast and oracle diagrams differ:\n" + "\n".join(diff))
    return d


def diagram_diff(d1: RootDiagram, d2: RootDiagram, rows=None) -> list[str]:
    F = d1.field
    idx = range(len(d1.rows)) if rows is None else rows
    out = []
    for i in idx:
        m1, m2 = d1.rows[i].marked, d2.rows[i].marked
        if m1 != m2:
            only1 = sorted(F.log(v) for v in m1 - m2)
            only2 = sorted(F.log(v) for v in m2 - m1)
            out.append(f"row {i + 1}: marked only in first {only1}, only in second {only2}")
    return out
