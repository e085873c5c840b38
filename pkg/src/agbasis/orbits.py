"""Orbit decomposition of the affine points under sigma.

The orbit order fixed here (long orbits first, each group sorted by base
point, points listed by sigma-power from the base) is the canonical codeword
order used everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .curve import AffinePoint, CurveError, CurveSpec


@dataclass(frozen=True)
class Orbit:
    index: int
    points: tuple[tuple[int, int], ...]
    kind: str  # "long" or "short"

    @property
    def length(self) -> int:
        return len(self.points)

    @property
    def base(self) -> tuple[int, int]:
        return self.points[0]

    @property
    def ys(self) -> tuple[int, ...]:
        """Distinct y-values, in order of first appearance."""
        return tuple(dict.fromkeys(y for _, y in self.points))

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple(dict.fromkeys(x for x, _ in self.points))


@dataclass(frozen=True)
class OrbitDecomposition:
    spec: CurveSpec
    orbits: tuple[Orbit, ...]
    r: int
    s: int

    @property
    def n(self) -> int:
        return sum(o.length for o in self.orbits)

    @property
    def rows(self) -> int:
        return self.r + self.s

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(o.length for o in self.orbits)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for o in self.orbits:
            out.append(acc)
            acc += o.length
        return tuple(out)

    @cached_property
    def xs(self) -> np.ndarray:
        return np.array([x for o in self.orbits for x, _ in o.points], dtype=np.int64)

    @cached_property
    def ys(self) -> np.ndarray:
        return np.array([y for o in self.orbits for _, y in o.points], dtype=np.int64)

    @cached_property
    def position(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Point -> (orbit index, sigma power)."""
        return {pt: (i, j) for i, o in enumerate(self.orbits) for j, pt in enumerate(o.points)}

    @cached_property
    def rho(self) -> tuple[int, int, int]:
        return derive_rho(self)

    def block(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i] + self.lengths[i])

    def point(self, i: int, j: int) -> tuple[int, int]:
        o = self.orbits[i]
        return o.points[j % o.length]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "n": self.n,
            "rho": list(self.rho) if self.r else None,
            "orbits": [
                {
                    "index": o.index + 1,
                    "kind": o.kind,
                    "length": o.length,
                    "base": list(o.base),
                    "distinct_y": len(o.ys),
                    "points": [list(p) for p in o.points],
                }
                for o in self.orbits
            ],
        }


def decompose(spec: CurveSpec, points: list[AffinePoint]) -> OrbitDecomposition:
    remaining = {(p.x, p.y) for p in points}
    raw = []
    for pt in sorted(remaining):
        if pt not in remaining:
            continue
        orbit = [pt]
        remaining.discard(pt)
        cur = spec.sigma(pt)
        while cur != pt:
            if cur not in remaining:
                raise CurveError(f"orbit of {pt} leaves the point set at {cur}")
            remaining.discard(cur)
            orbit.append(cur)
            cur = spec.sigma(cur)
        raw.append(orbit)
    long_ = sorted((o for o in raw if all(x and y for x, y in o)), key=lambda o: o[0])
    short = sorted((o for o in raw if not all(x and y for x, y in o)), key=lambda o: o[0])
    orbits = tuple(
        Orbit(i, tuple(o), "long" if i < len(long_) else "short")
        for i, o in enumerate(long_ + short)
    )
    return OrbitDecomposition(spec, orbits, len(long_), len(short))


def derive_rho(decomp: OrbitDecomposition) -> tuple[int, int, int]:
    """(rho1, rho2, rho3) from the geometry of the long orbits.

    rho1 is the number of distinct y-values per long orbit, rho2 + 1 the number
    of orbit points sharing one y-value, rho3 = rho1 - 1.
    """
    spec = decomp.spec
    if decomp.r < 1:
        raise CurveError("no long orbits")
    nu = spec.nu
    rho1 = spec.field.order(spec.alpha_t)
    for o in decomp.orbits[: decomp.r]:
        if o.length != nu:
            raise CurveError(f"long orbit {o.index + 1} has length {o.length} != ord(alpha) = {nu}")
        if len(o.ys) != rho1:
            raise CurveError(
                f"long orbit {o.index + 1} has {len(o.ys)} distinct y-values, expected {rho1}"
            )
        if len(set(o.xs)) != o.length:
            raise CurveError(f"long orbit {o.index + 1} repeats an x-coordinate")
    return rho1, nu // rho1 - 1, rho1 - 1


def orbit_decomposition(spec: CurveSpec) -> OrbitDecomposition:
    from .curve import enumerate_points

    return decompose(spec, enumerate_points(spec))
