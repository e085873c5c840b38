import numpy as np
import pytest

from agbasis.curve import CurveError, enumerate_points
from agbasis.linalg import in_rowspace, rref
from agbasis.orbits import decompose, derive_rho
from agbasis.rrspace import generator_matrix

from conftest import SWEEP_PRESETS, load, preset_id


def test_hermitian_q2_orbits(herm2):
    spec, d = herm2
    F = spec.field
    assert (d.r, d.s, d.n) == (2, 2, 8)
    assert d.lengths == (3, 3, 1, 1)
    shorts = {o.points[0] for o in d.orbits[d.r:]}
    assert shorts == {(0, 0), (0, 1)}
    # sigma moves x by alpha and fixes y on this curve
    o = d.orbits[0]
    x0, y0 = o.base
    assert o.points == ((x0, y0), (F.mul(spec.alpha, x0), y0), (F.mul(F.pow(spec.alpha, 2), x0), y0))


def test_hermitian_q3_orbits(herm3):
    _, d = herm3
    assert d.r == 3 and d.lengths[:3] == (8, 8, 8)
    assert sorted(d.lengths[3:]) == [1, 2] and d.n == 27


def test_quotient_orbits(quot53):
    _, d = quot53
    assert d.r == 5 and set(d.lengths[:5]) == {12}
    assert sorted(d.lengths[5:]) == [1, 4]
    assert d.n == 65 == 5 * 12 + 4 + 1


@pytest.mark.parametrize("item", SWEEP_PRESETS, ids=preset_id)
def test_orbit_shape(item):
    spec, d = load(*item)
    q = spec.metadata["params"]["q"]
    assert sorted(d.lengths[d.r:]) == sorted([q - 1, 1])
    assert all(L == spec.nu == spec.field.order(spec.alpha) for L in d.lengths[:d.r])
    assert all(spec.nu % L == 0 for L in d.lengths)
    assert sum(d.lengths) == d.n == len(enumerate_points(spec))
    assert d.rho == spec.metadata["expected_rho"]


@pytest.mark.parametrize("item", SWEEP_PRESETS, ids=preset_id)
def test_canonical_order(item):
    spec, d = load(*item)
    for o in d.orbits:
        assert o.base == min(o.points)
        for j, pt in enumerate(o.points):
            assert spec.sigma(o.base, j) == pt
            assert d.position[pt] == (o.index, j)
    bases_long = [o.base for o in d.orbits[:d.r]]
    assert bases_long == sorted(bases_long)


@pytest.mark.parametrize("item", SWEEP_PRESETS, ids=preset_id)
def test_points_per_y_value(item):
    _, d = load(*item)
    rho1 = d.rho[0]
    for o in d.orbits[:d.r]:
        assert len(o.ys) == rho1
        for y in o.ys:
            assert sum(1 for _, yy in o.points if yy == y) == o.length // rho1


def test_rho_x_q2r_closed_form():
    for q in (2, 3, 4, 5):
        _, d = load("x_q2r", (q, 1))
        assert d.rho == (q - 1, q, q - 2)


def test_rho_quotient_relabelled():
    # the triple (q-1, q-2, m-1) read against the B pole order (q-2)m + (m-1)q
    for q, m in [(5, 3), (4, 5), (5, 6), (3, 4)]:
        spec, d = load("quotient_hermitian", (q, m))
        rho1, rho2, rho3 = d.rho
        assert (rho1, rho2, rho3) == (q - 1, m - 1, q - 2)
        assert rho2 * spec.a + rho3 * spec.b == (q - 2) * m + (m - 1) * q


def test_derive_rho_rejects_missing_long_orbits(herm2):
    spec, d = herm2
    short_only = decompose(spec, [p for p in enumerate_points(spec) if p.x == 0])
    with pytest.raises(CurveError):
        derive_rho(short_only)


def test_decompose_rejects_non_closed_set(herm2):
    spec, _ = herm2
    pts = [p for p in enumerate_points(spec) if p.x != 0][:2]
    with pytest.raises(CurveError):
        decompose(spec, pts)


def _rotate(c, d):
    out = np.array(c)
    for i in range(d.rows):
        blk = d.block(i)
        out[blk] = np.roll(c[blk], -1)
    return out


@pytest.mark.parametrize("item", [("x_q2r", (2, 1)), ("x_q2r", (3, 1)), ("quotient_hermitian", (5, 3))], ids=preset_id)
def test_rotation_preserves_code(item):
    spec, d = load(*item)
    F = spec.field
    rng = np.random.default_rng(5)
    for lam in (3, d.n // 2, d.n - 2):
        gm = generator_matrix(spec, d, lam)
        R, piv = rref(F, gm.matrix)
        for _ in range(10):
            w = rng.integers(0, F.q, gm.k)
            c = np.zeros(d.n, dtype=np.int64)
            for coeff, row in zip(w, gm.matrix):
                c = F.vadd(c, F.vmul(np.full(d.n, coeff), row))
            assert in_rowspace(F, R, piv, _rotate(c, d))


def test_orbit_json(quot53):
    _, d = quot53
    js = d.to_json()
    assert js["n"] == 65 and len(js["orbits"]) == 7
    assert [o["length"] for o in js["orbits"]] == list(d.lengths)
