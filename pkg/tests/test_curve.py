import json
import math

import pytest

from agbasis.algebra import UniPoly, field_make
from agbasis.curve import (
    CurveError,
    CurveSpec,
    curve_from_config,
    enumerate_points,
    gaps,
    hermitian,
    load_curve,
    parse_preset,
    quotient_hermitian,
    semigroup_dim,
    semigroup_elements,
    symbolic_automorphism_check,
    validate,
    x_q2r,
)

from conftest import SWEEP_PRESETS, load, preset_id


def brute_points(spec):
    F = spec.field
    out = []
    for x in range(F.q):
        gx = 0
        for c in reversed(spec.g.coeffs):
            gx = F.add(F.mul(gx, x), c)
        for y in range(F.q):
            fy = 0
            for c in reversed(spec.f.coeffs):
                fy = F.add(F.mul(fy, y), c)
            if fy == gx:
                out.append((x, y))
    return out


@pytest.mark.parametrize("q, expected", [(2, 8), (3, 27), (4, 64), (5, 125)])
def test_hermitian_point_counts(q, expected):
    pts = enumerate_points(hermitian(q))
    assert len(pts) == expected == q**3


def test_x_q2r_r3_point_count():
    assert len(enumerate_points(x_q2r(2, 3))) == 2**7


def test_quotient_point_count():
    assert len(enumerate_points(quotient_hermitian(5, 3))) == 65 == 5 * (1 + 3 * 4)


@pytest.mark.parametrize("item", SWEEP_PRESETS, ids=preset_id)
def test_enumeration_matches_brute_force(item):
    spec, _ = load(*item)
    got = [(p.x, p.y) for p in enumerate_points(spec)]
    assert sorted(got) == brute_points(spec)
    assert len(got) == spec.metadata["expected_points"]


@pytest.mark.parametrize("item", SWEEP_PRESETS, ids=preset_id)
def test_sigma_closure_and_period(item):
    spec, _ = load(*item)
    pts = {(p.x, p.y) for p in enumerate_points(spec)}
    for x, y in pts:
        assert spec.sigma((x, y)) in pts
        assert spec.sigma((x, y), spec.nu) == (x, y)


@pytest.mark.parametrize("item", SWEEP_PRESETS, ids=preset_id)
def test_genus_from_gaps(item):
    spec, _ = load(*item)
    a, b = spec.a, spec.b
    assert len(gaps(a, b)) == (a - 1) * (b - 1) // 2 == spec.genus
    assert spec.genus == spec.metadata["expected_genus"]


def test_hermitian_q2_valid():
    rep = validate(hermitian(2))
    assert rep.ok and rep.nu == 3


def test_quotient_valid_with_sigma_order():
    spec = quotient_hermitian(5, 3)
    rep = validate(spec)
    assert rep.ok
    assert rep.nu == 12 == spec.metadata["sigma_order"]
    assert rep.warnings  # a > b is flagged


def test_quotient_genus():
    assert quotient_hermitian(5, 3).genus == 4 == (5 - 1) * (3 - 1) // 2


def test_quotient_bad_m():
    with pytest.raises(CurveError):
        quotient_hermitian(4, 3)


def test_x_q2r_r1_is_hermitian():
    s1, s2 = x_q2r(2, 1), hermitian(2)
    assert s1.f == s2.f and s1.g == s2.g and s1.alpha == s2.alpha
    assert s1.field.q == 4 and (s1.a, s1.b) == (2, 3)


def test_non_coprime_degrees_rejected():
    F = field_make(3, 2)
    f = UniPoly(F, (0, 0, 1), "y")
    g = UniPoly(F, (0, 0, 1), "x")
    rep = validate(CurveSpec(F, f, g, F.generator, 1, name="bad"))
    assert not rep.ok
    assert any("gcd" in e for e in rep.errors)


def test_bad_automorphism_rejected():
    spec = hermitian(2)
    bogus = CurveSpec(spec.field, spec.f, spec.g, spec.alpha, spec.t_exp + 1, name="bogus")
    assert not symbolic_automorphism_check(bogus)
    assert not validate(bogus).ok


@pytest.mark.parametrize("item", SWEEP_PRESETS, ids=preset_id)
def test_presets_pass_symbolic_check(item):
    spec, _ = load(*item)
    assert symbolic_automorphism_check(spec)


# -- semigroup

def test_semigroup_dim_examples():
    assert semigroup_dim(2, 3, 4) == 4
    assert semigroup_elements(2, 3, 4) == [0, 2, 3, 4]
    assert semigroup_dim(3, 4, 0) == 1
    assert semigroup_dim(3, 4, 5) == 3


@pytest.mark.parametrize("a, b", [(2, 3), (3, 4), (4, 5), (5, 3), (4, 9), (5, 6)])
def test_semigroup_dim_matches_enumeration(a, b):
    g = (a - 1) * (b - 1) // 2
    for lam in range(0, 3 * a * b):
        brute = sum(1 for s in range(lam + 1) if any((s - be * a) >= 0 and (s - be * a) % b == 0 for be in range(b)))
        assert semigroup_dim(a, b, lam) == brute
        if lam >= 2 * g - 1:
            assert brute == lam + 1 - g


# -- loading

def test_parse_preset_strings():
    assert parse_preset("x_q2r:2,1").name == x_q2r(2, 1).name
    assert parse_preset("quotient_hermitian:5,3").field.q == 25
    with pytest.raises(CurveError):
        parse_preset("nope:1")


def test_config_round_trip(tmp_path):
    spec = quotient_hermitian(5, 3)
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(spec.to_json()))
    loaded = load_curve(str(path))
    assert loaded.field == spec.field
    assert loaded.f == spec.f and loaded.g == spec.g
    assert (loaded.alpha, loaded.t_exp) == (spec.alpha, spec.t_exp)


def test_config_alpha_as_generator_power():
    spec = hermitian(2)
    cfg = spec.to_json()
    cfg["alpha"] = f"gen^{spec.field.log(spec.alpha)}"
    assert curve_from_config(cfg).alpha == spec.alpha


def test_config_preset_shorthand():
    spec = curve_from_config({"preset": "x_q2r", "q": 3, "r": 1})
    assert spec.field.q == 9 and spec.b == 4


def test_config_missing_key():
    cfg = hermitian(2).to_json()
    del cfg["t_exp"]
    with pytest.raises(CurveError):
        curve_from_config(cfg)


def test_alpha_orders():
    for q in (2, 3, 4, 5):
        spec = x_q2r(q, 1)
        F = spec.field
        assert F.order(spec.alpha) == spec.nu == (q + 1) * (q - 1)
    spec = quotient_hermitian(5, 3)
    assert spec.field.order(spec.alpha) == 12
    assert math.gcd(spec.a, spec.b) == 1
