import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from agbasis.algebra import (
    Field,
    FieldError,
    ProductForm,
    UniPoly,
    element_order,
    field_make,
    pdivmod,
    pmul,
    poly_eval,
    poly_from_roots,
    prod_eval,
    roots_in_field,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2), (3, 3), (7, 1)]


def _field(pm):
    return field_make(*pm)


def schoolbook_mul(F: Field, a: int, b: int) -> int:
    """Independent product: digit convolution over Z_p, then reduce by the modulus."""
    p, m = F.p, F.m
    da, db = F.digits(a), F.digits(b)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(F.modulus)  # monic, low degree first
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for j in range(m + 1):
                prod[k - m + j] = (prod[k - m + j] - c * mod[j]) % p
    return sum(d * p**i for i, d in enumerate(prod[:m]))


# -- construction

def test_gf4_generator_order():
    F = field_make(2, 2, (1, 1, 1))
    assert F.q == 4
    assert F.order(F.generator) == 3


def test_gf9_default_modulus_is_first_irreducible():
    # monic z^2 + c1 z + c0 over GF(3), enumerated by (c0, c1); degree 2 irreducible iff rootless
    first = next(
        (c0, c1, 1)
        for c1 in range(3) for c0 in range(3)
        if all((z * z + c1 * z + c0) % 3 for z in range(3))
    )
    assert Field(3, 2).modulus == first == (1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        field_make(2, 2, (1, 0, 1))


def test_non_prime_characteristic_rejected():
    with pytest.raises(FieldError):
        field_make(4, 1)


def test_generator_is_smallest_primitive():
    for pm in FIELDS:
        F = _field(pm)
        prim = [c for c in range(1, F.q) if F.order(c) == F.q - 1]
        assert F.generator == min(prim)


# -- arithmetic examples

def test_gf4_examples():
    F = field_make(2, 2)
    w = F.gen()
    assert w * w**2 == F.one
    assert w.inv() == w**2
    assert element_order(w) == 3
    assert element_order(F.one) == 1


def test_gf9_generator_eighth_power():
    F = field_make(3, 2)
    assert F.gen() ** 8 == F.one


def test_gf25_order_of_g8():
    F = field_make(5, 2)
    assert element_order(F.gen() ** 8) == 3


@pytest.mark.parametrize("pm", FIELDS)
def test_mul_matches_schoolbook(pm):
    F = _field(pm)
    for a, b in itertools.product(range(F.q), repeat=2):
        if F.q > 16 and (a * 7 + b) % 5:
            continue
        assert F.mul(a, b) == schoolbook_mul(F, a, b)


@pytest.mark.parametrize("pm", FIELDS)
def test_vector_ops_match_scalar(pm):
    F = _field(pm)
    rng = np.random.default_rng(1)
    a = rng.integers(0, F.q, 300)
    b = rng.integers(0, F.q, 300)
    assert F.vadd(a, b).tolist() == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vsub(a, b).tolist() == [F.sub(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vpow(a, 5).tolist() == [F.pow(int(x), 5) for x in a]


def test_large_field_digitwise_add():
    F = Field(2, 11)
    rng = np.random.default_rng(2)
    a = rng.integers(0, F.q, 50)
    b = rng.integers(0, F.q, 50)
    assert F.vadd(a, b).tolist() == [int(x) ^ int(y) for x, y in zip(a, b)]


# -- field axioms and group structure

@st.composite
def field_and_elems(draw, n=3, nonzero=False):
    F = _field(draw(st.sampled_from(FIELDS)))
    lo = 1 if nonzero else 0
    return F, [draw(st.integers(lo, F.q - 1)) for _ in range(n)]


@given(field_and_elems())
def test_associative_and_distributive(data):
    F, (a, b, c) = data
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0


@given(field_and_elems(n=1, nonzero=True))
def test_inverse_and_fermat(data):
    F, (a,) = data
    assert F.mul(a, F.inv(a)) == 1
    assert F.pow(a, F.q - 1) == 1
    assert (F.q - 1) % F.order(a) == 0


@pytest.mark.parametrize("pm", FIELDS)
def test_code_round_trip(pm):
    F = _field(pm)
    for c in range(F.q):
        assert F.from_vector(F.digits(c)).code == c
    assert sorted(F.exp(e) for e in range(F.q - 1)) == list(range(1, F.q))


def test_field_json_round_trip():
    F = Field(5, 2)
    G = Field.from_json(F.to_json())
    assert G == F and G.generator == F.generator


# -- polynomials

def test_poly_eval_examples():
    F = field_make(2, 2)
    w = F.gen()
    t3m1 = UniPoly(F, (F.neg(1), 0, 0, 1))
    assert poly_eval(t3m1, F.one) == F.zero
    y_minus_w = UniPoly(F, (F.neg(w.code), 1), "y")
    assert poly_eval(y_minus_w, w**2) == F.one


def test_product_form_example():
    F = field_make(2, 2)
    w = F.gen()
    pf = ProductForm(F, 1, (("x", 1), ("x", w.code)))
    # (w^2 - 1)(w^2 - w) = w * 1 in GF(4)
    assert prod_eval(pf, {"x": w**2, "y": F.zero}) == w


def test_poly_from_roots_examples():
    F4 = field_make(2, 2)
    assert poly_from_roots([], field=F4).coeffs == (1,)
    assert poly_from_roots([F4(c) for c in (1, 2, 3)]).coeffs == (1, 0, 0, 1)
    F9 = field_make(3, 2)
    assert poly_from_roots([F9.one]).coeffs == (2, 1)


def test_roots_in_field_examples():
    F = field_make(2, 2)
    assert {e.code for e in roots_in_field(UniPoly(F, (1, 1, 1)))} == {2, 3}
    assert roots_in_field(UniPoly(F, (1, 1))) == {F.one}


@pytest.mark.parametrize("pm", [(2, 4), (3, 2), (5, 2)])
def test_roots_of_unity_split(pm):
    F = _field(pm)
    for L in range(1, F.q):
        if (F.q - 1) % L:
            continue
        poly = UniPoly(F, (F.neg(1),) + (0,) * (L - 1) + (1,))
        roots = roots_in_field(poly)
        assert len(roots) == L
        assert all(r**L == F.one for r in roots)


@given(field_and_elems(n=4))
def test_roots_from_roots_identity(data):
    F, elems = data
    roots = {F(c) for c in elems}
    poly = poly_from_roots(sorted(roots, key=lambda e: e.code))
    assert roots_in_field(poly) == roots


@given(field_and_elems(n=6))
def test_pdivmod_exact(data):
    F, cs = data
    a = tuple(cs[:4])
    b = tuple(cs[4:]) + (1,)
    quo, rem = pdivmod(F, a, b)
    recon = list(pmul(F, quo, b))
    for i, c in enumerate(rem):
        while len(recon) <= i:
            recon.append(0)
        recon[i] = F.add(recon[i], c)
    while recon and recon[-1] == 0:
        recon.pop()
    trimmed = list(a)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    assert recon == trimmed
    assert len(rem) < len(b)
