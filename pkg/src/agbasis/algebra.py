"""Exact arithmetic in GF(p^m) and polynomial evaluation over it.

Elements are handled internally as integer codes: the coefficient vector
``(c_0, ..., c_{m-1})`` of the polynomial-basis representation maps to
``sum(c_k * p**k)``.  The heavy algorithms work on these codes (and on numpy
arrays of codes); :class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_FIELD_ORDER = 2**16
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- arithmetic on GF(p) coefficient lists (little-endian), used only while
# -- bootstrapping a field, before the log tables exist

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _zp_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def _zp_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _zp_mod(prod, mod, p)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    mod = _trim([c % p for c in modulus])
    m = len(mod) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _zp_mod(mod, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m whose low coefficients have the smallest integer code."""
    for code in range(p**m):
        low = [(code // p**k) % p for k in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """The finite field GF(p^m) with log/antilog tables over a fixed generator."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if p**m > MAX_FIELD_ORDER:
            raise FieldError(f"field order {p}^{m} exceeds the bound {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {m}")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self._powers = np.array([p**k for k in range(m)], dtype=np.int64)
        self.generator = self._find_generator()
        self._build_tables()

    # -- construction helpers

    def _vec(self, code: int) -> list[int]:
        return _trim([(code // self.p**k) % self.p for k in range(self.m)])

    def _code(self, vec: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**k for k, c in enumerate(vec))

    def _slow_mul(self, a: int, b: int) -> int:
        return self._code(_zp_mulmod(self._vec(a), self._vec(b), list(self.modulus), self.p))

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = prime_factors(n)
        for g in range(2, self.q):
            if all(self._slow_pow(g, n // f) != 1 for f in factors):
                return g
        raise FieldError("no primitive element found (internal error)")

    def _build_tables(self) -> None:
        n = self.q - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            if log[x] != -1:
                raise FieldError("generator does not have full order (internal error)")
            log[x] = i
            x = self._slow_mul(x, self.generator)
        if x != 1:
            raise FieldError("generator does not have full order (internal error)")
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log
        # plain-list copies keep the scalar paths free of numpy overhead
        self._exp_l = exp.tolist()
        self._log_l = log.tolist()
        codes = np.arange(self.q, dtype=np.int64)
        digits = (codes[:, None] // self._powers) % self.p
        self._neg = (((-digits) % self.p) * self._powers).sum(axis=1)
        self._neg_l = self._neg.tolist()
        if self.p == 2:
            self._add_table = None
        elif self.q <= _ADD_TABLE_LIMIT:
            s = (digits[:, None, :] + digits[None, :, :]) % self.p
            self._add_table = (s * self._powers).sum(axis=2)
            self._add_l = self._add_table.tolist()
        else:
            self._add_table = None

    # -- identity

    def _key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    # -- scalar arithmetic on integer codes

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_l[a][b]
        return self._code([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def adder(self):
        """The fastest scalar addition available for this field, as a plain callable."""
        if self.p == 2:
            return operator.xor
        if self._add_table is not None:
            tab = self._add_l
            return lambda a, b: tab[a][b]
        return self.add

    def neg(self, a: int) -> int:
        return self._neg_l[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_l[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_l[self._log_l[a] + self._log_l[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp_l[(self.q - 1 - self._log_l[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def log(self, a: int) -> int:
        """Discrete logarithm to the base of the fixed generator."""
        if a == 0:
            raise FieldError("log of zero")
        return int(self._log[a])

    def exp(self, e: int) -> int:
        return int(self._exp[e % (self.q - 1)])

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("order of zero is undefined")
        n = self.q - 1
        return n // math.gcd(n, int(self._log[a]))

    def digits(self, a: int) -> list[int]:
        return [(a // self.p**k) % self.p for k in range(self.m)]

    # -- vectorized arithmetic on arrays of codes

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        da = (np.asarray(a)[..., None] // self._powers) % self.p
        db = (np.asarray(b)[..., None] // self._powers) % self.p
        return (((da + db) % self.p) * self._powers).sum(axis=-1)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        return self._neg[a]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self._neg[b])

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self._exp[(self._log[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    # -- element helpers

    def __call__(self, code: int) -> "FieldElement":
        return self.element(code)

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise FieldError(f"integer code {code} outside [0, {self.q - 1}]")
        return FieldElement(self, int(code))

    def from_vector(self, vec: Sequence[int]) -> "FieldElement":
        if len(vec) > self.m:
            raise FieldError("coefficient vector longer than the extension degree")
        return FieldElement(self, self._code(vec))

    def gen(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "generator": self.generator}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        field = cls(data["p"], data["m"], data.get("modulus"))
        if "generator" in data and data["generator"] != field.generator:
            raise FieldError("serialized generator differs from the canonical choice")
        return field


def field_make(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> Field:
    return Field(p, m, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed-field operands {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            # integers embed through the prime subfield
            return self.field._code([other % self.field.p])
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.field, code)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.code, o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.code, e))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.code))

    def order(self) -> int:
        return self.field.order(self.code)

    def __int__(self):
        return self.code

    def __bool__(self):
        return self.code != 0

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.code))

    def __repr__(self):
        return f"{self.field!r}({self.code})"


def element_order(e: FieldElement) -> int:
    return e.field.order(e.code)


# -- univariate polynomials

VARIABLES = ("t", "x", "y")


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial with coefficient codes in ascending degree."""

    field: Field
    coeffs: tuple[int, ...]
    var: str = "t"

    def __post_init__(self):
        if self.var not in VARIABLES:
            raise FieldError(f"unknown variable {self.var!r}")
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @classmethod
    def from_elements(cls, coeffs: Iterable[FieldElement], var: str = "t") -> "UniPoly":
        coeffs = list(coeffs)
        return cls(coeffs[0].field, tuple(c.code for c in coeffs), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, v):
        return poly_eval(self, v)

    def _like(self, coeffs) -> "UniPoly":
        return UniPoly(self.field, tuple(coeffs), self.var)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        return self._like(padd(self.field, self.coeffs, other.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self._like(psub(self.field, self.coeffs, other.coeffs))

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        return self._like(pmul(self.field, self.coeffs, other.coeffs))

    def __divmod__(self, other: "UniPoly"):
        qt, rm = pdivmod(self.field, self.coeffs, other.coeffs)
        return self._like(qt), self._like(rm)

    def monic(self) -> "UniPoly":
        return self._like(pmonic(self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*{self.var}^{i}" if i else f"{c}")
        return " + ".join(reversed(terms))


def padd(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return tuple(_trim(out))


def psub(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return padd(F, a, [F.neg(c) for c in b])


def pscale(F: Field, c: int, a: Sequence[int]) -> tuple[int, ...]:
    if c == 0:
        return ()
    return tuple(F.mul(c, x) for x in a)


def pmul(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return tuple(_trim(out))


def pdivmod(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    b = tuple(_trim(list(b)))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(list(a))
    if len(r) < len(b):
        return (), tuple(r)
    inv_lead = F.inv(b[-1])
    qt = [0] * (len(r) - len(b) + 1)
    while len(r) >= len(b):
        c = F.mul(r[-1], inv_lead)
        shift = len(r) - len(b)
        qt[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, bc))
        _trim(r)
    return tuple(_trim(qt)), tuple(r)


def pmonic(F: Field, a: Sequence[int]) -> tuple[int, ...]:
    if not a:
        return ()
    return pscale(F, F.inv(a[-1]), a)


def pgcd(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Monic gcd."""
    a, b = tuple(_trim(list(a))), tuple(_trim(list(b)))
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    return pmonic(F, a)


def pxgcd(F: Field, a: Sequence[int], b: Sequence[int]):
    """Return (g, u, v) with g = u*a + v*b and g monic."""
    r0, r1 = tuple(_trim(list(a))), tuple(_trim(list(b)))
    u0, u1 = (1,), ()
    v0, v1 = (), (1,)
    while r1:
        qt, rm = pdivmod(F, r0, r1)
        r0, r1 = r1, rm
        u0, u1 = u1, psub(F, u0, pmul(F, qt, u1))
        v0, v1 = v1, psub(F, v0, pmul(F, qt, v1))
    if not r0:
        return (), (), ()
    s = F.inv(r0[-1])
    return pscale(F, s, r0), pscale(F, s, u0), pscale(F, s, v0)


def peval(F: Field, a: Sequence[int], v: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, v), c)
    return acc


def poly_eval(p: UniPoly, v: FieldElement) -> FieldElement:
    if v.field != p.field:
        raise FieldError("polynomial and point live in different fields")
    return FieldElement(p.field, peval(p.field, p.coeffs, v.code))


def poly_from_roots(roots: Iterable[FieldElement], var: str = "t", field: Field | None = None) -> UniPoly:
    """Monic polynomial vanishing exactly on ``roots``.

    ``field`` is only needed when ``roots`` is empty.
    """
    roots = list(roots)
    if roots:
        field = roots[0].field
    elif field is None:
        raise FieldError("the empty product needs an explicit field")
    if any(r.field != field for r in roots):
        raise FieldError("roots from different fields")
    return UniPoly(field, poly_from_root_codes(field, [r.code for r in roots]), var)


def poly_from_root_codes(F: Field, roots: Iterable[int]) -> tuple[int, ...]:
    out: tuple[int, ...] = (1,)
    seen = set()
    for r in roots:
        if r in seen:
            raise FieldError("repeated root")
        seen.add(r)
        out = pmul(F, out, (F.neg(r), 1))
    return out


def roots_in_field(p: UniPoly) -> set[FieldElement]:
    if p.is_zero():
        raise FieldError("the zero polynomial vanishes everywhere")
    return {FieldElement(p.field, c) for c in root_codes(p.field, p.coeffs)}


def root_codes(F: Field, a: Sequence[int]) -> list[int]:
    """Exhaustive scan; roots returned in ascending integer code."""
    if not a:
        raise FieldError("the zero polynomial vanishes everywhere")
    xs = np.arange(F.q, dtype=np.int64)
    acc = np.zeros(F.q, dtype=np.int64)
    for c in reversed(a):
        acc = F.vadd(F.vmul(acc, xs), np.full(F.q, c, dtype=np.int64))
    return [int(v) for v in np.nonzero(acc == 0)[0]]


@dataclass(frozen=True)
class ProductForm:
    """``multiplier * prod(var - root)`` over linear factors in x and y."""

    field: Field
    multiplier: int
    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for var, _ in self.factors:
            if var not in ("x", "y"):
                raise FieldError(f"product-form factors must be in x or y, got {var!r}")

    def degree(self, var: str) -> int:
        return sum(1 for v, _ in self.factors if v == var)

    def evaluate(self, x: int, y: int) -> int:
        F = self.field
        acc = self.multiplier
        for var, root in self.factors:
            if acc == 0:
                return 0
            acc = F.mul(acc, F.sub(x if var == "x" else y, root))
        return acc

    def evaluate_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        F = self.field
        acc = np.full(len(xs), self.multiplier, dtype=np.int64)
        for var, root in self.factors:
            vals = xs if var == "x" else ys
            acc = F.vmul(acc, F.vsub(vals, np.full(len(vals), root, dtype=np.int64)))
        return acc

    def scaled(self, c: int) -> "ProductForm":
        return ProductForm(self.field, self.field.mul(self.multiplier, c), self.factors)


def prod_eval(f: ProductForm, point: dict) -> FieldElement:
    """Evaluate at ``point = {"x": FieldElement, "y": FieldElement}``."""
    for var, _ in f.factors:
        if var not in point:
            raise FieldError(f"no value supplied for variable {var!r}")
    vals = {}
    for var, v in point.items():
        if v.field != f.field:
            raise FieldError("point and product form live in different fields")
        vals[var] = v.code
    return FieldElement(f.field, f.evaluate(vals.get("x", 0), vals.get("y", 0)))
