"""Arithmetic in GF(p^m).

Elements are encoded as integers in ``[0, q)``: the value ``sum(a_i * p**i)``
stands for the polynomial ``sum(a_i * x**i)`` reduced modulo the field's
reduction polynomial.  All array-level operations on :class:`FieldSpec` accept
numpy integer arrays (or plain ints) and broadcast like numpy ufuncs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 20
TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# Polynomials over GF(p) as coefficient lists, lowest degree first.

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _poly_trim(a)
    return a


def _digits(value: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        value, r = divmod(value, p)
        out.append(r)
    return out


def _undigits(coeffs: list[int], p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + c
    return value


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            divisor = _digits(low, p, d) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def least_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically-least monic irreducible polynomial of degree m over GF(p)."""
    for low in range(p**m):
        cand = _digits(low, p, m) + [1]
        if is_irreducible(cand, p):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldSpec:
    """The finite field GF(p^m) with fixed element encoding.

    Construction picks the lexicographically-least monic irreducible
    reduction polynomial, so two constructions with the same ``(p, m)``
    agree on every encoding.  For ``q <= 2**16`` discrete log/antilog tables
    are built against the smallest primitive element.
    """

    __slots__ = ("p", "m", "q", "reduction_poly", "exp_table", "log_table", "generator")

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_ORDER:
            raise ValueError(f"field order {p}^{m} exceeds {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = q
        self.reduction_poly: tuple[int, ...] = tuple(least_irreducible(p, m)) if m > 1 else ()
        self.exp_table: np.ndarray | None = None
        self.log_table: np.ndarray | None = None
        self.generator = self._find_generator()
        if q <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.reduction_poly) == (other.p, other.m, other.reduction_poly)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.reduction_poly))

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(int(value), self)

    def __len__(self) -> int:
        return self.q

    # -- scalar polynomial arithmetic (table construction and q > 2**16) --

    def _mul_scalar(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        if p == 2:
            mod = _undigits(list(self.reduction_poly), 2)
            out = 0
            while b:
                if b & 1:
                    out ^= a
                b >>= 1
                a <<= 1
                if a >> m:
                    a ^= mod
            return out
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(self.reduction_poly), p)
        return _undigits(rem + [0] * (m - len(rem)), p)

    def _pow_scalar(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._mul_scalar(out, a)
            a = self._mul_scalar(a, a)
            e >>= 1
        return out

    def _find_generator(self) -> int:
        order = self.q - 1
        if order == 1:
            return 1
        factors = _prime_factors(order)
        for g in range(2, self.q):
            if all(self._pow_scalar(g, order // r) != 1 for r in factors):
                return g
        raise RuntimeError(f"no primitive element in {self!r}")

    def _build_tables(self) -> None:
        order = self.q - 1
        exp = np.zeros(order, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._mul_scalar(x, self.generator)
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp_table = exp
        self.log_table = log

    # -- vectorised arithmetic on encodings --

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((a // scale + b // scale) % self.p) * scale
            scale *= self.p
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.m):
            out += ((-(a // scale)) % self.p) * scale
            scale *= self.p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        if self.log_table is None:
            return np.vectorize(self._mul_scalar, otypes=[np.int64])(a, b)
        la, lb = self.log_table[a], self.log_table[b]
        out = self.exp_table[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            return np.vectorize(lambda x: pow(int(x), self.p - 2, self.p), otypes=[np.int64])(a)
        if self.log_table is None:
            return np.vectorize(lambda x: self._pow_scalar(int(x), self.q - 2), otypes=[np.int64])(a)
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            a, e = self.inv(a), -e
        if self.log_table is None:
            return np.vectorize(lambda x: self._pow_scalar(int(x), e), otypes=[np.int64])(a)
        out = self.exp_table[(self.log_table[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)


@dataclass(frozen=True)
class FieldElement:
    """An immutable element of a :class:`FieldSpec`."""

    value: int
    field: FieldSpec

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element of {self.field!r}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"mixed fields: {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return FieldElement(int(other), self.field).value
        return NotImplemented

    def _wrap(self, v) -> FieldElement:
        return FieldElement(int(v), self.field)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, int(e)))

    def inv(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Return the shared :class:`FieldSpec` for GF(p^m)."""
    return FieldSpec(p, m)


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(_prime_factors(q)) == 1


def field_of_order(q: int) -> FieldSpec:
    """Field lookup by order, e.g. ``field_of_order(64)``."""
    if q < 2:
        raise ValueError(f"no field of order {q}")
    factors = _prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    m = 0
    n = q
    while n > 1:
        n //= p
        m += 1
    return make_field(p, m)
