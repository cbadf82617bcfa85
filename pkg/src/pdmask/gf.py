"""Finite fields GF(p^m) with a fixed integer labeling of the elements.

Element ``i`` in ``range(q)`` is the polynomial whose coefficients are the
base-p digits of ``i`` (least significant digit is the constant term).  For
prime fields the label is simply the residue.  All arithmetic helpers on
:class:`Field` work directly on labels; :class:`FieldElement` wraps a label
for operator-style use.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


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


# -- polynomials over GF(p), coefficient lists low-to-high -------------------

def poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        a = poly_trim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = poly_trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    # product() varies the last coordinate fastest, so tuples come out in
    # lexicographic order of (c0, c1, ..., c_{m-1}).
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """GF(p^m). Elements are int labels in ``range(q)``."""

    def __init__(self, p: int, m: int = 1, modulus: list[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        q = p ** m
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            if modulus is not None and len(poly_trim(modulus)) not in (0, 2):
                raise ReducibleModulus("prime fields take no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = smallest_irreducible(p, m)
            modulus = [c % p for c in modulus]
            modulus = poly_trim(modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ReducibleModulus(f"modulus must be monic of degree {m}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
            self.modulus = tuple(modulus)
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + c
        return v

    def _poly_mul_label(self, a: int, b: int) -> int:
        prod = poly_mul(poly_trim(self._digits(a)), poly_trim(self._digits(b)), self.p)
        rem = poly_mod(prod, list(self.modulus), self.p)
        return self._undigits(rem + [0] * (self.m - len(rem)))

    def _build_tables(self) -> None:
        q = self.q
        self._neg = [self._undigits([(-c) % self.p for c in self._digits(a)]) for a in range(q)]
        # find a generator of the multiplicative group
        order = q - 1
        factors = [f for f in range(2, order + 1) if order % f == 0 and is_prime(f)]
        for g in range(2, q):
            if all(self._pow_slow(g, order // f) != 1 for f in factors):
                break
        else:  # pragma: no cover - q = 2 handled as prime field
            g = 1
        self.generator = g
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._poly_mul_label(x, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp = exp
        self._log = log
        if q <= _TABLE_LIMIT:
            self._add_table = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add_table = None

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._poly_mul_label(result, a)
            a = self._poly_mul_label(a, a)
            e >>= 1
        return result

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        v, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            v += ((x + y) % p) * scale
            scale *= p
        return v

    # -- label arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroInverse("zero has no inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.m == 1:
            if a % self.p == 0:
                return 1 if e == 0 else 0
            return pow(a, e % (self.p - 1), self.p)
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def successor(self, v: int, step: int = 1) -> int:
        """Label of ``v + step`` (field addition); ``(v + 1) % q`` for prime q."""
        return self.add(v, step)

    def forbidden(self, x: int = 1) -> frozenset[int]:
        """Labels a stuck-at-1 coordinate must avoid so that adding 0 or x never gives 0."""
        return frozenset((0, self.neg(x)))

    def dot(self, a, b) -> int:
        if self.m == 1:
            return sum(x * y for x, y in zip(a, b)) % self.p
        acc = 0
        for x, y in zip(a, b):
            if x and y:
                acc = self.add(acc, self.mul(x, y))
        return acc

    def vec_add(self, a, b) -> tuple[int, ...]:
        if self.m == 1:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(self.add(x, y) for x, y in zip(a, b))

    def vec_sub(self, a, b) -> tuple[int, ...]:
        if self.m == 1:
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(self.sub(x, y) for x, y in zip(a, b))

    def vec_scale(self, s: int, a) -> tuple[int, ...]:
        if self.m == 1:
            p = self.p
            return tuple(s * x % p for x in a)
        return tuple(self.mul(s, x) for x in a)

    def in_prime_subfield(self, a: int) -> bool:
        return 0 <= a < self.p

    # -- element wrappers ----------------------------------------------------

    def __call__(self, label: int) -> FieldElement:
        return FieldElement(self, label)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]

    @cached_property
    def spec(self) -> str:
        if self.m == 1:
            return str(self.p)
        return f"{self.p}^{self.m}/" + ",".join(map(str, self.modulus))

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.spec})"


class FieldElement:
    __slots__ = ("field", "label")

    def __init__(self, field: Field, label: int):
        if not 0 <= label < field.q:
            raise FieldError(f"label {label} outside [0, {field.q})")
        self.field = field
        self.label = label

    def _check(self, other) -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldMismatch("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.add(self.label, other.label))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.label, other.label))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.label, other.label))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.div(self.label, other.label))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.label))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.label, e))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.label))

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.field.m == 1:
            return (self.label,)
        return tuple(self.field._digits(self.label))

    def __int__(self):
        return self.label

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.label == self.label
        )

    def __hash__(self):
        return hash((self.field, self.label))

    def __repr__(self):
        return f"{self.field!r}({self.label})"


def make_field(p: int, m: int = 1, modulus: list[int] | None = None) -> Field:
    return Field(p, m, modulus)


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    ops = {"add": FieldElement.__add__, "sub": FieldElement.__sub__, "mul": FieldElement.__mul__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](a, b)


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def successor(v: int, q: int) -> int:
    """Cyclic successor on the label set [q]."""
    return (v + 1) % q


_SPEC_RE = re.compile(r"^\s*(\d+)(?:\^(\d+))?(?:/([\d,\s]+))?\s*$")


def parse_field(spec: str) -> Field:
    """Parse ``"p"``, ``"p^m"`` or ``"p^m/c0,c1,...,cm"``."""
    match = _SPEC_RE.match(str(spec))
    if not match:
        raise FieldError(f"bad field spec {spec!r}")
    p = int(match.group(1))
    m = int(match.group(2) or 1)
    modulus = None
    if match.group(3):
        modulus = [int(c) for c in match.group(3).split(",")]
    return Field(p, m, modulus)
