"""Finite fields F_q = F_p[s]/(m(s)) and tower extensions F_{q^n} = F_q[t]/(M(t)).

Arithmetic is done on "raw" values: an ``int`` for Z/mZ and a tuple of raw
base values (ascending powers) for a quotient ring.  ``FFElement`` wraps a raw
value together with the field it lives in so it can be used with operators.

The same two ring classes also carry the truncated p-adic rings in
:mod:`valuebounds.padic`: a Galois ring is ``PolyQuotient(Zmod(p**N), lift)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence, Union

from .errors import DEFAULT_DOMAIN_BUDGET, BudgetExceeded


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


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power ``q`` into ``(p, e)``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


class Zmod:
    """The ring Z/mZ on plain ints in [0, m)."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int):
        self.modulus = modulus

    def __eq__(self, other):
        return isinstance(other, Zmod) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Zmod", self.modulus))

    def __repr__(self):
        return f"Zmod({self.modulus})"

    @property
    def order(self) -> int:
        return self.modulus

    zero = 0

    @property
    def one(self) -> int:
        return 1 % self.modulus

    def from_int(self, k: int) -> int:
        return k % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def pow(self, a, k: int):
        return pow(a, k, self.modulus)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise ZeroDivisionError(f"{a} is not invertible mod {self.modulus}") from None

    def element_at(self, i: int) -> int:
        return i

    def index_of(self, a) -> int:
        return a

    def reduce(self, a, m: int):
        """Image of ``a`` in Z/mZ, for m dividing the modulus."""
        return a % m

    def flatten(self, a) -> list[int]:
        return [a]


class PolyQuotient:
    """``base[t]/(modulus)`` for a monic modulus given as raw base values, ascending."""

    def __init__(self, base, modulus: Sequence):
        modulus = tuple(modulus)
        if len(modulus) < 2 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.zero = (base.zero,) * self.degree
        self.one = (base.one,) + (base.zero,) * (self.degree - 1)
        # t^r = sum_i tail[i] t^i
        self._tail = tuple(base.neg(c) for c in modulus[:-1])

    def __eq__(self, other):
        return (isinstance(other, PolyQuotient) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("PolyQuotient", self.base, self.modulus))

    def __repr__(self):
        return f"PolyQuotient({self.base!r}, {self.modulus!r})"

    @property
    def order(self) -> int:
        return self.base.order ** self.degree

    def from_int(self, k: int):
        return (self.base.from_int(k),) + self.zero[1:]

    def scalar(self, c):
        return (c,) + self.zero[1:]

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        r = self.degree
        if r == 1:
            return (B.mul(a[0], b[0]),)
        is_zero, add, mul = B.is_zero, B.add, B.mul
        prod = [B.zero] * (2 * r - 1)
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                if not is_zero(y):
                    prod[i + j] = add(prod[i + j], mul(x, y))
        for k in range(2 * r - 2, r - 1, -1):
            c = prod[k]
            if is_zero(c):
                continue
            for i, t in enumerate(self._tail):
                if not is_zero(t):
                    prod[k - r + i] = add(prod[k - r + i], mul(c, t))
        return tuple(prod[:r])

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return result

    def is_zero(self, a) -> bool:
        is_zero = self.base.is_zero
        return all(is_zero(c) for c in a)

    def inv(self, a):
        """Inverse, valid when the quotient is a field."""
        if self.is_zero(a):
            raise ZeroDivisionError("division by zero in finite field")
        return self.pow(a, self.order - 2)

    def element_at(self, i: int):
        b = self.base.order
        digits = []
        for _ in range(self.degree):
            i, d = divmod(i, b)
            digits.append(self.base.element_at(d))
        return tuple(digits)

    def index_of(self, a) -> int:
        b = self.base.order
        idx = 0
        for c in reversed(a):
            idx = idx * b + self.base.index_of(c)
        return idx

    def elements(self) -> Iterator:
        return (self.element_at(i) for i in range(self.order))

    def reduce(self, a, m: int):
        return tuple(self.base.reduce(c, m) for c in a)

    def flatten(self, a) -> list[int]:
        out = []
        for c in a:
            out.extend(self.base.flatten(c))
        return out


# -- polynomials over a field ring, as ascending lists of raw values ---------

def _trim(f: list, F) -> list:
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def _poly_mod(a: list, m: list, F) -> list:
    a = _trim(list(a), F)
    lead_inv = F.inv(m[-1])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, mi))
        _trim(a, F)
    return a


def _poly_mulmod(a: list, b: list, m: list, F) -> list:
    if not a or not b:
        return []
    prod = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    return _poly_mod(prod, m, F)


def _poly_powmod(a: list, k: int, m: list, F) -> list:
    result = _poly_mod([F.one], m, F)
    while k:
        if k & 1:
            result = _poly_mulmod(result, a, m, F)
        k >>= 1
        if k:
            a = _poly_mulmod(a, a, m, F)
    return result


def _poly_gcd(a: list, b: list, F) -> list:
    a, b = _trim(list(a), F), _trim(list(b), F)
    while b:
        a, b = b, _poly_mod(a, b, F)
    return a


def is_irreducible(coeffs: Sequence, F) -> bool:
    """Ben-Or test: f of degree r is irreducible iff gcd(x^(q^i) - x, f) = 1 for i <= r/2."""
    f = _trim(list(coeffs), F)
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    x = _poly_mod([F.zero, F.one], f, F)
    h = x
    for _ in range(r // 2):
        h = _poly_powmod(h, F.order, f, F)
        diff = list(h) + [F.zero] * max(0, 2 - len(h))
        diff[1] = F.sub(diff[1], F.one)
        if len(_poly_gcd(f, diff, F)) > 1:
            return False
    return True


def smallest_irreducible(F, degree: int) -> tuple:
    """First monic irreducible of the given degree in base-|F| counting order of its lower coefficients."""
    for i in range(F.order ** degree):
        low = []
        for _ in range(degree):
            i, d = divmod(i, F.order)
            low.append(F.element_at(d))
        cand = tuple(low) + (F.one,)
        if is_irreducible(cand, F):
            return cand
    raise ArithmeticError(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


# -- public field types -------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """F_q with q = p^e, elements are coefficient vectors in the generator ``t``."""

    p: int
    e: int
    modulus: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.e < 1:
            raise ValueError(f"extension degree e={self.e} must be >= 1")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.e + 1 or mod[-1] != 1 or any(not 0 <= c < self.p for c in mod):
            raise ValueError(f"modulus {mod} is not a monic degree-{self.e} polynomial over F_{self.p}")
        if not is_irreducible(mod, Zmod(self.p)):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")

    @cached_property
    def ring(self) -> PolyQuotient:
        return PolyQuotient(Zmod(self.p), self.modulus)

    @property
    def q(self) -> int:
        return self.p ** self.e

    order = q

    @property
    def zero(self) -> "FFElement":
        return FFElement(self, self.ring.zero)

    @property
    def one(self) -> "FFElement":
        return FFElement(self, self.ring.one)

    @property
    def gen(self) -> "FFElement":
        if self.e == 1:
            return FFElement(self, (-self.modulus[0] % self.p,))
        return FFElement(self, (0, 1) + (0,) * (self.e - 2))

    def element(self, value) -> "FFElement":
        """Coerce an int, a coefficient vector or an element of this field."""
        if isinstance(value, FFElement):
            if value.field != self:
                raise ValueError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, int):
            return FFElement(self, self.ring.from_int(value))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients, got {len(coeffs)}")
        return FFElement(self, coeffs)

    def elements(self) -> list["FFElement"]:
        return [FFElement(self, a) for a in self.ring.elements()]

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return cls(int(d["p"]), int(d["e"]), tuple(d["modulus"]))

    def __str__(self):
        return f"F_{self.q}"


@dataclass(frozen=True)
class TowerSpec:
    """F_{q^n} = F_q[u]/(ext_modulus) with power basis 1, u, ..., u^(n-1)."""

    base: FieldSpec
    n: int
    ext_modulus: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"tower degree n={self.n} must be >= 1")
        mod = tuple(tuple(c) for c in self.ext_modulus)
        object.__setattr__(self, "ext_modulus", mod)
        if len(mod) != self.n + 1:
            raise ValueError("ext_modulus has the wrong degree")
        if not is_irreducible(mod, self.base.ring):
            raise ValueError(f"ext_modulus is reducible over {self.base}")

    @cached_property
    def ring(self) -> PolyQuotient:
        return PolyQuotient(self.base.ring, self.ext_modulus)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def order(self) -> int:
        return self.base.q ** self.n

    @property
    def zero(self) -> "FFElement":
        return FFElement(self, self.ring.zero)

    @property
    def one(self) -> "FFElement":
        return FFElement(self, self.ring.one)

    @property
    def basis(self) -> tuple["FFElement", ...]:
        zero, one = self.base.ring.zero, self.base.ring.one
        return tuple(
            FFElement(self, tuple(one if j == i else zero for j in range(self.n)))
            for i in range(self.n))

    def embed(self, a: "FFElement") -> "FFElement":
        """F_q -> F_{q^n} as constants."""
        a = self.base.element(a)
        return FFElement(self, self.ring.scalar(a.coeffs))

    def element(self, value) -> "FFElement":
        if isinstance(value, FFElement):
            if value.field == self:
                return value
            return self.embed(value)
        if isinstance(value, int):
            return FFElement(self, self.ring.from_int(value))
        parts = tuple(self.base.element(c).coeffs for c in value)
        if len(parts) != self.n:
            raise ValueError(f"expected {self.n} base coefficients, got {len(parts)}")
        return FFElement(self, parts)

    def elements(self) -> list["FFElement"]:
        return [FFElement(self, a) for a in self.ring.elements()]

    def __str__(self):
        return f"F_{self.order}/{self.base}"


Field = Union[FieldSpec, TowerSpec]


@dataclass(frozen=True, eq=False)
class FFElement:
    """An element of a FieldSpec or TowerSpec field."""

    field: Field
    coeffs: tuple

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise ValueError(f"mismatched fields: {self.field} vs {other.field}")
            return other.coeffs
        if isinstance(other, int):
            return self.field.ring.from_int(other)
        return NotImplemented

    def _wrap(self, raw) -> "FFElement":
        return FFElement(self.field, raw)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.ring.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.ring.sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.ring.sub(o, self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.ring.mul(self.coeffs, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.ring.neg(self.coeffs))

    def inverse(self) -> "FFElement":
        return self._wrap(self.field.ring.inv(self.coeffs))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.ring.mul(self.coeffs, self.field.ring.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.ring.mul(o, self.field.ring.inv(self.coeffs)))

    def __pow__(self, k: int):
        return self._wrap(self.field.ring.pow(self.coeffs, k))

    def __eq__(self, other):
        if isinstance(other, (FFElement, int)):
            try:
                return self.coeffs == self._other(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return not self.field.ring.is_zero(self.coeffs)

    @property
    def index(self) -> int:
        """Position in the canonical enumeration order."""
        return self.field.ring.index_of(self.coeffs)

    def is_prime_subfield(self) -> bool:
        return not any(self.field.ring.flatten(self.coeffs)[1:])

    def __str__(self):
        if isinstance(self.field, FieldSpec):
            return format_literal(self.coeffs)
        parts = []
        for i, c in enumerate(self.coeffs):
            if any(c):
                lit = format_literal(c)
                lit = lit if "+" not in lit or i == 0 else f"({lit})"
                parts.append(lit if i == 0 else (f"{lit}*u" if lit != "1" else "u")
                             + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"FFElement({self}, {self.field})"


def format_literal(coeffs: Sequence[int], symbol: str = "t") -> str:
    """Coefficient vector (ascending) as a polynomial literal in ``symbol``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = symbol if i == 1 else f"{symbol}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) or "0"


# -- operations ----------------------------------------------------------------

def make_field(p: int, e: int = 1, *, budget: int = DEFAULT_DOMAIN_BUDGET) -> FieldSpec:
    """F_{p^e} with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree e={e} must be >= 1")
    if p ** e > budget:
        raise BudgetExceeded(f"q={p}^{e} exceeds the enumeration budget {budget}")
    return FieldSpec(p, e, smallest_irreducible(Zmod(p), e))


def field_of_order(q: int, **kw) -> FieldSpec:
    p, e = prime_power(q)
    return make_field(p, e, **kw)


def make_tower(base: FieldSpec, n: int, *, budget: int = DEFAULT_DOMAIN_BUDGET) -> TowerSpec:
    """F_{q^n} over F_q with the smallest monic irreducible degree-n modulus."""
    if n < 1:
        raise ValueError(f"tower degree n={n} must be >= 1")
    if base.q ** n > budget:
        raise BudgetExceeded(f"q^n={base.q}^{n} exceeds the enumeration budget {budget}")
    return TowerSpec(base, n, smallest_irreducible(base.ring, n))


def enumerate_field(spec: Field) -> list[FFElement]:
    """All elements in base-p counting order of their coefficient vectors."""
    return spec.elements()


def ff_arith(a: FFElement, b, op: str) -> FFElement:
    """Apply ``op`` in {add, sub, mul, div, pow}; for pow, ``b`` is an int exponent."""
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FFElement) and b.field != a.field:
        raise ValueError(f"mismatched fields: {a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
