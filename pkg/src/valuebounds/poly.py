"""Sparse multivariate polynomials over the fields in :mod:`valuebounds.fields`.

Text grammar (whitespace ignored)::

    poly    := ["+"|"-"] term (("+"|"-") term)*
    term    := atom ("*" atom)*
    atom    := INT | "(" literal ")" | VAR ["^" INT]
    literal := polynomial in the field generator ``t`` with integer coefficients

A map (PolyVector) is its components separated by ``;``.
"""
from __future__ import annotations

import re
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import DEFAULT_DOMAIN_BUDGET, BudgetExceeded
from .fields import FFElement, FieldSpec, TowerSpec, format_literal

UNDEFINED = "undefined"  # degree of the zero polynomial


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(f"{message} at position {pos}" + (f": {text!r}" if text else ""))
        self.pos = pos


class MultiPoly:
    """Polynomial in ``n`` variables as a map exponent-tuple -> nonzero coefficient."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field, n: int, terms: Mapping[tuple, object] = ()):
        self.field = field
        self.n = n
        clean = {}
        for exps, c in dict(terms).items():
            exps = tuple(int(v) for v in exps)
            if len(exps) != n or any(v < 0 for v in exps):
                raise ValueError(f"bad exponent vector {exps} for {n} variables")
            c = field.element(c)
            if exps in clean:
                c = clean[exps] + c
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.terms = clean

    @classmethod
    def variable(cls, field, n: int, i: int) -> "MultiPoly":
        return cls(field, n, {tuple(int(j == i) for j in range(n)): 1})

    @classmethod
    def constant(cls, field, n: int, c) -> "MultiPoly":
        return cls(field, n, {(0,) * n: c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.n, frozenset((e, c.coeffs) for e, c in self.terms.items())))

    def _check(self, other: "MultiPoly"):
        if self.field != other.field or self.n != other.n:
            raise ValueError("polynomials over different rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiPoly(self.field, self.n, terms)

    def __neg__(self):
        return MultiPoly(self.field, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return MultiPoly(self.field, self.n, terms)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r} over {self.field})"

    def degree(self):
        return total_degree(self)

    def support(self) -> set[tuple]:
        return set(self.terms)

    def __call__(self, *point):
        return evaluate(self, point)

    def raw_terms(self) -> list[tuple[tuple, object]]:
        return [(e, c.coeffs) for e, c in sorted(self.terms.items())]


class PolyVector:
    """A tuple of polynomials in the same variables over the same field."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[MultiPoly]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a polynomial vector needs at least one component")
        if len({(c.field, c.n) for c in comps}) != 1:
            raise ValueError("components must share field and variable count")
        self.components = comps

    @property
    def field(self):
        return self.components[0].field

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def m(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        return isinstance(other, PolyVector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"PolyVector({format_map(self)!r} over {self.field})"

    def degree(self):
        return total_degree(self)

    def support(self) -> set[tuple]:
        return support(self)

    def __call__(self, *point):
        return tuple(evaluate(c, point) for c in self.components)


# -- parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("int", num, start))
        elif name is not None:
            toks.append(("name", name, start))
        else:
            if sym not in "+-*^();":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            toks.append((sym, sym, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, field: FieldSpec, varnames: Sequence[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.varnames = list(varnames)
        self.index = {v: k for k, v in enumerate(self.varnames)}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "integer" if kind == "int" else repr(kind)
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def error(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def poly(self) -> MultiPoly:
        n = len(self.varnames)
        terms: dict = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            exps, coeff = self.term()
            coeff = coeff if sign > 0 else -coeff
            terms[exps] = terms[exps] + coeff if exps in terms else coeff
            kind = self.peek()[0]
            if kind in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
                continue
            break
        return MultiPoly(self.field, n, terms)

    def term(self):
        exps = [0] * len(self.varnames)
        coeff = self.field.one
        while True:
            kind, val, pos = self.peek()
            if kind == "int":
                self.take()
                coeff = coeff * int(val)
            elif kind == "(":
                self.take()
                coeff = coeff * self.literal()
                self.take(")")
            elif kind == "name":
                self.take()
                if val not in self.index:
                    raise ParseError(f"unknown variable {val!r}", self.text, pos)
                k = 1
                if self.peek()[0] == "^":
                    self.take()
                    k = int(self.take("int")[1])
                    if k < 1:
                        raise ParseError("exponent must be a positive integer", self.text, pos)
                exps[self.index[val]] += k
            else:
                self.error(f"expected coefficient or variable, got {val or 'end of input'!r}")
            if self.peek()[0] != "*":
                return tuple(exps), coeff
            self.take()

    def literal(self) -> FFElement:
        """Field literal in ``t`` inside parentheses."""
        F = self.field
        t = F.gen
        total = F.zero
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            val = F.one
            while True:
                kind, tok, pos = self.peek()
                if kind == "int":
                    self.take()
                    val = val * int(tok)
                elif kind == "name" and tok == "t":
                    self.take()
                    k = 1
                    if self.peek()[0] == "^":
                        self.take()
                        k = int(self.take("int")[1])
                    val = val * t ** k
                else:
                    raise ParseError(f"bad field literal token {tok or 'end of input'!r}", self.text, pos)
                if self.peek()[0] != "*":
                    break
                self.take()
            total = total + val if sign > 0 else total - val
            if self.peek()[0] in "+-":
                sign = -1 if self.take()[0] == "-" else 1
                continue
            return total


def parse_poly(text: str, spec: FieldSpec, varnames: Sequence[str]) -> MultiPoly:
    """Parse ``text`` into a canonical MultiPoly over ``spec`` in ``varnames``."""
    if len(set(varnames)) != len(varnames):
        raise ValueError(f"duplicate variable names in {list(varnames)}")
    p = _Parser(text, spec, varnames)
    if p.peek()[0] == "end":
        p.error("empty polynomial")
    f = p.poly()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return f


def parse_map(text: str, spec: FieldSpec, varnames: Sequence[str]) -> PolyVector:
    """Parse ``;``-separated components into a PolyVector."""
    parts = text.split(";")
    comps = []
    offset = 0
    for part in parts:
        try:
            comps.append(parse_poly(part, spec, varnames))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, offset + exc.pos) from None
        offset += len(part) + 1
    return PolyVector(comps)


_VAR = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def infer_varnames(text: str, minimum: int = 1) -> list[str]:
    """Guess variable names: ``x1..xk`` when indexed names are used, else sorted names.

    Names inside parenthesized field literals (the generator ``t``) are ignored.
    """
    stripped = re.sub(r"\([^()]*\)", " ", text)
    names = set(_VAR.findall(stripped))
    indexed = [re.fullmatch(r"x(\d+)", v) for v in names]
    if names and all(indexed):
        k = max(int(m.group(1)) for m in indexed)
        return [f"x{i}" for i in range(1, max(k, minimum) + 1)]
    if not names:
        return [f"x{i}" for i in range(1, minimum + 1)]
    if len(names) < minimum:
        raise ValueError(f"cannot infer {minimum} variable names from {sorted(names)}")
    return sorted(names)


# -- printing --------------------------------------------------------------------

def _format_coeff(c: FFElement) -> str:
    if c.is_prime_subfield():
        return str(c.field.ring.flatten(c.coeffs)[0])
    if isinstance(c.field, FieldSpec):
        return f"({format_literal(c.coeffs)})"
    return f"[{c}]"


def format_poly(f: MultiPoly, varnames: Sequence[str] | None = None) -> str:
    """Canonical text; ``parse_poly(format_poly(f))`` reproduces ``f``."""
    names = list(varnames) if varnames is not None else [f"x{i + 1}" for i in range(f.n)]
    if f.is_zero():
        return "0"
    out = []
    order = sorted(f.terms, key=lambda e: (-sum(e), tuple(-v for v in e)))
    for exps in order:
        c = f.terms[exps]
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(names, exps) if k)
        coeff = _format_coeff(c)
        if not mono:
            out.append(coeff)
        elif coeff == "1":
            out.append(mono)
        else:
            out.append(f"{coeff}*{mono}")
    return " + ".join(out)


def format_map(f: PolyVector, varnames: Sequence[str] | None = None) -> str:
    return "; ".join(format_poly(c, varnames) for c in f)


# -- operations ------------------------------------------------------------------

def total_degree(f):
    """Max total degree; for a PolyVector the max over components.

    Returns :data:`UNDEFINED` for the zero polynomial (or an all-zero vector).
    """
    if isinstance(f, PolyVector):
        degs = [total_degree(c) for c in f]
        nums = [d for d in degs if d != UNDEFINED]
        return max(nums) if nums else UNDEFINED
    if f.is_zero():
        return UNDEFINED
    return max(sum(e) for e in f.terms)


def support(f) -> set[tuple]:
    """Union of the monomial sets of the components."""
    if isinstance(f, MultiPoly):
        return set(f.terms)
    out: set = set()
    for c in f:
        out |= set(c.terms)
    return out


def eval_raw(terms: Sequence[tuple[tuple, object]], ring, point: Sequence):
    """Evaluate raw ``(exps, coeff)`` terms at a raw point in ``ring``."""
    acc = ring.zero
    for exps, c in terms:
        val = c
        for x, k in zip(point, exps):
            if k:
                val = ring.mul(val, ring.pow(x, k))
        acc = ring.add(acc, val)
    return acc


def evaluate(f: MultiPoly, point: Sequence) -> FFElement:
    """Value of ``f`` at ``point`` (elements of f's field, or ints)."""
    if len(point) != f.n:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.n} variables")
    raw = [f.field.element(x).coeffs for x in point]
    return FFElement(f.field, eval_raw(f.raw_terms(), f.field.ring, raw))


def construct_g(f: PolyVector, tower: TowerSpec) -> MultiPoly:
    """g = f_1 e_1 + ... + f_n e_n over F_{q^n}, with the power basis e_i = u^(i-1)."""
    if f.m != tower.n:
        raise ValueError(f"map has {f.m} components but the tower has degree {tower.n}")
    if f.field != tower.base:
        raise ValueError(f"map is over {f.field}, tower is over {tower.base}")
    zero = tower.base.ring.zero
    terms = {}
    for exps in support(f):
        vec = tuple(c.terms[exps].coeffs if exps in c.terms else zero for c in f)
        terms[exps] = FFElement(tower, vec)
    return MultiPoly(tower, f.n, terms)


def domain_points(field, n: int, budget: int = DEFAULT_DOMAIN_BUDGET):
    """All raw points of ``field``^n in canonical order."""
    if field.order ** n > budget:
        raise BudgetExceeded(f"domain size {field.order}^{n} exceeds budget {budget}")
    return product(list(field.ring.elements()), repeat=n)


def image(f, budget: int = DEFAULT_DOMAIN_BUDGET) -> set:
    """Set of raw values of a MultiPoly or PolyVector over its whole domain.

    Polynomials over a tower F_{q^n} are evaluated on F_q^n, as for ``construct_g``.
    """
    comps = [f] if isinstance(f, MultiPoly) else list(f)
    field = comps[0].field
    ring = field.ring
    raws = [c.raw_terms() for c in comps]
    if isinstance(field, TowerSpec):
        pts = (tuple(ring.scalar(a) for a in x)
               for x in domain_points(field.base, comps[0].n, budget))
    else:
        pts = domain_points(field, comps[0].n, budget)
    return {tuple(eval_raw(t, ring, x) for t in raws) for x in pts}
