"""Exact coefficient fields and sparse multivariate polynomials.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients over a :class:`Ring`, which fixes the variable names and the
ground field (the rationals or a prime field).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .errors import ContextMismatch, DomainError, NotDivisible, TermLimitExceeded

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

#: Hard cap on the number of terms any single product may produce.
MAX_TERMS = 10_000


def set_term_limit(n: int) -> int:
    """Change the global term guard; returns the previous value."""
    global MAX_TERMS
    old, MAX_TERMS = MAX_TERMS, int(n)
    return old


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field of ``p`` elements."""

    p: int = 0

    def __post_init__(self):
        if self.p and not (_is_prime(self.p) and self.p < 2**31):
            raise DomainError(f"{self.p} is not a prime below 2^31")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, value) -> Scalar:
        """Convert an int, Fraction or ``"a/b"`` string into a field element."""
        if isinstance(value, str):
            value = Fraction(value)
        p = self.p
        if not p:
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, Fraction):
                return value
            raise DomainError(f"cannot convert {value!r} to a rational")
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DomainError(f"{value} has no image in F{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        raise DomainError(f"cannot convert {value!r} to F{p}")

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        if self.p:
            return a * self.inv(b) % self.p
        return Fraction(a) / b

    def __str__(self) -> str:
        return f"F{self.p}" if self.p else "Q"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over ``field`` in the named ``variables`` (in order)."""

    variables: tuple[str, ...]
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise DomainError(f"duplicate variable names in {self.variables}")

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise DomainError(f"unknown variable {name!r} in {self}") from None

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.ngens
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field(1)}, check=False)

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.variables)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, check=False)

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.ngens: c})

    def monomial(self, exponent: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exponent): coeff})

    def __call__(self, value) -> "Polynomial":
        """Coerce a string, scalar or polynomial into this ring."""
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ContextMismatch(f"{value.ring} is not {self}")
            return value
        if isinstance(value, str):
            from .parsing import parse_polynomial

            return parse_polynomial(value, self)
        return self.constant(value)

    def fresh_names(self, stem: str, count: int) -> list[str]:
        """``count`` variable names starting with ``stem`` not used in this ring."""
        out, i = [], 0
        taken = set(self.variables)
        while len(out) < count:
            name = f"{stem}{i}" if count > 1 or i else stem
            if name not in taken:
                out.append(name)
                taken.add(name)
            i += 1
        return out

    def extend(self, names: Iterable[str]) -> "Ring":
        return Ring(self.variables + tuple(names), self.field)

    def __str__(self) -> str:
        return f"{self.field}[{','.join(self.variables)}]"


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x + y for x, y in zip(a, b)])


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, Scalar] = (), *, check: bool = True):
        self.ring = ring
        self._hash = None
        if check:
            field, n = ring.field, ring.ngens
            clean = {}
            for e, c in dict(terms).items():
                e = tuple(int(x) for x in e)
                if len(e) != n or min(e, default=0) < 0:
                    raise DomainError(f"exponent {e} does not fit {ring}")
                c = field(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            terms = {e: c for e, c in clean.items() if c}
            if field.p:
                terms = {e: c % field.p for e, c in terms.items() if c % field.p}
        self._terms = terms

    # -- basic access -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Scalar]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_coeff(self) -> Scalar:
        return self._terms.get((0,) * self.ring.ngens, 0)

    def coeff(self, exponent: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(exponent), 0)

    def sorted_terms(self) -> list[tuple[Exponent, Scalar]]:
        """Terms in canonical print order (lexicographic, descending)."""
        return sorted(self._terms.items(), reverse=True)

    def support(self) -> set[int]:
        """Indices of the variables that occur."""
        return {i for e in self._terms for i, k in enumerate(e) if k}

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: Union[str, int]) -> int:
        i = self.ring.index(var) if isinstance(var, str) else var
        return max((e[i] for e in self._terms), default=-1)

    def order(self) -> float:
        """Order at the origin: minimal total degree of a term (inf for 0)."""
        if not self._terms:
            return math.inf
        return min(sum(e) for e in self._terms)

    def initial_form(self) -> "Polynomial":
        """Homogeneous part of lowest degree."""
        if not self._terms:
            raise DomainError("the zero polynomial has no initial form")
        o = self.order()
        return self._new({e: c for e, c in self._terms.items() if sum(e) == o})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return self._new({e: c for e, c in self._terms.items() if sum(e) == degree})

    def _new(self, terms) -> "Polynomial":
        return Polynomial(self.ring, terms, check=False)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(f"{other.ring} is not {self.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def _reduce_dict(self, d: dict) -> dict:
        p = self.ring.field.p
        if p:
            return {e: c % p for e, c in d.items() if c % p}
        return {e: c for e, c in d.items() if c}

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        res = dict(self._terms)
        for e, c in other._terms.items():
            res[e] = res.get(e, 0) + c
        return self._new(self._reduce_dict(res))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return self._new({e: (-c) % p for e, c in self._terms.items()})
        return self._new({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(_mul_terms(self._terms, other._terms, self.ring.field.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a natural number")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        return self._new(self._reduce_dict({e: v * c for e, v in self._terms.items()}))

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            return self.exact_div(c)
        return self.scale(self.ring.field.inv(self.ring.field(c)))

    def exact_div(self, g: "Polynomial") -> "Polynomial":
        """Quotient ``q`` with ``q * g == self``; raises if ``g`` does not divide."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.ring.field
        if g.is_monomial():
            ((m, c),) = g._terms.items()
            inv = field.inv(c)
            out = {}
            for e, v in self._terms.items():
                if not _divides(m, e):
                    raise NotDivisible(f"{g} does not divide {self}")
                out[tuple(x - y for x, y in zip(e, m))] = v * inv
            return self._new(self._reduce_dict(out))
        lm = max(g._terms)
        inv = field.inv(g._terms[lm])
        tail = [(e, c) for e, c in g._terms.items() if e != lm]
        rem = dict(self._terms)
        quot = {}
        p = field.p
        while rem:
            e = max(rem)
            if not _divides(lm, e):
                raise NotDivisible(f"{g} does not divide {self}")
            q = rem.pop(e) * inv
            if p:
                q %= p
            m = tuple(x - y for x, y in zip(e, lm))
            quot[m] = q
            for ge, gc in tail:
                t = _add_exp(m, ge)
                v = rem.get(t, 0) - q * gc
                if p:
                    v %= p
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return self._new(quot)

    def divides(self, f: "Polynomial") -> bool:
        try:
            f.exact_div(self)
        except NotDivisible:
            return False
        return True

    def max_power_dividing(self, var: Union[str, int]) -> int:
        """Largest k such that var^k divides self (0 for the zero polynomial)."""
        i = self.ring.index(var) if isinstance(var, str) else var
        return min((e[i] for e in self._terms), default=0)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self / self._terms[max(self._terms)]

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation, substitution, calculus ----------------------------------

    def __call__(self, *point) -> Scalar:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Scalar:
        field = self.ring.field
        if len(point) != self.ring.ngens:
            raise DomainError(f"point has {len(point)} coordinates, ring has {self.ring.ngens}")
        a = [field(x) for x in point]
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(a, e):
                if k:
                    t *= x**k
            total += t
        return field(total) if field.p else Fraction(total)

    def substitute(self, mapping: Mapping[str, Union["Polynomial", int, Fraction, str]]) -> "Polynomial":
        """Replace the named variables; the others are left untouched."""
        images = list(self.ring.gens())
        for name, value in mapping.items():
            images[self.ring.index(name)] = self.ring(value)
        return RingMorphism(self.ring, self.ring, tuple(images))(self)

    def translate(self, point: Sequence) -> "Polynomial":
        """``f(x + a)``; the order at the origin of the result is the order of f at a."""
        ring = self.ring
        if len(point) != ring.ngens:
            raise DomainError(f"point has {len(point)} coordinates, ring has {ring.ngens}")
        a = [ring.field(x) for x in point]
        if not any(a):
            return self
        images = tuple(g + c for g, c in zip(ring.gens(), a))
        return RingMorphism(ring, ring, images)(self)

    def derivative(self, alpha: Union[Sequence[int], str], divided: bool = False) -> "Polynomial":
        """Iterated partial derivative; ``divided=True`` gives the Hasse derivative.

        The Hasse (divided-power) operator sends x^b to binom(b, a) x^(b-a) and is
        the right notion in positive characteristic.
        """
        ring = self.ring
        if isinstance(alpha, str):
            a = [0] * ring.ngens
            a[ring.index(alpha)] = 1
            alpha = a
        alpha = tuple(alpha)
        if len(alpha) != ring.ngens:
            raise DomainError("multi-index length does not match the ring")
        out = {}
        for e, c in self._terms.items():
            if not _divides(alpha, e):
                continue
            factor = 1
            for b, k in zip(e, alpha):
                if k:
                    factor *= math.comb(b, k) if divided else math.perm(b, k)
            out[tuple(b - k for b, k in zip(e, alpha))] = c * factor
        return self._new(self._reduce_dict(out))

    def gradient(self) -> tuple["Polynomial", ...]:
        return tuple(self.derivative(v) for v in self.ring.variables)

    def coefficients_in(self, var: Union[str, int]) -> list["Polynomial"]:
        """``[a_0, a_1, ...]`` with ``self = sum a_i * var^i`` and var absent from a_i."""
        i = self.ring.index(var) if isinstance(var, str) else var
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1 :]] = c
        top = max(parts, default=-1)
        return [self._new(parts.get(k, {})) for k in range(top + 1)]

    def pth_power_split(self) -> tuple["Polynomial", "Polynomial"]:
        """Split ``f = root**p + rest`` over F_p; ``rest`` has no exponent in p*N^n."""
        p = self.ring.field.p
        if not p:
            raise DomainError("p-th power splitting needs a prime field")
        root, rest = {}, {}
        for e, c in self._terms.items():
            if all(k % p == 0 for k in e):
                # c**p == c in F_p
                root[tuple(k // p for k in e)] = c
            else:
                rest[e] = c
        return self._new(root), self._new(rest)

    def homogenize(self, ring: Ring) -> "Polynomial":
        """Homogenize with the last variable of ``ring`` (one more than self's)."""
        d = self.total_degree()
        return Polynomial(ring, {e + (d - sum(e),): c for e, c in self._terms.items()}, check=False)

    def change_ring(self, ring: Ring, names: Sequence[str] | None = None) -> "Polynomial":
        """Re-express in ``ring``, matching variables by name (missing ones must not occur)."""
        names = list(names) if names is not None else list(self.ring.variables)
        pos = [ring.index(v) if v in ring.variables else None for v in names]
        out = {}
        for e, c in self._terms.items():
            t = [0] * ring.ngens
            for k, j in zip(e, pos):
                if k:
                    if j is None:
                        raise ContextMismatch(f"{self} uses variables absent from {ring}")
                    t[j] += k
            out[tuple(t)] = c
        if ring.field != self.ring.field:
            return Polynomial(ring, {e: Fraction(c) if not self.ring.field.p else c for e, c in out.items()})
        return Polynomial(ring, out, check=False)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.ring.variables
        pieces = []
        for e, c in self.sorted_terms():
            negative = not self.ring.field.p and c < 0
            mag = -c if negative else c
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(names, e) if k
            )
            if not mono:
                body = _format_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_format_coeff(mag)}*{mono}"
            pieces.append((negative, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self}, ring={self.ring})"


def _mul_terms(a: Mapping, b: Mapping, p: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    res: dict = {}
    get = res.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple([x + y for x, y in zip(e1, e2)])
            res[e] = get(e, 0) + c1 * c2
    if p:
        res = {e: c % p for e, c in res.items() if c % p}
    else:
        res = {e: c for e, c in res.items() if c}
    if len(res) > MAX_TERMS:
        raise TermLimitExceeded(f"product has {len(res)} terms (limit {MAX_TERMS})")
    return res


@dataclass(frozen=True)
class RingMorphism:
    """Substitution homomorphism sending the i-th source variable to ``images[i]``."""

    source: Ring
    target: Ring
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        images = tuple(self.target(g) if not isinstance(g, Polynomial) else g for g in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.ngens:
            raise DomainError("one image per source variable is required")
        for g in images:
            if g.ring != self.target:
                raise ContextMismatch(f"image {g} is not in {self.target}")
        if self.source.field != self.target.field:
            raise ContextMismatch("source and target fields differ")

    @classmethod
    def identity(cls, ring: Ring) -> "RingMorphism":
        return cls(ring, ring, ring.gens())

    @classmethod
    def from_mapping(cls, source: Ring, target: Ring, mapping: Mapping[str, object]) -> "RingMorphism":
        """Variables not mentioned are sent to the same-named target variable."""
        images = []
        for v in source.variables:
            images.append(target(mapping[v]) if v in mapping else target.gen(v))
        return cls(source, target, tuple(images))

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise ContextMismatch(f"{f.ring} is not the source {self.source}")
        p = self.target.field.p
        n = self.target.ngens
        cache: dict[tuple[int, int], dict] = {}

        def power(i: int, k: int) -> dict:
            key = (i, k)
            if key not in cache:
                if k == 1:
                    cache[key] = dict(self.images[i]._terms)
                else:
                    half = power(i, k // 2)
                    sq = _mul_terms(half, half, p)
                    cache[key] = _mul_terms(sq, power(i, 1), p) if k % 2 else sq
            return cache[key]

        acc: dict = {}
        zero = (0,) * n
        for e, c in f._terms.items():
            t = {zero: c}
            for i, k in enumerate(e):
                if k:
                    t = _mul_terms(t, power(i, k), p)
                    if not t:
                        break
            for te, tc in t.items():
                acc[te] = acc.get(te, 0) + tc
        if p:
            acc = {e: c % p for e, c in acc.items() if c % p}
        else:
            acc = {e: c for e, c in acc.items() if c}
        if len(acc) > MAX_TERMS:
            raise TermLimitExceeded(f"substitution has {len(acc)} terms (limit {MAX_TERMS})")
        return Polynomial(self.target, acc, check=False)

    def then(self, other: "RingMorphism") -> "RingMorphism":
        """The composite that applies ``self`` first and ``other`` afterwards."""
        if other.source != self.target:
            raise ContextMismatch("morphisms are not composable")
        return RingMorphism(self.source, other.target, tuple(other(g) for g in self.images))

    def is_identity(self) -> bool:
        return self.source == self.target and self.images == self.target.gens()

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.images)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.images) + ")"


def apply_morphism(phi: RingMorphism, f: Polynomial) -> Polynomial:
    return phi(f)


def order0(f: Polynomial) -> float:
    return f.order()


def translate(f: Polynomial, point: Sequence) -> Polynomial:
    return f.translate(point)


def derivative(f: Polynomial, alpha, divided: bool = False) -> Polynomial:
    return f.derivative(alpha, divided=divided)


def initial_form(f: Polynomial) -> Polynomial:
    return f.initial_form()


def pth_power_split(f: Polynomial) -> tuple[Polynomial, Polynomial]:
    return f.pth_power_split()
