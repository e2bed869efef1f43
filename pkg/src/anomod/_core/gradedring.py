"""Exact-rational, degree-truncated graded polynomial algebra.

This module is the arithmetic kernel of anomod:
- describe a ring context (named even-degree generators + truncation degree)
- store elements canonically (exponent vector -> nonzero ``Fraction``)
- truncated multiplication, exponential and inversion of units
- degree extraction, substitution homomorphisms, Adams scaling
- a textual form that round-trips through :func:`parse_element`

Public entry points:
- :class:`GradedRing`, :class:`GradedElement`
- :func:`standard_ring`, :func:`root_ring`
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from typing import Union

from .errors import ContextMismatchError, ParseError, PreconditionError

Exponents = tuple[int, ...]
Scalar = Union[int, Fraction]

DEFAULT_MAX_DEGREE = 12

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TERM_SPLIT = re.compile(r"\s+([+-])\s+")


@dataclass(frozen=True)
class Generator:
    """A named polynomial generator with a cohomological degree.

    Attributes:
        name: Identifier used in printing and parsing (``p1T``, ``c``, ``m``).
        degree: Even, non-negative degree. Rank symbols have degree 0.

    Example:
        >>> Generator("c", 2)
        Generator(name='c', degree=2)
    """

    name: str
    degree: int

    def __post_init__(self) -> None:
        if not _IDENTIFIER.match(self.name):
            raise PreconditionError(f"Generator name must be an identifier: {self.name!r}")
        if self.degree < 0 or self.degree % 2:
            raise PreconditionError(
                f"Generator {self.name!r} needs an even non-negative degree, got {self.degree}"
            )


@dataclass(frozen=True)
class GradedRing:
    """Ring context: ordered generators plus the truncation degree ``D``.

    Two elements can only be combined when their contexts compare equal.

    Attributes:
        generators: Ordered generators; the order fixes the canonical
            monomial order.
        max_degree: Monomials of total degree above this are discarded.

    Example:
        >>> ring = GradedRing((Generator("c", 2),), max_degree=6)
        >>> ring.generator("c") ** 4
        GradedElement('0')
    """

    generators: tuple[Generator, ...]
    max_degree: int = DEFAULT_MAX_DEGREE

    def __post_init__(self) -> None:
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PreconditionError(f"Generator names must be unique: {names}")
        if self.max_degree < 0 or self.max_degree % 2:
            raise PreconditionError(
                f"Truncation degree must be even and non-negative, got {self.max_degree}"
            )

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    @cached_property
    def index(self) -> dict[str, int]:
        return {g.name: i for i, g in enumerate(self.generators)}

    def degree_of(self, exponents: Exponents) -> int:
        return sum(e * w for e, w in zip(exponents, self.weights))

    def has(self, name: str) -> bool:
        return name in self.index

    def zero(self) -> GradedElement:
        return GradedElement._from_canonical(self, {})

    def one(self) -> GradedElement:
        return self.constant(1)

    def constant(self, value: Scalar) -> GradedElement:
        value = Fraction(value)
        if not value:
            return self.zero()
        return GradedElement._from_canonical(self, {(0,) * len(self.generators): value})

    def generator(self, name: str) -> GradedElement:
        try:
            i = self.index[name]
        except KeyError as exc:
            raise ContextMismatchError(f"Unknown generator {name!r}; ring has {list(self.names)}") from exc
        exps = tuple(1 if j == i else 0 for j in range(len(self.generators)))
        return GradedElement(self, {exps: 1})

    def element(self, terms: Mapping[Exponents, Scalar]) -> GradedElement:
        return GradedElement(self, terms)

    def coerce(self, value: GradedElement | Scalar) -> GradedElement:
        """Turn scalars into constants; check the context of elements."""
        if isinstance(value, GradedElement):
            if value.ring is not self and value.ring != self:
                raise ContextMismatchError(_mismatch_message(value.ring, self))
            return value
        if isinstance(value, (int, Rational)):
            return self.constant(Fraction(value))
        raise TypeError(f"Cannot coerce {type(value).__name__} into a graded element")

    def exp_nilpotent(self, value: GradedElement) -> GradedElement:
        return exp_nilpotent(self.coerce(value))

    def invert_unit(self, value: GradedElement) -> GradedElement:
        return invert_unit(self.coerce(value))

    def parse(self, text: str) -> GradedElement:
        return parse_element(text, self)

    def __str__(self) -> str:
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"GradedRing[{gens}; D={self.max_degree}]"


class GradedElement:
    """Immutable element of a :class:`GradedRing`.

    Terms map exponent vectors to nonzero ``Fraction`` coefficients. Monomials
    above the ring's truncation degree are dropped on construction.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping[Exponents, Scalar] | None = None) -> None:
        clean: dict[Exponents, Fraction] = {}
        size = len(ring.generators)
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != size or any(e < 0 for e in exps):
                raise PreconditionError(f"Bad exponent vector {exps} for {size} generators")
            if ring.degree_of(exps) > ring.max_degree:
                continue
            value = clean.get(exps, Fraction(0)) + Fraction(coef)
            if value:
                clean[exps] = value
            else:
                clean.pop(exps, None)
        self.ring = ring
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _from_canonical(cls, ring: GradedRing, terms: dict[Exponents, Fraction]) -> GradedElement:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Exponents, Fraction]]:
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {self.ring.degree_of(e) for e in self._terms}

    def is_homogeneous(self, degree: int) -> bool:
        return all(self.ring.degree_of(e) == degree for e in self._terms)

    def __add__(self, other: GradedElement | Scalar) -> GradedElement:
        try:
            other = self.ring.coerce(other)
        except TypeError:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> GradedElement:
        return GradedElement._from_canonical(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: GradedElement | Scalar) -> GradedElement:
        try:
            other = self.ring.coerce(other)
        except TypeError:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other: Scalar) -> GradedElement:
        return add(self.ring.coerce(other), -self)

    def __mul__(self, other: GradedElement | Scalar) -> GradedElement:
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scale(Fraction(other))
        if not isinstance(other, GradedElement):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> GradedElement:
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        return self.scale(1 / Fraction(other))

    def __pow__(self, exponent: int) -> GradedElement:
        if exponent < 0:
            raise PreconditionError("Negative powers are not defined; use invert_unit")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            exponent >>= 1
            if exponent:
                base = mul(base, base)
        return result

    def scale(self, factor: Scalar) -> GradedElement:
        factor = Fraction(factor)
        if not factor:
            return self.ring.zero()
        return GradedElement._from_canonical(self.ring, {e: c * factor for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GradedElement):
            return (self.ring is other.ring or self.ring == other.ring) and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == self.ring.constant(Fraction(other))._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"GradedElement({serialize(self)!r})"

    def __str__(self) -> str:
        return serialize(self)


def _mismatch_message(left: GradedRing, right: GradedRing) -> str:
    return f"Ring context mismatch: {left} vs {right}"


def _common_ring(a: GradedElement, b: GradedElement) -> GradedRing:
    if a.ring is not b.ring and a.ring != b.ring:
        raise ContextMismatchError(_mismatch_message(a.ring, b.ring))
    return a.ring


def add(a: GradedElement, b: GradedElement) -> GradedElement:
    """Coefficient-wise sum of two elements of the same ring."""
    ring = _common_ring(a, b)
    if len(a._terms) < len(b._terms):
        a, b = b, a
    out = dict(a._terms)
    for exps, coef in b._terms.items():
        value = out.get(exps)
        if value is None:
            out[exps] = coef
            continue
        value += coef
        if value:
            out[exps] = value
        else:
            del out[exps]
    return GradedElement._from_canonical(ring, out)


def _by_degree(x: GradedElement) -> list[tuple[int, list[tuple[Exponents, Fraction]]]]:
    groups: dict[int, list[tuple[Exponents, Fraction]]] = {}
    weights = x.ring.weights
    for exps, coef in x._terms.items():
        degree = sum(e * w for e, w in zip(exps, weights))
        groups.setdefault(degree, []).append((exps, coef))
    return sorted(groups.items())


def mul(a: GradedElement, b: GradedElement) -> GradedElement:
    """Truncated product: monomials of degree above ``D`` never get formed."""
    ring = _common_ring(a, b)
    if not a._terms or not b._terms:
        return ring.zero()
    limit = ring.max_degree
    left = _by_degree(a)
    right = _by_degree(b)
    out: dict[Exponents, Fraction] = {}
    for da, terms_a in left:
        room = limit - da
        for db, terms_b in right:
            if db > room:
                break
            for ea, ca in terms_a:
                for eb, cb in terms_b:
                    key = tuple([x + y for x, y in zip(ea, eb)])
                    value = out.get(key)
                    out[key] = ca * cb if value is None else value + ca * cb
    return GradedElement._from_canonical(ring, {e: c for e, c in out.items() if c})


def constant_part(x: GradedElement) -> GradedElement:
    """Degree-0 component (including pure rank-symbol polynomials)."""
    return extract_degree(x, 0)


def exp_nilpotent(x: GradedElement) -> GradedElement:
    """``exp(x)`` for ``x`` without degree-0 component.

    Raises:
        PreconditionError: If ``x`` has a nonzero degree-0 part.
    """
    if constant_part(x):
        raise PreconditionError(
            f"exp needs a nilpotent argument; degree-0 part is {serialize(constant_part(x))}"
        )
    ring = x.ring
    result = ring.one()
    term = ring.one()
    k = 0
    while True:
        k += 1
        term = mul(term, x).scale(Fraction(1, k))
        if not term:
            return result
        result = add(result, term)


def invert_unit(x: GradedElement) -> GradedElement:
    """Inverse of ``1 + nu`` as the finite geometric series in ``-nu``.

    Raises:
        PreconditionError: If the degree-0 part of ``x`` is not exactly 1.
    """
    ring = x.ring
    if constant_part(x) != ring.one():
        raise PreconditionError(
            f"Only 1 + nilpotent is invertible; degree-0 part is {serialize(constant_part(x))}"
        )
    minus_nu = ring.one() - x
    result = ring.one()
    term = ring.one()
    while True:
        term = mul(term, minus_nu)
        if not term:
            return result
        result = add(result, term)


def apply_univariate_series(coeffs: Sequence[Scalar], x: GradedElement) -> GradedElement:
    """Evaluate ``sum(coeffs[k] * x**k)`` at a nilpotent ``x``.

    Raises:
        PreconditionError: If ``x`` is not nilpotent, or ``coeffs`` runs out
            before the powers of ``x`` vanish under truncation.
    """
    if constant_part(x):
        raise PreconditionError("Univariate series can only be applied to a nilpotent element")
    ring = x.ring
    result = ring.zero()
    power = ring.one()
    k = 0
    while power:
        if k >= len(coeffs):
            raise PreconditionError(
                f"Series has {len(coeffs)} coefficients but x^{k} is still nonzero at D={ring.max_degree}"
            )
        result = add(result, power.scale(coeffs[k]))
        power = mul(power, x)
        k += 1
    return result


def extract_degree(x: GradedElement, degree: int) -> GradedElement:
    """Sum of the monomials of exact cohomological degree ``degree``."""
    ring = x.ring
    if degree < 0 or degree > ring.max_degree:
        raise PreconditionError(f"Degree {degree} outside 0..{ring.max_degree}")
    return GradedElement._from_canonical(
        ring, {e: c for e, c in x._terms.items() if ring.degree_of(e) == degree}
    )


def homogeneous_parts(x: GradedElement) -> dict[int, GradedElement]:
    """Split ``x`` into its nonzero homogeneous components, keyed by degree."""
    parts: dict[int, dict[Exponents, Fraction]] = {}
    for exps, coef in x._terms.items():
        parts.setdefault(x.ring.degree_of(exps), {})[exps] = coef
    return {d: GradedElement._from_canonical(x.ring, t) for d, t in sorted(parts.items())}


def scalar_value(x: GradedElement) -> Fraction:
    """Return the rational value of a constant element."""
    zero = (0,) * len(x.ring.generators)
    if any(e != zero for e in x._terms):
        raise PreconditionError(f"Element is not a rational constant: {serialize(x)}")
    return x._terms.get(zero, Fraction(0))


def adams(x: GradedElement, k: int) -> GradedElement:
    """Scale the degree-``2j`` part by ``k**j`` (Chern character of psi^k)."""
    ring = x.ring
    return GradedElement._from_canonical(
        ring,
        {e: c * Fraction(k) ** (ring.degree_of(e) // 2) for e, c in x._terms.items()},
    )


def substitute(
    x: GradedElement,
    assignment: Mapping[str, GradedElement | Scalar],
    target: GradedRing | None = None,
) -> GradedElement:
    """Apply the ring homomorphism defined by ``assignment``.

    Unassigned generators map to the generator of the same name in ``target``
    (default: the ring of ``x``).

    Raises:
        PreconditionError: If an assigned value is not homogeneous of the
            generator's degree.
        ContextMismatchError: If an unassigned generator is missing from
            ``target`` but occurs in ``x``.
    """
    source = x.ring
    target = target or source
    unknown = set(assignment) - set(source.names)
    if unknown:
        raise ContextMismatchError(f"Assignment names unknown generators: {sorted(unknown)}")

    images: list[GradedElement | None] = []
    for gen in source.generators:
        if gen.name in assignment:
            value = target.coerce(assignment[gen.name])
            if value and not value.is_homogeneous(gen.degree):
                raise PreconditionError(
                    f"Value for {gen.name} must be homogeneous of degree {gen.degree}: {serialize(value)}"
                )
            images.append(value)
        elif target.has(gen.name):
            images.append(target.generator(gen.name))
        else:
            images.append(None)

    powers: dict[tuple[int, int], GradedElement] = {}

    def power(i: int, e: int) -> GradedElement:
        key = (i, e)
        if key not in powers:
            image = images[i]
            if image is None:
                raise ContextMismatchError(
                    f"Generator {source.names[i]!r} has no image in the target ring"
                )
            powers[key] = image if e == 1 else mul(power(i, e - 1), image)
        return powers[key]

    result = target.zero()
    for exps, coef in x._terms.items():
        term = target.constant(coef)
        for i, e in enumerate(exps):
            if e:
                term = mul(term, power(i, e))
                if not term:
                    break
        result = add(result, term)
    return result


def _sort_key(ring: GradedRing, exps: Exponents) -> tuple[int, tuple[int, ...]]:
    return ring.degree_of(exps), tuple(-e for e in exps)


def _monomial_text(ring: GradedRing, exps: Exponents) -> str:
    parts = []
    for name, e in zip(ring.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def serialize(x: GradedElement) -> str:
    """Deterministic text form, e.g. ``"1 - 1/24*p1T + 7/5760*p1T^2"``."""
    if not x._terms:
        return "0"
    ring = x.ring
    pieces: list[str] = []
    for exps in sorted(x._terms, key=lambda e: _sort_key(ring, e)):
        coef = x._terms[exps]
        monomial = _monomial_text(ring, exps)
        magnitude = abs(coef)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if coef < 0 else body)
        else:
            pieces.append(f" - {body}" if coef < 0 else f" + {body}")
    return "".join(pieces)


def split_terms(x: GradedElement) -> list[GradedElement]:
    """Single-monomial elements of ``x`` in canonical order."""
    ring = x.ring
    return [
        GradedElement._from_canonical(ring, {exps: x._terms[exps]})
        for exps in sorted(x._terms, key=lambda e: _sort_key(ring, e))
    ]


def parse_element(text: str, ring: GradedRing) -> GradedElement:
    """Parse the output of :func:`serialize` (and slightly looser input).

    Raises:
        ParseError: On malformed terms or unknown generators.
    """
    source = text.strip()
    if not source:
        raise ParseError("Cannot parse an empty element")
    pieces = _TERM_SPLIT.split(source)
    signed = [("+", pieces[0])] + list(zip(pieces[1::2], pieces[2::2]))
    result = ring.zero()
    for sign, body in signed:
        term = _parse_term(body.strip(), ring)
        result = add(result, -term if sign == "-" else term)
    return result


def _parse_term(body: str, ring: GradedRing) -> GradedElement:
    negative = body.startswith("-")
    if negative:
        body = body[1:].strip()
    if not body:
        raise ParseError("Dangling sign in element text")
    coef = Fraction(1)
    exps = [0] * len(ring.generators)
    for factor in body.split("*"):
        factor = factor.strip()
        name, _, power = factor.partition("^")
        if name in ring.index:
            try:
                exponent = int(power) if power else 1
            except ValueError as exc:
                raise ParseError(f"Bad exponent in {factor!r}") from exc
            exps[ring.index[name]] += exponent
            continue
        try:
            coef *= Fraction(factor)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"Unknown factor {factor!r}; ring has {list(ring.names)}") from exc
    return GradedElement(ring, {tuple(exps): -coef if negative else coef})


BUNDLE_SUFFIXES = ("T", "F1", "F2")


@lru_cache(maxsize=None)
def standard_ring(max_degree: int = DEFAULT_MAX_DEGREE) -> GradedRing:
    """Default context: Pontryagin generators of TZ, F1, F2, then ``c, m, n``.

    Example:
        >>> standard_ring(12).names[:4]
        ('p1T', 'p2T', 'p3T', 'p1F1')
    """
    count = max_degree // 4
    generators = [
        Generator(f"p{i}{suffix}", 4 * i)
        for suffix in BUNDLE_SUFFIXES
        for i in range(1, count + 1)
    ]
    generators += [Generator("c", 2), Generator("m", 0), Generator("n", 0)]
    return GradedRing(tuple(generators), max_degree)


def root_ring(
    names: Sequence[str],
    max_degree: int = DEFAULT_MAX_DEGREE,
    extra: Sequence[Generator] = (),
) -> GradedRing:
    """Context of degree-2 root generators (plus optional extra generators)."""
    generators = tuple(Generator(name, 2) for name in names) + tuple(extra)
    return GradedRing(generators, max_degree)
