"""Virtual bundle expressions.

A :class:`BundleExpr` is an immutable tree over atoms (the tangent bundle, the
two gauge bundles, the oriented plane bundle, trivial bundles) with the
operations used by the expansions: sums, differences, integer scaling, tensor
products, Λ², S², Adams operations and ``tilde`` (reduction to rank zero).

Atoms know their power sums, which is all the Chern character needs. The
module also provides the textual grammar used by the CLI and the tests::

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := INT | "m" | "n" | ATOM | FUNC "(" expr ")" | "(" expr ")" | "-" factor
    FUNC    := "L2" | "S2" | "tilde" | "psi" INT

``INT * factor`` builds an integer scale node, every other product is a
tensor product. :func:`format_bundle` output re-parses to an equal tree.
"""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ContextMismatchError, ParseError, PreconditionError
from .gradedring import GradedElement, GradedRing

RankValue = int | str

RANK_SYMBOLS = ("m", "n")
TANGENT_RANK = 10


class BundleExpr:
    """Base class of the expression tree; supplies the operator sugar."""

    def __add__(self, other: BundleExpr | int) -> BundleExpr:
        return Sum(self, _as_expr(other))

    def __radd__(self, other: int) -> BundleExpr:
        return Sum(_as_expr(other), self)

    def __sub__(self, other: BundleExpr | int) -> BundleExpr:
        return Difference(self, _as_expr(other))

    def __rsub__(self, other: int) -> BundleExpr:
        return Difference(_as_expr(other), self)

    def __mul__(self, other: BundleExpr | int) -> BundleExpr:
        if isinstance(other, int):
            return Scale(other, self)
        return Tensor(self, _as_expr(other))

    def __rmul__(self, other: int) -> BundleExpr:
        return Scale(other, self)

    def __neg__(self) -> BundleExpr:
        return Scale(-1, self)

    def __str__(self) -> str:
        return format_bundle(self)


def _as_expr(value: BundleExpr | int) -> BundleExpr:
    if isinstance(value, BundleExpr):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Trivial(value)
    raise TypeError(f"Cannot use {type(value).__name__} as a bundle expression")


@dataclass(frozen=True, eq=True)
class Trivial(BundleExpr):
    """Trivial bundle of integer rank or of rank ``m`` / ``n``."""

    rank: RankValue


@dataclass(frozen=True, eq=True)
class Sum(BundleExpr):
    left: BundleExpr
    right: BundleExpr


@dataclass(frozen=True, eq=True)
class Difference(BundleExpr):
    left: BundleExpr
    right: BundleExpr


@dataclass(frozen=True, eq=True)
class Scale(BundleExpr):
    factor: int
    expr: BundleExpr


@dataclass(frozen=True, eq=True)
class Tensor(BundleExpr):
    left: BundleExpr
    right: BundleExpr


@dataclass(frozen=True, eq=True)
class Exterior2(BundleExpr):
    expr: BundleExpr


@dataclass(frozen=True, eq=True)
class Symmetric2(BundleExpr):
    expr: BundleExpr


@dataclass(frozen=True, eq=True)
class Adams(BundleExpr):
    k: int
    expr: BundleExpr

    def __post_init__(self) -> None:
        if self.k < 1:
            raise PreconditionError(f"Adams operations need k >= 1, got {self.k}")


@dataclass(frozen=True, eq=True)
class Tilde(BundleExpr):
    expr: BundleExpr


def exterior2(expr: BundleExpr | int) -> BundleExpr:
    return Exterior2(_as_expr(expr))


def symmetric2(expr: BundleExpr | int) -> BundleExpr:
    return Symmetric2(_as_expr(expr))


def adams_op(k: int, expr: BundleExpr | int) -> BundleExpr:
    return Adams(k, _as_expr(expr))


def tilde(expr: BundleExpr) -> BundleExpr:
    return Tilde(expr)


# ---------------------------------------------------------------------------
# Atoms
# ---------------------------------------------------------------------------


class Atom(BundleExpr):
    """A leaf with a printed label, a rank and power sums of its roots.

    ``power_sum(ring, j)`` is the sum of the ``j``-th powers of the Chern roots
    of the complexification, a homogeneous element of degree ``2j``.
    """

    label: str

    def power_sum(self, ring: GradedRing, j: int) -> GradedElement:
        raise NotImplementedError

    def rank_element(self, ring: GradedRing) -> GradedElement:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class PontryaginAtom(Atom):
    """Real bundle described by free Pontryagin generators ``p{i}{suffix}``.

    Attributes:
        label: Name in bundle expressions (``TZ``, ``F1``, ``F2``).
        suffix: Generator suffix in the ring (``T``, ``F1``, ``F2``).
        rank: Integer rank or a rank symbol (``m``, ``n``).

    Example:
        >>> from anomod._core.gradedring import standard_ring
        >>> ring = standard_ring(12)
        >>> str(PontryaginAtom("TZ", "T", 10).power_sum(ring, 2))
        '2*p1T'
    """

    label: str
    suffix: str
    rank: RankValue

    def power_sum(self, ring: GradedRing, j: int) -> GradedElement:
        if j < 1:
            raise PreconditionError(f"Power sums are indexed from 1, got {j}")
        if j % 2:
            return ring.zero()
        k = j // 2
        if 4 * k > ring.max_degree:
            return ring.zero()
        sums = pontryagin_power_sums(ring, self.suffix)
        return sums[k - 1] * 2

    def rank_element(self, ring: GradedRing) -> GradedElement:
        return _rank_value(ring, self.rank)


@dataclass(frozen=True, eq=True)
class EulerAtom(Atom):
    """Oriented rank-2 real bundle; its complexification has roots ``±c``."""

    label: str
    generator: str = "c"

    def power_sum(self, ring: GradedRing, j: int) -> GradedElement:
        if j < 1:
            raise PreconditionError(f"Power sums are indexed from 1, got {j}")
        if j % 2:
            return ring.zero()
        return ring.generator(self.generator) ** j * 2

    def rank_element(self, ring: GradedRing) -> GradedElement:
        return ring.constant(2)


@dataclass(frozen=True, eq=True)
class RealRootAtom(Atom):
    """Real bundle with explicit roots ``±x_j`` (plus a zero root if odd rank)."""

    label: str
    roots: tuple[str, ...]
    zero_root: bool = False

    def power_sum(self, ring: GradedRing, j: int) -> GradedElement:
        if j < 1:
            raise PreconditionError(f"Power sums are indexed from 1, got {j}")
        if j % 2:
            return ring.zero()
        total = ring.zero()
        for name in self.roots:
            total = total + ring.generator(name) ** j
        return total * 2

    def rank_element(self, ring: GradedRing) -> GradedElement:
        return ring.constant(2 * len(self.roots) + int(self.zero_root))


@dataclass(frozen=True, eq=True)
class ComplexRootAtom(Atom):
    """Complex bundle with explicit roots ``r_j`` and no conjugate partners."""

    label: str
    roots: tuple[str, ...]

    def power_sum(self, ring: GradedRing, j: int) -> GradedElement:
        if j < 1:
            raise PreconditionError(f"Power sums are indexed from 1, got {j}")
        total = ring.zero()
        for name in self.roots:
            total = total + ring.generator(name) ** j
        return total

    def rank_element(self, ring: GradedRing) -> GradedElement:
        return ring.constant(len(self.roots))


@lru_cache(maxsize=256)
def pontryagin_power_sums(ring: GradedRing, suffix: str) -> tuple[GradedElement, ...]:
    """Newton power sums ``pi_k`` of the squared roots, ``k = 1 .. D//4``.

    ``pi_k = sum(x_j^(2k))`` over one root of each ``±x_j`` pair, expressed in
    the elementary symmetric functions ``p_i`` (missing generators count as 0).
    """
    count = ring.max_degree // 4
    elementary = [ring.one()]
    for i in range(1, count + 1):
        name = f"p{i}{suffix}"
        elementary.append(ring.generator(name) if ring.has(name) else ring.zero())
    sums: list[GradedElement] = []
    for k in range(1, count + 1):
        value = elementary[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            value = value + sums[k - i - 1] * elementary[i] * ((-1) ** (i - 1))
        sums.append(value)
    return tuple(sums)


def pontryagin_classes(
    ring: GradedRing, sums: Sequence[GradedElement]
) -> tuple[GradedElement, ...]:
    """Inverse of :func:`pontryagin_power_sums`: ``p_1 .. p_K`` from ``pi_1 .. pi_K``.

    Newton's identities ``k p_k = sum((-1)^(i-1) p_(k-i) pi_i, i = 1 .. k)``.
    """
    elementary = [ring.one()]
    for k in range(1, len(sums) + 1):
        value = ring.zero()
        for i in range(1, k + 1):
            value = value + elementary[k - i] * sums[i - 1] * ((-1) ** (i - 1))
        elementary.append(value * Fraction(1, k))
    return tuple(elementary[1:])


def _rank_value(ring: GradedRing, rank: RankValue) -> GradedElement:
    if isinstance(rank, str):
        if not ring.has(rank):
            raise ContextMismatchError(f"Rank symbol {rank!r} is not a generator of {ring}")
        return ring.generator(rank)
    return ring.constant(rank)


def rank_of(expr: BundleExpr, ring: GradedRing) -> GradedElement:
    """Virtual rank as a degree-0 element (a polynomial in ``m``, ``n``)."""
    match expr:
        case Atom():
            return expr.rank_element(ring)
        case Trivial(rank):
            return _rank_value(ring, rank)
        case Sum(left, right):
            return rank_of(left, ring) + rank_of(right, ring)
        case Difference(left, right):
            return rank_of(left, ring) - rank_of(right, ring)
        case Scale(factor, inner):
            return rank_of(inner, ring) * factor
        case Tensor(left, right):
            return rank_of(left, ring) * rank_of(right, ring)
        case Exterior2(inner):
            r = rank_of(inner, ring)
            return (r * r - r) / 2
        case Symmetric2(inner):
            r = rank_of(inner, ring)
            return (r * r + r) / 2
        case Adams(_, inner):
            return rank_of(inner, ring)
        case Tilde():
            return ring.zero()
    raise TypeError(f"Not a bundle expression: {expr!r}")


# ---------------------------------------------------------------------------
# Bundle sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BundleSet:
    """The four atoms the expansions are written in.

    Attributes:
        tangent: Tangent bundle of the base (rank 10).
        first: First gauge bundle ``F1`` (rank ``m``).
        second: Second gauge bundle ``F2`` (rank ``n``).
        plane: Oriented rank-2 bundle ``xi``.
    """

    tangent: Atom
    first: Atom
    second: Atom
    plane: Atom

    def atoms(self) -> dict[str, BundleExpr]:
        return {atom.label: atom for atom in (self.tangent, self.first, self.second, self.plane)}

    def rank_terms(self) -> tuple[BundleExpr, BundleExpr]:
        """Trivial bundles of the ranks of ``F1`` and ``F2``."""
        return Trivial(_atom_rank(self.first)), Trivial(_atom_rank(self.second))


def _atom_rank(atom: Atom) -> RankValue:
    if isinstance(atom, PontryaginAtom):
        return atom.rank
    if isinstance(atom, RealRootAtom):
        return 2 * len(atom.roots) + int(atom.zero_root)
    if isinstance(atom, ComplexRootAtom):
        return len(atom.roots)
    return 2


def standard_bundles() -> BundleSet:
    """Atoms over the free Pontryagin generators of :func:`standard_ring`."""
    return BundleSet(
        tangent=PontryaginAtom("TZ", "T", TANGENT_RANK),
        first=PontryaginAtom("F1", "F1", "m"),
        second=PontryaginAtom("F2", "F2", "n"),
        plane=EulerAtom("xi", "c"),
    )


def root_bundles(
    tangent: tuple[str, ...],
    first: tuple[str, ...],
    second: tuple[str, ...],
    plane: str = "c",
) -> BundleSet:
    """Atoms over explicit root generators (even ranks ``2 * len(roots)``)."""
    return BundleSet(
        tangent=RealRootAtom("TZ", tangent),
        first=RealRootAtom("F1", first),
        second=RealRootAtom("F2", second),
        plane=EulerAtom("xi", plane),
    )


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_SUM_LEVEL = 1
_PRODUCT_LEVEL = 2
_ATOM_LEVEL = 3


def format_bundle(expr: BundleExpr) -> str:
    """Deterministic text form of ``expr`` in the bundle grammar.

    Example:
        >>> F1 = PontryaginAtom("F1", "F1", "m")
        >>> format_bundle(exterior2(F1) - 2)
        'L2(F1) - 2'
    """
    return _render(expr)[0]


def _wrap(expr: BundleExpr, level: int) -> str:
    text, own = _render(expr)
    return f"({text})" if own < level else text


def _render(expr: BundleExpr) -> tuple[str, int]:
    match expr:
        case Atom():
            return expr.label, _ATOM_LEVEL
        case Trivial(rank):
            return str(rank), _ATOM_LEVEL
        case Sum(left, right):
            return f"{_wrap(left, _SUM_LEVEL)} + {_wrap(right, _PRODUCT_LEVEL)}", _SUM_LEVEL
        case Difference(left, right):
            return f"{_wrap(left, _SUM_LEVEL)} - {_wrap(right, _PRODUCT_LEVEL)}", _SUM_LEVEL
        case Scale(factor, inner):
            return f"{factor}*{_wrap(inner, _ATOM_LEVEL)}", _PRODUCT_LEVEL
        case Tensor(left, right):
            if isinstance(left, Trivial) and isinstance(left.rank, int):
                head = f"({left.rank})"
            else:
                head = _wrap(left, _PRODUCT_LEVEL)
            return f"{head}*{_wrap(right, _ATOM_LEVEL)}", _PRODUCT_LEVEL
        case Exterior2(inner):
            return f"L2({format_bundle(inner)})", _ATOM_LEVEL
        case Symmetric2(inner):
            return f"S2({format_bundle(inner)})", _ATOM_LEVEL
        case Adams(k, inner):
            return f"psi{k}({format_bundle(inner)})", _ATOM_LEVEL
        case Tilde(inner):
            return f"tilde({format_bundle(inner)})", _ATOM_LEVEL
    raise TypeError(f"Not a bundle expression: {expr!r}")


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[-+*()]))")
_PSI = re.compile(r"^psi(\d+)$")


@dataclass(frozen=True)
class _IntLiteral:
    value: int


class _Parser:
    def __init__(self, text: str, atoms: Mapping[str, BundleExpr]) -> None:
        self.text = text
        self.atoms = atoms
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[tuple[str, str]]:
        tokens: list[tuple[str, str]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if match is None or match.end() == pos:
                raise ParseError(f"Unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
            kind = match.lastgroup
            tokens.append((kind, match.group(kind)))
            pos = match.end()
        return tokens

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise ParseError(f"Unexpected end of bundle expression {self.text!r}")
        self.pos += 1
        return token

    def expect(self, value: str) -> None:
        token = self.take()
        if token[1] != value:
            raise ParseError(f"Expected {value!r} but found {token[1]!r} in {self.text!r}")

    def parse(self) -> BundleExpr:
        if not self.tokens:
            raise ParseError("Cannot parse an empty bundle expression")
        expr = self.expr()
        if self.peek() is not None:
            raise ParseError(f"Trailing input {self.peek()[1]!r} in {self.text!r}")
        return expr

    def expr(self) -> BundleExpr:
        left = self.term()
        while (token := self.peek()) in (("punct", "+"), ("punct", "-")):
            self.take()
            right = self.term()
            left = Sum(left, right) if token[1] == "+" else Difference(left, right)
        return left

    def term(self) -> BundleExpr:
        left = self.factor()
        while (token := self.peek()) is not None and token == ("punct", "*"):
            self.take()
            right = _finish(self.factor())
            if isinstance(left, _IntLiteral):
                left = Scale(left.value, right)
            else:
                left = Tensor(left, right)
        return _finish(left)

    def factor(self) -> BundleExpr | _IntLiteral:
        kind, value = self.take()
        if kind == "int":
            return _IntLiteral(int(value))
        if kind == "punct":
            if value == "(":
                inner = self.expr()
                self.expect(")")
                return inner
            if value == "-":
                nxt = self.peek()
                if nxt is not None and nxt[0] == "int":
                    self.take()
                    return _IntLiteral(-int(nxt[1]))
                return Scale(-1, _finish(self.factor()))
            raise ParseError(f"Unexpected {value!r} in {self.text!r}")
        return self.named(value)

    def named(self, name: str) -> BundleExpr:
        nxt = self.peek()
        if nxt == ("punct", "("):
            psi = _PSI.match(name)
            if name in ("L2", "S2", "tilde") or psi:
                self.take()
                inner = self.expr()
                self.expect(")")
                if name == "L2":
                    return Exterior2(inner)
                if name == "S2":
                    return Symmetric2(inner)
                if name == "tilde":
                    return Tilde(inner)
                k = int(psi.group(1))
                if k < 1:
                    raise ParseError(f"Adams index must be positive in {self.text!r}")
                return Adams(k, inner)
        if name in self.atoms:
            return self.atoms[name]
        if name in RANK_SYMBOLS:
            return Trivial(name)
        known = ", ".join(sorted(self.atoms))
        raise ParseError(f"Unknown bundle {name!r} in {self.text!r}; known atoms: {known}")


def _finish(value: BundleExpr | _IntLiteral) -> BundleExpr:
    return Trivial(value.value) if isinstance(value, _IntLiteral) else value


def parse_bundle(text: str, atoms: Mapping[str, BundleExpr] | None = None) -> BundleExpr:
    """Parse bundle grammar text against an atom table.

    Args:
        text: Expression such as ``"L2(F1) + S2(F2) - F1*F2 + TZ - 2"``.
        atoms: Label -> atom mapping; defaults to :func:`standard_bundles`.

    Returns:
        The expression tree.

    Raises:
        ParseError: On malformed input or unknown names.
    """
    table = atoms if atoms is not None else standard_bundles().atoms()
    return _Parser(text, table).parse()
