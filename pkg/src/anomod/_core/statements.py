"""The verified identities, written down as data.

Each :class:`IdentityStatement` lists the degree-12 left-hand terms
``coefficient * {genus * E * ch(bundle)}^(12)`` and one of three right-hand
sides:

- ``factorized``: ``x * {-f(x) Â E ch(correction) + e^(x/24) Â E}^(8)`` with
  ``x = p1T - p1F1 + p1F2`` and ``f(x) = (e^(x/24) - 1)/x``
- ``explicit``: ``factor * quadratic``, two polynomials in the Pontryagin
  generators
- ``vanishing``: zero

``bridge`` statements compare the explicit quadratic directly with the
degree-8 form inside the factorized right-hand side.

Bundle and polynomial texts are parsed with the grammars of
:mod:`~anomod._core.bundles` and :mod:`~anomod._core.gradedring`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

StatementKind = Literal["factorized", "explicit", "vanishing", "bridge"]
Hypothesis = Literal["shifted", "single", "so32"]


@dataclass(frozen=True)
class StatementTerm:
    """One left-hand term ``coefficient * {genus * E * ch(bundle)}^(12)``.

    Attributes:
        coefficient: Integer in front of the term.
        bundle: Bundle expression text.
        genus: ``ahat`` or ``lgenus``.

    Example:
        >>> StatementTerm(-8, "TZ")
        StatementTerm(coefficient=-8, bundle='TZ', genus='ahat')
    """

    coefficient: int
    bundle: str
    genus: str = "ahat"


@dataclass(frozen=True)
class IdentityStatement:
    """A verification target in data form.

    Attributes:
        target: Target id.
        description: Human-readable identity, echoed in reports.
        kind: Shape of the right-hand side.
        terms: Left-hand terms (empty for ``bridge``).
        correction: Bundle text of the correction bundle (factorized, bridge).
        explicit_factor: Linear polynomial text (explicit).
        explicit_quadratic: Degree-8 polynomial text (explicit, bridge).
        hypothesis: Rank hypothesis applied as a substitution, if any.
        requires_trivial_xi: Whether the identity is stated for ``c = 0``.
    """

    target: str
    description: str
    kind: StatementKind
    terms: tuple[StatementTerm, ...] = ()
    correction: str | None = None
    explicit_factor: str | None = None
    explicit_quadratic: str | None = None
    hypothesis: Hypothesis | None = None
    requires_trivial_xi: bool = False


XT = "tilde(xi)"
XT2 = f"{XT}*{XT}"

_GENERAL_BASE = (
    StatementTerm(1, "L2(F1)"),
    StatementTerm(1, "S2(F2)"),
    StatementTerm(-1, "F1*F2"),
    StatementTerm(1, "TZ"),
    StatementTerm(1, "L2(m - n - 31) - 2"),
    StatementTerm(-1, "(m - n - 32)*(F1 - F2)"),
)
_SHIFTED_BASE = (
    StatementTerm(1, "L2(F1)"),
    StatementTerm(1, "S2(F2)"),
    StatementTerm(-1, "F1*F2"),
    StatementTerm(1, "TZ"),
    StatementTerm(-2, "1"),
)
_SINGLE_BASE = (
    StatementTerm(1, "L2(F1)"),
    StatementTerm(1, "TZ"),
    StatementTerm(1, "L2(m - 31) - 2"),
    StatementTerm(-1, "(m - 32)*F1"),
)
_SO32_BASE = (
    StatementTerm(1, "L2(F1)"),
    StatementTerm(1, "TZ"),
    StatementTerm(-2, "1"),
)

GENERAL_CORRECTION = (
    "L2(F1) + S2(F2) - F1*F2 + TZ + L2(m - n - 31) - 2 - (m - n - 32)*(F1 - F2)"
)
SHIFTED_CORRECTION = "L2(F1) + S2(F2) - F1*F2 + TZ - 2"
SINGLE_CORRECTION = "L2(F1) + TZ + L2(m - 31) - 2 - (m - 32)*F1"
SO32_CORRECTION = "L2(F1) + TZ - 2"

GS_FACTOR = "p1T - p1F1"
GS_QUADRATIC = (
    "-1/64*p1T^2 + 1/48*p2T + 1/48*p1T*p1F1 - 1/12*p1F1^2 + 1/6*p2F1"
)
SW_FACTOR = "p1T - p1F1 + p1F2"
SW_QUADRATIC = (
    "-1/64*p1T^2 + 1/48*p2T + 1/48*p1T*p1F1 - 1/12*p1F1^2 + 1/6*p2F1"
    " - 1/48*p1T*p1F2 + 1/12*p1F2^2 - 1/6*p2F2"
)


def _factorization(
    target: str,
    description: str,
    base: tuple[StatementTerm, ...],
    correction: str,
    xi_terms: tuple[StatementTerm, ...],
    xi_correction: str,
    hypothesis: Hypothesis | None,
) -> tuple[IdentityStatement, IdentityStatement]:
    generic = IdentityStatement(
        target=target,
        description=description,
        kind="factorized",
        terms=base + xi_terms,
        correction=f"{correction} + {xi_correction}",
        hypothesis=hypothesis,
    )
    trivial = IdentityStatement(
        target=target,
        description=f"{description} (trivial plane bundle)",
        kind="factorized",
        terms=base,
        correction=correction,
        hypothesis=hypothesis,
    )
    return generic, trivial


_FACTORIZATIONS: dict[str, tuple[IdentityStatement, IdentityStatement]] = {
    "factorization": _factorization(
        "factorization",
        "degree-12 combination of Â E ch(...) terms equals x times a degree-8 form",
        _GENERAL_BASE,
        GENERAL_CORRECTION,
        (StatementTerm(5, XT2), StatementTerm(3, f"(m - n - 31 - F1 + F2)*{XT}")),
        f"5*({XT2}) + 3*((m - n - 31 - F1 + F2)*{XT})",
        None,
    ),
    "factorization-shifted": _factorization(
        "factorization-shifted",
        "factorization with m = n + 32",
        _SHIFTED_BASE,
        SHIFTED_CORRECTION,
        (StatementTerm(5, XT2), StatementTerm(3, f"(1 - F1 + F2)*{XT}")),
        f"5*({XT2}) + 3*((1 - F1 + F2)*{XT})",
        "shifted",
    ),
    "factorization-single": _factorization(
        "factorization-single",
        "factorization with a single gauge bundle (n = 0)",
        _SINGLE_BASE,
        SINGLE_CORRECTION,
        (StatementTerm(5, XT2), StatementTerm(3, f"(m - 31 - F1)*{XT}")),
        f"5*({XT2}) + 3*((m - 31 - F1)*{XT})",
        "single",
    ),
    "factorization-so32": _factorization(
        "factorization-so32",
        "factorization with m = 32, n = 0",
        _SO32_BASE,
        SO32_CORRECTION,
        (StatementTerm(5, XT2), StatementTerm(3, f"(1 - F1)*{XT}")),
        f"5*({XT2}) + 3*((1 - F1)*{XT})",
        "so32",
    ),
}

_FIXED: dict[str, IdentityStatement] = {
    "green-schwarz": IdentityStatement(
        target="green-schwarz",
        description="{Â ch(L2 F + T - 2)}^(12) = (p1T - p1F) * explicit quadratic, m = 32, n = 0",
        kind="explicit",
        terms=_SO32_BASE,
        explicit_factor=GS_FACTOR,
        explicit_quadratic=GS_QUADRATIC,
        hypothesis="so32",
        requires_trivial_xi=True,
    ),
    "schwarz-witten": IdentityStatement(
        target="schwarz-witten",
        description="{Â ch(L2 F1 + S2 F2 - F1 F2 + T - 2)}^(12) = x * explicit quadratic, m = n + 32",
        kind="explicit",
        terms=_SHIFTED_BASE,
        explicit_factor=SW_FACTOR,
        explicit_quadratic=SW_QUADRATIC,
        hypothesis="shifted",
        requires_trivial_xi=True,
    ),
    "alvarez-gaume-witten": IdentityStatement(
        target="alvarez-gaume-witten",
        description="{L}^(12) - 8{Â ch(T)}^(12) + 16{Â}^(12) = 0",
        kind="vanishing",
        terms=(
            StatementTerm(1, "1", genus="lgenus"),
            StatementTerm(-8, "TZ"),
            StatementTerm(16, "1"),
        ),
    ),
    "quadratic-bridge": IdentityStatement(
        target="quadratic-bridge",
        description="explicit quadratic = {-f(x) Â ch(correction) + e^(x/24) Â}^(8), m = n + 32",
        kind="bridge",
        correction=SHIFTED_CORRECTION,
        explicit_quadratic=SW_QUADRATIC,
        hypothesis="shifted",
        requires_trivial_xi=True,
    ),
}

STATEMENT_TARGETS: tuple[str, ...] = tuple(_FACTORIZATIONS) + tuple(_FIXED)
FACTORIZATION_TARGETS: tuple[str, ...] = tuple(_FACTORIZATIONS)


def statement_for(target: str, xi_mode: str) -> IdentityStatement:
    """The statement of ``target`` in the form matching ``xi_mode``.

    Factorization targets have a generic and a trivial-plane-bundle form; the
    remaining statements exist only for a trivial plane bundle.

    Raises:
        KeyError: If ``target`` is not a statement target.
    """
    if target in _FACTORIZATIONS:
        generic, trivial = _FACTORIZATIONS[target]
        return trivial if xi_mode == "trivial" else generic
    return _FIXED[target]
