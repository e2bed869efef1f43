"""Core data types for verification runs and their reports."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Any, Literal

from .gradedring import GradedElement
from .qseries import QSeries

TargetId = str
Status = Literal["pass", "fail", "info"]
XiMode = Literal["generic", "trivial"]
EulerMode = Literal["cosh-half", "exp-half", "both"]

XI_MODES: tuple[str, ...] = ("generic", "trivial")
EULER_MODES: tuple[str, ...] = ("cosh-half", "exp-half", "both")

# Published result tag of each target; the short tags double as CLI names.
PUBLISHED_TAGS: dict[str, str] = {
    "factorization": "theorem1",
    "factorization-shifted": "cor1",
    "factorization-single": "cor2",
    "factorization-so32": "cor3",
    "green-schwarz": "gs",
    "schwarz-witten": "sw",
    "alvarez-gaume-witten": "agw",
    "quadratic-bridge": "remark",
    "coeff-eqs-printed-sign": "coeff-eqs",
}


def published_tag(check_id: str) -> str:
    """Tag of the published result a check id refers to.

    Example:
        >>> published_tag("factorization[cosh-half]")
        'theorem1'
    """
    base = check_id.split("[", 1)[0]
    return PUBLISHED_TAGS.get(base, base)


@dataclass(frozen=True)
class VerificationConfig:
    """Describe one point of the verification matrix.

    Attributes:
        ranks: ``None`` for symbolic ranks ``m``, ``n``; otherwise the concrete
            pair ``(m, n)``. Concrete ranks are substituted into residuals.
        xi_mode: ``generic`` keeps the Euler class ``c`` free; ``trivial``
            substitutes ``c -> 0``.
        euler_mode: ``cosh-half`` or ``exp-half`` reads the Euler factor
            uniformly; ``both`` runs each reading.
        max_degree: Truncation degree ``D`` of the graded ring.
        q_order: Truncation order of q-series, in half-units.

    Example:
        >>> VerificationConfig(ranks=(32, 0), xi_mode="trivial").ranks_label
        'm=32,n=0'
    """

    ranks: tuple[int, int] | None = None
    xi_mode: XiMode = "generic"
    euler_mode: EulerMode = "both"
    max_degree: int = 12
    q_order: int = 12

    @property
    def symbolic(self) -> bool:
        return self.ranks is None

    @property
    def ranks_label(self) -> str:
        if self.ranks is None:
            return "symbolic"
        m, n = self.ranks
        return f"m={m},n={n}"

    def euler_modes(self) -> tuple[str, ...]:
        """Uniform Euler readings to run, in canonical order."""
        if self.euler_mode == "both":
            return ("cosh-half", "exp-half")
        return (self.euler_mode,)

    def with_changes(self, **changes: Any) -> VerificationConfig:
        return replace(self, **changes)

    def describe(self) -> dict[str, Any]:
        return {
            "ranks": self.ranks_label,
            "xi": self.xi_mode,
            "euler_mode": self.euler_mode,
            "max_degree": self.max_degree,
            "q_order": self.q_order,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one exact check.

    Attributes:
        check_id: Target id plus its variant, e.g. ``factorization[cosh-half]``.
        identity: Human-readable description of the checked identity. The
            published tag (``theorem1``, ``gs``, ...) is ``paper_target``.
        status: ``pass`` iff the residual is exactly zero; ``info`` for
            findings that are recorded rather than asserted.
        residual_terms: Number of nonzero monomials left in the residual.
        residual_sample: Up to five printed residual monomials.
        euler_mode: Euler reading used, or ``None`` when irrelevant.
        ranks: ``symbolic`` or ``m=INT,n=INT``.
        xi_mode: ``generic`` or ``trivial``.
        q_order: Truncation order of q-series used by the check.
        max_degree: Truncation degree of the ring.
        elapsed_ms: Wall time of the check.
        detail: Optional free-text note (used by info findings).

    Example:
        >>> VerificationReport("agw", "L vs Â", "pass", 0).passed
        True
    """

    check_id: str
    identity: str
    status: Status
    residual_terms: int
    residual_sample: tuple[str, ...] = ()
    euler_mode: str | None = None
    ranks: str = "symbolic"
    xi_mode: str = "generic"
    q_order: int = 12
    max_degree: int = 12
    elapsed_ms: float = 0.0
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    @property
    def paper_target(self) -> str:
        return published_tag(self.check_id)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["paper_target"] = self.paper_target
        data["residual_sample"] = list(self.residual_sample)
        data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


@dataclass(frozen=True)
class ModularDecomposition:
    """Coordinates of a weight-6 series in a two-element modular basis.

    Attributes:
        cube_coefficient: Coefficient ``h0`` of the cubic basis element.
        mixed_coefficient: Coefficient ``h1`` of the mixed basis element.
        residual: ``series - h0*b1 - h1*b2``; zero iff the series lies in the span.
        basis_name: ``Gamma^0(2)`` or ``Gamma_0(2)``.
    """

    cube_coefficient: GradedElement | Any
    mixed_coefficient: GradedElement | Any
    residual: QSeries
    basis_name: str

    @property
    def h0(self) -> GradedElement | Any:
        return self.cube_coefficient

    @property
    def h1(self) -> GradedElement | Any:
        return self.mixed_coefficient

    @property
    def exact(self) -> bool:
        return self.residual.is_zero()


@dataclass(frozen=True)
class IdentityCheck:
    """Residual of a coefficient-wise series identity.

    Attributes:
        name: Identity name (``delta1``, ``epsilon1``, ...).
        residual_terms: Number of nonzero residual coefficients.
        residual: The residual series itself.
    """

    name: str
    residual_terms: int
    residual: QSeries = field(compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return self.residual_terms == 0


@dataclass(frozen=True)
class NumericCheck:
    """Residual of one transformation law at one sample point.

    Attributes:
        law: Law identifier, e.g. ``theta-S`` or ``e2-fixed-point``.
        tau: Sample point in the upper half plane.
        v: Elliptic variable used by theta laws.
        residual: Absolute difference of the two sides.
        tolerance: Pass threshold.
        terms: Number of product/sum terms used.
    """

    law: str
    tau: complex
    v: complex
    residual: float
    tolerance: float
    terms: int

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def to_dict(self) -> dict[str, Any]:
        return {
            "law": self.law,
            "tau": [self.tau.real, self.tau.imag],
            "v": [self.v.real, self.v.imag],
            "residual": self.residual,
            "tolerance": self.tolerance,
            "terms": self.terms,
            "status": "pass" if self.passed else "fail",
        }
