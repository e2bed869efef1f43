"""Tests for virtual bundle expressions: grammar, printing and ranks."""

import pytest

from anomod._core.bundles import (
    Adams,
    Difference,
    Exterior2,
    Scale,
    Sum,
    Symmetric2,
    Tensor,
    Tilde,
    Trivial,
    exterior2,
    format_bundle,
    parse_bundle,
    rank_of,
    standard_bundles,
    symmetric2,
    tilde,
)
from anomod._core.charclass import theta2_closed_forms
from anomod._core.errors import ParseError, PreconditionError
from anomod._core.gradedring import standard_ring

BUNDLES = standard_bundles()
T, F1, F2, XI = BUNDLES.tangent, BUNDLES.first, BUNDLES.second, BUNDLES.plane
RING = standard_ring(12)


def test_parse_builds_expected_tree():
    assert parse_bundle("L2(F1) + S2(F2) - F1*F2") == exterior2(F1) + symmetric2(F2) - F1 * F2
    assert parse_bundle("psi3(TZ - 2)") == Adams(3, Difference(T, Trivial(2)))
    assert parse_bundle("3*tilde(xi)") == Scale(3, Tilde(XI))
    assert parse_bundle("(3)*xi") == Tensor(Trivial(3), XI)
    assert parse_bundle("m - n") == Difference(Trivial("m"), Trivial("n"))
    assert parse_bundle("-F1") == Scale(-1, F1)


def test_operator_sugar_matches_constructors():
    assert T + 1 == Sum(T, Trivial(1))
    assert 2 - F1 == Difference(Trivial(2), F1)
    assert 5 * (tilde(XI) * tilde(XI)) == Scale(5, Tensor(Tilde(XI), Tilde(XI)))
    assert exterior2(F1) == Exterior2(F1)
    assert symmetric2(2) == Symmetric2(Trivial(2))


def test_printed_forms():
    assert format_bundle(exterior2(F1) - 2) == "L2(F1) - 2"
    assert format_bundle(Tensor(Trivial(3), XI)) == "(3)*xi"
    assert format_bundle(5 * (tilde(XI) * tilde(XI))) == "5*(tilde(xi)*tilde(xi))"
    assert str(F1 - (F2 - T)) == "F1 - (F2 - TZ)"


def test_closed_forms_reparse_to_equal_trees():
    for form in theta2_closed_forms(BUNDLES):
        assert parse_bundle(format_bundle(form)) == form


def test_rank_of_virtual_bundles():
    m, n = RING.generator("m"), RING.generator("n")

    assert rank_of(parse_bundle("L2(F1) + S2(F2) - F1*F2"), RING) == (
        (m * m - m) / 2 + (n * n + n) / 2 - m * n
    )
    assert rank_of(parse_bundle("TZ - 2"), RING) == 8
    assert rank_of(parse_bundle("tilde(F1)"), RING).is_zero()
    assert rank_of(parse_bundle("psi2(xi)"), RING) == 2


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_bundle("F3")
    with pytest.raises(ParseError):
        parse_bundle("L2(F1")
    with pytest.raises(ParseError):
        parse_bundle("F1 +")
    with pytest.raises(ParseError):
        parse_bundle("F1 % F2")
    with pytest.raises(ParseError):
        parse_bundle("")


def test_adams_needs_positive_index():
    with pytest.raises(PreconditionError):
        Adams(0, F1)
