"""Tests for the truncated graded polynomial ring."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomod._core.charclass import scalar_series_coefficients
from anomod._core.errors import ContextMismatchError, ParseError, PreconditionError
from anomod._core.gradedring import (
    Generator,
    GradedElement,
    GradedRing,
    adams,
    apply_univariate_series,
    exp_nilpotent,
    extract_degree,
    homogeneous_parts,
    invert_unit,
    parse_element,
    scalar_value,
    serialize,
    split_terms,
    standard_ring,
    substitute,
)

RING = standard_ring(12)
SMALL = GradedRing((Generator("a", 2), Generator("b", 4), Generator("m", 0)), max_degree=8)

_coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=6)
_exponents = st.tuples(st.integers(0, 4), st.integers(0, 2), st.integers(0, 2))


def _elements(nilpotent=False):
    keys = _exponents.filter(lambda e: e[0] or e[1]) if nilpotent else _exponents
    return st.dictionaries(keys, _coefficients, max_size=6).map(lambda t: GradedElement(SMALL, t))


def _g(name):
    return RING.generator(name)


def test_additive_identity_and_cancellation():
    p1T, p1F1, c, m = _g("p1T"), _g("p1F1"), _g("c"), _g("m")

    assert p1T + 0 == p1T
    assert c**2 / 2 + c**2 / 2 == c**2
    assert (m * p1F1 + (-(m * p1F1))).is_zero()


def test_multiplication_truncates_above_max_degree():
    c, p1T = _g("c"), _g("p1T")

    assert (c * c**6).is_zero()
    assert (1 + p1T) * (1 - p1T) == 1 - p1T**2
    assert (p1T * _g("p2F1") * _g("p1F2")).is_zero()


def test_exp_nilpotent_examples():
    c, p1T = _g("c"), _g("p1T")

    assert exp_nilpotent(RING.zero()) == 1
    assert str(exp_nilpotent(c)) == (
        "1 + c + 1/2*c^2 + 1/6*c^3 + 1/24*c^4 + 1/120*c^5 + 1/720*c^6"
    )
    assert exp_nilpotent(p1T / 24) * exp_nilpotent(-p1T / 24) == 1


def test_exp_nilpotent_rejects_degree_zero_part():
    with pytest.raises(PreconditionError):
        exp_nilpotent(_g("m") + _g("c"))


def test_invert_unit_examples():
    c, p1T, p2T = _g("c"), _g("p1T"), _g("p2T")

    assert invert_unit(RING.one()) == 1
    assert invert_unit(1 + c**2) == 1 - c**2 + c**4 - c**6
    unit = 1 + p1T + p2T
    assert invert_unit(unit) * unit == 1


def test_invert_unit_requires_constant_one():
    with pytest.raises(PreconditionError):
        invert_unit(2 + _g("c"))


def test_apply_univariate_series():
    c, p1T = _g("c"), _g("p1T")
    f = scalar_series_coefficients("(exp(x/24) - 1)/x", 5)

    assert apply_univariate_series(f, RING.zero()) == Fraction(1, 24)
    assert apply_univariate_series([1] * 7, c**2) == invert_unit(1 - c**2)
    exp_coeffs = scalar_series_coefficients("exp(x)", 4)
    assert apply_univariate_series(exp_coeffs, p1T) == exp_nilpotent(p1T)


def test_apply_univariate_series_needs_enough_coefficients():
    with pytest.raises(PreconditionError):
        apply_univariate_series([1, 1], _g("c"))


def test_extract_degree_examples():
    c, m, n, p1T = _g("c"), _g("m"), _g("n"), _g("p1T")

    assert extract_degree(1 + c + c**2, 2) == c
    assert extract_degree(m * p1T + n * c**4, 8) == n * c**4
    with pytest.raises(PreconditionError):
        extract_degree(c, 14)


def test_substitute_examples():
    m, n, c, p1F2 = _g("m"), _g("n"), _g("c"), _g("p1F2")

    ranks = (m - n - 32) * (m - n - 31) / 2 - 2
    assert substitute(ranks, {"m": n + 32}) == -2
    assert substitute(c**3 + p1F2, {"c": 0, "p1F2": 0}).is_zero()


def test_substitute_rejects_inhomogeneous_value():
    with pytest.raises(PreconditionError):
        substitute(_g("p1T"), {"p1T": _g("c") + _g("c") ** 2})


def test_substitute_rejects_unknown_generator():
    with pytest.raises(ContextMismatchError):
        substitute(_g("c"), {"q": 0})


def test_adams_scales_by_degree():
    c = _g("c")

    assert adams(c + c**2 + 3, 2) == 2 * c + 4 * c**2 + 3


def test_context_mismatch_between_truncations():
    with pytest.raises(ContextMismatchError):
        standard_ring(12).generator("c") + standard_ring(16).generator("c")


def test_generator_and_ring_invariants():
    with pytest.raises(PreconditionError):
        Generator("c", 3)
    with pytest.raises(PreconditionError):
        GradedRing((Generator("c", 2), Generator("c", 2)))
    with pytest.raises(PreconditionError):
        GradedRing((Generator("c", 2),), max_degree=7)


def test_serialize_and_parse():
    text = "1 - 1/24*p1T + 7/5760*p1T^2 - 1/1440*p2T"
    element = parse_element(text, RING)

    assert serialize(element) == text
    assert [serialize(t) for t in split_terms(element)] == [
        "1",
        "-1/24*p1T",
        "7/5760*p1T^2",
        "-1/1440*p2T",
    ]
    assert scalar_value(extract_degree(element, 0)) == 1


def test_parse_rejects_unknown_factor():
    with pytest.raises(ParseError):
        parse_element("2*p9T", RING)
    with pytest.raises(ParseError):
        parse_element("   ", RING)


@settings(max_examples=100, deadline=None)
@given(_elements(), _elements(), _elements())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert max((a * b).degrees(), default=0) <= SMALL.max_degree


@settings(max_examples=100, deadline=None)
@given(_elements(nilpotent=True), _elements(nilpotent=True))
def test_exp_is_a_homomorphism(a, b):
    assert exp_nilpotent(a + b) == exp_nilpotent(a) * exp_nilpotent(b)


@settings(max_examples=100, deadline=None)
@given(_elements(nilpotent=True))
def test_invert_unit_is_two_sided(nu):
    unit = 1 + nu
    inverse = invert_unit(unit)

    assert unit * inverse == 1
    assert inverse * unit == 1


@settings(max_examples=100, deadline=None)
@given(_elements(), _elements())
def test_substitute_is_a_homomorphism(a, b):
    x, y, m = SMALL.generator("a"), SMALL.generator("b"), SMALL.generator("m")
    assignment = {"a": x * 3, "b": x**2 * m + y, "m": m + 1}

    assert substitute(a * b, assignment) == substitute(a, assignment) * substitute(b, assignment)
    assert substitute(a + b, assignment) == substitute(a, assignment) + substitute(b, assignment)


@settings(max_examples=100, deadline=None)
@given(_elements(), _elements())
def test_degree_parts_partition_and_linearity(a, b):
    parts = homogeneous_parts(a)

    assert sum(parts.values(), SMALL.zero()) == a
    for d in range(0, SMALL.max_degree + 1, 2):
        assert extract_degree(a + b, d) == extract_degree(a, d) + extract_degree(b, d)


@settings(max_examples=100, deadline=None)
@given(_elements())
def test_parse_inverts_serialize(a):
    assert parse_element(serialize(a), SMALL) == a
