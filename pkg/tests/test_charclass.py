"""Tests for Chern characters, genera and the infinite-product expansions."""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomod._core.bundles import (
    ComplexRootAtom,
    parse_bundle,
    pontryagin_classes,
    pontryagin_power_sums,
    standard_bundles,
    tilde,
)
from anomod._core.charclass import (
    A_HAT,
    COSH_HALF,
    COSH_HALF_MODE,
    EXP_HALF,
    L_GENUS,
    ProductFamily,
    chern_character,
    elementary_images,
    euler_factor,
    genus_form,
    lambda_product_ch,
    power_sums,
    scalar_series_coefficients,
    theta1_expansion,
    theta2_expansion,
)
from anomod._core.errors import ConfigurationError, UnsupportedConfigurationError
from anomod._core.gradedring import (
    adams,
    exp_nilpotent,
    parse_element,
    root_ring,
    standard_ring,
    substitute,
)
from anomod._core.qseries import QSeries

BUNDLES = standard_bundles()
RING = standard_ring(12)


def test_genus_log_coefficients():
    assert A_HAT.log_coefficients(3) == (Fraction(-1, 24), Fraction(1, 2880), Fraction(-1, 181440))
    assert L_GENUS.log_coefficients(3) == (Fraction(1, 3), Fraction(-7, 90), Fraction(62, 2835))
    assert COSH_HALF.log_coefficients(3) == (Fraction(1, 8), Fraction(-1, 192), Fraction(1, 2880))


def test_scalar_series_coefficients():
    assert scalar_series_coefficients("cosh(x/2)", 3) == (1, 0, Fraction(1, 8))


def test_ahat_form_of_tangent_bundle():
    expected = parse_element(
        "1 - 1/24*p1T + 7/5760*p1T^2 - 1/1440*p2T"
        " - 31/967680*p1T^3 + 11/241920*p1T*p2T - 1/60480*p3T",
        RING,
    )

    assert genus_form(BUNDLES.tangent, A_HAT, RING) == expected


def test_l_form_of_tangent_bundle():
    expected = parse_element(
        "1 + 1/3*p1T - 1/45*p1T^2 + 7/45*p2T + 2/945*p1T^3 - 13/945*p1T*p2T + 62/945*p3T",
        RING,
    )

    assert genus_form(BUNDLES.tangent, L_GENUS, RING) == expected


def test_genus_is_multiplicative_over_sums():
    T, F1 = BUNDLES.tangent, BUNDLES.first
    product = genus_form(T, A_HAT, RING) * genus_form(F1, A_HAT, RING)

    assert genus_form(T + F1, A_HAT, RING) == product


def test_chern_character_of_plane_bundle():
    xi = BUNDLES.plane

    assert str(chern_character(xi, RING)) == "2 + c^2 + 1/12*c^4 + 1/360*c^6"
    assert str(chern_character(tilde(xi), standard_ring(6))) == "c^2 + 1/12*c^4 + 1/360*c^6"
    c = RING.generator("c")
    assert power_sums(xi, RING) == (2 * c**2, 2 * c**4, 2 * c**6)


def test_euler_factors():
    c = RING.generator("c")
    cosh = euler_factor(COSH_HALF_MODE, RING)

    assert cosh == 1 + c**2 / 8 + c**4 / 384 + c**6 / 46080
    assert euler_factor(EXP_HALF, RING) - cosh == c / 2 + c**3 / 48 + c**5 / 3840
    with pytest.raises(ConfigurationError):
        euler_factor("sinh-half", RING)


def test_symmetric_product_of_reduced_tangent_bundle():
    ring = standard_ring(4)
    series = lambda_product_ch(tilde(BUNDLES.tangent), ProductFamily.SYMMETRIC_WHOLE, ring, 3)

    assert str(series.coefficient(2)) == "p1T"


def test_exterior_whole_product_of_rank_two_bundle():
    ring = root_ring(("a", "b"), 8)
    V = ComplexRootAtom("V", ("a", "b"))
    series = lambda_product_ch(tilde(V), ProductFamily.EXTERIOR_WHOLE, ring, 3)
    a, b = ring.generator("a"), ring.generator("b")

    assert series.coefficient(1) == 0
    assert series.coefficient(2) == exp_nilpotent(a) + exp_nilpotent(b) - 2


def test_half_power_expansion_reduces_to_tangent_bundle():
    expansion = theta2_expansion(BUNDLES, RING, 3)
    assignment = {"m": 0, "n": 0, "c": 0}
    assignment.update({name: 0 for name in RING.names if name.endswith(("F1", "F2"))})

    assert expansion.coefficient(0) == 1
    reduced = substitute(expansion.coefficient(2), assignment)
    assert reduced == chern_character(tilde(BUNDLES.tangent), RING)


def test_whole_power_expansion_needs_concrete_ranks():
    with pytest.raises(UnsupportedConfigurationError):
        theta1_expansion(BUNDLES, RING, 4, None)


def test_whole_power_expansion_has_whole_powers_only_for_trivial_plane():
    series = theta1_expansion(BUNDLES, RING, 6, (4, 2))
    trivial = series.map_coefficients(lambda v: substitute(v, {"c": 0}))

    assert all(h % 2 == 0 for h in trivial.support())


def _brute_force(roots, ring):
    def ch(values):
        return sum((exp_nilpotent(v) for v in values), ring.zero())

    return {
        "L2": ch([a + b for a, b in combinations(roots, 2)]),
        "S2": ch([a + b for a, b in combinations_with_replacement(roots, 2)]),
        "psi": {k: ch([v * k for v in roots]) for k in range(1, 4)},
    }


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2), st.sampled_from(["+", "*"]))
def test_lambda_operations_match_explicit_roots(rank_e, rank_f, op):
    e_names = tuple(f"e{i}" for i in range(rank_e))
    f_names = tuple(f"f{i}" for i in range(rank_f))
    ring = root_ring(e_names + f_names, 8)
    E, F = ComplexRootAtom("E", e_names), ComplexRootAtom("F", f_names)
    e_roots = [ring.generator(n) for n in e_names]
    f_roots = [ring.generator(n) for n in f_names]
    if op == "+":
        bundle, roots = E + F, e_roots + f_roots
    else:
        bundle, roots = E * F, [a + b for a in e_roots for b in f_roots]
    expected = _brute_force(roots, ring)

    assert chern_character(parse_bundle("L2(X)", {"X": bundle}), ring) == expected["L2"]
    assert chern_character(parse_bundle("S2(X)", {"X": bundle}), ring) == expected["S2"]
    for k, value in expected["psi"].items():
        assert chern_character(parse_bundle(f"psi{k}(X)", {"X": bundle}), ring) == value


_VIRTUAL = [
    "TZ",
    "tilde(TZ)",
    "F1 - F2",
    "L2(F1) + S2(F2) - F1*F2",
    "tilde(xi)*tilde(xi)",
    "psi2(F1) - 3*TZ",
]
_PAIRS = [
    (ProductFamily.SYMMETRIC_WHOLE, ProductFamily.EXTERIOR_MINUS_WHOLE),
    (ProductFamily.SYMMETRIC_HALF, ProductFamily.EXTERIOR_MINUS_HALF),
]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(_VIRTUAL), st.sampled_from(_PAIRS), st.integers(1, 6))
def test_symmetric_times_exterior_is_one(text, pair, order):
    ring = standard_ring(8)
    bundle = parse_bundle(text)
    symmetric, exterior = pair
    product = lambda_product_ch(bundle, symmetric, ring, order) * lambda_product_ch(
        bundle, exterior, ring, order
    )

    assert product == QSeries.one(ring, order)


_EXTERIOR = [
    ProductFamily.EXTERIOR_WHOLE,
    ProductFamily.EXTERIOR_MINUS_WHOLE,
    ProductFamily.EXTERIOR_PLUS_HALF,
    ProductFamily.EXTERIOR_MINUS_HALF,
]


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(_VIRTUAL),
    st.sampled_from(_VIRTUAL),
    st.sampled_from(_EXTERIOR),
    st.integers(1, 6),
)
def test_exterior_product_of_difference(first, second, family, order):
    ring = standard_ring(8)
    difference = parse_bundle(f"({first}) - ({second})")
    product = lambda_product_ch(difference, family, ring, order) * lambda_product_ch(
        parse_bundle(second), family, ring, order
    )

    assert product == lambda_product_ch(parse_bundle(first), family, ring, order)


_TREES = st.recursive(
    st.sampled_from(["TZ", "F1", "F2", "xi", "tilde(xi)", "2"]),
    lambda children: st.one_of(
        st.tuples(children, children).map(lambda p: f"({p[0]}) + ({p[1]})"),
        st.tuples(children, children).map(lambda p: f"({p[0]}) - ({p[1]})"),
        st.tuples(children, children).map(lambda p: f"({p[0]})*({p[1]})"),
        children.map(lambda c: f"L2({c})"),
    ),
    max_leaves=4,
)


@settings(max_examples=100, deadline=None)
@given(_TREES, _TREES)
def test_chern_character_is_a_ring_homomorphism(first, second):
    ring = standard_ring(8)
    a, b = parse_bundle(first), parse_bundle(second)
    ch_a, ch_b = chern_character(a, ring), chern_character(b, ring)

    assert chern_character(a + b, ring) == ch_a + ch_b
    assert chern_character(a - b, ring) == ch_a - ch_b
    assert chern_character(a * b, ring) == ch_a * ch_b
    assert chern_character(parse_bundle(f"psi2({first})"), ring) == adams(ch_a, 2)


def test_pontryagin_classes_from_power_sums():
    sums = pontryagin_power_sums(RING, "F1")

    assert pontryagin_classes(RING, sums) == tuple(
        RING.generator(f"p{i}F1") for i in (1, 2, 3)
    )


def test_pontryagin_classes_of_explicit_roots():
    ring = root_ring(("x1", "x2", "x3", "x4"), 12)
    names = ("x1", "x2", "x3", "x4")
    sums = [
        sum((ring.generator(name) ** (2 * k) for name in names), ring.zero())
        for k in (1, 2, 3)
    ]

    assert pontryagin_classes(ring, sums) == elementary_images(names, ring, 3)
