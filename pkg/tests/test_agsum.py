from fractions import Fraction

import pytest

from schurlpi.agsum import (
    PRESET_NAMES,
    AGSpec,
    ag_coefficient,
    ag_evaluate,
    get_preset,
    index_bounds,
    lattice_sum,
)
from schurlpi.algebra import MultiPoly
from schurlpi.errors import NonIntegralExponent, NonTermination
from schurlpi.partitions import EVEN_STAT, gf_from_enumeration
from schurlpi.qde import closed_form_coefficient
from schurlpi.series import TruncatedSeries


def S(text: str, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_poly(MultiPoly.parse(text), order)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_constant_term_is_one(name):
    s = ag_evaluate(get_preset(name), 0)
    assert s == TruncatedSeries.one(0)


def test_linear_coefficient_low_order():
    s21 = get_preset("S21")
    assert ag_evaluate(s21, 5).coefficient_x(1) == S("q + y*q^2 + q^3 + y*q^4 + q^5", 5)
    assert ag_coefficient(s21, 0, 10) == TruncatedSeries.one(10)
    assert ag_coefficient(s21, 1, 6) == S("q + y*q^2 + q^3 + y*q^4 + q^5 + y*q^6", 6)


def test_quadratic_coefficient_matches_closed_form():
    assert ag_coefficient(get_preset("S21"), 2, 12) == closed_form_coefficient(2, 12)


def test_small_order_identity():
    assert ag_evaluate(get_preset("S21"), 20) == gf_from_enumeration(20, (), EVEN_STAT)


def test_coefficients_reassemble_the_sum():
    n = 25
    spec = get_preset("S23")
    total = TruncatedSeries.zero(n)
    for m in range(n + 1):
        total = total + ag_coefficient(spec, m, n).times_monomial(0, m)
    assert total == ag_evaluate(spec, n)


@pytest.mark.parametrize("name", ["S31", "S32", "S33", "ABM", "KUR", "G_ANALYTIC"])
def test_sign_free_sums_have_nonnegative_coefficients(name):
    s = ag_evaluate(get_preset(name), 30)
    assert all(c > 0 for _, c in s.items())


def test_y_specialisation_gives_analytic_preset():
    n = 30
    s21 = ag_evaluate(get_preset("S21"), n).specialize({"y": (0, 1, 0)})
    assert s21 == ag_evaluate(get_preset("A_ANALYTIC"), n)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_index_bounds_are_tight_enough(name):
    spec = get_preset(name)
    n = 30
    bounds = index_bounds(spec, n)
    for i, b in enumerate(bounds):
        beyond = [0] * spec.r
        beyond[i] = b + 1
        assert spec.exponent(beyond) > n


def test_rational_quadratic_form():
    abm = get_preset("ABM")
    assert abm.Q[0][0] == Fraction(3, 2)
    # (m + 3n)^2 + m(m-1)/2 at m=3, n=1
    assert abm.exponent((3, 1)) == 36 + 3


def test_non_growing_axis_is_rejected():
    flat = AGSpec(((0,),), (0,), (0,), (1,), (0,), (1,))
    with pytest.raises(NonTermination):
        lattice_sum(flat, 5)


def test_negative_cross_term_is_rejected():
    spec = AGSpec(((1, -1), (-1, 1)), (1, 1), (0, 0), (1, 1), (0, 0), (1, 1))
    with pytest.raises(NonTermination):
        lattice_sum(spec, 5)


def test_half_integer_exponent_is_rejected():
    spec = AGSpec(((Fraction(1, 2),),), (Fraction(1),), (0,), (1,), (0,), (1,))
    with pytest.raises(NonIntegralExponent):
        lattice_sum(spec, 5)


def test_json_round_trip():
    for name in PRESET_NAMES:
        spec = get_preset(name)
        assert AGSpec.from_json(spec.to_json()) == spec


def test_unknown_preset():
    with pytest.raises(KeyError):
        get_preset("S99")
