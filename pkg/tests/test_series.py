import pytest

from schurlpi.agsum import gleissberg_product, trinomial_product
from schurlpi.algebra import MultiPoly
from schurlpi.errors import NonUnit, NonUnitFactor, OrderMismatch
from schurlpi.partitions import restricted_partitions
from schurlpi.series import (
    TruncatedSeries,
    finite_pochhammer,
    inv_pochhammer,
    product_expand,
    series_eq,
)

P = MultiPoly.parse


def S(text: str, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_poly(P(text), order)


def test_product_truncates():
    assert S("1 + x*q", 4) * S("1 + x*q^3", 4) == S("1 + x*q + x*q^3 + x^2*q^4", 4)
    assert S("1 + x*q", 3) * S("1 + x*q^3", 3) == S("1 + x*q + x*q^3", 3)


def test_self_difference_is_zero():
    s = S("1 + x*q + y*q^2", 5)
    assert (s - s).is_zero()


def test_geometric_times_telescoping_factor():
    assert inv_pochhammer(2, 1, 8) * S("1 - q^2", 8) == TruncatedSeries.one(8)


def test_order_mismatch_is_an_error():
    with pytest.raises(OrderMismatch):
        S("1", 3) + S("1", 4)
    with pytest.raises(OrderMismatch):
        series_eq(S("1", 3), S("1", 4))


def test_shift_drops_terms_past_the_order():
    assert S("x + x^2", 12).shift_x(6) == S("x*q^6 + x^2*q^12", 12)
    assert S("x + x^2", 11).shift_x(6) == S("x*q^6", 11)


def test_shift_zero_is_identity():
    s = S("1 + x*q + x^2*y*q^3", 10)
    assert s.shift_x(0) == s


def test_shift_scales_x_coefficients():
    s = trinomial_product(20)
    k = 3
    shifted = s.shift_x(k)
    for m in range(5):
        expected = s.coefficient_x(m).times_monomial(k * m)
        assert shifted.coefficient_x(m) == expected


def test_inv_pochhammer_empty_product():
    assert inv_pochhammer(3, 0, 10) == TruncatedSeries.one(10)


def test_inv_pochhammer_geometric():
    assert inv_pochhammer(2, 1, 6) == S("1 + q^2 + q^4 + q^6", 6)


def test_inv_pochhammer_two_parts_against_brute_force():
    expected = S("1 + q^2 + 2*q^4 + 2*q^6 + 3*q^8", 8)
    assert inv_pochhammer(2, 2, 8) == expected
    for n in range(0, 9):
        assert expected.coefficient(n) == sum(1 for _ in restricted_partitions(n, [2, 4]))


def test_inverse_of_unit():
    u = S("1 - q - x*q^2", 10)
    assert u * u.inverse() == TruncatedSeries.one(10)
    assert (-u) * (-u).inverse() == TruncatedSeries.one(10)


def test_inverse_rejects_non_units():
    with pytest.raises(NonUnit):
        S("2 + q", 5).inverse()
    with pytest.raises(NonUnit):
        S("1 + x", 5).inverse()


def test_trinomial_product_low_coefficients():
    p = trinomial_product(9)
    assert p.coefficient_x(0) == TruncatedSeries.one(9)
    assert p.coefficient_x(1) == S("q + q^3 + q^5 + q^7 + q^9", 9)


def test_gleissberg_q5_coefficient_against_brute_force():
    # distinct parts not divisible by 3 summing to 5: (5) and (4, 1)
    parts = [k for k in range(1, 6) if k % 3]
    counted = {}
    for lam in restricted_partitions(5, parts, 1):
        counted[len(lam)] = counted.get(len(lam), 0) + 1
    assert counted == {1: 1, 2: 1}
    g = gleissberg_product(5)
    assert {m: g.coefficient(5, m) for m in range(4) if g.coefficient(5, m)} == counted


def test_product_of_ones():
    assert product_expand(lambda n: MultiPoly.constant(1), 10, 7) == TruncatedSeries.one(7)


def test_product_rejects_non_unit_factor():
    with pytest.raises(NonUnitFactor):
        product_expand(lambda n: P("1 + x"), 3, 5)


def test_series_eq_reports_first_difference():
    n = 6
    report = series_eq(TruncatedSeries.one(n), S(f"1 + q^{n}", n))
    assert not report
    assert tuple(report.monomial) == (n, 0, 0)
    assert series_eq(S("1 + x*q", 4), S("1 + x*q", 4))


def test_pochhammer_round_trip():
    for a, n in [(1, 3), (2, 4), (6, 2)]:
        assert inv_pochhammer(a, n, 30) * TruncatedSeries.from_poly(finite_pochhammer(a, n), 30) == TruncatedSeries.one(30)


def test_json_round_trip():
    s = trinomial_product(15) * S("1 - 3*y*q^2", 15)
    assert TruncatedSeries.from_json(s.to_json()) == s
