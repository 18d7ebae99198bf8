import pytest

from schurlpi.algebra import (
    ONE,
    ZERO,
    Monomial,
    MultiPoly,
    PolyMatrix,
    adjugate,
    det,
    left_kernel_3,
    left_kernel_tall,
    mat_mul,
    proportional,
    vec_mat,
)
from schurlpi.errors import DimensionMismatch, NonSingular
from schurlpi.lpi import get_ideal, reduce_classes
from schurlpi.qde import SCHUR_EVEN_QDE, derivation_determinant, derive_qde

P = MultiPoly.parse


def test_difference_of_squares():
    assert P("1 + x*q") * P("1 - x*q") == P("1 - x^2*q^2")


def test_additive_identity():
    p = P("3 + x*y*q^2 - 5*y")
    assert p + ZERO == p
    assert p + 0 == p


def test_binomial_square():
    assert P("1 + y*q") * P("1 + y*q") == P("1 + 2*y*q + y^2*q^2")
    assert P("1 + y*q") ** 2 == P("1 + 2*y*q + y^2*q^2")


def test_zero_terms_are_dropped():
    assert (P("x") - P("x")).terms == {}
    assert MultiPoly({(1, 0, 0): 0}) == ZERO


def test_parse_round_trip_through_str():
    p = P("-(x^2*q^2*(1+q^2+q^4)+1) + 7*x*y^3")
    assert P(str(p)) == p


def test_parse_rejects_unknown_names():
    with pytest.raises(ValueError):
        P("z + 1")


def test_shift_single_term():
    assert P("x").shift_x(6) == P("x*q^6")


def test_shift_trinomial_window():
    assert P("1 + x*q + x^2*q^2").shift_x(2) == P("1 + x*q^3 + x^2*q^6")


def test_shift_zero_is_identity():
    p = P("1 + x*y*q^3 + x^4")
    assert p.shift_x(0) == p


def test_specialize_y_to_x():
    assert P("x*y*q^2").specialize({"y": Monomial(0, 1, 0)}) == P("x^2*q^2")


def test_specialize_y_to_one():
    assert P("1 + y*q").specialize({"y": (0, 0, 0)}) == P("1 + q")


def test_specialize_summand_weight():
    # x^(n1+n2+2n3) y^(n2+n3) at y -> x gives x^(n1+2n2+3n3)
    for n in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 3, 1)]:
        w = MultiPoly.monomial(0, n[0] + n[1] + 2 * n[2], n[1] + n[2])
        assert w.specialize({"y": (0, 1, 0)}) == MultiPoly.monomial(0, n[0] + 2 * n[1] + 3 * n[2])


def test_identity_times_matrix():
    m = reduce_classes(get_ideal("schur-mod6")).M
    assert mat_mul(PolyMatrix.identity(3), m) == m


def test_diagonal_scales_rows():
    d1, d2 = P("x*q"), P("1 + y")
    ones = PolyMatrix.from_rows([[1, 1], [1, 1]])
    assert mat_mul(PolyMatrix.diag([d1, d2]), ones) == PolyMatrix.from_rows([[d1, d1], [d2, d2]])


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul(PolyMatrix.identity(2), PolyMatrix.identity(3))


def test_left_kernel_integer_matrix():
    r = PolyMatrix.from_rows([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    c = left_kernel_3(r)
    assert all(e == ZERO for e in vec_mat(c, r))
    assert proportional(c, (MultiPoly.constant(-1), MultiPoly.constant(-1), ONE))


def test_left_kernel_nonsingular():
    with pytest.raises(NonSingular):
        left_kernel_3(PolyMatrix.identity(3))


def test_left_kernel_tall_annihilates():
    r = PolyMatrix.from_rows([["1 + x", "q"], ["x*q", "y"], ["1", "x + q^2"]])
    c = left_kernel_tall(r)
    assert any(c)
    assert all(e == ZERO for e in vec_mat(c, r))


def test_adjugate_property_fixed():
    r = PolyMatrix.from_rows([["1 + x*q", "y", "0"], ["q^2", "1", "x"], ["x*y", "q", "1 - y"]])
    assert mat_mul(r, adjugate(r)) == PolyMatrix.identity(3).scale(det(r))


def test_preset_stack_is_singular():
    m = reduce_classes(get_ideal("schur-mod6")).M
    assert derivation_determinant(m, 6) == ZERO


def test_preset_derivation_matches_printed_equation():
    m = reduce_classes(get_ideal("schur-mod6")).M
    assert proportional(derive_qde(m, 6).coefficients, SCHUR_EVEN_QDE.coefficients)


def test_proportional_rejects_zero_and_mismatch():
    a = (P("1 + x"), P("q"))
    assert proportional(a, (P("2 + 2*x"), P("2*q")))
    assert not proportional(a, (P("1 + x"), P("2*q")))
    assert not proportional((ZERO, ZERO), (ZERO, ZERO))
