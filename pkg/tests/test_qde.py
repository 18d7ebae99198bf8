import pytest

from schurlpi.agsum import ag_coefficient, ag_evaluate, get_preset, trinomial_product
from schurlpi.algebra import MultiPoly, PolyMatrix
from schurlpi.errors import BoundaryError, InsufficientInitialValues, NonUnit
from schurlpi.lpi import get_ideal, reduce_classes
from schurlpi.partitions import EVEN_STAT, MOD3_STAT, gf_from_enumeration
from schurlpi.qde import (
    ANALYTIC_QDE,
    ANALYTIC_RECURRENCE,
    DIFFERENCE_RECURRENCE,
    MULTISUM_RECURRENCE,
    SCHUR_EVEN_QDE,
    SCHUR_EVEN_RECURRENCE,
    CoefficientRecurrence,
    QDifferenceEquation,
    RecTerm,
    closed_form_coefficient,
    closure_check,
    derive_qde,
    parse_carrier,
    qde_check,
    qde_solve,
    qde_to_recurrence,
    recurrence_check,
    recurrence_solve,
    recurrence_to_qde,
    series_from_coefficients,
    verify_product_qde,
)
from schurlpi.series import TruncatedSeries

P = MultiPoly.parse
ONE_POLY = MultiPoly.constant(1)


def one(n):
    return TruncatedSeries.one(n)


def test_carrier_parser():
    got = parse_carrier("q^(12*(M+1))*(y - q^(6*M+2))")
    assert got == {12: P("y*q^12"), 18: P("-q^14")}
    with pytest.raises(ValueError):
        parse_carrier("q^(M*M)")
    with pytest.raises(ValueError):
        parse_carrier("y^M")


def test_degenerate_one_by_one():
    m = PolyMatrix.from_rows([["1 + x*q"]])
    eq = derive_qde(m, 3)
    assert eq.coefficients == (ONE_POLY, P("-1 - x*q"))


def test_mod3_derivation_annihilates_enumeration():
    eq = derive_qde(reduce_classes(get_ideal("schur-mod3")).M, 3)
    assert qde_check(eq, gf_from_enumeration(40, (), MOD3_STAT)).is_zero()


def test_printed_equation_on_enumeration():
    assert qde_check(SCHUR_EVEN_QDE, gf_from_enumeration(40, (), EVEN_STAT)).is_zero()


def test_any_equation_on_zero():
    assert qde_check(ANALYTIC_QDE, TruncatedSeries.zero(20)).is_zero()


def test_equation_needs_two_terms():
    with pytest.raises(ValueError):
        QDifferenceEquation(1, (ONE_POLY,))


def test_solving_flag():
    assert SCHUR_EVEN_QDE.solving
    assert not QDifferenceEquation(1, (P("x"), P("q"))).solving


def test_recurrence_read_off_matches_printed():
    assert qde_to_recurrence(SCHUR_EVEN_QDE) == SCHUR_EVEN_RECURRENCE


def test_trivial_equation_to_recurrence():
    rec = qde_to_recurrence(QDifferenceEquation(1, (ONE_POLY, -ONE_POLY)))
    assert rec.term_map() == {(0, 0): ONE_POLY, (0, 1): -ONE_POLY}


def test_analytic_equation_recurrence_annihilates_coefficients():
    n = 40
    rec = qde_to_recurrence(ANALYTIC_QDE)
    s = ag_evaluate(get_preset("A_ANALYTIC"), n)
    seq = [s.coefficient_x(m) for m in range(20)]
    assert all(r.zero for r in recurrence_check(rec, seq, range(rec.start, 12), n))


def test_closed_forms_from_recurrence():
    n = 30
    seq = recurrence_solve(SCHUR_EVEN_RECURRENCE, [one(n)], 3, n)
    assert seq[1].restrict(7) == TruncatedSeries.from_poly(P("q + y*q^2 + q^3 + y*q^4 + q^5 + y*q^6 + q^7"), 7)
    for m in range(4):
        assert seq[m] == closed_form_coefficient(m, n)


def test_trivial_recurrence_gives_ones():
    rec = CoefficientRecurrence.from_strings(1, {0: "-1", 1: "1"})
    assert recurrence_solve(rec, [one(5)], 6, 5) == [one(5)] * 7


def test_recurrence_solve_needs_a_unit():
    rec = CoefficientRecurrence.from_strings(1, {0: "1", 1: "2"})
    with pytest.raises(NonUnit):
        recurrence_solve(rec, [one(5)], 3, 5)


def test_recurrence_solve_needs_enough_initial_values():
    with pytest.raises(InsufficientInitialValues):
        recurrence_solve(ANALYTIC_RECURRENCE, [one(10)], 8, 10)


def test_zero_sequence_has_zero_residual():
    zeros = [TruncatedSeries.zero(20)] * 12
    assert all(r.zero for r in recurrence_check(MULTISUM_RECURRENCE, zeros, range(8), 20))


def test_residual_report_json():
    n = 10
    seq = [one(n)] * 8
    bad = recurrence_check(SCHUR_EVEN_RECURRENCE, seq, [0], n)[0]
    assert not bad.zero
    assert bad.to_json()["M"] == 0 and bad.to_json()["first_nonzero_monomial"] is not None


def test_multisum_recurrence_residuals():
    n = 60
    ta = [ag_coefficient(get_preset("S21"), m, n) for m in range(13)]
    assert all(r.zero for r in recurrence_check(MULTISUM_RECURRENCE, ta, range(9), n))


def test_multisum_recurrence_typo_is_caught():
    n = 40
    ta = [ag_coefficient(get_preset("S21"), m, n) for m in range(10)]
    tampered = CoefficientRecurrence(
        6, MULTISUM_RECURRENCE.terms + (RecTerm(0, 0, P("q")),), 0
    )
    assert not all(r.zero for r in recurrence_check(tampered, ta, range(5), n))


def test_analytic_recurrence_residuals():
    n = 60
    s = ag_evaluate(get_preset("A_ANALYTIC"), n)
    seq = [s.coefficient_x(m) for m in range(17)]
    assert all(r.zero for r in recurrence_check(ANALYTIC_RECURRENCE, seq, range(11), n))


def test_summed_recurrence_gives_printed_equation():
    n = 40
    s = ag_evaluate(get_preset("A_ANALYTIC"), n)
    assert recurrence_to_qde(ANALYTIC_RECURRENCE, [s.coefficient_x(m) for m in range(6)], n) == ANALYTIC_QDE


def test_summed_trivial_recurrence():
    rec = CoefficientRecurrence.from_strings(1, {0: "1 - q^M"})
    eq = recurrence_to_qde(rec, [], 5)
    assert eq.coefficients == (ONE_POLY, -ONE_POLY)


def test_summed_coefficient_recurrence_matches_up_to_sign():
    n = 40
    a = recurrence_solve(SCHUR_EVEN_RECURRENCE, [one(n)], 4, n)
    eq = recurrence_to_qde(SCHUR_EVEN_RECURRENCE, a, n)
    assert eq.equal_up_to_sign(SCHUR_EVEN_QDE)


def test_wrong_initial_values_leave_a_boundary():
    n = 30
    s = ag_evaluate(get_preset("A_ANALYTIC"), n)
    initial = [s.coefficient_x(m) for m in range(6)]
    initial[3] = initial[3] + one(n)
    with pytest.raises(BoundaryError):
        recurrence_to_qde(ANALYTIC_RECURRENCE, initial, n)


def test_round_trip_equation_recurrence_equation():
    n = 40
    rec = qde_to_recurrence(ANALYTIC_QDE)
    sol = qde_solve(ANALYTIC_QDE, one(n), n)
    initial = [sol.coefficient_x(m) for m in range(rec.top)]
    shifted = CoefficientRecurrence(rec.step, rec.terms, 0)
    assert recurrence_to_qde(shifted, initial, n).equal_up_to_sign(ANALYTIC_QDE)


def test_unique_solution():
    n = 50
    sol = qde_solve(ANALYTIC_QDE, one(n), n)
    assert sol == trinomial_product(n)
    assert sol == ag_evaluate(get_preset("A_ANALYTIC"), n)


def test_perturbed_constant_diverges_at_first_coefficient():
    n = 20
    a = qde_solve(SCHUR_EVEN_QDE, one(n), n)
    b = qde_solve(SCHUR_EVEN_QDE, one(n) * 2, n)
    assert a.coefficient_x(0) != b.coefficient_x(0)


def test_series_from_coefficients():
    n = 15
    p = trinomial_product(n)
    assert series_from_coefficients([p.coefficient_x(m) for m in range(n + 1)], n) == p


def test_product_equation_identity():
    assert verify_product_qde()
    # x^0 and x^1 parts by hand: 1 - 1 and (q + q^3 + q^5) - (q^3 + q^5) - q
    assert P("1 - 1").is_zero()


def test_closure_on_equal_sequences():
    n = 60
    a = recurrence_solve(SCHUR_EVEN_RECURRENCE, [one(n)], 10, n)
    ta = [ag_coefficient(get_preset("S21"), m, n) for m in range(11)]
    report = closure_check(a, ta, 10, n)
    assert report.passed and not report.mismatches
    assert [r.M for r in report.residuals] == list(range(5, 11))


def test_closure_reports_first_mismatch():
    n = 20
    a = [one(n)] * 6
    b = [TruncatedSeries.zero(n)] + [one(n)] * 5
    report = closure_check(a, b, 5, n)
    assert report.mismatches[0] == 0
    assert not report.passed


def test_difference_recurrence_is_valid_from_five():
    assert DIFFERENCE_RECURRENCE.start == 5
    assert min(DIFFERENCE_RECURRENCE.offsets) == -5


def test_json_round_trips():
    for eq in (SCHUR_EVEN_QDE, ANALYTIC_QDE):
        assert QDifferenceEquation.from_json(eq.to_json()) == eq
    for rec in (SCHUR_EVEN_RECURRENCE, MULTISUM_RECURRENCE, DIFFERENCE_RECURRENCE, ANALYTIC_RECURRENCE):
        assert CoefficientRecurrence.from_json(rec.to_json()) == rec
