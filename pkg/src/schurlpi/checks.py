"""Named verification checks, shared by the command line and the test suite.

Every check takes the truncation order and the largest coefficient index to
examine, runs exactly, and returns a :class:`CheckResult`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import hyperg, qde
from .agsum import AGSpec, ag_coefficient, ag_evaluate, get_preset, gleissberg_product, trinomial_product
from .algebra import proportional
from .lpi import get_ideal, reduce_classes, solve_vector_equation, vector_residual, verify_equivalence
from .partitions import (
    EVEN_STAT,
    MOD3_STAT,
    PARTS_ONLY,
    StatSpec,
    refined_counts,
    count_theorem_stat,
    gf_from_enumeration,
    is_schur_partition,
)
from .series import EqualityReport, TruncatedSeries, first_nonzero, series_eq


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    discrepancy: dict | None = field(default=None)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.discrepancy is not None:
            out["discrepancy"] = self.discrepancy
        return out


def _from_report(name: str, report: EqualityReport, detail: str) -> CheckResult:
    if report:
        return CheckResult(name, True, detail)
    return CheckResult(name, False, detail, report.to_json())


def _zero(name: str, residual: TruncatedSeries, detail: str) -> CheckResult:
    m = first_nonzero(residual)
    if m is None:
        return CheckResult(name, True, detail)
    return CheckResult(name, False, detail, {"first_nonzero_monomial": list(m), "coefficient": str(residual.coefficient(*m))})


# ---------------------------------------------------------------- multi-sum identities

# preset -> (excluded smallest parts, statistic) of the partition side
ENUMERATION_TARGETS: dict[str, tuple[tuple[int, ...], StatSpec]] = {
    "S21": ((), EVEN_STAT),
    "S22": ((1,), EVEN_STAT),
    "S23": ((1, 2, 3), EVEN_STAT),
    "S31": ((), MOD3_STAT),
    "S32": ((1,), MOD3_STAT),
    "S33": ((1, 2, 3), MOD3_STAT),
    "ABM": ((), PARTS_ONLY),
    "KUR": ((), PARTS_ONLY),
}
PRODUCT_TARGETS: dict[str, Callable[[int], TruncatedSeries]] = {
    "G_ANALYTIC": gleissberg_product,
    "A_ANALYTIC": trinomial_product,
}


def check_multisum(preset: str, order: int, m_max: int = 8) -> CheckResult:
    spec = get_preset(preset)
    if preset in PRODUCT_TARGETS:
        target = PRODUCT_TARGETS[preset](order)
        detail = f"{preset} multi-sum vs infinite product, N={order}"
    else:
        excluded, stats = ENUMERATION_TARGETS[preset]
        target = gf_from_enumeration(order, excluded, stats)
        detail = f"{preset} multi-sum vs enumeration (smallest part not in {set(excluded) or '{}'}), N={order}"
    return _from_report(f"multisum:{preset}", series_eq(ag_evaluate(spec, order), target), detail)


def check_custom_multisum(spec: AGSpec, excluded: tuple[int, ...], stats: StatSpec, order: int) -> CheckResult:
    report = series_eq(ag_evaluate(spec, order), gf_from_enumeration(order, excluded, stats))
    return _from_report("multisum:config", report, f"configured multi-sum vs enumeration, N={order}")


# ---------------------------------------------------------------- linked partition ideal


def check_ideal_membership(order: int, m_max: int = 8) -> CheckResult:
    report = verify_equivalence(get_ideal("schur-mod6"), is_schur_partition, order)
    detail = f"ideal membership vs difference condition, {report.checked} partitions of weight <= {order}"
    if report.equal:
        return CheckResult("ideal:membership", True, detail)
    return CheckResult("ideal:membership", False, detail, {"first_counterexample": list(report.first)})


def _class_targets(order: int) -> list[TruncatedSeries]:
    return [gf_from_enumeration(order, ex, EVEN_STAT) for ex in ((), (1,), (1, 2, 3))]


def check_matrix_equation(order: int, m_max: int = 8) -> CheckResult:
    """The enumerated class generating functions satisfy the reduced matrix equation."""
    spec = get_ideal("schur-mod6")
    red = reduce_classes(spec)
    residual = vector_residual(red.M, spec.modulus, _class_targets(order))
    for r in residual:
        if not r.is_zero():
            return _zero("ideal:matrix-equation", r, f"residual of the matrix equation, N={order}")
    return CheckResult("ideal:matrix-equation", True, f"residual of the matrix equation is zero, N={order}")


def check_fixed_point(order: int, m_max: int = 8) -> CheckResult:
    spec = get_ideal("schur-mod6")
    red = reduce_classes(spec)
    solved = solve_vector_equation(red.M, spec.modulus, order)
    for i, (got, want) in enumerate(zip(solved, _class_targets(order)), 1):
        report = series_eq(got, want)
        if not report:
            return _from_report("ideal:fixed-point", report, f"component {i} of the fixed point vs enumeration")
    return CheckResult("ideal:fixed-point", True, f"fixed point matches the three filtered enumerations, N={order}")


# ---------------------------------------------------------------- q-difference equation and recurrences


def check_derived_qde(order: int, m_max: int = 8) -> CheckResult:
    red = reduce_classes(get_ideal("schur-mod6"))
    derived = qde.derive_qde(red.M, 6)
    if not proportional(derived.coefficients, qde.SCHUR_EVEN_QDE.coefficients):
        return CheckResult("qde:derived", False, "derived equation is not proportional to the printed one")
    return CheckResult("qde:derived", True, "derived equation is proportional to the printed one (exact)")


def check_printed_qde(order: int, m_max: int = 8) -> CheckResult:
    a1 = gf_from_enumeration(order, (), EVEN_STAT)
    return _zero("qde:printed-residual", qde.qde_check(qde.SCHUR_EVEN_QDE, a1), f"printed equation on enumerated A1, N={order}")


def check_recurrence_transcription(order: int, m_max: int = 8) -> CheckResult:
    ok = qde.qde_to_recurrence(qde.SCHUR_EVEN_QDE) == qde.SCHUR_EVEN_RECURRENCE
    return CheckResult("qde:recurrence-form", ok, "coefficient recurrence equals the equation read off at x^(M+5)")


def check_closed_forms(order: int, m_max: int = 8) -> CheckResult:
    seq = qde.recurrence_solve(qde.SCHUR_EVEN_RECURRENCE, [TruncatedSeries.one(order)], 3, order)
    for m in range(1, 4):
        report = series_eq(seq[m], qde.closed_form_coefficient(m, order))
        if not report:
            return _from_report("coefficients:closed-forms", report, f"a({m}) from the recurrence vs closed form")
    return CheckResult("coefficients:closed-forms", True, f"a(1), a(2), a(3) match their closed forms, N={order}")


def _residual_result(name: str, residuals: list[qde.Residual], detail: str) -> CheckResult:
    bad = [r for r in residuals if not r.zero]
    if not bad:
        return CheckResult(name, True, detail)
    return CheckResult(name, False, detail, bad[0].to_json())


def check_multisum_recurrence(order: int, m_max: int = 8) -> CheckResult:
    spec = get_preset("S21")
    top = m_max + qde.MULTISUM_RECURRENCE.top
    ta = [ag_coefficient(spec, m, order) for m in range(top + 1)]
    residuals = qde.recurrence_check(qde.MULTISUM_RECURRENCE, ta, range(m_max + 1), order)
    return _residual_result("recurrence:multisum", residuals, f"multi-sum recurrence on coefficients, M=0..{m_max}, N={order}")


def check_closure(order: int, m_max: int = 8) -> CheckResult:
    """a = ã on M <= m_max, and the difference recurrence annihilates d = a - ã up to m_max + 2."""
    last = m_max + 2
    spec = get_preset("S21")
    a = qde.recurrence_solve(qde.SCHUR_EVEN_RECURRENCE, [TruncatedSeries.one(order)], last, order)
    ta = [ag_coefficient(spec, m, order) for m in range(last + 1)]
    report = qde.closure_check(a, ta, last, order)
    early = [m for m in report.mismatches if m <= m_max]
    detail = f"a(M) = ã(M) for M=0..{m_max}; difference recurrence on M=5..{last}, N={order}"
    if early:
        return CheckResult("closure", False, detail, {"first_mismatch_M": early[0]})
    bad = [r for r in report.residuals if not r.zero]
    if bad:
        return CheckResult("closure", False, detail, bad[0].to_json())
    return CheckResult("closure", report.leading_units, detail)


def _analytic_coefficients(order: int, count: int) -> list[TruncatedSeries]:
    s = ag_evaluate(get_preset("A_ANALYTIC"), order)
    return [s.coefficient_x(m) for m in range(count)]


def check_analytic_recurrence(order: int, m_max: int = 8) -> CheckResult:
    last = m_max + 2
    s = _analytic_coefficients(order, last + qde.ANALYTIC_RECURRENCE.top + 1)
    residuals = qde.recurrence_check(qde.ANALYTIC_RECURRENCE, s, range(last + 1), order)
    return _residual_result("analytic:recurrence", residuals, f"sixth-order recurrence on s(M), M=0..{last}, N={order}")


def check_recurrence_to_qde(order: int, m_max: int = 8) -> CheckResult:
    s = _analytic_coefficients(order, 6)
    derived = qde.recurrence_to_qde(qde.ANALYTIC_RECURRENCE, s, order)
    ok = derived == qde.ANALYTIC_QDE
    return CheckResult("analytic:recurrence-to-qde", ok, "summed recurrence equals the printed step-2 equation")


def check_product_qde(order: int, m_max: int = 8) -> CheckResult:
    return CheckResult("analytic:product-qde", qde.verify_product_qde(), "trinomial product satisfies the step-2 equation (exact)")


def check_unique_solution(order: int, m_max: int = 8) -> CheckResult:
    sol = qde.qde_solve(qde.ANALYTIC_QDE, TruncatedSeries.one(order), order)
    for label, target in (("product", trinomial_product(order)), ("multi-sum", ag_evaluate(get_preset("A_ANALYTIC"), order))):
        report = series_eq(sol, target)
        if not report:
            return _from_report("analytic:unique-solution", report, f"solution from constant 1 vs {label}")
    return CheckResult("analytic:unique-solution", True, f"solution from constant 1 equals product and multi-sum, N={order}")


# ---------------------------------------------------------------- counting theorems


def check_even_refinement(order: int, m_max: int = 8) -> CheckResult:
    for n in range(order + 1):
        c, d = refined_counts("C", n), refined_counts("Dprime", n)
        if c != d:
            m = min(k for k in set(c) | set(d) if c[k] != d[k])
            return CheckResult("counts:C=D'", False, "", {"m": m, "n": n, "C": c[m], "D'": d[m]})
    return CheckResult("counts:C=D'", True, f"C(m,n) = D'(m,n) for n <= {order}")


def check_schur_counts(order: int, m_max: int = 8) -> CheckResult:
    for n in range(order + 1):
        a, d = count_theorem_stat("A", n), count_theorem_stat("D", n)
        c = sum(refined_counts("C", n).values())
        if not a == c == d:
            return CheckResult("counts:A=D", False, "", {"n": n, "A": a, "sum_C": c, "D": d})
    return CheckResult("counts:A=D", True, f"A(n) = sum_m C(m,n) = D(n) for n <= {order}")


def check_gleissberg_counts(order: int, m_max: int = 8) -> CheckResult:
    for n in range(order + 1):
        b, d = refined_counts("B", n), refined_counts("D", n)
        if b != d:
            m = min(k for k in set(b) | set(d) if b[k] != d[k])
            return CheckResult("counts:B=D", False, "", {"m": m, "n": n, "B": b[m], "D": d[m]})
    return CheckResult("counts:B=D", True, f"B(m,n) = D(m,n) for n <= {order}")


# ---------------------------------------------------------------- q-hypergeometric route


def check_splitting(order: int, m_max: int = 8) -> CheckResult:
    return CheckResult("hypergeometric:splitting", hyperg.splitting_identity_check(), "nine split terms sum to 1 (exact)")


def check_nine_terms(order: int, m_max: int = 8) -> CheckResult:
    for j in range(1, 10):
        report = hyperg.nine_term_check(j, order)
        if not report:
            return _from_report("hypergeometric:nine-terms", report, f"split term {j}")
    return CheckResult("hypergeometric:nine-terms", True, f"all nine weighted sums match their closed forms, N={order}")


def check_shift_lemma(order: int, m_max: int = 8) -> CheckResult:
    for k in itertools.product(range(3), repeat=3):
        report = hyperg.shift_lemma_check(hyperg.BASE_BETA, k, order)
        if not report:
            return _from_report("hypergeometric:shift", report, f"index shift k={k}")
    return CheckResult("hypergeometric:shift", True, f"index shift holds for k in {{0,1,2}}^3, N={order}")


def check_functional_equation(order: int, m_max: int = 8) -> CheckResult:
    report = hyperg.functional_equation_check(order)
    for label in ("identity", "iteration", "shift"):
        part = getattr(report, label)
        if not part:
            return _from_report("hypergeometric:functional-equation", part, f"functional equation ({label})")
    return CheckResult("hypergeometric:functional-equation", True, f"S(x) = (1+xq+x^2q^2) S(xq^2) and its iteration, N={order}")


# ---------------------------------------------------------------- registry

Check = Callable[[int, int], CheckResult]


def _preset_check(name: str) -> Check:
    return lambda order, m_max=8: check_multisum(name, order, m_max)


PRESET_CHECKS: dict[str, Check] = {
    name: _preset_check(name) for name in ("S21", "S22", "S23", "S31", "S32", "S33", "G_ANALYTIC", "ABM", "KUR", "A_ANALYTIC")
}

SUITES: dict[str, list[Check]] = {
    "multisums": list(PRESET_CHECKS.values()),
    "ideal": [check_ideal_membership, check_matrix_equation, check_fixed_point],
    "qde": [check_derived_qde, check_printed_qde, check_recurrence_transcription],
    "coefficients": [check_closed_forms],
    "recurrence": [check_multisum_recurrence],
    "closure": [check_closure],
    "counts": [check_even_refinement, check_schur_counts, check_gleissberg_counts],
    "hypergeometric": [check_splitting, check_nine_terms, check_shift_lemma, check_functional_equation],
    "analytic": [check_analytic_recurrence, check_recurrence_to_qde, check_product_qde, check_unique_solution],
}
SUITES["all"] = [c for name, checks in SUITES.items() for c in checks]

TARGET_NAMES = tuple(PRESET_CHECKS) + tuple(SUITES)


def run_target(name: str, order: int, m_max: int = 8) -> list[CheckResult]:
    if name in PRESET_CHECKS:
        return [PRESET_CHECKS[name](order, m_max)]
    return [check(order, m_max) for check in SUITES[name]]
