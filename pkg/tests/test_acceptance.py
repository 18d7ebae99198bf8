"""Acceptance gate: thirteen criteria at their stated truncation orders.

Run under pytest or directly with ``python3 tests/test_acceptance.py``; either
way one ``[PASS]``/``[FAIL]`` line is printed per criterion.
"""

import sys
import time

import pytest

from schurlpi import checks
from schurlpi.agsum import ag_evaluate, get_preset, gleissberg_product
from schurlpi.checks import CheckResult
from schurlpi.series import series_eq


def _gleissberg_specialisation(order: int) -> CheckResult:
    s31 = ag_evaluate(get_preset("S31"), order).specialize({"y": (0, 1, 0)})
    report = series_eq(s31, gleissberg_product(order))
    detail = f"S31 at y=x vs (-xq;q^3)(-xq^2;q^3), N={order}"
    return CheckResult("multisum:S31 at y=x", bool(report), detail, None if report else report.to_json())


def c01():
    return [checks.check_multisum("S21", 40)]


def c02():
    return [checks.check_multisum(p, 40) for p in ("S22", "S23")]


def c03():
    return [checks.check_multisum(p, 40) for p in ("S31", "S32", "S33")] + [_gleissberg_specialisation(40)]


def c04():
    return [checks.check_multisum(p, 40) for p in ("ABM", "KUR")]


def c05():
    return [checks.check_ideal_membership(30), checks.check_matrix_equation(40), checks.check_fixed_point(40)]


def c06():
    return [checks.check_derived_qde(40), checks.check_printed_qde(40)]


def c07():
    return [checks.check_closed_forms(30)]


def c08():
    return [checks.check_multisum_recurrence(60, m_max=8)]


def c09():
    return [checks.check_closure(60, m_max=8)]


def c10():
    return [checks.check_multisum("A_ANALYTIC", 50), checks.check_even_refinement(40)]


def c11():
    return [checks.check_schur_counts(40), checks.check_gleissberg_counts(40)]


def c12():
    return [
        checks.check_splitting(0),
        checks.check_nine_terms(30),
        checks.check_shift_lemma(25),
        checks.check_functional_equation(40),
    ]


def c13():
    return [
        checks.check_analytic_recurrence(60, m_max=8),
        checks.check_recurrence_to_qde(60),
        checks.check_product_qde(0),
        checks.check_unique_solution(50),
    ]


CRITERIA = [
    ("01", "even-part refinement of the main multi-sum, N=40", c01),
    ("02", "smallest-part filters {1} and {1,2,3}, N=40", c02),
    ("03", "mod-3 refinements and the specialised product, N=40", c03),
    ("04", "two further Andrews-Gordon type sums, N=40", c04),
    ("05", "linked ideal membership (weight <= 30) and matrix equation, N=40", c05),
    ("06", "derived q-difference equation and its residual, N=40", c06),
    ("07", "closed forms of a(1), a(2), a(3) to q^30", c07),
    ("08", "multi-sum coefficient recurrence, M=0..8, N=60", c08),
    ("09", "closure a = a~ and difference recurrence, N=60", c09),
    ("10", "trinomial product identity N=50 and C = D' for n <= 40", c10),
    ("11", "counting identities A = D, sum C = D, B = D for n <= 40", c11),
    ("12", "nine-term splitting, index shift and functional equation", c12),
    ("13", "step-2 recurrence, summed equation and unique solution", c13),
]


def evaluate(runner) -> tuple[bool, list[CheckResult], float]:
    start = time.perf_counter()
    results = runner()
    return all(results), results, time.perf_counter() - start


def format_line(number: str, title: str, ok: bool, results: list[CheckResult], seconds: float) -> str:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({seconds:.2f}s)"
    for r in results:
        if not r.passed:
            line += f"\n       {r.name}: {r.detail} {r.discrepancy}"
    return line


@pytest.mark.parametrize("number,title,runner", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(number, title, runner, capsys):
    ok, results, seconds = evaluate(runner)
    with capsys.disabled():
        print("\n" + format_line(number, title, ok, results, seconds))
    assert ok, [r.to_json() for r in results if not r.passed]


def main() -> int:
    failures = 0
    for number, title, runner in CRITERIA:
        ok, results, seconds = evaluate(runner)
        failures += not ok
        print(format_line(number, title, ok, results, seconds), flush=True)
    print(f"{len(CRITERIA) - failures}/{len(CRITERIA)} criteria passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
