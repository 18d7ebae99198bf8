from schurlpi.algebra import MultiPoly
from schurlpi.partitions import (
    EVEN_STAT,
    MOD3_STAT,
    PARTS_ONLY,
    StatSpec,
    all_partitions,
    count_theorem_stat,
    enumerate_schur,
    gf_from_enumeration,
    is_schur_partition,
    partition_merge,
    partition_shift,
)
from schurlpi.series import TruncatedSeries


def S(text: str, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_poly(MultiPoly.parse(text), order)


def test_merge():
    assert partition_merge((4, 1), (2,)) == (4, 2, 1)
    assert partition_merge((5, 3), ()) == (5, 3)
    assert partition_merge((1,), (1,)) == (1, 1)


def test_shift():
    assert partition_shift((2,), 6) == (8,)
    assert partition_shift((7, 3), 0) == (7, 3)
    assert partition_shift((4, 1), 6) == (10, 7)


def test_difference_condition():
    assert not is_schur_partition((6, 3))
    assert is_schur_partition((7, 4))
    assert is_schur_partition(())
    assert not is_schur_partition((5, 3))
    assert is_schur_partition((9, 5))


def test_counts_by_weight_up_to_six():
    found = list(enumerate_schur(6))
    counts = [sum(1 for lam in found if sum(lam) == n) for n in range(7)]
    assert counts == [1, 1, 1, 1, 1, 2, 2]
    assert len(found) == 9


def test_smallest_part_filter():
    weight5 = [lam for lam in enumerate_schur(5, {1}) if sum(lam) == 5]
    assert weight5 == [(5,)]
    assert list(enumerate_schur(5, {1, 2, 3})) == [(), (4,), (5,)]


def test_weight_zero():
    assert list(enumerate_schur(0)) == [()]


def test_enumeration_is_exhaustive():
    found = set(enumerate_schur(25))
    naive = {lam for n in range(26) for lam in all_partitions(n) if is_schur_partition(lam)}
    assert found == naive


def test_no_consecutive_multiples_of_three():
    for lam in enumerate_schur(30):
        multiples = sorted(p for p in lam if p % 3 == 0)
        assert all(b - a > 3 for a, b in zip(multiples, multiples[1:]))


def test_even_stat_small():
    assert gf_from_enumeration(2, (), EVEN_STAT) == S("1 + x*q + x*y*q^2", 2)


def test_even_stat_weight_five():
    g = gf_from_enumeration(5, (), EVEN_STAT)
    at5 = {(ex, ey): g.coefficient(5, ex, ey) for (eq, ex, ey), c in g.items() if eq == 5}
    # (5) contributes x, (4, 1) contributes x^2 y
    assert at5 == {(1, 0): 1, (2, 1): 1}


def test_mod3_stat_small():
    assert gf_from_enumeration(3, (), MOD3_STAT) == S("1 + x*q + x*q^2 + x*y*q^3", 3)


def test_stat_at_y_one_matches_parts_only():
    for stat in (EVEN_STAT, MOD3_STAT):
        g = gf_from_enumeration(20, (), stat).specialize({"y": (0, 0, 0)})
        assert g == gf_from_enumeration(20, (), PARTS_ONLY)


def test_stat_json_round_trip():
    for stat in (PARTS_ONLY, EVEN_STAT, MOD3_STAT, StatSpec(False, (1, 4))):
        assert StatSpec.from_json(stat.to_json()) == stat


def test_small_counts():
    assert count_theorem_stat("D", 5) == 2
    assert count_theorem_stat("C", 4, 2) == 1
    assert count_theorem_stat("Dprime", 4, 2) == 1
    assert count_theorem_stat("B", 5, 2) == 1
    assert count_theorem_stat("D", 5, 2) == 1


def test_theorem_counts_agree_on_small_n():
    for n in range(20):
        d = count_theorem_stat("D", n)
        assert count_theorem_stat("A", n) == d
        assert sum(count_theorem_stat("B", n, m) for m in range(n + 1)) == d
        for m in range(2 * n + 1):
            assert count_theorem_stat("C", n, m) == count_theorem_stat("Dprime", n, m)
            assert count_theorem_stat("B", n, m) == count_theorem_stat("G_D", n, m)
