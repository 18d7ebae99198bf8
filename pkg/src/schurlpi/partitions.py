"""Partitions with Schur's difference condition, their statistics, and brute-force counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .series import TruncatedSeries

Partition = tuple[int, ...]


def make_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted(parts, reverse=True))
    if any(p < 1 for p in parts):
        raise ValueError("parts must be positive")
    return parts


def partition_merge(mu: Sequence[int], nu: Sequence[int]) -> Partition:
    return tuple(sorted((*mu, *nu), reverse=True))


def partition_shift(mu: Sequence[int], m: int) -> Partition:
    if m < 0:
        raise ValueError("shift must be nonnegative")
    return tuple(p + m for p in mu)


def is_schur_partition(lam: Sequence[int]) -> bool:
    """Consecutive parts differ by at least 3, and by more than 3 when the larger is divisible by 3."""
    for big, small in zip(lam, lam[1:]):
        gap = big - small
        if gap < 3 or (gap == 3 and big % 3 == 0):
            return False
    return True


def enumerate_schur(max_weight: int, excluded_smallest: Iterable[int] = ()) -> Iterator[Partition]:
    """Every Schur partition of weight at most ``max_weight`` whose smallest part avoids the excluded set.

    Built from the smallest part upward, so each branch only needs the gap
    rule against the previous (smaller) part.  The empty partition is always
    included.  Output is ordered by weight, then lexicographically.
    """
    excluded = frozenset(excluded_smallest)
    found: list[Partition] = [()]

    def grow(parts: list[int], weight: int):
        last = parts[-1]
        p = last + 3
        while weight + p <= max_weight:
            # a gap of exactly 3 is forbidden when the larger part is a multiple of 3
            if p - last > 3 or p % 3:
                parts.append(p)
                found.append(tuple(reversed(parts)))
                grow(parts, weight + p)
                parts.pop()
            p += 1

    for s in range(1, max_weight + 1):
        if s in excluded:
            continue
        found.append((s,))
        grow([s], s)
    found.sort(key=lambda lam: (sum(lam), lam))
    return iter(found)


@dataclass(frozen=True)
class StatSpec:
    """Which statistics become exponents: x counts parts, y counts parts congruent to ``a`` mod ``M``."""

    count_parts: bool = True
    y_residue: tuple[int, int] | None = None

    def __post_init__(self):
        if self.y_residue is not None:
            a, m = self.y_residue
            if m < 1 or not 0 <= a < m:
                raise ValueError(f"bad residue counter {self.y_residue}")

    def exponents(self, lam: Sequence[int]) -> tuple[int, int]:
        ex = len(lam) if self.count_parts else 0
        if self.y_residue is None:
            return ex, 0
        a, m = self.y_residue
        return ex, sum(1 for p in lam if p % m == a)

    def to_json(self) -> dict:
        out: dict = {"x": "parts" if self.count_parts else None}
        if self.y_residue is not None:
            out["y"] = {"residue": self.y_residue[0], "mod": self.y_residue[1]}
        return out

    @classmethod
    def from_json(cls, data: dict | None) -> "StatSpec":
        data = data or {}
        y = data.get("y")
        return cls(
            count_parts=data.get("x", "parts") == "parts",
            y_residue=None if y is None else (int(y["residue"]), int(y["mod"])),
        )


PARTS_ONLY = StatSpec()
EVEN_STAT = StatSpec(y_residue=(0, 2))
MOD3_STAT = StatSpec(y_residue=(0, 3))


def gf_of(partitions: Iterable[Sequence[int]], order: int, stats: StatSpec) -> TruncatedSeries:
    acc: Counter = Counter()
    for lam in partitions:
        w = sum(lam)
        if w <= order:
            ex, ey = stats.exponents(lam)
            acc[(w, ex, ey)] += 1
    return TruncatedSeries(acc, order)


def gf_from_enumeration(order: int, excluded_smallest: Iterable[int] = (), stats: StatSpec = PARTS_ONLY) -> TruncatedSeries:
    """``sum x^#parts y^stat q^|lambda|`` over Schur partitions with the smallest-part filter."""
    return gf_of(enumerate_schur(order, excluded_smallest), order, stats)


# ---------------------------------------------------------------- counting oracles


def restricted_partitions(n: int, allowed: Sequence[int], max_mult: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` into parts from ``allowed``, each used at most ``max_mult`` times."""
    allowed = sorted(set(allowed), reverse=True)

    def rec(rest: int, idx: int) -> Iterator[list[int]]:
        if rest == 0:
            yield []
            return
        if idx == len(allowed):
            return
        p = allowed[idx]
        top = rest // p
        if max_mult is not None:
            top = min(top, max_mult)
        for k in range(top, -1, -1):
            for tail in rec(rest - k * p, idx + 1):
                yield [p] * k + tail

    for parts in rec(n, 0):
        yield tuple(parts)


def all_partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Every partition of ``n``, unfiltered (naive oracle)."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in all_partitions(n - p, p):
            yield (p, *rest)


def _schur_of_weight(n: int) -> list[Partition]:
    return [lam for lam in enumerate_schur(n) if sum(lam) == n]


def refined_counts(which: str, n: int) -> Counter:
    """Counts of partitions of ``n`` for the given family, bucketed by the refining statistic m."""
    if which == "B":
        family = restricted_partitions(n, [k for k in range(1, n + 1) if k % 3], 1)
        return Counter(len(lam) for lam in family)
    if which == "C":
        family = restricted_partitions(n, list(range(1, n + 1, 2)), 2)
        return Counter(len(lam) for lam in family)
    if which in ("D", "G_D"):
        return Counter(len(lam) + sum(1 for p in lam if p % 3 == 0) for lam in _schur_of_weight(n))
    if which == "Dprime":
        return Counter(len(lam) + sum(1 for p in lam if p % 2 == 0) for lam in _schur_of_weight(n))
    raise ValueError(f"unknown statistic {which!r}")


def count_theorem_stat(which: str, n: int, m: int | None = None) -> int:
    """Brute-force counts behind the classical theorems.

    ``A``: parts congruent to +-1 mod 6.  ``B``: m distinct nonmultiples of 3.
    ``C``: m odd parts, none repeated more than twice.  ``D``: Schur partitions
    (refined by parts + multiples of 3 when ``m`` is given; ``G_D`` is the same
    refined count).  ``Dprime``: Schur partitions with parts + even parts = m.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if which == "A":
        return sum(1 for _ in restricted_partitions(n, [k for k in range(1, n + 1) if k % 6 in (1, 5)]))
    if which == "D" and m is None:
        return len(_schur_of_weight(n))
    if m is None:
        raise ValueError(f"{which} needs m")
    return refined_counts(which, n)[m]


def count_table(which: str, max_n: int) -> dict[tuple[int, int], int]:
    """Nonzero refined counts keyed by ``(m, n)`` for all ``n <= max_n``."""
    return {(m, n): c for n in range(max_n + 1) for m, c in sorted(refined_counts(which, n).items())}
