"""Span-one linked partition ideals: block decomposition, membership, and the matrix equation.

Block indices are 1-based throughout, matching the JSON config format, and
block 1 is always the empty partition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from .algebra import ONE, ZERO, MultiPoly, PolyMatrix, mat_mul
from .errors import DivergentSpec, InvalidIdealSpec, UnknownBlock
from .partitions import EVEN_STAT, MOD3_STAT, Partition, StatSpec, all_partitions, is_schur_partition
from .series import TruncatedSeries


@dataclass(frozen=True)
class IdealSpec:
    blocks: tuple[Partition, ...]
    linking: Mapping[int, frozenset[int]]
    modulus: int
    stats: StatSpec = field(default=StatSpec())

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b, reverse=True)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "linking", {int(k): frozenset(v) for k, v in self.linking.items()})
        self.validate()

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def indices(self) -> range:
        return range(1, self.size + 1)

    def block(self, k: int) -> Partition:
        return self.blocks[k - 1]

    def validate(self) -> None:
        full = frozenset(self.indices)
        if not self.blocks or self.blocks[0] != ():
            raise InvalidIdealSpec("block 1 must be the empty partition")
        if len(set(self.blocks)) != len(self.blocks):
            raise InvalidIdealSpec("blocks must be distinct")
        if self.modulus < 1:
            raise InvalidIdealSpec("modulus must be positive")
        for k, b in enumerate(self.blocks, 1):
            if any(p < 1 or p > self.modulus for p in b):
                raise InvalidIdealSpec(f"block {k} has a part outside 1..{self.modulus}")
        if set(self.linking) != set(full):
            raise InvalidIdealSpec("every block needs a linking set")
        if self.linking[1] != full:
            raise InvalidIdealSpec("the empty block must link to every block")
        for k, targets in self.linking.items():
            if not targets <= full:
                raise InvalidIdealSpec(f"linking set of block {k} names unknown blocks")
            if 1 not in targets:
                raise InvalidIdealSpec(f"linking set of block {k} must contain the empty block")
        if self.stats.y_residue is not None and self.modulus % self.stats.y_residue[1]:
            raise InvalidIdealSpec("the residue statistic must be invariant under shifting by the modulus")

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "blocks": [list(b) for b in self.blocks],
            "linking": {str(k): sorted(v) for k, v in sorted(self.linking.items())},
            "stats": self.stats.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "IdealSpec":
        try:
            return cls(
                blocks=tuple(tuple(b) for b in data["blocks"]),
                linking={int(k): frozenset(int(i) for i in v) for k, v in data["linking"].items()},
                modulus=int(data["modulus"]),
                stats=StatSpec.from_json(data.get("stats")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidIdealSpec):
                raise
            raise InvalidIdealSpec(f"malformed ideal config: {exc}") from exc


def load_ideal(path: str) -> IdealSpec:
    with open(path) as fh:
        return IdealSpec.from_json(json.load(fh))


def _schur_mod6() -> IdealSpec:
    blocks = ((), (1,), (2,), (3,), (4,), (4, 1), (5,), (5, 1), (5, 2), (6,), (6, 1), (6, 2))
    all12 = frozenset(range(1, 13))
    after5 = frozenset({1, 3, 4, 5, 7, 9, 10, 12})
    after6 = frozenset({1, 5, 7, 10})
    linking = {k: all12 for k in range(1, 7)} | {k: after5 for k in (7, 8, 9)} | {k: after6 for k in (10, 11, 12)}
    return IdealSpec(blocks, linking, 6, EVEN_STAT)


def _schur_mod3() -> IdealSpec:
    full = frozenset({1, 2, 3, 4})
    linking = {1: full, 2: full, 3: frozenset({1, 3, 4}), 4: frozenset({1})}
    return IdealSpec(((), (1,), (2,), (3,)), linking, 3, MOD3_STAT)


IDEAL_PRESETS: dict[str, Callable[[], IdealSpec]] = {"schur-mod6": _schur_mod6, "schur-mod3": _schur_mod3}


def get_ideal(name: str) -> IdealSpec:
    try:
        return IDEAL_PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown ideal preset {name!r}; choose from {', '.join(IDEAL_PRESETS)}") from None


# ---------------------------------------------------------------- membership


def decompose(lam: Sequence[int], spec: IdealSpec) -> list[int]:
    """Block indices (lambda_0, ..., lambda_N) of ``lam``, trailing empty blocks dropped."""
    if not lam:
        return []
    t = spec.modulus
    top = (max(lam) - 1) // t
    buckets: list[list[int]] = [[] for _ in range(top + 1)]
    for p in lam:
        buckets[(p - 1) // t].append(p)
    where = {b: k for k, b in enumerate(spec.blocks, 1)}
    out = []
    for i, parts in enumerate(buckets):
        down = tuple(sorted((p - i * t for p in parts), reverse=True))
        if down not in where:
            raise UnknownBlock(f"block {i} of {tuple(lam)} shifts down to {down}, which is not in the ideal")
        out.append(where[down])
    return out


def ideal_member(lam: Sequence[int], spec: IdealSpec) -> bool:
    try:
        idx = decompose(lam, spec)
    except UnknownBlock:
        return False
    return all(b in spec.linking[a] for a, b in zip(idx, idx[1:]))


def enumerate_ideal(spec: IdealSpec, max_weight: int) -> Iterator[Partition]:
    """Members of the ideal with weight at most ``max_weight``, generated block by block."""
    t = spec.modulus

    def walk(level: int, prev: int, parts: tuple[int, ...], weight: int):
        # the smallest possible weight for any nonempty block at this level
        if weight + (level * t + 1) > max_weight:
            return
        for k in sorted(spec.linking[prev]):
            b = spec.block(k)
            extra = sum(b) + level * t * len(b)
            if weight + extra > max_weight:
                continue
            new_parts = parts + tuple(p + level * t for p in b)
            if k != 1:
                yield tuple(sorted(new_parts, reverse=True))
            yield from walk(level + 1, k, new_parts, weight + extra)

    yield ()
    yield from walk(0, 1, (), 0)


@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    checked: int
    counterexamples: tuple[Partition, ...] = ()

    @property
    def first(self) -> Partition | None:
        return self.counterexamples[0] if self.counterexamples else None


def verify_equivalence(spec: IdealSpec, predicate: Callable[[Partition], bool], max_weight: int) -> EquivalenceReport:
    """Compare ``predicate`` with ideal membership on every partition of weight <= ``max_weight``.

    Counterexamples are reported in order of weight, then lexicographically.
    """
    bad = []
    checked = 0
    for n in range(max_weight + 1):
        for lam in sorted(all_partitions(n)):
            checked += 1
            if predicate(lam) != ideal_member(lam, spec):
                bad.append(lam)
    return EquivalenceReport(not bad, checked, tuple(bad))


def smallest_part_filter(excluded: Sequence[int] = ()) -> Callable[[Partition], bool]:
    excluded = frozenset(excluded)
    return lambda lam: is_schur_partition(lam) and (not lam or lam[-1] not in excluded)


# ---------------------------------------------------------------- matrices


def block_weight(spec: IdealSpec, k: int) -> MultiPoly:
    b = spec.block(k)
    ex, ey = spec.stats.exponents(b)
    return MultiPoly.monomial(sum(b), ex, ey)


def weight_matrix(spec: IdealSpec) -> PolyMatrix:
    return PolyMatrix.diag(block_weight(spec, k) for k in spec.indices)


def linking_matrix(spec: IdealSpec) -> PolyMatrix:
    """Row k has a 1 in column j iff block j may follow block k."""
    return PolyMatrix(
        spec.size,
        spec.size,
        [ONE if j in spec.linking[k] else ZERO for k in spec.indices for j in spec.indices],
    )


@dataclass(frozen=True)
class ClassReduction:
    classes: tuple[tuple[int, ...], ...]
    M: PolyMatrix

    def class_of(self, k: int) -> int:
        for c, members in enumerate(self.classes):
            if k in members:
                return c
        raise KeyError(k)


def reduce_classes(spec: IdealSpec) -> ClassReduction:
    """Group blocks by equal rows of the linking matrix and build the class-level matrix.

    ``M[c][c']`` is the total weight of the blocks in class c' that may follow
    a block of class c.  Classes are listed by their smallest member.
    """
    a = linking_matrix(spec)
    groups: dict[tuple, list[int]] = {}
    for k in spec.indices:
        groups.setdefault(tuple(a.row(k - 1)), []).append(k)
    classes = tuple(sorted(tuple(g) for g in groups.values()))
    # grouping by equal rows must agree with grouping by equal linking sets
    assert all(len({spec.linking[k] for k in c}) == 1 for c in classes)
    entries = []
    for c in classes:
        rep = c[0]
        for target in classes:
            entries.append(sum((block_weight(spec, j) for j in target if j in spec.linking[rep]), ZERO))
    n = len(classes)
    return ClassReduction(classes, PolyMatrix(n, n, entries))


def class_lift(spec: IdealSpec, red: ClassReduction) -> PolyMatrix:
    """``E . M . R`` where E maps blocks to their class and R holds one linking row per class.

    Equals ``A . W(x) . A`` exactly.
    """
    k, n = spec.size, len(red.classes)
    e = PolyMatrix(k, n, [ONE if j in red.classes[c] else ZERO for j in spec.indices for c in range(n)])
    a = linking_matrix(spec)
    r = PolyMatrix.from_rows(a.row(c[0] - 1) for c in red.classes)
    return mat_mul(mat_mul(e, red.M), r)


def solve_vector_equation(m: PolyMatrix, modulus: int, order: int) -> list[TruncatedSeries]:
    """Truncated fixed point of ``A(x) = M(x) . A(x q^T)`` with ``A(0)`` the all-ones vector.

    Each pass raises the q-degree of the remaining error by at least T, so
    ``ceil(order/T) + 2`` passes suffice; the last two are required to agree.
    """
    n = m.rows
    if m.cols != n:
        raise DivergentSpec("matrix must be square")
    for i in range(n):
        const_sum = 0
        for j in range(n):
            for (eq, ex, ey), c in m[i, j].items():
                if ex == 0:
                    if eq != 0 or ey != 0:
                        raise DivergentSpec(f"entry ({i},{j}) has an x-free term q^{eq} y^{ey}")
                    const_sum += c
                elif eq == 0:
                    raise DivergentSpec(f"entry ({i},{j}) has an x-term without q")
        if const_sum != 1:
            raise DivergentSpec(f"row {i} does not fix the all-ones vector at x = 0")
    passes = -(-order // modulus) + 2
    entries = [[TruncatedSeries.from_poly(m[i, j], order) for j in range(n)] for i in range(n)]
    vec = [TruncatedSeries.one(order) for _ in range(n)]
    prev = None
    for _ in range(passes):
        shifted = [v.shift_x(modulus) for v in vec]
        prev, vec = vec, [
            sum((entries[i][j] * shifted[j] for j in range(n) if not entries[i][j].is_zero()), TruncatedSeries.zero(order))
            for i in range(n)
        ]
    if prev != vec:
        raise DivergentSpec("fixed-point iteration did not stabilise")
    return vec


def vector_residual(m: PolyMatrix, modulus: int, vec: Sequence[TruncatedSeries]) -> list[TruncatedSeries]:
    order = vec[0].order
    shifted = [v.shift_x(modulus) for v in vec]
    out = []
    for i in range(m.rows):
        rhs = TruncatedSeries.zero(order)
        for j in range(m.cols):
            rhs = rhs + TruncatedSeries.from_poly(m[i, j], order) * shifted[j]
        out.append(vec[i] - rhs)
    return out
