"""Evaluation of Andrews-Gordon type multi-sums and the named identity presets.

A multi-sum is

    sum_{n >= 0} (-1)^{L1.n} x^{wx.n} y^{wy.n} q^{n.Q.n + L2.n} / prod_i (q^{A_i}; q^{A_i})_{n_i}

with Q symmetric and rational.  Truncated at q-order N only finitely many
index vectors contribute; their box is computed from per-axis lower bounds,
which is sound because every preset has nonnegative cross terms.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Mapping, Sequence

from .algebra import MultiPoly
from .errors import NonIntegralExponent, NonTermination
from .series import TruncatedSeries, inv_pochhammer_coeffs, product_expand


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class AGSpec:
    Q: tuple[tuple[Fraction, ...], ...]
    L2: tuple[Fraction, ...]
    L1: tuple[int, ...]
    wx: tuple[int, ...]
    wy: tuple[int, ...]
    bases: tuple[int, ...]

    def __post_init__(self):
        r = self.r
        object.__setattr__(self, "Q", tuple(tuple(_frac(v) for v in row) for row in self.Q))
        object.__setattr__(self, "L2", tuple(_frac(v) for v in self.L2))
        for name in ("L1", "wx", "wy", "bases"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        lengths = {len(self.Q), len(self.L2), len(self.L1), len(self.wx), len(self.wy), len(self.bases)}
        if lengths != {r} or any(len(row) != r for row in self.Q):
            raise ValueError("inconsistent AGSpec dimensions")
        if any(self.Q[i][j] != self.Q[j][i] for i in range(r) for j in range(r)):
            raise ValueError("Q must be symmetric")
        if any(a < 1 for a in self.bases):
            raise ValueError("Pochhammer bases must be positive")

    @property
    def r(self) -> int:
        return len(self.L2)

    @classmethod
    def from_binomial(cls, binom, cross: Mapping[tuple[int, int], int], linear, L1, wx, wy, bases) -> "AGSpec":
        """Build from ``sum b_i C(n_i,2) + sum c_ij n_i n_j + sum l_i n_i`` (0-based index pairs)."""
        r = len(binom)
        Q = [[Fraction(0)] * r for _ in range(r)]
        for i, b in enumerate(binom):
            Q[i][i] = Fraction(b, 2)
        for (i, j), c in cross.items():
            Q[i][j] += Fraction(c, 2)
            Q[j][i] += Fraction(c, 2)
        L2 = [Fraction(l) - Fraction(b, 2) for l, b in zip(linear, binom)]
        return cls(tuple(map(tuple, Q)), tuple(L2), tuple(L1), tuple(wx), tuple(wy), tuple(bases))

    def exponent(self, n: Sequence[int]) -> Fraction:
        r = self.r
        quad = sum(self.Q[i][j] * n[i] * n[j] for i in range(r) for j in range(r))
        return quad + sum(l * k for l, k in zip(self.L2, n))

    def with_linear(self, linear_shift: Sequence) -> "AGSpec":
        return replace(self, L2=tuple(a + _frac(b) for a, b in zip(self.L2, linear_shift)))

    def specialize_y_to_x(self) -> "AGSpec":
        return replace(self, wx=tuple(a + b for a, b in zip(self.wx, self.wy)), wy=(0,) * self.r)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "Q": [[str(v) for v in row] for row in self.Q],
            "L2": [str(v) for v in self.L2],
            "L1": list(self.L1),
            "wx": list(self.wx),
            "wy": list(self.wy),
            "bases": list(self.bases),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "AGSpec":
        spec = cls(
            tuple(tuple(Fraction(str(v)) for v in row) for row in data["Q"]),
            tuple(Fraction(str(v)) for v in data["L2"]),
            tuple(data["L1"]),
            tuple(data["wx"]),
            tuple(data["wy"]),
            tuple(data["bases"]),
        )
        if "r" in data and int(data["r"]) != spec.r:
            raise ValueError("declared r does not match the forms")
        return spec


def load_agspec(path: str) -> AGSpec:
    with open(path) as fh:
        return AGSpec.from_json(json.load(fh))


# ---------------------------------------------------------------- lattice engine


class _IntForms:
    """The exponent form scaled by a common denominator so lattice evaluation stays in ints."""

    def __init__(self, spec: AGSpec):
        fracs = [v for row in spec.Q for v in row] + list(spec.L2)
        self.den = reduce(lcm, (f.denominator for f in fracs), 1)
        self.Q = [[int(v * self.den) for v in row] for row in spec.Q]
        self.L = [int(v * self.den) for v in spec.L2]

    def scaled(self, n: Sequence[int]) -> int:
        r = len(n)
        total = 0
        for i in range(r):
            ni = n[i]
            if ni:
                row = self.Q[i]
                total += ni * (sum(row[j] * n[j] for j in range(r)) + self.L[i])
        return total


def _axis_min(a: Fraction, b: Fraction) -> Fraction:
    """min over n >= 0 of a n^2 + b n (a >= 0, and b > 0 when a == 0)."""
    best, n = Fraction(0), 0
    while True:
        n += 1
        v = a * n * n + b * n
        if v < best:
            best = v
        elif 2 * a * n + a + b > 0:  # forward difference positive: increasing from here on
            return best


def index_bounds(spec: AGSpec, order: int, extra_linear: Sequence = (), extra_const=0) -> list[int]:
    """Per-index upper bounds B_i outside of which the exponent exceeds ``order``.

    ``extra_linear``/``extra_const`` add a linear lower bound for a multiplier
    that is applied term by term (used for the q-hypergeometric checks).
    """
    r = spec.r
    lin = [spec.L2[i] + _frac(extra_linear[i] if extra_linear else 0) for i in range(r)]
    for i in range(r):
        for j in range(r):
            if i != j and spec.Q[i][j] < 0:
                raise NonTermination("negative cross terms are not supported by the bound scan")
        a = spec.Q[i][i]
        if a < 0 or (a == 0 and lin[i] <= 0):
            raise NonTermination(f"exponent does not grow along index {i}")
    mins = [_axis_min(spec.Q[i][i], lin[i]) for i in range(r)]
    bounds = []
    for i in range(r):
        budget = order - _frac(extra_const) - (sum(mins) - mins[i])
        a, b = spec.Q[i][i], lin[i]
        n, last_ok = 0, -1
        while True:
            v = a * n * n + b * n
            if v <= budget:
                last_ok = n
            elif 2 * a * n + a + b > 0:
                break
            n += 1
        # beyond last_ok the axis value alone already exceeds the budget
        nxt = last_ok + 1
        assert a * nxt * nxt + b * nxt > budget
        bounds.append(last_ok)
    return bounds


def _dense_mul(a: list[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, ca in enumerate(a[: n + 1]):
        if ca:
            for j in range(0, n + 1 - i):
                cb = b[j]
                if cb:
                    out[i + j] += ca * cb
    return out


def lattice_sum(
    spec: AGSpec,
    order: int,
    *,
    x_degree: int | None = None,
    multiplier=None,
) -> TruncatedSeries:
    """Sum the multi-sum over all contributing index vectors, truncated at ``order``.

    ``multiplier`` is an optional map ``{(c0, c1, ..., cr): coeff}`` standing
    for ``sum coeff * q^(c0 + c.n)``, multiplied into each summand before the
    denominators.  Its q-exponents may be negative at individual lattice
    points as long as the product with the summand's own power of q is not.
    """
    r = spec.r
    forms = _IntForms(spec)
    if multiplier:
        extra_lin = [min(k[i + 1] for k in multiplier) for i in range(r)]
        extra_const = min(k[0] for k in multiplier)
    else:
        extra_lin, extra_const = [0] * r, 0
    bounds = index_bounds(spec, order, extra_lin, extra_const)

    acc: dict = {}
    for n in itertools.product(*(range(b + 1) for b in bounds)):
        if x_degree is not None and sum(w * k for w, k in zip(spec.wx, n)) != x_degree:
            continue
        scaled = forms.scaled(n)
        if scaled % forms.den:
            raise NonIntegralExponent(f"exponent {Fraction(scaled, forms.den)} at n={n}")
        e = scaled // forms.den
        sign = -1 if sum(a * k for a, k in zip(spec.L1, n)) % 2 else 1

        if multiplier:
            numer: dict[int, int] = {}
            for key, c in multiplier.items():
                k = e + key[0] + sum(key[i + 1] * n[i] for i in range(r))
                numer[k] = numer.get(k, 0) + c
            numer = {k: v for k, v in numer.items() if v}
            if not numer:
                continue
            low = min(numer)
            if low < 0:
                raise NonIntegralExponent(f"negative exponent {low} survives at n={n}")
        else:
            if e < 0:
                raise NonIntegralExponent(f"negative exponent {e} at n={n}")
            numer = {e: 1}
            low = e
        if low > order:
            continue

        room = order - low
        dense = [0] * (room + 1)
        for k, c in numer.items():
            if k - low <= room:
                dense[k - low] += c * sign
        for a_i, n_i in zip(spec.bases, n):
            if n_i:
                dense = _dense_mul(dense, inv_pochhammer_coeffs(a_i, n_i, room), room)
        ex = sum(w * k for w, k in zip(spec.wx, n))
        ey = sum(w * k for w, k in zip(spec.wy, n))
        for j, c in enumerate(dense):
            if c:
                key = (low + j, ex, ey)
                v = acc.get(key, 0) + c
                if v:
                    acc[key] = v
                else:
                    del acc[key]
    return TruncatedSeries(acc, order)


def ag_evaluate(spec: AGSpec, order: int) -> TruncatedSeries:
    return lattice_sum(spec, order)


def ag_coefficient(spec: AGSpec, m: int, order: int) -> TruncatedSeries:
    """Coefficient of ``x^m`` (a series in q and y), summing only over ``wx.n = m``."""
    return lattice_sum(spec, order, x_degree=m).coefficient_x(m)


# ---------------------------------------------------------------- presets

_S2_BINOM = (4, 4, 18)
_S2_CROSS = {(0, 1): 2, (1, 2): 6, (0, 2): 6}
_S3_BINOM = (3, 3, 6)
_S3_CROSS = {(0, 1): 3, (1, 2): 3, (0, 2): 3}


def _s2(linear) -> AGSpec:
    return AGSpec.from_binomial(_S2_BINOM, _S2_CROSS, linear, (0, 0, 1), (1, 1, 2), (0, 1, 1), (2, 2, 6))


def _s3(linear) -> AGSpec:
    return AGSpec.from_binomial(_S3_BINOM, _S3_CROSS, linear, (0, 0, 0), (1, 1, 1), (0, 0, 1), (3, 3, 3))


PRESETS: dict[str, AGSpec] = {
    "S31": _s3((1, 2, 3)),
    "S32": _s3((4, 2, 3)),
    "S33": _s3((4, 5, 6)),
    "S21": _s2((1, 2, 9)),
    "S22": _s2((3, 2, 9)),
    "S23": _s2((5, 4, 15)),
    # (m + 3n)^2 + m(m-1)/2
    "ABM": AGSpec(
        ((Fraction(3, 2), Fraction(3)), (Fraction(3), Fraction(9))),
        (Fraction(-1, 2), Fraction(0)),
        (0, 1),
        (1, 2),
        (0, 0),
        (1, 6),
    ),
    "KUR": AGSpec(
        ((2, 3, 3), (3, 6, 6), (3, 6, 6)),
        (-1, -1, 1),
        (0, 0, 0),
        (1, 2, 2),
        (0, 0, 0),
        (1, 6, 6),
    ),
}
PRESETS["G_ANALYTIC"] = PRESETS["S31"].specialize_y_to_x()
PRESETS["A_ANALYTIC"] = PRESETS["S21"].specialize_y_to_x()

PRESET_NAMES = tuple(PRESETS)


def get_preset(name: str) -> AGSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None


def trinomial_product(order: int) -> TruncatedSeries:
    """``prod_{n>=0} (1 + x q^(2n+1) + x^2 q^(4n+2))``."""
    return product_expand(
        lambda n: MultiPoly({(0, 0, 0): 1, (2 * n + 1, 1, 0): 1, (4 * n + 2, 2, 0): 1}), order // 2 + 1, order
    )


def gleissberg_product(order: int) -> TruncatedSeries:
    """``(-xq; q^3)_inf (-xq^2; q^3)_inf``."""
    return product_expand(
        lambda k: MultiPoly({(0, 0, 0): 1, (3 * k + 1, 1, 0): 1})
        * MultiPoly({(0, 0, 0): 1, (3 * k + 2, 1, 0): 1}),
        order // 3 + 1,
        order,
    )
