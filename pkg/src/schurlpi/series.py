"""Power series in q with polynomial coefficients in x and y, truncated at a fixed q-order."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .algebra import Monomial, MultiPoly, _add_into, mul_terms
from .errors import NonUnit, NonUnitFactor, OrderMismatch

# Safety valve for the "x-degree is bounded by the q-order" assumption.
MAX_TERMS = 2_000_000


class TruncatedSeries:
    """Element of ``Z[x, y][[q]]`` known exactly modulo ``q^(order+1)``.

    Only the q-degree is truncated.  Every series in this package carries at
    least one power of q per power of x, so the x-degree stays bounded too.
    """

    __slots__ = ("order", "_terms")

    def __init__(self, terms: Mapping | Iterable = (), order: int = 0):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for m, c in items:
            m = tuple(m)
            if m[0] <= order:
                acc[m] = acc.get(m, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict, order: int) -> "TruncatedSeries":
        if len(terms) > MAX_TERMS:
            raise OverflowError("term count exceeded the safety limit")
        s = cls.__new__(cls)
        s.order = order
        s._terms = terms
        return s

    @classmethod
    def from_poly(cls, p: MultiPoly, order: int) -> "TruncatedSeries":
        return cls._raw({m: c for m, c in p.items() if m[0] <= order}, order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls._raw({(0, 0, 0): 1}, order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls._raw({}, order)

    @classmethod
    def from_q_coefficients(cls, coeffs: Iterable[int], order: int, e_x: int = 0, e_y: int = 0):
        """Build ``sum_j coeffs[j] q^j x^e_x y^e_y``."""
        return cls._raw({(j, e_x, e_y): c for j, c in enumerate(coeffs) if c and j <= order}, order)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return [(Monomial(*m), c) for m, c in sorted(self._terms.items())]

    def coefficient(self, e_q: int, e_x: int = 0, e_y: int = 0) -> int:
        return self._terms.get((e_q, e_x, e_y), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    __hash__ = None

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatch(f"orders {self.order} and {other.order} differ")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            return TruncatedSeries.from_poly(other, self.order)
        if isinstance(other, int):
            return TruncatedSeries.from_poly(MultiPoly.constant(other), self.order)
        return other

    def __add__(self, other):
        other = self._lift(other)
        self._check(other)
        acc = dict(self._terms)
        _add_into(acc, other._terms)
        return TruncatedSeries._raw(acc, self.order)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        self._check(other)
        acc = dict(self._terms)
        _add_into(acc, other._terms, -1)
        return TruncatedSeries._raw(acc, self.order)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncatedSeries._raw({m: -c for m, c in self._terms.items()}, self.order)

    def __mul__(self, other):
        other = self._lift(other)
        self._check(other)
        return TruncatedSeries._raw(mul_terms(self._terms, other._terms, self.order), self.order)

    __rmul__ = __mul__

    def times_monomial(self, e_q: int, e_x: int = 0, e_y: int = 0, coeff: int = 1) -> "TruncatedSeries":
        n = self.order
        return TruncatedSeries._raw(
            {(a + e_q, b + e_x, c + e_y): v * coeff for (a, b, c), v in self._terms.items() if a + e_q <= n},
            n,
        )

    def shift_x(self, k: int) -> "TruncatedSeries":
        """Substitute ``x -> x*q^k``; terms pushed past the order are dropped."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        n = self.order
        out = {}
        for (eq, ex, ey), c in self._terms.items():
            e = eq + k * ex
            if e <= n:
                out[(e, ex, ey)] = c
        return TruncatedSeries._raw(out, n)

    def specialize(self, sub: Mapping[str, Iterable[int]]) -> "TruncatedSeries":
        p = MultiPoly._raw(dict(self._terms)).specialize(sub)
        return TruncatedSeries.from_poly(p, self.order)

    def restrict(self, order: int) -> "TruncatedSeries":
        """The same series viewed at a lower order."""
        if order > self.order:
            raise OrderMismatch(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries._raw({m: c for m, c in self._terms.items() if m[0] <= order}, order)

    def coefficient_x(self, m: int) -> "TruncatedSeries":
        """Coefficient of ``x^m`` as a series in q and y."""
        return TruncatedSeries._raw(
            {(eq, 0, ey): c for (eq, ex, ey), c in self._terms.items() if ex == m}, self.order
        )

    def x_degree(self) -> int:
        return max((m[1] for m in self._terms), default=-1)

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a unit, i.e. a series whose q^0 part is the constant +1 or -1."""
        const = {m: c for m, c in self._terms.items() if m[0] == 0}
        if set(const) != {(0, 0, 0)} or const[(0, 0, 0)] not in (1, -1):
            raise NonUnit(f"q^0 part {MultiPoly(const)} is not +-1")
        sign = const[(0, 0, 0)]
        # u = sign*(1 - r) with r = O(q); 1/u = sign * sum r^k
        r = (TruncatedSeries.one(self.order) - self * sign)
        result = TruncatedSeries.one(self.order)
        power = TruncatedSeries.one(self.order)
        while True:
            power = power * r
            if power.is_zero():
                break
            result = result + power
        return result * sign

    def to_poly(self) -> MultiPoly:
        return MultiPoly._raw(dict(self._terms))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [[m[0], m[1], m[2], str(c)] for m, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        return cls({(t[0], t[1], t[2]): int(t[3]) for t in data["terms"]}, int(data["order"]))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.to_poly()} + O(q^{self.order + 1}))"


@dataclass(frozen=True)
class EqualityReport:
    equal: bool
    monomial: Monomial | None = None
    left: int = 0
    right: int = 0

    def __bool__(self) -> bool:
        return self.equal

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "first_difference": None if self.monomial is None else list(self.monomial),
            "left": str(self.left),
            "right": str(self.right),
        }


def series_eq(a: TruncatedSeries, b: TruncatedSeries) -> EqualityReport:
    """Compare two series; on mismatch report the least monomial where they differ."""
    if a.order != b.order:
        raise OrderMismatch(f"orders {a.order} and {b.order} differ")
    diff = (a - b)._terms
    if not diff:
        return EqualityReport(True)
    m = min(diff)
    return EqualityReport(False, Monomial(*m), a.coefficient(*m), b.coefficient(*m))


def first_nonzero(s: TruncatedSeries) -> Monomial | None:
    return Monomial(*min(s._terms)) if s._terms else None


@lru_cache(maxsize=4096)
def inv_pochhammer_coeffs(a: int, n: int, order: int) -> tuple[int, ...]:
    """Dense q-coefficients of ``1/(q^a; q^a)_n`` up to ``q^order``."""
    if a < 1:
        raise ValueError("base exponent must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = [0] * (order + 1)
    c[0] = 1
    for k in range(1, n + 1):
        step = a * k
        if step > order:
            break
        for i in range(step, order + 1):
            c[i] += c[i - step]
    return tuple(c)


def inv_pochhammer(a: int, n: int, order: int) -> TruncatedSeries:
    """Expansion of ``prod_{k=1}^{n} 1/(1 - q^(a k))``."""
    return TruncatedSeries.from_q_coefficients(inv_pochhammer_coeffs(a, n, order), order)


def finite_pochhammer(a: int, n: int) -> MultiPoly:
    """The polynomial ``(q^a; q^a)_n``."""
    out = MultiPoly.constant(1)
    for k in range(1, n + 1):
        out = out * (1 - MultiPoly.monomial(a * k))
    return out


def product_expand(factor: Callable[[int], MultiPoly], count: int, order: int) -> TruncatedSeries:
    """Truncated product of ``factor(0) * ... * factor(count - 1)``.

    The caller chooses ``count`` so that every later factor is 1 modulo
    ``q^(order+1)``.  Each factor must be 1 plus terms of positive q-degree.
    """
    result = TruncatedSeries.one(order)
    for n in range(count):
        f = factor(n)
        if f.coefficient(0, 0, 0) != 1 or any(m[0] == 0 and m != (0, 0, 0) for m, _ in f.items()):
            raise NonUnitFactor(f"factor {n} = {f} is not 1 + O(q)")
        result = result * f
    return result
