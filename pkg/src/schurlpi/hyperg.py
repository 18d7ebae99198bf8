"""The triple sum Sigma(beta) for the y = x specialisation and the index-shift identities around it.

``sigma(beta)`` is the summand

    (-1)^n3 x^(n1+2n2+3n3) q^(4C(n1,2)+4C(n2,2)+18C(n3,2)+2n1n2+6n2n3+6n3n1+beta.n)
        / ((q^2;q^2)_n1 (q^2;q^2)_n2 (q^6;q^6)_n3)

and ``Sigma(beta)`` is its sum over all ``n >= 0``.  Multipliers depending on
the summation indices are written as Laurent polynomials in q and the three
index carriers ``U = q^(2n1)``, ``V = q^(2n2)``, ``W = q^(6n3)``.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from math import comb
from typing import Mapping

from .agsum import _S2_BINOM, _S2_CROSS, AGSpec, lattice_sum, trinomial_product
from .algebra import MultiPoly
from .series import EqualityReport, TruncatedSeries, series_eq

CARRIERS = ("q", "U", "V", "W")
# q-exponent contributed per unit of each carrier's index
CARRIER_STEP = {"U": 2, "V": 2, "W": 6}

Beta = tuple[int, int, int]


def sigma_spec(beta: Beta) -> AGSpec:
    return AGSpec.from_binomial(_S2_BINOM, _S2_CROSS, beta, (0, 0, 1), (1, 2, 3), (0, 0, 0), (2, 2, 6))


def sigma_evaluate(beta: Beta, order: int, multiplier: "Laurent | None" = None) -> TruncatedSeries:
    """``Sigma(beta)``, or the same sum weighted by an index-dependent multiplier."""
    return lattice_sum(sigma_spec(beta), order, multiplier=None if multiplier is None else multiplier.as_multiplier())


# ---------------------------------------------------------------- Laurent polynomials in q, U, V, W


class Laurent:
    """Sparse Laurent polynomial keyed by exponent 4-tuples over ``(q, U, V, W)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int, int], int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Laurent":
        key = [0, 0, 0, 0]
        key[CARRIERS.index(name)] = power
        return cls({tuple(key): 1})

    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def parse(cls, text: str) -> "Laurent":
        return _parse_laurent(ast.parse(text.replace("^", "**"), mode="eval").body)

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        out: dict = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return Laurent(out)

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have negative powers")
            ((k, v),) = self.terms.items()
            if v not in (1, -1):
                raise ValueError("only unit monomials have negative powers")
            return Laurent({tuple(e * n for e in k): v ** -n})
        out = Laurent.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self.terms == other.terms

    def is_polynomial(self) -> bool:
        return all(min(k) >= 0 for k in self.terms)

    def evaluate(self, q: int = 1, U: int = 1, V: int = 1, W: int = 1) -> int:
        """Value at integer points; negative exponents need the base to be +-1."""
        total = 0
        for (a, b, c, d), v in self.terms.items():
            term = v
            for base, e in ((q, a), (U, b), (V, c), (W, d)):
                if e < 0 and base not in (1, -1):
                    raise ValueError("negative power of a non-unit")
                # a unit base makes base^e equal base^|e|
                term *= base ** abs(e)
            total += term
        return total

    def as_multiplier(self) -> dict[tuple[int, int, int, int], int]:
        """``q^a U^b V^c W^d`` becomes the lattice multiplier ``q^(a + 2b n1 + 2c n2 + 6d n3)``."""
        out: dict = {}
        for (a, b, c, d), v in self.terms.items():
            key = (a, 2 * b, 2 * c, 6 * d)
            out[key] = out.get(key, 0) + v
        return {k: v for k, v in out.items() if v}

    def __repr__(self) -> str:
        return f"Laurent({self.terms})"


def _parse_laurent(node) -> Laurent:
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return _parse_laurent(node.left) ** _parse_int(node.right)
        left, right = _parse_laurent(node.left), _parse_laurent(node.right)
        ops = {ast.Add: Laurent.__add__, ast.Sub: Laurent.__sub__, ast.Mult: Laurent.__mul__}
        for kind, fn in ops.items():
            if isinstance(node.op, kind):
                return fn(left, right)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_parse_laurent(node.operand)
    if isinstance(node, ast.Name) and node.id in CARRIERS:
        return Laurent.var(node.id)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Laurent.const(node.value)
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def _parse_int(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_parse_int(node.operand)
    raise ValueError("exponents must be integer literals")


# ---------------------------------------------------------------- splitting of 1


@dataclass(frozen=True)
class SplitTerm:
    id: int
    text: str
    closed_form: tuple[int, int, int, Beta]  # sign, x-power, q-power, shifted beta

    @property
    def expr(self) -> Laurent:
        return Laurent.parse(self.text)


SPLIT_TERMS: tuple[SplitTerm, ...] = (
    SplitTerm(1, "U*V^2*W", (1, 0, 0, (3, 6, 15))),
    SplitTerm(2, "U^-1*V*q^2*(1-U)", (1, 1, 1, (3, 6, 15))),
    SplitTerm(3, "1-V", (1, 2, 2, (3, 6, 15))),
    SplitTerm(4, "U^2*V*W*(1-V)", (1, 2, 4, (7, 8, 21))),
    SplitTerm(5, "-U^-1*V*q^2*(1-U)*(1-U*q^-2)", (-1, 2, 4, (7, 8, 21))),
    SplitTerm(6, "U*V^2*W*q^-2*(1-U)*(1-V)", (1, 3, 9, (9, 12, 27))),
    SplitTerm(7, "U*V^2*(1-W)", (-1, 3, 9, (9, 12, 27))),
    SplitTerm(8, "U*V*W*(1-U)*(1-V)*(1-V*q^-2)", (1, 5, 19, (11, 14, 33))),
    SplitTerm(9, "U*V*(1-V)*(1-W)", (-1, 5, 19, (11, 14, 33))),
)
BASE_BETA: Beta = (1, 2, 9)
SHIFTED_BETA: Beta = (3, 6, 15)


def split_sum() -> Laurent:
    total = Laurent()
    for t in SPLIT_TERMS:
        total = total + t.expr
    return total


def splitting_identity_check() -> bool:
    """The nine terms add up to 1, checked after clearing denominators with ``q^2 U``."""
    clear = Laurent.parse("q^2*U")
    lhs = clear * split_sum()
    if not lhs.is_polynomial():
        raise AssertionError("the clearing multiplier left a negative exponent")
    return lhs == clear


def nine_term_check(j: int, order: int) -> EqualityReport:
    """Weight ``sigma(1,2,9)`` by the j-th split term and compare with its closed form."""
    term = SPLIT_TERMS[j - 1]
    lhs = sigma_evaluate(BASE_BETA, order, term.expr)
    sign, xp, qp, beta = term.closed_form
    rhs = sigma_evaluate(beta, order).times_monomial(qp, xp, 0, sign)
    return series_eq(lhs, rhs)


# ---------------------------------------------------------------- index shift


def descending_pochhammer(carrier: str, k: int) -> Laurent:
    """``(q^(s n); q^(-s))_k = prod_{i<k} (1 - carrier * q^(-s i))`` for the carrier's step s."""
    step = CARRIER_STEP[carrier]
    out = Laurent.const(1)
    for i in range(k):
        out = out * (Laurent.const(1) - Laurent.var(carrier) * Laurent.var("q", -step * i))
    return out


def shift_closed_form(beta: Beta, k: tuple[int, int, int]) -> tuple[int, int, int, Beta]:
    """``(sign, x-power, q-power, beta')`` so that the weighted sum equals ``sign x^a q^b Sigma(beta')``."""
    b1, b2, b3 = beta
    k1, k2, k3 = k
    sign = -1 if k3 % 2 else 1
    xp = k1 + 2 * k2 + 3 * k3
    qp = (
        4 * comb(k1, 2) + 4 * comb(k2, 2) + 18 * comb(k3, 2)
        + 2 * k1 * k2 + 6 * k2 * k3 + 6 * k3 * k1
        + k1 * b1 + k2 * b2 + k3 * b3
    )
    shifted = (
        b1 + 4 * k1 + 2 * k2 + 6 * k3,
        b2 + 2 * k1 + 4 * k2 + 6 * k3,
        b3 + 6 * k1 + 6 * k2 + 18 * k3,
    )
    return sign, xp, qp, shifted


def shift_lemma_check(beta: Beta, k: tuple[int, int, int], order: int) -> EqualityReport:
    if any(v < 0 for v in k):
        raise ValueError("shift must be nonnegative")
    weight = descending_pochhammer("U", k[0]) * descending_pochhammer("V", k[1]) * descending_pochhammer("W", k[2])
    # lattice_sum rejects any negative q-power that survives at a lattice point, which
    # would mean the vanishing factor (1 - q^0) failed to appear below the shift
    lhs = sigma_evaluate(beta, order, weight)
    sign, xp, qp, shifted = shift_closed_form(beta, k)
    if qp < 0:
        raise ValueError("closed form has a negative q-power; choose a larger beta")
    rhs = sigma_evaluate(shifted, order).times_monomial(qp, xp, 0, sign)
    return series_eq(lhs, rhs)


# ---------------------------------------------------------------- functional equation

TRINOMIAL = MultiPoly.parse("1 + x*q + x^2*q^2")


@dataclass(frozen=True)
class FunctionalEquationReport:
    identity: EqualityReport
    iteration: EqualityReport
    shift: EqualityReport

    def __bool__(self) -> bool:
        return bool(self.identity) and bool(self.iteration) and bool(self.shift)


def iterate_functional_equation(order: int) -> TruncatedSeries:
    """Fixed point of ``S(x) = (1 + xq + x^2 q^2) S(x q^2)`` with ``S(0) = 1``."""
    s = TruncatedSeries.one(order)
    factor = TruncatedSeries.from_poly(TRINOMIAL, order)
    # each pass fixes at least one more power of q
    for _ in range(order + 2):
        nxt = factor * s.shift_x(2)
        if nxt == s:
            return s
        s = nxt
    raise AssertionError("functional equation iteration did not stabilise")


def functional_equation_check(order: int) -> FunctionalEquationReport:
    base = sigma_evaluate(BASE_BETA, order)
    shifted = sigma_evaluate(SHIFTED_BETA, order)
    return FunctionalEquationReport(
        identity=series_eq(base, TruncatedSeries.from_poly(TRINOMIAL, order) * shifted),
        iteration=series_eq(iterate_functional_equation(order), trinomial_product(order)),
        shift=series_eq(shifted, base.shift_x(2)),
    )
