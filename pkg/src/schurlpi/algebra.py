"""Exact sparse polynomials in q, x, y over the integers, and small polynomial matrices.

Monomials are triples ``(e_q, e_x, e_y)``; tuple ordering is the canonical
(lexicographic) term order.  Coefficients are Python ints, so arithmetic never
rounds or overflows.
"""

from __future__ import annotations

import ast
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from .errors import DimensionMismatch, NonSingular, RankDeficient

VARIABLES = ("q", "x", "y")


class Monomial(NamedTuple):
    e_q: int = 0
    e_x: int = 0
    e_y: int = 0

    def __str__(self) -> str:
        parts = []
        for name, e in zip(VARIABLES, self):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def _add_into(acc: dict, terms: Mapping, sign: int = 1) -> None:
    for m, c in terms.items():
        v = acc.get(m, 0) + sign * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def mul_terms(a: Mapping, b: Mapping, max_q: int | None = None) -> dict:
    """Product of two term maps, optionally dropping every q-exponent above ``max_q``."""
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    if max_q is None:
        for (aq, ax, ay), ca in a.items():
            for (bq, bx, by), cb in b.items():
                k = (aq + bq, ax + bx, ay + by)
                out[k] = out.get(k, 0) + ca * cb
    else:
        bs = sorted(b.items())
        for (aq, ax, ay), ca in a.items():
            room = max_q - aq
            if room < 0:
                continue
            for (bq, bx, by), cb in bs:
                if bq > room:
                    break
                k = (aq + bq, ax + bx, ay + by)
                out[k] = out.get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


class MultiPoly:
    """Immutable polynomial in ``Z[q, x, y]`` stored as a sparse term map."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict = {}
        for m, c in items:
            m = tuple(m)
            if len(m) != 3 or min(m) < 0:
                raise ValueError(f"bad monomial {m!r}")
            acc[m] = acc.get(m, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: int) -> "MultiPoly":
        return cls._raw({(0, 0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, e_q: int = 0, e_x: int = 0, e_y: int = 0, coeff: int = 1) -> "MultiPoly":
        return cls({(e_q, e_x, e_y): coeff})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Parse an expression such as ``"1 + x*(q^7 + y*q^8)"``."""
        return _PolyParser(text).result

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

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        _add_into(acc, other._terms)
        return MultiPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        _add_into(acc, other._terms, -1)
        return MultiPoly._raw(acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly._raw(mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_x(self, k: int) -> "MultiPoly":
        """Substitute ``x -> x*q^k``."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        return MultiPoly._raw({(eq + k * ex, ex, ey): c for (eq, ex, ey), c in self._terms.items()})

    def specialize(self, sub: Mapping[str, Iterable[int]]) -> "MultiPoly":
        """Replace ``x`` and/or ``y`` by monomials, e.g. ``{"y": Monomial(0, 1, 0)}`` for y -> x."""
        bad = set(sub) - {"x", "y"}
        if bad:
            raise ValueError(f"can only substitute x or y, got {sorted(bad)}")
        mx = tuple(sub.get("x", (0, 1, 0)))
        my = tuple(sub.get("y", (0, 0, 1)))
        acc: dict = {}
        for (eq, ex, ey), c in self._terms.items():
            k = (eq + ex * mx[0] + ey * my[0], ex * mx[1] + ey * my[1], ex * mx[2] + ey * my[2])
            acc[k] = acc.get(k, 0) + c
        return MultiPoly._raw({k: v for k, v in acc.items() if v})

    def degree(self, var: str) -> int:
        i = VARIABLES.index(var)
        return max((m[i] for m in self._terms), default=-1)

    def min_degree(self, var: str) -> int:
        i = VARIABLES.index(var)
        return min((m[i] for m in self._terms), default=0)

    def coefficient_in_x(self, m: int) -> "MultiPoly":
        """The polynomial in q, y multiplying ``x^m``."""
        return MultiPoly._raw({(eq, 0, ey): c for (eq, ex, ey), c in self._terms.items() if ex == m})

    def content(self) -> int:
        return reduce(gcd, (abs(c) for c in self._terms.values()), 0)

    def monomial_gcd(self) -> tuple[int, int, int]:
        if not self._terms:
            return (0, 0, 0)
        return tuple(min(m[i] for m in self._terms) for i in range(3))

    def divide_monomial(self, m: Iterable[int], c: int = 1) -> "MultiPoly":
        """Exact division by ``c * q^a x^b y^d``; raises if inexact."""
        a, b, d = m
        out = {}
        for (eq, ex, ey), v in self._terms.items():
            if eq < a or ex < b or ey < d or v % c:
                raise ValueError("monomial division is not exact")
            out[(eq - a, ex - b, ey - d)] = v // c
        return MultiPoly._raw(out)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for m, c in sorted(self._terms.items()):
            mono = str(Monomial(*m))
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            chunks.append(("-" if c < 0 else "+", body))
        first_sign, first = chunks[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in chunks[1:]:
            out += f" {s} {b}"
        return out


ZERO = MultiPoly()
ONE = MultiPoly.constant(1)
Q = MultiPoly.monomial(1, 0, 0)
X = MultiPoly.monomial(0, 1, 0)
Y = MultiPoly.monomial(0, 0, 1)


class _PolyParser:
    """Evaluates a restricted Python-syntax expression over MultiPoly.

    ``^`` is accepted as exponentiation.  Only the names q, x, y, integer
    literals, ``+ - *``, unary minus and nonnegative integer powers are allowed.
    """

    NAMES = {"q": Q, "x": X, "y": Y}

    def __init__(self, text: str):
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        self.result = self.eval(tree.body)
        if isinstance(self.result, int):
            self.result = MultiPoly.constant(self.result)

    def eval(self, node):
        if isinstance(node, ast.BinOp):
            left, right = self.eval(node.left), self.eval(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, int):
                    raise ValueError("exponent must be an integer literal")
                return left**right
        elif isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -self.eval(node.operand)
            if isinstance(node.op, ast.UAdd):
                return self.eval(node.operand)
        elif isinstance(node, ast.Name) and node.id in self.NAMES:
            return self.NAMES[node.id]
        elif isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")


class PolyMatrix:
    """Dense row-major matrix of MultiPoly entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(e if isinstance(e, MultiPoly) else _as_poly(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows, self.cols, self.entries = rows, cols, entries

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def diag(cls, d: Iterable) -> "PolyMatrix":
        d = list(d)
        n = len(d)
        return cls(n, n, [d[i] if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[MultiPoly]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def as_rows(self) -> list[list[MultiPoly]]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shapes differ")
        return PolyMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def scale(self, p: MultiPoly) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [p * e for e in self.entries])

    def shift_x(self, k: int) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [e.shift_x(k) for e in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def minor(self, i: int, j: int) -> "PolyMatrix":
        keep = [
            self[r, c] for r in range(self.rows) if r != i for c in range(self.cols) if c != j
        ]
        return PolyMatrix(self.rows - 1, self.cols - 1, keep)

    def distinct_rows(self) -> int:
        return len({tuple(self.row(i)) for i in range(self.rows)})

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"PolyMatrix[{body}]"


def _as_poly(e) -> MultiPoly:
    if isinstance(e, int):
        return MultiPoly.constant(e)
    if isinstance(e, str):
        return MultiPoly.parse(e)
    raise TypeError(f"cannot convert {type(e).__name__} to MultiPoly")


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        for j in range(b.cols):
            acc: dict = {}
            for k in range(a.cols):
                x, y = a[i, k], b[k, j]
                if x and y:
                    _add_into(acc, mul_terms(x._terms, y._terms))
            out.append(MultiPoly._raw(acc))
    return PolyMatrix(a.rows, b.cols, out)


def det(m: PolyMatrix) -> MultiPoly:
    """Determinant by cofactor expansion (the matrices here are at most 4x4)."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    total = ZERO
    for j in range(n):
        if m[0, j]:
            term = m[0, j] * det(m.minor(0, j))
            total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(m: PolyMatrix) -> PolyMatrix:
    if m.rows != m.cols:
        raise DimensionMismatch("adjugate of a non-square matrix")
    n = m.rows
    if n == 1:
        return PolyMatrix(1, 1, [ONE])
    entries = []
    for i in range(n):
        for j in range(n):
            c = det(m.minor(j, i))
            entries.append(c if (i + j) % 2 == 0 else -c)
    return PolyMatrix(n, n, entries)


def normalize_vector(vec: Iterable[MultiPoly]) -> tuple[MultiPoly, ...]:
    """Divide out the integer content and the monomial gcd shared by all entries."""
    vec = tuple(vec)
    nonzero = [p for p in vec if p]
    if not nonzero:
        return vec
    c = reduce(gcd, (p.content() for p in nonzero))
    mono = tuple(min(p.monomial_gcd()[i] for p in nonzero) for i in range(3))
    return tuple(p.divide_monomial(mono, c) if p else p for p in vec)


def left_kernel_square(r: PolyMatrix) -> tuple[MultiPoly, ...]:
    """A nonzero ``c`` with ``c . r = 0`` for a singular square ``r``, taken from an adjugate row."""
    if r.rows != r.cols:
        raise DimensionMismatch("expected a square matrix")
    d = det(r)
    if d:
        raise NonSingular(f"determinant is {d}")
    adj = adjugate(r)
    candidates = [normalize_vector(adj.row(i)) for i in range(r.rows) if any(adj.row(i))]
    if not candidates:
        raise RankDeficient("every adjugate row is zero")
    # all nonzero rows are proportional when rank = n-1; keep the sparsest
    return min(candidates, key=lambda v: sum(len(p) for p in v))


def left_kernel_3(r: PolyMatrix) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    if (r.rows, r.cols) != (3, 3):
        raise DimensionMismatch("left_kernel_3 expects a 3x3 matrix")
    return left_kernel_square(r)


def left_kernel_tall(r: PolyMatrix) -> tuple[MultiPoly, ...]:
    """Kernel of an (n+1) x n matrix via signed maximal minors (always exists)."""
    if r.rows != r.cols + 1:
        raise DimensionMismatch("expected an (n+1) x n matrix")
    vec = []
    for i in range(r.rows):
        rest = PolyMatrix(r.cols, r.cols, [e for k in range(r.rows) if k != i for e in r.row(k)])
        d = det(rest)
        vec.append(d if i % 2 == 0 else -d)
    if not any(vec):
        raise RankDeficient("every maximal minor vanishes")
    return normalize_vector(vec)


def vec_mat(v: Iterable[MultiPoly], m: PolyMatrix) -> list[MultiPoly]:
    v = list(v)
    if len(v) != m.rows:
        raise DimensionMismatch("vector length does not match matrix rows")
    return [sum((v[i] * m[i, j] for i in range(m.rows)), ZERO) for j in range(m.cols)]


def proportional(a: Iterable[MultiPoly], b: Iterable[MultiPoly]) -> bool:
    """True iff ``a_i * b_j == a_j * b_i`` for all pairs and neither vector is zero."""
    a, b = list(a), list(b)
    if len(a) != len(b) or not any(a) or not any(b):
        return False
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a))) and all(
        bool(x) == bool(y) for x, y in zip(a, b)
    )
