"""Finite rings built from constructor expressions.

Elements are canonical integer indices ``0 .. len(R) - 1``.  Arithmetic is
computed structurally from the constructor tree, and every operation accepts
either Python ints or numpy integer arrays (broadcasting like numpy), so bulk
scans over a whole ring are a handful of vectorized calls.

Index encodings:

* ``Zn``: the residue itself.
* ``Product(L, R)``: ``index(left) * len(R) + index(right)``.
* ``Triangular(n, B)``: upper-triangle entries in row-major order
  (a11, a12, ..., a1n, a22, ..., ann) read as base-``len(B)`` digits,
  a11 most significant.
* ``PolyQuotient(p, f)``: coefficients as base-``p`` digits, constant term
  least significant.
* ``Quotient(B, gens)``: rank of the coset's minimal base representative.

Zero is index 0 in every encoding.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import CapExceeded, DimensionMismatch, IndexOutOfRange, InvalidExpr

DEFAULT_CAP = 2**24
TABLE_LIMIT = 256


# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class Zn:
    modulus: int

    def __str__(self):
        return f"Z{self.modulus}"


@dataclass(frozen=True)
class PolyQuotient:
    """``F_p[x]/(f)`` with ``f`` monic, coefficients listed low to high."""

    p: int
    coeffs: tuple[int, ...]

    def __str__(self):
        return f"F{self.p}[x]/({format_poly(self.coeffs)})"


@dataclass(frozen=True)
class Product:
    left: "RingExpr"
    right: "RingExpr"

    def __str__(self):
        right = f"({self.right})" if isinstance(self.right, Product) else str(self.right)
        return f"{self.left} x {right}"


@dataclass(frozen=True)
class Triangular:
    n: int
    base: "RingExpr"

    def __str__(self):
        return f"T{self.n}({self.base})"


@dataclass(frozen=True)
class Quotient:
    base: "RingExpr"
    generators: tuple[int, ...]

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"({self.base})/<{gens}>"


RingExpr = Union[Zn, PolyQuotient, Product, Triangular, Quotient]


def format_poly(coeffs: Sequence[int]) -> str:
    """Render a coefficient sequence (low to high) as ``x^2+x+1``."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[k])
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = "x" if k == 1 else f"x^{k}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def default_cap() -> int:
    env = os.environ.get("RINGLAB_CAP")
    return int(env) if env else DEFAULT_CAP


def expected_order(expr: RingExpr) -> int:
    """Cardinality implied by the constructor (an upper bound for quotients)."""
    if isinstance(expr, Zn):
        return expr.modulus
    if isinstance(expr, PolyQuotient):
        return expr.p ** (len(expr.coeffs) - 1)
    if isinstance(expr, Product):
        return expected_order(expr.left) * expected_order(expr.right)
    if isinstance(expr, Triangular):
        return expected_order(expr.base) ** (expr.n * (expr.n + 1) // 2)
    if isinstance(expr, Quotient):
        return expected_order(expr.base)
    raise InvalidExpr(f"not a ring expression: {expr!r}")


def validate_expr(expr: RingExpr) -> None:
    if isinstance(expr, Zn):
        if not isinstance(expr.modulus, int) or expr.modulus < 2:
            raise InvalidExpr(f"Zn modulus must be an integer >= 2, got {expr.modulus!r}")
    elif isinstance(expr, PolyQuotient):
        if not is_prime(expr.p):
            raise InvalidExpr(f"field characteristic {expr.p} is not prime")
        if len(expr.coeffs) < 2:
            raise InvalidExpr("polynomial modulus must have degree >= 1")
        if any(not 0 <= c < expr.p for c in expr.coeffs):
            raise InvalidExpr(f"coefficients must lie in 0..{expr.p - 1}")
        if expr.coeffs[-1] != 1:
            raise InvalidExpr(f"polynomial modulus {format_poly(expr.coeffs)} is not monic")
    elif isinstance(expr, Product):
        validate_expr(expr.left)
        validate_expr(expr.right)
    elif isinstance(expr, Triangular):
        if not isinstance(expr.n, int) or expr.n < 1:
            raise InvalidExpr(f"triangular size must be >= 1, got {expr.n!r}")
        validate_expr(expr.base)
    elif isinstance(expr, Quotient):
        validate_expr(expr.base)
        size = expected_order(expr.base)
        for g in expr.generators:
            if not 0 <= g < size:
                raise InvalidExpr(f"generator {g} is not an element index of {expr.base}")
    else:
        raise InvalidExpr(f"not a ring expression: {expr!r}")


def make_ring(expr: RingExpr, cap: int | None = None) -> "Ring":
    """Build the ring described by ``expr``.

    Raises InvalidExpr for malformed expressions and CapExceeded when the
    cardinality exceeds ``cap`` (default ``RINGLAB_CAP`` or 2**24).
    """
    validate_expr(expr)
    cap = default_cap() if cap is None else cap
    size = expected_order(expr)
    if size > cap:
        raise CapExceeded(f"{expr} has {size} elements, cap is {cap}")
    return _build(expr)


@lru_cache(maxsize=256)
def _build(expr: RingExpr) -> "Ring":
    if isinstance(expr, Zn):
        return ZnRing(expr)
    if isinstance(expr, PolyQuotient):
        ring = PolyQuotientRing(expr)
    elif isinstance(expr, Product):
        ring = ProductRing(expr, _build(expr.left), _build(expr.right))
    elif isinstance(expr, Triangular):
        ring = TriangularRing(expr, _build(expr.base))
    else:
        ring = QuotientRing(expr, _build(expr.base))
    if ring.order <= TABLE_LIMIT:
        ring.use_tables()
    return ring


def _out(x):
    return int(x) if np.ndim(x) == 0 else x


# -- rings -------------------------------------------------------------------


class Ring:
    """A finite unital ring on the index set ``range(order)``.

    Subclasses implement ``_add``, ``_mul`` and ``_neg`` for ints and arrays
    alike; the public methods add range checking for scalar arguments.
    """

    expr: RingExpr
    order: int
    one: int
    zero = 0

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<Ring {self.expr} |R|={self.order}>"

    def __str__(self):
        return str(self.expr)

    def _check(self, a):
        if np.ndim(a) == 0:
            if not 0 <= a < self.order:
                raise IndexOutOfRange(f"{a} is not an element index of {self.expr}")
        return a

    def add(self, a, b):
        return _out(self._add(self._check(a), self._check(b)))

    def mul(self, a, b):
        return _out(self._mul(self._check(a), self._check(b)))

    def neg(self, a):
        return _out(self._neg(self._check(a)))

    def sub(self, a, b):
        return _out(self._sub(self._check(a), self._check(b)))

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def power(self, a: int, k: int) -> int:
        result, base = self.one, a
        while k:
            if k & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            k >>= 1
        return _out(result)

    def from_int(self, k: int) -> int:
        """The image of the integer ``k`` (``k * 1``)."""
        result = self.zero
        step = self.one if k >= 0 else self._neg(self.one)
        for _ in range(abs(k)):
            result = self._add(result, step)
        return _out(result)

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def use_tables(self) -> None:
        """Replace structural arithmetic by lookup tables built from it."""
        x = np.arange(self.order, dtype=np.int64)
        cls = type(self)
        add = np.asarray(cls._add(self, x[:, None], x[None, :]), dtype=np.int64)
        mul = np.asarray(cls._mul(self, x[:, None], x[None, :]), dtype=np.int64)
        neg = np.asarray(cls._neg(self, x), dtype=np.int64)
        for table in (add, mul, neg):
            table.flags.writeable = False
        self.tables = {"add": add, "mul": mul, "neg": neg}
        self._add = lambda a, b: add[a, b]
        self._mul = lambda a, b: mul[a, b]
        self._neg = lambda a: neg[a]

    def structural(self, op: str, a, b=None):
        """``op`` computed from the constructor, bypassing any tables."""
        method = getattr(type(self), "_" + op)
        return _out(method(self, a) if op == "neg" else method(self, a, b))

    @cached_property
    def all(self) -> np.ndarray:
        """Every element index as a read-only int64 array."""
        arr = np.arange(self.order, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def memo(self) -> dict:
        # analysis caches (units, idempotents, radical); derived data only
        return {}

    @property
    def is_commutative(self) -> bool:
        if "commutative" not in self.memo:
            x = self.all
            ok = True
            for start in range(0, self.order, _chunk(self.order)):
                y = x[start:start + _chunk(self.order), None]
                if not np.array_equal(self._mul(y, x[None, :]), self._mul(x[None, :], y)):
                    ok = False
                    break
            self.memo["commutative"] = ok
        return self.memo["commutative"]


def _chunk(n: int, budget: int = 1 << 20) -> int:
    return max(1, budget // max(n, 1))


def enumerate_elements(R: Ring) -> Iterator[int]:
    return R.elements()


def arith(R: Ring, op: str, a: int, b: int | None = None) -> int:
    """Dispatch ``op`` in {add, mul, neg, sub} on ``R``."""
    if op == "neg":
        return R.neg(a)
    if op not in ("add", "mul", "sub"):
        raise ValueError(f"unknown operation {op!r}")
    return getattr(R, op)(a, b)


class ZnRing(Ring):
    def __init__(self, expr: Zn):
        self.expr = expr
        self.modulus = expr.modulus
        self.order = expr.modulus
        self.one = 1

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _mul(self, a, b):
        return (a * b) % self.modulus

    def _neg(self, a):
        return (-a) % self.modulus

    def _sub(self, a, b):
        return (a - b) % self.modulus


class PolyQuotientRing(Ring):
    def __init__(self, expr: PolyQuotient):
        self.expr = expr
        self.p = expr.p
        self.modulus = expr.coeffs
        self.degree = len(expr.coeffs) - 1
        self.order = self.p ** self.degree
        self.one = 1

    def coefficients(self, a):
        """Coefficient digits of ``a``, constant term first."""
        out = []
        for _ in range(self.degree):
            out.append(a % self.p)
            a = a // self.p
        return out

    def pack(self, coeffs):
        idx = 0
        for c in reversed(list(coeffs)):
            idx = idx * self.p + c
        return idx

    def _add(self, a, b):
        ca, cb = self.coefficients(a), self.coefficients(b)
        return self.pack([(x + y) % self.p for x, y in zip(ca, cb)])

    def _neg(self, a):
        return self.pack([(-x) % self.p for x in self.coefficients(a)])

    def _mul(self, a, b):
        d, p = self.degree, self.p
        ca, cb = self.coefficients(a), self.coefficients(b)
        prod = [0] * (2 * d - 1)
        for i in range(d):
            for j in range(d):
                prod[i + j] = prod[i + j] + ca[i] * cb[j]
        # reduce by the monic modulus, highest degree first
        for k in range(2 * d - 2, d - 1, -1):
            lead = prod[k] % p
            for i in range(d):
                prod[k - d + i] = prod[k - d + i] - lead * self.modulus[i]
        return self.pack([c % p for c in prod[:d]])


class ProductRing(Ring):
    def __init__(self, expr: Product, left: Ring, right: Ring):
        self.expr = expr
        self.left, self.right = left, right
        self.order = left.order * right.order
        self.one = left.one * right.order + right.one

    def split(self, a):
        return a // self.right.order, a % self.right.order

    def pair(self, x, y):
        return x * self.right.order + y

    def _add(self, a, b):
        (a1, a2), (b1, b2) = self.split(a), self.split(b)
        return self.pair(self.left._add(a1, b1), self.right._add(a2, b2))

    def _mul(self, a, b):
        (a1, a2), (b1, b2) = self.split(a), self.split(b)
        return self.pair(self.left._mul(a1, b1), self.right._mul(a2, b2))

    def _neg(self, a):
        a1, a2 = self.split(a)
        return self.pair(self.left._neg(a1), self.right._neg(a2))


@dataclass(frozen=True)
class TriMatrix:
    """Upper-triangular ``n x n`` matrix of base-ring indices.

    ``entries`` lists the upper triangle row by row; ``M[i, j]`` is 0-based
    and reads as the zero element below the diagonal.
    """

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n * (self.n + 1) // 2:
            raise DimensionMismatch(
                f"{len(self.entries)} entries do not fill a {self.n}x{self.n} upper triangle"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "TriMatrix":
        """Build from rows where row ``i`` holds entries ``i..n-1``."""
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n - i:
                raise DimensionMismatch(f"row {i} needs {n - i} entries, got {len(row)}")
        return cls(n, tuple(int(v) for row in rows for v in row))

    def rows(self) -> list[list[int]]:
        out, k = [], 0
        for i in range(self.n):
            out.append(list(self.entries[k:k + self.n - i]))
            k += self.n - i
        return out

    def __getitem__(self, ij):
        i, j = ij
        if i > j:
            return 0
        return self.entries[_tri_pos(self.n, i, j)]


def _tri_pos(n: int, i: int, j: int) -> int:
    return i * n - i * (i - 1) // 2 + (j - i)


class TriangularRing(Ring):
    def __init__(self, expr: Triangular, base: Ring):
        self.expr = expr
        self.base = base
        self.n = expr.n
        self.slots = self.n * (self.n + 1) // 2
        self.order = base.order ** self.slots
        self.one = self.pack([base.one if i == j else 0
                              for i in range(self.n) for j in range(i, self.n)])

    def pos(self, i: int, j: int) -> int:
        return _tri_pos(self.n, i, j)

    def digits(self, a):
        q = self.base.order
        out = [None] * self.slots
        for t in range(self.slots - 1, -1, -1):
            out[t] = a % q
            a = a // q
        return out

    def pack(self, digits):
        q = self.base.order
        idx = 0
        for d in digits:
            idx = idx * q + d
        return idx

    def unpack(self, a: int) -> TriMatrix:
        self._check(a)
        return TriMatrix(self.n, tuple(int(d) for d in self.digits(a)))

    def from_matrix(self, M: TriMatrix) -> int:
        if M.n != self.n:
            raise DimensionMismatch(f"expected a {self.n}x{self.n} matrix, got {M.n}x{M.n}")
        for v in M.entries:
            self.base._check(v)
        return self.pack(M.entries)

    def diag(self, values: Sequence[int]) -> int:
        values = list(values)
        if len(values) != self.n:
            raise DimensionMismatch(f"need {self.n} diagonal entries")
        return self.pack([values[i] if i == j else 0
                          for i in range(self.n) for j in range(i, self.n)])

    def scalar(self, c: int) -> int:
        return self.diag([c] * self.n)

    def _add(self, a, b):
        B = self.base
        return self.pack([B._add(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def _neg(self, a):
        return self.pack([self.base._neg(x) for x in self.digits(a)])

    def _mul(self, a, b):
        B, n = self.base, self.n
        da, db = self.digits(a), self.digits(b)
        out = []
        for i in range(n):
            for j in range(i, n):
                acc = B._mul(da[self.pos(i, i)], db[self.pos(i, j)])
                for k in range(i + 1, j + 1):
                    acc = B._add(acc, B._mul(da[self.pos(i, k)], db[self.pos(k, j)]))
                out.append(acc)
        return self.pack(out)


class QuotientRing(Ring):
    def __init__(self, expr: Quotient, base: Ring):
        self.expr = expr
        self.base = base
        self.ideal = saturate_ideal(base, expr.generators)
        canon = np.full(base.order, -1, dtype=np.int64)
        reps = []
        for b in range(base.order):
            if canon[b] < 0:
                canon[base._add(b, self.ideal)] = len(reps)
                reps.append(b)
        canon.flags.writeable = False
        self.canon = canon
        self.reps = np.array(reps, dtype=np.int64)
        self.order = len(reps)
        if self.order < 2:
            raise InvalidExpr(f"{expr} is the zero ring (the ideal is everything)")
        self.one = int(canon[base.one])

    def lift(self, a):
        """Minimal base representative of the coset ``a``."""
        return _out(self.reps[self._check(a)])

    def project(self, b):
        """Coset of the base element ``b``."""
        return _out(self.canon[self.base._check(b)])

    def _add(self, a, b):
        return self.canon[self.base._add(self.reps[a], self.reps[b])]

    def _mul(self, a, b):
        return self.canon[self.base._mul(self.reps[a], self.reps[b])]

    def _neg(self, a):
        return self.canon[self.base._neg(self.reps[a])]


def saturate_ideal(R: Ring, generators: Sequence[int]) -> np.ndarray:
    """Smallest two-sided ideal containing ``generators``, sorted ascending.

    Closes under addition and left/right multiplication by every element;
    additive closure in a finite group already contains negatives.
    """
    mask = np.zeros(R.order, dtype=bool)
    mask[0] = True
    queue: deque[int] = deque()

    def push(values):
        values = np.unique(np.asarray(values, dtype=np.int64))
        fresh = values[~mask[values]]
        mask[fresh] = True
        queue.extend(int(v) for v in fresh)

    push(list(generators))
    x_all = R.all
    while queue:
        x = queue.popleft()
        push(R._mul(x_all, x))
        push(R._mul(x, x_all))
        push(R._add(x, np.flatnonzero(mask)))
    return np.flatnonzero(mask)


def tri_pack(R_base: Ring, M: TriMatrix) -> int:
    """Index of ``M`` in ``T_n(R_base)``."""
    for v in M.entries:
        R_base._check(v)
    q = R_base.order
    idx = 0
    for d in M.entries:
        idx = idx * q + d
    return idx


def tri_unpack(TR: Ring, a: int) -> TriMatrix:
    if not isinstance(TR, TriangularRing):
        raise DimensionMismatch(f"{TR.expr} is not a triangular ring")
    return TR.unpack(a)
