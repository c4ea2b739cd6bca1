"""Ring expressions and element literals.

Ring grammar (whitespace is insignificant, ``x`` is a left-associative
product)::

    expr := term ('x' term)*
    term := 'Z' uint | 'F' uint '[x]/(' poly ')' | 'T' uint '(' expr ')' | '(' expr ')'
    poly := mono ('+' mono)*
    mono := uint | uint? 'x' ('^' uint)?

Element literals follow the ring's shape: a decimal residue for ``Zn``,
``(l,r)`` for products, a polynomial such as ``x+1`` for ``F_p[x]/(f)``, and
``[a11,a12;a22]`` for triangular matrices (row ``i`` lists entries ``i..n``).
"""

from __future__ import annotations

from .errors import InvalidExpr, ParseError, RangeError, SemanticError
from .rings import (
    PolyQuotient,
    PolyQuotientRing,
    Product,
    ProductRing,
    QuotientRing,
    Ring,
    RingExpr,
    Triangular,
    TriangularRing,
    Zn,
    ZnRing,
    format_poly,
    is_prime,
    validate_expr,
)


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, token: str) -> bool:
        if self.peek() == token:
            self.pos += 1
            return True
        return False

    def expect(self, token: str):
        if not self.accept(token):
            found = self.peek() or "end of input"
            raise ParseError(f"expected {token!r}, found {found!r}", self.pos)

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            raise ParseError(f"expected an unsigned integer, found {found!r}", start)
        return int(self.text[start:self.pos])

    def done(self):
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)


# -- ring expressions --------------------------------------------------------


def parse_ring_expr(text: str) -> RingExpr:
    cur = _Cursor(text)
    expr = _expr(cur)
    cur.done()
    try:
        validate_expr(expr)
    except InvalidExpr as exc:
        raise SemanticError(str(exc)) from None
    return expr


def _expr(cur: _Cursor) -> RingExpr:
    expr = _term(cur)
    while cur.accept("x"):
        expr = Product(expr, _term(cur))
    return expr


def _term(cur: _Cursor) -> RingExpr:
    start = cur.pos
    if cur.accept("Z"):
        return Zn(cur.uint())
    if cur.accept("F"):
        p = cur.uint()
        for token in "[x]/(":
            cur.expect(token)
        coeffs = _poly(cur)
        cur.expect(")")
        return _field_modulus(p, coeffs)
    if cur.accept("T"):
        n = cur.uint()
        cur.expect("(")
        base = _expr(cur)
        cur.expect(")")
        return Triangular(n, base)
    if cur.accept("("):
        inner = _expr(cur)
        cur.expect(")")
        return inner
    found = cur.peek() or "end of input"
    raise ParseError(f"expected a ring (Z, F, T or '('), found {found!r}", start)


def _poly(cur: _Cursor) -> dict[int, int]:
    """Coefficients by degree; repeated degrees add up."""
    coeffs: dict[int, int] = {}
    while True:
        coeff, degree = 1, 0
        has_coeff = cur.peek().isdigit()
        if has_coeff:
            coeff = cur.uint()
        if cur.accept("x"):
            degree = cur.uint() if cur.accept("^") else 1
        elif not has_coeff:
            raise ParseError("expected a monomial", cur.pos)
        coeffs[degree] = coeffs.get(degree, 0) + coeff
        if not cur.accept("+"):
            return coeffs


def _field_modulus(p: int, coeffs: dict[int, int]) -> PolyQuotient:
    if not is_prime(p):
        raise SemanticError(f"field characteristic {p} is not prime")
    dense = [coeffs.get(k, 0) % p for k in range(max(coeffs) + 1)]
    while len(dense) > 1 and dense[-1] == 0:
        dense.pop()
    if len(dense) < 2:
        raise SemanticError(f"modulus {format_poly(dense)} has degree 0")
    if dense[-1] != 1:
        raise SemanticError(f"modulus {format_poly(dense)} is not monic over F{p}")
    return PolyQuotient(p, tuple(dense))


# -- element literals ----------------------------------------------------------


def parse_element(R: Ring, text: str) -> int:
    cur = _Cursor(text)
    value = _element(R, cur)
    cur.done()
    return value


def _element(R: Ring, cur: _Cursor) -> int:
    if isinstance(R, ZnRing):
        start = cur.pos
        value = cur.uint()
        if value >= R.modulus:
            raise RangeError(f"{value} is out of range for {R.expr} (position {start})")
        return value
    if isinstance(R, ProductRing):
        cur.expect("(")
        left = _element(R.left, cur)
        cur.expect(",")
        right = _element(R.right, cur)
        cur.expect(")")
        return R.pair(left, right)
    if isinstance(R, PolyQuotientRing):
        return _poly_element(R, cur)
    if isinstance(R, TriangularRing):
        return _matrix(R, cur)
    if isinstance(R, QuotientRing):
        return R.project(_element(R.base, cur))
    raise TypeError(f"no literal syntax for {R!r}")


def _poly_element(R: PolyQuotientRing, cur: _Cursor) -> int:
    start = cur.pos
    coeffs = _poly(cur)
    if max(coeffs) >= R.degree:
        raise RangeError(f"degree {max(coeffs)} is too large for {R.expr} (position {start})")
    if any(c >= R.p for c in coeffs.values()):
        raise RangeError(f"coefficient out of range for {R.expr} (position {start})")
    return R.pack([coeffs.get(k, 0) for k in range(R.degree)])


def _matrix(R: TriangularRing, cur: _Cursor) -> int:
    cur.expect("[")
    rows = []
    while True:
        start = cur.pos
        row = [_element(R.base, cur)]
        while cur.accept(","):
            row.append(_element(R.base, cur))
        expected = R.n - len(rows)
        if len(row) != expected:
            raise ParseError(f"row {len(rows) + 1} of a {R.n}x{R.n} matrix needs "
                             f"{expected} entries, got {len(row)}", start)
        rows.append(row)
        if not cur.accept(";"):
            break
    cur.expect("]")
    if len(rows) != R.n:
        raise ParseError(f"expected {R.n} rows, got {len(rows)}", cur.pos)
    return R.pack([v for row in rows for v in row])


def render(R: Ring, a: int) -> str:
    """Inverse of :func:`parse_element`."""
    a = int(R._check(a))
    if isinstance(R, ZnRing):
        return str(a)
    if isinstance(R, ProductRing):
        left, right = R.split(a)
        return f"({render(R.left, left)},{render(R.right, right)})"
    if isinstance(R, PolyQuotientRing):
        return format_poly(R.coefficients(a))
    if isinstance(R, TriangularRing):
        rows = R.unpack(a).rows()
        return "[" + ";".join(",".join(render(R.base, v) for v in row) for row in rows) + "]"
    if isinstance(R, QuotientRing):
        return render(R.base, R.lift(a))
    raise TypeError(f"no literal syntax for {R!r}")
