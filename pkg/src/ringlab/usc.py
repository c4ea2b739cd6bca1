"""Constructive clean decompositions in triangular matrix rings.

All three algorithms recurse on the block form

    A = | a11  alpha |
        |  0    A1   |

splitting off the top-left scalar, and assemble ``E`` from the scalar part,
a corner row and the recursively obtained ``E1``.

* :func:`decompose_theorem1` - the unique strongly clean expression of ``A``
  in ``T_n(R)`` for ``R`` uniquely clean and uniquely bleached.  The corner
  row solves ``(u11 + 2 e11 - 1) x - x U1 = e11 alpha - alpha E1``, one
  entry at a time through :func:`ringlab.sylvester.solve_lr`.
* :func:`comm2_j_idempotent` / :func:`comm2_decompose` - over a commutative
  uniquely clean base, an idempotent ``G`` in the double commutant of ``A``
  with ``A - G`` in the radical, and the clean expression ``E = I - G``.
* :func:`signed_decompose` - ``E`` with ``A - E`` and ``A + E`` both units,
  from the double-commutant idempotent of ``A**2``.

Every returned expression is re-verified with plain ring arithmetic.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import analysis
from .errors import (
    InternalCheckFailed,
    NotAUnit,
    NotUniquelyClean,
    PreconditionViolated,
)
from .expression import CleanExpression
from .rings import Ring, Triangular, TriangularRing, make_ring
from .sylvester import LRProblem, solve_lr

EXACT_COMM2_LIMIT = 2**12


# -- block helpers -------------------------------------------------------------


def _minor(TR: TriangularRing) -> TriangularRing:
    return make_ring(Triangular(TR.n - 1, TR.base.expr))


def _split(TR: TriangularRing, A: int):
    d = TR.digits(A)
    n = TR.n
    a11 = int(d[0])
    alpha = [int(v) for v in d[1:n]]
    A1 = TR.pack(d[n:])
    return a11, alpha, int(A1)


def _join(TR: TriangularRing, a11: int, alpha: Sequence[int], A1: int) -> int:
    TR1 = _minor(TR)
    return int(TR.pack([a11, *alpha, *TR1.digits(A1)]))


def _entry(TR: TriangularRing, digits, i: int, j: int) -> int:
    return int(digits[TR.pos(i, j)]) if i <= j else 0


def row_times(TR: TriangularRing, row: Sequence[int], M: int) -> list[int]:
    """Row vector ``row`` times the triangular matrix ``M``."""
    R = TR.base
    d = TR.digits(M)
    out = []
    for j in range(TR.n):
        acc = R.zero
        for i in range(j + 1):
            acc = R.add(acc, R.mul(row[i], _entry(TR, d, i, j)))
        out.append(acc)
    return out


def tri_inverse(TR: TriangularRing, M: int) -> int:
    """Inverse by back substitution; raises NotAUnit if a diagonal entry is not a unit."""
    R, n = TR.base, TR.n
    d = TR.digits(M)
    diag_inv = [analysis.inverse(R, _entry(TR, d, i, i)) for i in range(n)]
    X = [[0] * n for _ in range(n)]
    for j in range(n):
        X[j][j] = diag_inv[j]
        for i in range(j - 1, -1, -1):
            acc = R.zero
            for k in range(i + 1, j + 1):
                acc = R.add(acc, R.mul(_entry(TR, d, i, k), X[k][j]))
            X[i][j] = R.neg(R.mul(diag_inv[i], acc))
    inv = int(TR.pack([X[i][j] for i in range(n) for j in range(i, n)]))
    if TR.mul(M, inv) != TR.one or TR.mul(inv, M) != TR.one:
        raise NotAUnit(f"{M} has no two-sided inverse in {TR.expr}")
    return inv


def is_tri_unit(TR: TriangularRing, M: int) -> bool:
    try:
        tri_inverse(TR, M)
    except NotAUnit:
        return False
    return True


def _require_triangular(TR: Ring) -> TriangularRing:
    if not isinstance(TR, TriangularRing):
        raise PreconditionViolated(f"{TR.expr} is not a triangular matrix ring")
    return TR


def _require_uniquely_clean(R: Ring):
    if R.memo.get("uniquely_clean"):
        return
    counts = analysis.expression_counts(R, commuting=False)
    bad = np.flatnonzero(counts != 1)
    if len(bad):
        raise PreconditionViolated(
            f"base ring {R.expr} is not uniquely clean (element {int(bad[0])})")
    R.memo["uniquely_clean"] = True


def _require_commutative_uc(TR: Ring) -> TriangularRing:
    TR = _require_triangular(TR)
    if not TR.base.is_commutative:
        raise PreconditionViolated(f"base ring {TR.base.expr} is not commutative")
    _require_uniquely_clean(TR.base)
    return TR


# -- base ring -------------------------------------------------------------------


def uc_decompose_base(R: Ring, a: int) -> CleanExpression:
    """The unique ``(e, u)`` with ``a = e + u``; doubles as a uniqueness check."""
    E = analysis.idempotents(R)
    hits = E[analysis.unit_mask(R)[R._sub(R._check(a), E)]]
    if len(hits) != 1:
        raise NotUniquelyClean(
            f"{a} has {len(hits)} clean expressions in {R.expr}: idempotents {hits.tolist()}")
    e = int(hits[0])
    return CleanExpression(R, int(a), e, R.sub(a, e), commuting=R.mul(a, e) == R.mul(e, a))


# -- strongly clean decomposition over a uniquely clean, uniquely bleached base --


def _theorem1(TR: TriangularRing, A: int) -> int:
    R = TR.base
    if TR.n == 1:
        return uc_decompose_base(R, A).e
    TR1 = _minor(TR)
    a11, alpha, A1 = _split(TR, A)
    E1 = _theorem1(TR1, A1)
    U1 = TR1.sub(A1, E1)
    base = uc_decompose_base(R, a11)
    e11, u11 = base.e, base.u
    # w = u11 + 2 e11 - 1 lies in J(R): 2 is in J and u11 in 1 + J
    w = R.sub(R.add(u11, R.add(e11, e11)), R.one)
    v = [R.sub(R.mul(e11, s), t) for s, t in zip(alpha, row_times(TR1, alpha, E1))]
    c = TR1.digits(U1)
    x: list[int] = []
    for j in range(TR1.n):
        rhs = v[j]
        for i in range(j):
            rhs = R.add(rhs, R.mul(x[i], _entry(TR1, c, i, j)))
        problem = LRProblem(R, w, _entry(TR1, c, j, j), rhs, "a_radical_b_unit")
        x.append(solve_lr(problem, method="series"))
    return _join(TR, e11, x, E1)


def decompose_theorem1(TR: Ring, A: int) -> CleanExpression:
    """Unique strongly clean expression of ``A`` in ``T_n(R)``.

    ``R`` must be uniquely clean and uniquely bleached (checked; commutative
    bases are bleached automatically).
    """
    TR = _require_triangular(TR)
    R = TR.base
    TR._check(A)
    _require_uniquely_clean(R)
    if not R.is_commutative and analysis.is_uniquely_bleached(R) is not True:
        raise PreconditionViolated(f"base ring {R.expr} is not uniquely bleached")
    E = _theorem1(TR, A)
    U = TR.sub(A, E)
    if TR.mul(E, E) != E:
        raise InternalCheckFailed(f"assembled E={E} is not idempotent")
    if TR.mul(E, A) != TR.mul(A, E):
        raise InternalCheckFailed(f"assembled E={E} does not commute with A={A}")
    if not is_tri_unit(TR, U):
        raise InternalCheckFailed(f"A - E = {U} is not a unit")
    return CleanExpression(TR, int(A), E, U, commuting=True)


# -- double commutant decompositions over a commutative uniquely clean base ------


def _residue_idempotent(R: Ring, a: int) -> int:
    E = analysis.idempotents(R)
    hits = E[analysis.radical_mask(R)[R._sub(a, E)]]
    if len(hits) != 1:
        raise PreconditionViolated(
            f"{a} is congruent to {len(hits)} idempotents modulo J({R.expr})")
    return int(hits[0])


def _comm2_j(TR: TriangularRing, A: int) -> int:
    R = TR.base
    if TR.n == 1:
        return _residue_idempotent(R, A)
    TR1 = _minor(TR)
    a11, alpha, A1 = _split(TR, A)
    e11 = _residue_idempotent(R, a11)
    w11 = R.sub(a11, e11)
    E1 = _comm2_j(TR1, A1)
    W1 = TR1.sub(A1, E1)
    shift = R.sub(R.sub(R.one, R.add(e11, e11)), w11)
    M = TR1.add(W1, TR1.scalar(shift))
    try:
        M_inv = tri_inverse(TR1, M)
    except NotAUnit:
        raise InternalCheckFailed(f"W1 + (1 - 2e11 - w11)I = {M} is not invertible") from None
    beta = row_times(TR1, row_times(TR1, alpha, TR1.sub(E1, TR1.scalar(e11))), M_inv)
    return _join(TR, e11, beta, E1)


def in_comm2(TR: Ring, A: int, X: int) -> bool:
    """Whether ``X`` lies in the double commutant of ``A``.

    Up to EXACT_COMM2_LIMIT elements the double commutant is enumerated in
    full; above it ``X`` is tested against every element of comm(A).
    """
    if TR.order <= EXACT_COMM2_LIMIT:
        dc = analysis.double_commutant(TR, A)
        k = np.searchsorted(dc, X)
        return bool(k < len(dc) and dc[k] == X)
    comm = analysis.commutant(TR, A)
    return bool(np.array_equal(TR.mul(X, comm), TR.mul(comm, X)))


def comm2_j_idempotent(TR: Ring, A: int) -> int:
    """Idempotent ``G`` in comm2(A) with ``A - G`` in the radical."""
    TR = _require_commutative_uc(TR)
    TR._check(A)
    G = _comm2_j(TR, A)
    if TR.mul(G, G) != G:
        raise InternalCheckFailed(f"G={G} is not idempotent")
    if not analysis.in_radical(TR, TR.sub(A, G)):
        raise InternalCheckFailed(f"A - G is not in the radical for A={A}, G={G}")
    if not in_comm2(TR, A, G):
        raise InternalCheckFailed(f"G={G} is not in the double commutant of A={A}")
    return G


def comm2_decompose(TR: Ring, A: int) -> CleanExpression:
    """The unique idempotent ``E`` in comm2(A) with ``A - E`` a unit: ``E = I - G``."""
    G = comm2_j_idempotent(TR, A)
    E = TR.sub(TR.one, G)
    U = TR.sub(A, E)
    if TR.mul(E, E) != E or not is_tri_unit(TR, U):
        raise InternalCheckFailed(f"I - G does not give a clean expression of A={A}")
    return CleanExpression(TR, int(A), E, U, commuting=True, double_commutant=True)


def signed_decompose(TR: Ring, A: int) -> CleanExpression:
    """The unique commuting idempotent ``E`` with ``A - E`` and ``A + E`` units."""
    TR = _require_commutative_uc(TR)
    TR._check(A)
    G = comm2_j_idempotent(TR, TR.mul(A, A))
    E = TR.sub(TR.one, G)
    U = TR.sub(A, E)
    if TR.mul(E, E) != E:
        raise InternalCheckFailed(f"E={E} is not idempotent")
    if TR.mul(E, A) != TR.mul(A, E):
        raise InternalCheckFailed(f"E={E} does not commute with A={A}")
    if not (is_tri_unit(TR, U) and is_tri_unit(TR, TR.add(A, E))):
        raise InternalCheckFailed(f"A - E or A + E is not a unit for A={A}")
    return CleanExpression(TR, int(A), E, U, commuting=True, signed=True)
