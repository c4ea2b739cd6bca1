"""The operator equation ``a*x - x*b = v`` over a finite ring.

When one coefficient is a unit and the other lies in the radical, the map
``x -> a*x - x*b`` is inverted by a finite geometric series:

* ``a`` a unit, ``b**n == 0``::

      x = a^-1 v + a^-2 v b + ... + a^-n v b^(n-1)

* ``a**m == 0``, ``b`` a unit (the mirror image)::

      x = -(v b^-1 + a v b^-2 + ... + a^(m-1) v b^-m)

If instead only a power ``b**n`` (resp. ``a**m``) is central, the same series
lands on ``(1 - a^-n b^n) v`` (resp. ``v (1 - a^m b^-m)``) and one extra
multiplication by the inverse of that correction factor finishes the job.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import analysis
from .errors import InternalCheckFailed, NotAUnit, NotBijective, PreconditionViolated
from .rings import Ring

MODES = ("a_unit_b_radical", "a_radical_b_unit", "generic")


@dataclass(frozen=True)
class LRProblem:
    ring: Ring
    a: int
    b: int
    v: int
    mode: str = "generic"

    def __post_init__(self):
        R = self.ring
        for name in ("a", "b", "v"):
            R._check(getattr(self, name))
        if self.mode == "a_unit_b_radical":
            if not (analysis.is_unit(R, self.a) and analysis.in_radical(R, self.b)):
                raise PreconditionViolated("mode a_unit_b_radical needs a in U(R) and b in J(R)")
        elif self.mode == "a_radical_b_unit":
            if not (analysis.in_radical(R, self.a) and analysis.is_unit(R, self.b)):
                raise PreconditionViolated("mode a_radical_b_unit needs a in J(R) and b in U(R)")
        elif self.mode != "generic":
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def detect(cls, R: Ring, a: int, b: int, v: int) -> "LRProblem":
        """Pick the mode from where ``a`` and ``b`` live."""
        if analysis.is_unit(R, a) and analysis.in_radical(R, b):
            return cls(R, a, b, v, "a_unit_b_radical")
        if analysis.in_radical(R, a) and analysis.is_unit(R, b):
            return cls(R, a, b, v, "a_radical_b_unit")
        return cls(R, a, b, v, "generic")


def apply_lr(R: Ring, a, b, x):
    """``a*x - x*b``; ``x`` may be an index array."""
    return R.sub(R.mul(a, x), R.mul(x, b))


def is_lr_bijective(R: Ring, a: int, b: int) -> bool:
    # additive map: injective iff the kernel is {0}
    return int(np.count_nonzero(apply_lr(R, a, b, R.all) == R.zero)) == 1


def series_unit_left(R: Ring, a: int, b: int, v, n: int):
    """``sum_{k=1..n} a^-k v b^(k-1)``; accepts an index array for ``v``."""
    a_inv = analysis.inverse(R, a)
    left, right = a_inv, R.one
    total = R.zero
    for _ in range(n):
        total = R.add(total, R.mul(R.mul(left, v), right))
        left, right = R.mul(left, a_inv), R.mul(right, b)
    return total


def series_unit_right(R: Ring, a: int, b: int, v, m: int):
    """``-sum_{k=0..m-1} a^k v b^-(k+1)``; accepts an index array for ``v``."""
    b_inv = analysis.inverse(R, b)
    left, right = R.one, b_inv
    total = R.zero
    for _ in range(m):
        total = R.add(total, R.mul(R.mul(left, v), right))
        left, right = R.mul(left, a), R.mul(right, b_inv)
    return R.neg(total)


def _is_central(R: Ring, c: int) -> bool:
    x = R.all
    return bool(np.array_equal(R.mul(c, x), R.mul(x, c)))


def _series_power(R: Ring, radical: int, power: int | None) -> int:
    if power is not None:
        if power < 1:
            raise PreconditionViolated("series length must be positive")
        if not _is_central(R, R.power(radical, power)):
            raise PreconditionViolated(f"{radical}^{power} is not central")
        return power
    n = analysis.nilpotency_index(R, radical)
    if n is None:
        raise PreconditionViolated(f"{radical} is not nilpotent; give a central power")
    return n


def lr_inverse(problem: LRProblem, power: int | None = None):
    """The inverse of ``l_a - r_b`` as a vectorized callable on indices.

    ``power`` defaults to the nilpotency index of the radical-side element;
    any power whose value is central may be given instead.
    """
    R, a, b = problem.ring, problem.a, problem.b
    if problem.mode == "a_unit_b_radical":
        n = _series_power(R, b, power)
        correction = R.sub(R.one, R.mul(R.power(analysis.inverse(R, a), n), R.power(b, n)))
        try:
            fix = analysis.inverse(R, correction)
        except NotAUnit:
            raise PreconditionViolated("1 - a^-n b^n is not a unit") from None
        return lambda v: R.mul(fix, series_unit_left(R, a, b, v, n))
    if problem.mode == "a_radical_b_unit":
        m = _series_power(R, a, power)
        correction = R.sub(R.one, R.mul(R.power(a, m), R.power(analysis.inverse(R, b), m)))
        try:
            fix = analysis.inverse(R, correction)
        except NotAUnit:
            raise PreconditionViolated("1 - a^m b^-m is not a unit") from None
        return lambda v: R.mul(series_unit_right(R, a, b, v, m), fix)
    raise PreconditionViolated("the series method needs one unit and one radical coefficient")


def solve_brute(R: Ring, a: int, b: int, v: int) -> int:
    hits = np.flatnonzero(apply_lr(R, a, b, R.all) == v)
    if len(hits) != 1:
        raise NotBijective(f"a*x - x*b = {v} has {len(hits)} solutions in {R.expr}")
    return int(hits[0])


def solve_lr(problem: LRProblem, method: str = "series", power: int | None = None) -> int:
    """The unique ``x`` with ``a*x - x*b = v``, verified before returning."""
    R, a, b, v = problem.ring, problem.a, problem.b, problem.v
    if method == "series":
        x = int(lr_inverse(problem, power)(v))
    elif method == "brute":
        x = solve_brute(R, a, b, v)
    else:
        raise ValueError(f"unknown method {method!r}")
    if apply_lr(R, a, b, x) != v:
        raise InternalCheckFailed(f"{method} solution {x} leaves a nonzero residual")
    return x
