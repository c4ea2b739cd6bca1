"""Brute-force enumeration of clean-type expressions.

This module only touches ring arithmetic.  It recomputes idempotents and
units itself (units by two-sided inverse search) so that it can falsify both
the analysis predicates and the decomposition algorithms.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .expression import CleanExpression
from .rings import Ring, _chunk

ORACLE_CAP = 2**16
KINDS = ("clean", "strongly_clean", "comm2", "signed")


@dataclass(frozen=True)
class ExpressionList:
    ring: Ring
    a: int
    kind: str
    expressions: tuple[CleanExpression, ...]

    def __len__(self):
        return len(self.expressions)

    def __iter__(self):
        return iter(self.expressions)

    @property
    def idempotents(self) -> list[int]:
        return [x.e for x in self.expressions]


class _Tables:
    """Per-ring idempotents and unit mask, computed once."""

    _cache: dict[int, "_Tables"] = {}

    def __init__(self, R: Ring):
        x = R.all
        self.idempotents = np.flatnonzero(R._mul(x, x) == x)
        self.idempotents.flags.writeable = False
        self.units = _unit_mask_by_powers(R)

    @classmethod
    def of(cls, R: Ring) -> "_Tables":
        key = id(R)
        if key not in cls._cache:
            cls._cache[key] = (R, cls(R))
        return cls._cache[key][1]


def _unit_mask_by_powers(R: Ring) -> np.ndarray:
    """Units via idempotent powers.

    In a finite ring some power ``a**m`` of every element is idempotent, and
    ``a`` is a unit exactly when that idempotent is 1.
    """
    mask = np.zeros(R.order, dtype=bool)
    active = R.all.copy()
    power = active.copy()
    for _ in range(R.order + 1):
        settled = R._mul(power, power) == power
        mask[active[settled]] = power[settled] == R.one
        active, power = active[~settled], power[~settled]
        if len(active) == 0:
            break
        power = R._mul(power, active)
    else:
        raise AssertionError("power sequence did not reach an idempotent")
    mask.flags.writeable = False
    return mask


def _check_cap(R: Ring, cap: int):
    if R.order > cap:
        raise CapExceeded(f"the oracle is limited to {cap} elements, {R.expr} has {R.order}")


def _commutes_with_all(R: Ring, e: int, others: np.ndarray) -> bool:
    return bool(np.array_equal(R._mul(e, others), R._mul(others, e)))


def expressions(R: Ring, a: int, kind: str = "clean", cap: int = ORACLE_CAP) -> ExpressionList:
    """Every idempotent ``e`` satisfying the side conditions of ``kind`` for ``a``."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    _check_cap(R, cap)
    a = R._check(a)
    tables = _Tables.of(R)
    E = tables.idempotents
    diff = R._sub(a, E)
    ok = tables.units[diff]
    commuting = R._mul(a, E) == R._mul(E, a)
    if kind != "clean":
        ok &= commuting
    signed = ok & tables.units[R._add(a, E)] & commuting
    if kind == "signed":
        ok = signed
    in_comm2 = None
    if kind == "comm2":
        x = R.all
        comm = x[R._mul(a, x) == R._mul(x, a)]
        in_comm2 = np.zeros(len(E), dtype=bool)
        for k in np.flatnonzero(ok):
            in_comm2[k] = _commutes_with_all(R, int(E[k]), comm)
        ok &= in_comm2
    found = []
    for k in np.flatnonzero(ok):
        found.append(CleanExpression(
            R, int(a), int(E[k]), int(diff[k]),
            commuting=bool(commuting[k]),
            double_commutant=None if in_comm2 is None else bool(in_comm2[k]),
            signed=bool(signed[k]),
        ))
    return ExpressionList(R, int(a), kind, tuple(found))


def expression_counts(R: Ring, kind: str = "clean", cap: int = ORACLE_CAP) -> np.ndarray:
    """Number of ``kind`` expressions for every element, in index order."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    _check_cap(R, cap)
    if kind == "comm2":
        return np.array([len(expressions(R, a, kind, cap)) for a in R.elements()])
    tables = _Tables.of(R)
    E = tables.idempotents[None, :]
    x = R.all
    counts = np.zeros(R.order, dtype=np.int64)
    step = _chunk(E.shape[1])
    for start in range(0, R.order, step):
        a = x[start:start + step, None]
        ok = tables.units[R._sub(a, E)]
        if kind != "clean":
            ok &= R._mul(a, E) == R._mul(E, a)
        if kind == "signed":
            ok &= tables.units[R._add(a, E)]
        counts[start:start + step] = ok.sum(axis=1)
    return counts


def uniqueness_census(R: Ring, kind: str = "clean", cap: int = ORACLE_CAP) -> dict[int, int]:
    """Histogram ``{expression count: number of elements}`` over all of R."""
    counts = expression_counts(R, kind, cap)
    return dict(sorted(Counter(int(c) for c in counts).items()))


def is_uniquely(R: Ring, kind: str = "clean", cap: int = ORACLE_CAP) -> bool:
    return uniqueness_census(R, kind, cap) == {1: R.order}
