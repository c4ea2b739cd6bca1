"""Structural sets and ring-class predicates, all by exhaustive search.

Every set is returned as a sorted int64 array of element indices.  Results
that are reused across predicates (units, idempotents, radical) are memoized
on the ring, which is otherwise immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import CapExceeded, NotAUnit
from .rings import QuotientRing, Quotient, Ring, TriangularRing, _chunk, make_ring

CLASSIFY_CAP = 2**16
BLEACHED_BUDGET = 2**26

PREDICATES = (
    "clean",
    "uniquely_clean",
    "strongly_clean",
    "uniquely_strongly_clean",
    "abelian",
    "boolean",
    "local",
    "uniquely_bleached",
    "residue_is_Z2",
)


def _rows(R: Ring, rows: np.ndarray):
    """Yield ``(start, block)`` with ``block`` a column of row indices."""
    step = _chunk(R.order)
    for start in range(0, len(rows), step):
        yield start, rows[start:start + step, None]


def unit_mask(R: Ring) -> np.ndarray:
    """Boolean mask of units.

    In a finite ring ``l_a`` is a bijection iff 1 is in its image, so a unit is
    an element with ``a*x == 1`` for some ``x``.
    """
    if "unit_mask" not in R.memo:
        x = R.all
        mask = np.zeros(R.order, dtype=bool)
        for start, a in _rows(R, x):
            mask[start:start + len(a)] = (R._mul(a, x[None, :]) == R.one).any(axis=1)
        mask.flags.writeable = False
        R.memo["unit_mask"] = mask
    return R.memo["unit_mask"]


def units(R: Ring) -> np.ndarray:
    return np.flatnonzero(unit_mask(R))


def is_unit(R: Ring, a: int) -> bool:
    return bool(unit_mask(R)[R._check(a)])


def inverse(R: Ring, a: int) -> int:
    """Two-sided inverse of ``a``; raises NotAUnit."""
    cache = R.memo.setdefault("inverse", {})
    if a in cache:
        return cache[a]
    if not is_unit(R, a):
        raise NotAUnit(f"{a} is not a unit of {R.expr}")
    hits = np.flatnonzero(R._mul(a, R.all) == R.one)
    inv = int(hits[0])
    if len(hits) != 1 or R.mul(inv, a) != R.one:
        raise NotAUnit(f"{a} has no two-sided inverse in {R.expr}")
    cache[a] = inv
    return inv


def idempotents(R: Ring) -> np.ndarray:
    if "idempotents" not in R.memo:
        x = R.all
        found = np.flatnonzero(R._mul(x, x) == x)
        found.flags.writeable = False
        R.memo["idempotents"] = found
    return R.memo["idempotents"]


def radical_by_criterion(R: Ring) -> np.ndarray:
    """``a`` is in J(R) iff ``1 - x*a`` is a unit for every ``x``."""
    units_ = unit_mask(R)
    x = R.all
    mask = np.zeros(R.order, dtype=bool)
    for start, a in _rows(R, x):
        mask[start:start + len(a)] = units_[R._sub(R.one, R._mul(x[None, :], a))].all(axis=1)
    return np.flatnonzero(mask)


def radical_structural(R: TriangularRing) -> np.ndarray:
    """J(T_n(B)): matrices whose diagonal lies in J(B), corners arbitrary."""
    in_base = np.zeros(R.base.order, dtype=bool)
    in_base[jacobson_radical(R.base)] = True
    digits = R.digits(R.all)
    mask = np.ones(R.order, dtype=bool)
    for i in range(R.n):
        mask &= in_base[digits[R.pos(i, i)]]
    return np.flatnonzero(mask)


def jacobson_radical(R: Ring, method: str = "auto") -> np.ndarray:
    """J(R); ``method`` is ``criterion``, ``structural`` or ``auto``."""
    if method == "criterion":
        return radical_by_criterion(R)
    if method == "structural":
        if not isinstance(R, TriangularRing):
            raise ValueError("structural radical needs a triangular ring")
        return radical_structural(R)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if "radical" not in R.memo:
        J = radical_structural(R) if isinstance(R, TriangularRing) else radical_by_criterion(R)
        J.flags.writeable = False
        R.memo["radical"] = J
    return R.memo["radical"]


def radical_mask(R: Ring) -> np.ndarray:
    if "radical_mask" not in R.memo:
        mask = np.zeros(R.order, dtype=bool)
        mask[jacobson_radical(R)] = True
        mask.flags.writeable = False
        R.memo["radical_mask"] = mask
    return R.memo["radical_mask"]


def in_radical(R: Ring, a: int) -> bool:
    return bool(radical_mask(R)[R._check(a)])


def commutant(R: Ring, a: int) -> np.ndarray:
    x = R.all
    return np.flatnonzero(R._mul(a, x) == R._mul(x, a))


def double_commutant(R: Ring, a: int) -> np.ndarray:
    """Elements commuting with everything that commutes with ``a``."""
    comm = commutant(R, a)
    x = R.all
    mask = np.ones(R.order, dtype=bool)
    for _, y in _rows(R, comm):
        mask &= (R._mul(y, x[None, :]) == R._mul(x[None, :], y)).all(axis=0)
    return np.flatnonzero(mask)


def center(R: Ring) -> np.ndarray:
    return double_commutant(R, R.one)


def residue_ring(R: Ring) -> QuotientRing:
    """R/J(R) as a Quotient ring over ``R.expr``."""
    gens = tuple(int(j) for j in jacobson_radical(R))
    return make_ring(Quotient(R.expr, gens))


def nilpotency_index(R: Ring, a: int) -> int | None:
    """Smallest ``n >= 1`` with ``a**n == 0``, or None if ``a`` is not nilpotent."""
    power = a
    for n in range(1, R.order + 1):
        if power == R.zero:
            return n
        power = R.mul(power, a)
    return None


# -- predicates --------------------------------------------------------------


def expression_counts(R: Ring, commuting: bool) -> np.ndarray:
    """Per element, how many idempotents ``e`` make ``a - e`` a unit.

    With ``commuting`` only idempotents in comm(a) count.  Counts are capped
    at 2: uniqueness only needs to tell 0, 1 and many apart.
    """
    E = idempotents(R)
    units_ = unit_mask(R)
    x = R.all
    counts = np.zeros(R.order, dtype=np.int64)
    for start, a in _rows(R, x):
        ok = units_[R._sub(a, E[None, :])]
        if commuting:
            ok &= R._mul(a, E[None, :]) == R._mul(E[None, :], a)
        counts[start:start + len(a)] = ok.sum(axis=1)
    return np.minimum(counts, 2)


def _expression_witness(R: Ring, a: int, commuting: bool) -> dict:
    E = idempotents(R)
    ok = unit_mask(R)[R._sub(a, E)]
    if commuting:
        ok &= R._mul(a, E) == R._mul(E, a)
    pairs = [{"e": int(e), "u": R.sub(a, int(e))} for e in E[ok][:2]]
    return {"element": int(a), "expressions": pairs}


@dataclass
class Outcome:
    holds: bool | None
    witness: dict | None = None


@dataclass
class PropertyReport:
    ring: str
    cardinality: int
    outcomes: dict[str, Outcome] = field(default_factory=dict)

    def __getattr__(self, name: str) -> Any:
        outcomes = self.__dict__.get("outcomes", {})
        if name in outcomes:
            return outcomes[name].holds
        raise AttributeError(name)

    def to_dict(self) -> dict:
        return {
            name: {"holds": o.holds, "witness": o.witness}
            for name, o in self.outcomes.items()
        }


def _clean_outcomes(R: Ring, commuting: bool) -> tuple[Outcome, Outcome]:
    counts = expression_counts(R, commuting)
    missing = np.flatnonzero(counts == 0)
    clean = Outcome(True) if len(missing) == 0 else Outcome(
        False, _expression_witness(R, int(missing[0]), commuting))
    bad = np.flatnonzero(counts != 1)
    unique = Outcome(True) if len(bad) == 0 else Outcome(
        False, _expression_witness(R, int(bad[0]), commuting))
    return clean, unique


def abelian_outcome(R: Ring) -> Outcome:
    x = R.all
    for e in idempotents(R):
        off = np.flatnonzero(R._mul(e, x) != R._mul(x, e))
        if len(off):
            return Outcome(False, {"idempotent": int(e), "element": int(off[0])})
    return Outcome(True)


def boolean_outcome(R: Ring) -> Outcome:
    x = R.all
    off = np.flatnonzero(R._mul(x, x) != x)
    return Outcome(True) if len(off) == 0 else Outcome(False, {"element": int(off[0])})


def local_outcome(R: Ring) -> Outcome:
    units_ = unit_mask(R)
    x = R.all
    off = np.flatnonzero(~units_ & ~units_[R._sub(R.one, x)])
    return Outcome(True) if len(off) == 0 else Outcome(False, {"element": int(off[0])})


def residue_outcome(R: Ring) -> Outcome:
    size = R.order // len(jacobson_radical(R))
    return Outcome(size == 2, None if size == 2 else {"residue_cardinality": size})


def bleached_outcome(R: Ring, budget: int = BLEACHED_BUDGET) -> Outcome:
    J, U = jacobson_radical(R), units(R)
    work = len(J) * len(U) * R.order
    if work > budget:
        return Outcome(None, {"skipped": f"needs {work} products, budget is {budget}"})
    result = is_uniquely_bleached(R)
    return Outcome(True) if result is True else Outcome(False, result)


def is_uniquely_bleached(R: Ring) -> bool | dict:
    """True, or the first ``(a, b, direction)`` where a map fails to be injective.

    ``x -> a*x - x*b`` is additive, so it is injective iff its kernel is {0};
    pairs are scanned with ``a`` in J(R) and ``b`` in U(R) in index order.
    """
    if "bleached" in R.memo:
        return R.memo["bleached"]
    R.memo["bleached"] = _bleached_scan(R)
    return R.memo["bleached"]


def _bleached_scan(R: Ring) -> bool | dict:
    x = R.all
    for a in jacobson_radical(R):
        a = int(a)
        ax, xa = R._mul(a, x), R._mul(x, a)
        for _, b in _rows(R, units(R)):
            xb, bx = R._mul(x[None, :], b), R._mul(b, x[None, :])
            left_ok = (ax[None, :] == xb).sum(axis=1) == 1
            right_ok = (bx == xa[None, :]).sum(axis=1) == 1
            bad = np.flatnonzero(~(left_ok & right_ok))
            if len(bad):
                k = bad[0]
                direction = "l_a-r_b" if not left_ok[k] else "l_b-r_a"
                return {"a": a, "b": int(b[k, 0]), "direction": direction}
    return True


def classify(R: Ring, properties=PREDICATES, cap: int = CLASSIFY_CAP,
             bleached_budget: int = BLEACHED_BUDGET) -> PropertyReport:
    """Decide each requested predicate exhaustively.

    Raises CapExceeded above ``cap`` elements.  ``uniquely_bleached`` is
    reported as undecided (``holds=None``) when its scan exceeds
    ``bleached_budget`` products.
    """
    if R.order > cap:
        raise CapExceeded(f"classify is limited to {cap} elements, {R.expr} has {R.order}")
    unknown = set(properties) - set(PREDICATES)
    if unknown:
        raise ValueError(f"unknown predicates: {sorted(unknown)}")
    report = PropertyReport(str(R.expr), R.order)
    wanted = set(properties)
    if wanted & {"clean", "uniquely_clean"}:
        report.outcomes["clean"], report.outcomes["uniquely_clean"] = _clean_outcomes(R, False)
    if wanted & {"strongly_clean", "uniquely_strongly_clean"}:
        sc, usc = _clean_outcomes(R, True)
        report.outcomes["strongly_clean"], report.outcomes["uniquely_strongly_clean"] = sc, usc
    if "abelian" in wanted:
        report.outcomes["abelian"] = abelian_outcome(R)
    if "boolean" in wanted:
        report.outcomes["boolean"] = boolean_outcome(R)
    if "local" in wanted:
        report.outcomes["local"] = local_outcome(R)
    if "uniquely_bleached" in wanted:
        report.outcomes["uniquely_bleached"] = bleached_outcome(R, bleached_budget)
    if "residue_is_Z2" in wanted:
        report.outcomes["residue_is_Z2"] = residue_outcome(R)
    report.outcomes = {k: report.outcomes[k] for k in PREDICATES if k in wanted}
    return report
