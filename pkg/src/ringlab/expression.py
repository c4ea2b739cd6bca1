"""The clean-expression record shared by the decomposition algorithms and the oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .rings import Ring


@dataclass(frozen=True)
class CleanExpression:
    """``a = e + u`` with ``e`` idempotent and ``u`` a unit.

    Flags record side conditions; ``None`` means the condition was not
    evaluated.
    """

    ring: Ring
    a: int
    e: int
    u: int
    commuting: Optional[bool] = None
    double_commutant: Optional[bool] = None
    signed: Optional[bool] = None

    @property
    def pair(self) -> tuple[int, int]:
        return self.e, self.u
