"""Exact computation in finite rings: clean decompositions in triangular matrix rings."""

from .errors import RingLabError
from .rings import (
    PolyQuotient,
    Product,
    Quotient,
    Ring,
    Triangular,
    TriMatrix,
    Zn,
    arith,
    enumerate_elements,
    make_ring,
    tri_pack,
    tri_unpack,
)

__version__ = "0.1.0"

__all__ = [
    "PolyQuotient",
    "Product",
    "Quotient",
    "Ring",
    "RingLabError",
    "Triangular",
    "TriMatrix",
    "Zn",
    "arith",
    "enumerate_elements",
    "make_ring",
    "tri_pack",
    "tri_unpack",
]
