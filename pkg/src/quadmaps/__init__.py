"""Exact certification of harmonic and biharmonic quadratic maps between spheres."""

from .catalog import get as catalog_entry
from .quadmap import Classification, QuadraticSphericalMap, Verdict, classify, transform
from .scalar import EXACT, FLOAT, Backend, Surd

__all__ = [
    "Backend",
    "Classification",
    "EXACT",
    "FLOAT",
    "QuadraticSphericalMap",
    "Surd",
    "Verdict",
    "catalog_entry",
    "classify",
    "transform",
]

__version__ = "0.1.0"
