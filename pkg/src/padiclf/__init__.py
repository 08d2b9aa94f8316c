"""Exact p-adic Newton/Hodge polygon laboratory for abelian L-functions on P^1."""

from .cyclotomic import INFINITE, CyclotomicInteger
from .polygons import SlopePolygon, ValUnit

__all__ = ["CyclotomicInteger", "INFINITE", "SlopePolygon", "ValUnit"]
