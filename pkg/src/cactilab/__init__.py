"""Exact-arithmetic laboratory for framed little discs, cacti, their realizations,
the cacti action on loop spaces and the pure ribbon braid group."""

__version__ = "0.1.0"
