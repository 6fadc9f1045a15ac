"""Exact counting for pinned product sets, multiplicative energies and
collinear triples over Q and Q(i)."""

__version__ = "0.1.0"
