"""Exact tests for which quadrilaterals occur inside transitive orbits."""

__version__ = "0.1.0"
