"""Octonion multiplication algebras, Clifford minimal ideals, and finite causal fermion systems."""

__version__ = "0.1.0"
