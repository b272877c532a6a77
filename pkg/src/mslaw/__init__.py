"""Metric symplectic Lie algebras via quadratic extensions, in exact arithmetic."""
