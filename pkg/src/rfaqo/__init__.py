"""Residual automata from quasiorders: constructions, canonicity tests and
an active learner for canonical residual automata."""

__version__ = "0.1.0"
