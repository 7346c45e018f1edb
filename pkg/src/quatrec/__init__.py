"""Exact checks of two commutator hypotheses and constructive quaternion recognition."""

__version__ = "0.1.0"
