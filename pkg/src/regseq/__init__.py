"""Numerical diagnostics for strongly regular sequences and their associated functions."""
from .seqcore import QuotientSpec, SeqTable, materialize

__all__ = ["QuotientSpec", "SeqTable", "materialize"]
__version__ = "0.1.0"
