"""
Exact Elimination

Integer and field elimination behind IEliminationBackend.
"""

from .backend import ExactEliminationBackend

__all__ = ["ExactEliminationBackend"]
