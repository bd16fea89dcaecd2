"""
Application Interfaces

Abstractions the infrastructure layer implements.
"""

from .config_loader import IAlgebraConfigLoader
from .elimination_backend import IEliminationBackend, ISubQuotient, ISubQuotientMap

__all__ = ["IAlgebraConfigLoader", "IEliminationBackend", "ISubQuotient", "ISubQuotientMap"]
