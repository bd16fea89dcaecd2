"""
Domain Models

Core mathematical entities with validation and behavior.
"""

from .abelian_group import FPAbelianGroup, GroupHomomorphism
from .algebra import FinAlgebra, RingElement
from .algebra_config import AlgebraConfig, LoadedAlgebra
from .coefficients import INTEGERS, RATIONALS, Coefficients
from .complexes import GradedComplexSlice, MixedComplex, OperatorMatrix, TensorSpace
from .differentials import DifferentialModule
from .int_matrix import IntMatrix
from .nilpotent_pair import SplitNilpotentPair
from .report import GroupSummary, Report, Verdict
from .spectral import Bicomplex
from .symbols import DennisSteinPresentation, SymbolPresentation, UnitGroup
from .units import UnitTable

__all__ = [
    "AlgebraConfig",
    "Bicomplex",
    "Coefficients",
    "DennisSteinPresentation",
    "DifferentialModule",
    "FinAlgebra",
    "FPAbelianGroup",
    "GradedComplexSlice",
    "GroupHomomorphism",
    "GroupSummary",
    "INTEGERS",
    "IntMatrix",
    "LoadedAlgebra",
    "MixedComplex",
    "OperatorMatrix",
    "RATIONALS",
    "Report",
    "RingElement",
    "SplitNilpotentPair",
    "SymbolPresentation",
    "TensorSpace",
    "UnitGroup",
    "UnitTable",
    "Verdict",
]
