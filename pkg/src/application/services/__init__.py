"""
Application Services

Services that compute groups and run checks over the elimination backend.
"""

from .algebra_service import AlgebraService
from .cyclic_service import CyclicService
from .goodwillie_service import GoodwillieService
from .group_service import GroupService
from .kahler_service import KahlerService
from .milnor_service import MilnorService
from .spectral_service import SpectralService
from .verification_service import VerificationService

__all__ = [
    "AlgebraService",
    "CyclicService",
    "GoodwillieService",
    "GroupService",
    "KahlerService",
    "MilnorService",
    "SpectralService",
    "VerificationService",
]
