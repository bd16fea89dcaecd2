"""
Domain Validators

Stateless checks for structure constants, element strings and configs.
"""

from .algebra_validator import AlgebraValidator
from .config_validator import ConfigValidator

__all__ = ["AlgebraValidator", "ConfigValidator"]
