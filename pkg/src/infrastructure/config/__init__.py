"""
Configuration Infrastructure

Environment settings and the JSON algebra-config loader.
"""

from .json_config_loader import JsonAlgebraConfigLoader
from .settings import CAPACITY_VARIABLE, Settings

__all__ = ["JsonAlgebraConfigLoader", "Settings", "CAPACITY_VARIABLE"]
