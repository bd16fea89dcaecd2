"""
Output Formatters

Format reports for the terminal and as JSON.
"""

from .console_formatter import ConsoleFormatter
from .json_formatter import JSONFormatter

__all__ = ["ConsoleFormatter", "JSONFormatter"]
