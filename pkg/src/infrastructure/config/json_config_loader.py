"""
JSON Algebra Config Loader

Concrete IAlgebraConfigLoader reading the JSON format described by
algebra_config.schema.json.
"""

import json
import logging
from pathlib import Path

from ...domain.exceptions import ParseError
from ...domain.models.algebra_config import AlgebraConfig
from ...domain.validators.config_validator import ConfigValidator

logger = logging.getLogger(__name__)


class JsonAlgebraConfigLoader:
    """
    Loads algebra configs from JSON files.

    Syntax errors carry the byte offset, line and column reported by the
    json module; everything else is checked by ConfigValidator.
    """

    def __init__(self, encoding: str = "utf-8"):
        self._encoding = encoding

    def load(self, path: str) -> AlgebraConfig:
        text = Path(path).read_text(encoding=self._encoding)
        logger.debug(f"read {len(text)} characters from {path}")
        return self.loads(text, source=str(path))

    def loads(self, text: str, source: str = "<string>") -> AlgebraConfig:
        """
        Raises:
            ParseError: On malformed JSON
            ConfigValidationError: On schema violations

        Examples:
            >>> JsonAlgebraConfigLoader().loads('{"coefficients": ')
            Traceback (most recent call last):
            ParseError: Expecting value in <string> (line 1, column 18, byte offset 17)
        """
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            offset = len(e.doc[:e.pos].encode(self._encoding))
            raise ParseError(f"{e.msg} in {source}", offset=offset, line=e.lineno, column=e.colno) from e
        config = ConfigValidator.validate(document, source=source)
        logger.debug(f"validated {config.kind} config {config.label}")
        return config
