"""
JSON Formatter

Serializes reports in the layout of report.schema.json.
"""

import logging

from ...domain.models.report import Report

logger = logging.getLogger(__name__)


class JSONFormatter:
    """Deterministic JSON rendering: fixed field order, no timestamps unless timing is on."""

    def __init__(self, indent: int = 2):
        self._indent = indent

    def format(self, report: Report) -> str:
        return report.to_json(indent=self._indent)

    def write_to_file(self, report: Report, output_path: str) -> None:
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(self.format(report))
            f.write("\n")
        logger.info(f"report written to {output_path}")
