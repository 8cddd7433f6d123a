"""
Report sinks.

A sink receives the finished report of a command. Reports go to stdout by
default, or atomically to a file with --out.
"""

import logging
import sys
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, TextIO

from landauer_mbqc.reporting import dumps_report
from landauer_mbqc.utils.file_writer import atomic_write

logger = logging.getLogger(__name__)


class ReportSink(ABC):
    """Abstract destination for JSON reports."""

    @abstractmethod
    def emit(self, report: Dict[str, Any]) -> None:
        """
        Write one report.

        Args:
            report: Report dictionary
        """
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """Where reports go, for console messages."""
        pass


class StdoutSink(ReportSink):
    """Writes reports to stdout (or any text stream)."""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream

    def emit(self, report: Dict[str, Any]) -> None:
        stream = self.stream or sys.stdout
        stream.write(dumps_report(report))
        stream.flush()

    @property
    def description(self) -> str:
        return "stdout"


class FileSink(ReportSink):
    """Writes reports atomically to a file."""

    def __init__(self, path: str):
        self.path = path

    def emit(self, report: Dict[str, Any]) -> None:
        atomic_write(self.path, dumps_report(report))
        logger.info(f"Report written to {self.path}")

    @property
    def description(self) -> str:
        return self.path


def get_sink(out_path: Optional[str]) -> ReportSink:
    """FileSink for a path, StdoutSink otherwise."""
    return FileSink(out_path) if out_path else StdoutSink()
