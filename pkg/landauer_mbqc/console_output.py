"""
Human-readable summaries on stderr using Rich.

stdout carries only the JSON report; everything here goes to stderr.
"""

from typing import Any, Dict, Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from landauer_mbqc.reporting import format_float

# keys shown at the top of every summary, in this order
HEADLINE_KEYS = ("schema", "check", "command", "seed")


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "[green]yes[/green]" if value else "[red]no[/red]"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


class ConsoleReporter:
    """Renders report summaries and errors with Rich."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console(stderr=True)

    def show_report(self, report: Dict[str, Any], destination: str = "stdout") -> None:
        """Table of the scalar fields of a report, then the verdict."""
        title = report.get("schema", "report")
        table = Table(title=f"{title} summary", show_header=True, box=None)
        table.add_column("Field", style="cyan")
        table.add_column("Value", style="white")

        ordered = [k for k in HEADLINE_KEYS if k in report]
        ordered += [k for k in report if k not in ordered and k != "pass"]
        for key in ordered:
            value = report[key]
            if isinstance(value, (dict, list)):
                continue
            table.add_row(key.replace("_", " "), _format_value(value))
        self.console.print(table)

        if "entries" in report:
            self._show_entries(report["entries"])

        if "pass" in report:
            verdict = "[bold green]PASS[/bold green]" if report["pass"] else "[bold red]FAIL[/bold red]"
            self.console.print(f"Verdict: {verdict}   [dim]report -> {destination}[/dim]")

    def _show_entries(self, entries) -> None:
        table = Table(title="Suite entries", show_header=True)
        table.add_column("Entry", style="cyan")
        table.add_column("Expected")
        table.add_column("Result")
        table.add_column("As expected")
        for entry in entries:
            table.add_row(
                entry["name"],
                _format_value(entry["expected_pass"]),
                _format_value(entry["pass"]),
                _format_value(entry["matches_expectation"]),
            )
        self.console.print(table)

    def show_error(self, message: str, error_type: Optional[str] = None) -> None:
        """Error panel."""
        body = f"[bold red]{message}[/bold red]"
        if error_type:
            body += f"\n[dim]Type: {error_type}[/dim]"
        self.console.print(Panel(body, title="Error", border_style="red", expand=False))
