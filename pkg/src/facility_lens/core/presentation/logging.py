from typing import Optional

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel

console = Console(stderr=True)


class ReportFormatter:
    """Rich markup for diagnostics on stderr; results never go through here."""

    @staticmethod
    def get_intro_panel(command: str, mechanism: str, detail: str = "") -> Panel:
        msg = f"[bold blue]facility-lens[/bold blue] {command} for [cyan]{escape(mechanism)}[/cyan]"
        if detail:
            msg += f" ({escape(detail)})"
        return Panel(msg, expand=False)

    @staticmethod
    def format_phase(phase: str) -> str:
        return f"\n[bold magenta]>>> Phase: {phase}[/bold magenta]"

    @staticmethod
    def format_error(message: str) -> str:
        return f"[bold red]Error:[/bold red] {escape(message)}"

    @staticmethod
    def format_warning(message: str) -> str:
        return f"[yellow]Warning: {escape(message)}[/yellow]"

    @staticmethod
    def format_verdict(ok: bool, message: str) -> str:
        if ok:
            return f"[bold green]OK[/bold green] {escape(message)}"
        return f"[bold red]FAIL[/bold red] {escape(message)}"

    @staticmethod
    def format_cell(row: str, objective: str, kind: str, status: str, note: Optional[str] = None) -> str:
        color = {"verified": "green", "refuted": "yellow", "mismatch": "red"}.get(status, "dim")
        msg = f" -> {escape(row)} {objective} {kind}: [{color}]{status}[/{color}]"
        if note:
            msg += f" [dim]{escape(note)}[/dim]"
        return msg

    @staticmethod
    def format_output_written(path: str) -> str:
        return f" -> Report written: [cyan]{escape(path)}[/cyan]"
