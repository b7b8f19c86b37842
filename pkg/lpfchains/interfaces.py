from __future__ import annotations

from typing import IO, TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from .reports import Report


class ReportWriter(Protocol):
    """Contrato minimo de um gravador de relatorio (CSV, JSON, texto ou XLSX)."""

    binary: bool

    def write(self, report: Report, stream: IO) -> None:
        """Grava o relatorio no fluxo informado."""
        ...
