from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any, Iterable, Sequence

try:
    from openpyxl import Workbook
    from openpyxl.styles import Font
except ImportError:
    Workbook = None
    Font = None

from .chains import Chain
from .constants import FORMAT_CSV, FORMAT_HUMAN, FORMAT_JSON, FORMAT_XLSX
from .errors import ChainFormatError, DependencyMissingError
from .interfaces import ReportWriter

logger = logging.getLogger(__name__)

_TRUE_FLAGS = {"1", "true", "yes"}


@dataclass
class Report:
    """Resultado tabular de um comando, com representacoes alternativas opcionais.

    `payload` substitui a lista de registros no JSON e `lines` substitui a tabela
    no formato texto.
    """

    kind: str
    columns: list[str]
    rows: Iterable[Sequence[Any]]
    payload: Any = None
    lines: list[str] | None = None
    exit_code: int = 0

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def _csv_cell(value):
    """Celula CSV: vazio para None e booleanos em minusculas, como no JSON."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


class CsvReportWriter:
    """CSV separado por virgula, sem BOM, quebra de linha \\n."""

    binary = False

    def write(self, report: Report, stream: IO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([_csv_cell(value) for value in row])


class JsonReportWriter:
    """JSON com as mesmas chaves do cabecalho CSV."""

    binary = False

    def write(self, report: Report, stream: IO) -> None:
        data = report.payload if report.payload is not None else report.records()
        json.dump(data, stream, ensure_ascii=False, indent=2)
        stream.write("\n")


class HumanReportWriter:
    """Texto alinhado para leitura no terminal."""

    binary = False

    def write(self, report: Report, stream: IO) -> None:
        if report.lines is not None:
            for line in report.lines:
                stream.write(f"{line}\n")
            return
        rows = [["" if value is None else str(value) for value in row] for row in report.rows]
        widths = [len(column) for column in report.columns]
        for row in rows:
            widths = [max(width, len(cell)) for width, cell in zip(widths, row)]
        stream.write("  ".join(c.rjust(w) for c, w in zip(report.columns, widths)).rstrip() + "\n")
        for row in rows:
            stream.write("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n")


class XlsxReportWriter:
    """Planilha com cabecalho em negrito, uma aba com o nome do comando."""

    binary = True

    def write(self, report: Report, stream: IO) -> None:
        if Workbook is None:
            raise DependencyMissingError(
                "A biblioteca openpyxl não está instalada. Instale para habilitar a geração de XLSX."
            )
        wb = Workbook()
        ws = wb.active
        ws.title = report.kind[:31]
        ws.append(list(report.columns))
        for cell in ws[1]:
            cell.font = Font(bold=True)
        for row in report.rows:
            ws.append(list(row))
        wb.save(stream)


_WRITERS: dict[str, ReportWriter] = {
    FORMAT_CSV: CsvReportWriter(),
    FORMAT_JSON: JsonReportWriter(),
    FORMAT_HUMAN: HumanReportWriter(),
    FORMAT_XLSX: XlsxReportWriter(),
}


def writer_for(fmt: str) -> ReportWriter:
    """Retorna o gravador do formato pedido."""
    try:
        return _WRITERS[fmt]
    except KeyError as exc:
        raise ValueError(f"Formato de saída desconhecido: {fmt!r}.") from exc


def chain_rows(chain: Chain) -> list[tuple[int, int, int]]:
    """Linhas i,a,p (i a partir de 1)."""
    return [(i + 1, a, p) for i, (a, p) in enumerate(chain)]


def chain_records(chain: Chain) -> list[dict[str, int]]:
    """Lista JSON [{a, p}, ...]."""
    return [{"a": a, "p": p} for a, p in chain]


def _pair(record: dict, position: int) -> tuple[int, int]:
    """Extrai (a, p) de um registro, com a posicao na mensagem de erro."""
    try:
        return int(record["a"]), int(record["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ChainFormatError(f"Elemento {position} da cadeia sem inteiros a e p válidos.") from exc


def _is_overshoot(record: dict) -> bool:
    """Linha marcada com overshoot_flag verdadeiro."""
    return str(record.get("overshoot_flag", "")).strip().lower() in _TRUE_FLAGS


def read_chain_csv(stream: IO) -> list[tuple[int, int]]:
    """Le pares (a, p) de um CSV com colunas a e p; linhas com overshoot_flag=1 ficam de fora."""
    reader = csv.DictReader(stream)
    if not reader.fieldnames or not {"a", "p"} <= set(reader.fieldnames):
        raise ChainFormatError("CSV de cadeia precisa das colunas a e p.")
    return [_pair(record, i) for i, record in enumerate(reader) if not _is_overshoot(record)]


def read_chain_json(stream: IO) -> list[tuple[int, int]]:
    """Le pares (a, p) de uma lista JSON ou de um objeto com chave witness/chain."""
    try:
        data = json.load(stream)
    except json.JSONDecodeError as exc:
        raise ChainFormatError(f"JSON de cadeia inválido: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("witness", data.get("chain"))
    if not isinstance(data, list):
        raise ChainFormatError("JSON de cadeia deve ser uma lista de {a, p}.")
    records = [record for record in data if isinstance(record, dict)]
    if len(records) != len(data):
        raise ChainFormatError("JSON de cadeia deve conter apenas objetos {a, p}.")
    return [_pair(record, i) for i, record in enumerate(records) if not _is_overshoot(record)]


def load_chain(path: str | Path, n: int) -> Chain:
    """Carrega uma cadeia de arquivo .json ou .csv sob a cota n."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            if path.suffix.lower() == ".json":
                pairs = read_chain_json(handle)
            else:
                pairs = read_chain_csv(handle)
    except OSError as exc:
        raise ChainFormatError(f"Não foi possível ler {path}: {exc}") from exc
    logger.info("Cadeia lida de %s: %d elementos", path, len(pairs))
    return Chain.from_pairs(n, pairs)
