from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys
import tempfile
from typing import IO, Sequence

from .config import Settings, get_settings, load_env_file
from .constants import (
    COMMAND_ADAPTIVE,
    COMMAND_BOUNDS,
    COMMAND_EXACT,
    COMMAND_GREEDY,
    COMMAND_LPFDUMP,
    COMMAND_PI,
    COMMAND_PRIMESUM,
    COMMAND_SCAN,
    COMMAND_SUMCHECK,
    COMMAND_VALIDATE,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    FORMAT_CSV,
    FORMATS,
)
from .errors import ConfigError, LpfChainsError, ResourceLimitError
from .interfaces import ReportWriter
from .reports import Report, writer_for
from .services import ExperimentService, RunConfig

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s - %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_COMMAND_HELP = {
    COMMAND_EXACT: "g(n) exato (opcionalmente com testemunha)",
    COMMAND_GREEDY: "construcao gulosa com primos em (sqrt n, sqrt(n log n))",
    COMMAND_ADAPTIVE: "construcao adaptativa a partir de --start-bound",
    COMMAND_BOUNDS: "desigualdade construcao <= g(n) <= cota superior para um n",
    COMMAND_SCAN: "varredura de n com razao g(n)/sqrt(n/log n)",
    COMMAND_PRIMESUM: "soma de primos contra a expansao assintotica",
    COMMAND_PI: "pi(x) exato contra a estimativa de dois termos",
    COMMAND_VALIDATE: "valida uma cadeia em CSV ou JSON",
    COMMAND_SUMCHECK: "soma dos primos ate sqrt(n log n) comparada com n",
    COMMAND_LPFDUMP: "despejo m,lpf do fluxo segmentado",
}

_COMMAND_FLAGS = {
    COMMAND_EXACT: ("n", "witness"),
    COMMAND_GREEDY: ("n",),
    COMMAND_ADAPTIVE: ("n", "start_bound", "smooth_tail"),
    COMMAND_BOUNDS: ("n", "exact_cap", "bounds_sweep", "smooth_tail"),
    COMMAND_SCAN: ("range", "geometric", "exact_cap", "bounds_sweep", "smooth_tail"),
    COMMAND_PRIMESUM: ("x", "range", "geometric"),
    COMMAND_PI: ("x", "range", "geometric"),
    COMMAND_VALIDATE: ("file", "n"),
    COMMAND_SUMCHECK: ("n", "range", "geometric"),
    COMMAND_LPFDUMP: ("n",),
}


def _add_flag(parser: argparse.ArgumentParser, name: str) -> None:
    """Registra uma opcao especifica de comando."""
    if name == "n":
        parser.add_argument("--n", help="cota n (aceita 1e6)")
    elif name == "x":
        parser.add_argument("--x", help="argumento x (aceita 1e6)")
    elif name == "range":
        parser.add_argument("--range", help="lo:hi[:passo]")
    elif name == "geometric":
        parser.add_argument("--geometric", action="store_true", help="passo de --range e razao (padrao 10)")
    elif name == "exact_cap":
        parser.add_argument("--exact-cap", help="maior n com g(n) exato (padrao 1e6)")
    elif name == "witness":
        parser.add_argument("--witness", action="store_true", help="inclui uma cadeia otima")
    elif name == "start_bound":
        parser.add_argument("--start-bound", help="maior primo inicial (padrao sqrt(n log n))")
    elif name == "bounds_sweep":
        parser.add_argument("--bounds-sweep", help="lo:hi:quantidade de cotas iniciais")
    elif name == "smooth_tail":
        parser.add_argument("--smooth-tail", action="store_true", help="usa tambem primos <= sqrt(n)")
    elif name == "file":
        parser.add_argument("--file", help="arquivo da cadeia (.csv ou .json)")


def build_parser() -> argparse.ArgumentParser:
    """Monta o parser com um subcomando por operacao."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=FORMAT_CSV)
    common.add_argument("--out", help="arquivo de saida (padrao: stdout)")
    common.add_argument("--threads", help="workers para segmentos e linhas (padrao: nucleos)")
    common.add_argument("--segment-size", help="entradas por segmento do crivo (padrao 2^18)")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        help="nivel de log (padrao LPFCHAINS_LOG_LEVEL)",
    )

    parser = argparse.ArgumentParser(
        prog="lpfchains",
        description="Cadeias com maior fator primo estritamente decrescente: g(n), construcoes e cotas.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, help_text in _COMMAND_HELP.items():
        sub = subparsers.add_parser(command, parents=[common], help=help_text)
        for name in _COMMAND_FLAGS[command]:
            _add_flag(sub, name)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Converte o namespace do argparse em RunConfig."""
    values = vars(args)
    return RunConfig(
        command=args.command,
        n=values.get("n"),
        x=values.get("x"),
        range=values.get("range"),
        geometric=bool(values.get("geometric")),
        segment_size=values.get("segment_size"),
        exact_cap=values.get("exact_cap"),
        format=values.get("format") or FORMAT_CSV,
        out=values.get("out"),
        witness=bool(values.get("witness")),
        start_bound=values.get("start_bound"),
        bounds_sweep=values.get("bounds_sweep"),
        smooth_tail=bool(values.get("smooth_tail")),
        threads=values.get("threads"),
        file=values.get("file"),
    )


def _report_error(kind: str, message: str, stderr: IO) -> None:
    """Mensagem de erro estruturada em uma linha JSON."""
    stderr.write(json.dumps({"error": kind, "message": message}, ensure_ascii=False) + "\n")


def _write_file(writer: ReportWriter, report: Report, path: str) -> None:
    """Grava em um arquivo temporario ao lado de `path` e so renomeia no sucesso."""
    folder = os.path.dirname(os.path.abspath(path))
    kwargs = {} if writer.binary else {"encoding": "utf-8", "newline": ""}
    handle = tempfile.NamedTemporaryFile(
        "wb" if writer.binary else "w",
        dir=folder,
        prefix=".lpfchains-",
        delete=False,
        **kwargs,
    )
    try:
        with handle:
            writer.write(report, handle)
        os.replace(handle.name, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(handle.name)
        raise


def run(
    config: RunConfig,
    settings: Settings | None = None,
    stdout: IO | None = None,
    stderr: IO | None = None,
) -> int:
    """Executa a configuracao e devolve o codigo de saida."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    service = ExperimentService(settings)
    try:
        report = service.run(config)
        writer = writer_for(config.format)
        if config.out:
            _write_file(writer, report, config.out)
        else:
            writer.write(report, stdout)
        return report.exit_code
    except ResourceLimitError as exc:
        _report_error(type(exc).__name__, str(exc), stderr)
        return EXIT_RESOURCE
    except (ValueError, ConfigError) as exc:
        _report_error("UsageError", str(exc), stderr)
        return EXIT_USAGE
    except LpfChainsError as exc:
        _report_error(type(exc).__name__, str(exc), stderr)
        return EXIT_FAILURE
    except Exception as exc:
        logger.exception("Falha inesperada no comando %s", config.command)
        _report_error("InternalError", str(exc), stderr)
        return EXIT_FAILURE


def main(
    argv: Sequence[str] | None = None,
    settings: Settings | None = None,
    stdout: IO | None = None,
    stderr: IO | None = None,
) -> int:
    """Interpreta argv e executa o comando."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.log_level:
        logging.getLogger().setLevel(args.log_level)
    return run(config_from_args(args), settings, stdout, stderr)


def configure_logging(settings: Settings) -> None:
    """Configura o logging uma vez, em arquivo quando LPFCHAINS_LOG_FILE existir."""
    options = {
        "level": settings.log_level if settings.log_level in LOG_LEVELS else logging.WARNING,
        "format": LOG_FORMAT,
    }
    if settings.log_file:
        options.update(filename=settings.log_file, encoding="utf-8")
    logging.basicConfig(**options)


def entrypoint(argv: Sequence[str] | None = None) -> int:
    """Inicializa ambiente e logging e executa a linha de comando."""
    load_env_file()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        settings = get_settings()
    except ConfigError as exc:
        _report_error("ConfigError", str(exc), sys.stderr)
        return EXIT_USAGE
    configure_logging(settings)
    return main(argv, settings)
