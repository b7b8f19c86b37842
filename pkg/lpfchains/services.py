from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Any

from .asymptotics import (
    BoundsRow,
    first_exceeding,
    pi_estimate_report,
    prime_sum_expansion,
    scan,
    sum_bound_check,
    upper_bound_asymptotic,
)
from .chains import exact_g, validate_chain
from .config import Settings
from .constants import (
    BOUNDS_COLUMNS,
    CHAIN_COLUMNS,
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
    COMMANDS,
    DEFAULT_EXACT_CAP,
    EXIT_INVALID_CHAIN,
    EXPANSION_COLUMNS,
    FORMAT_CSV,
    FORMAT_XLSX,
    FORMATS,
    G_COLUMNS,
    LPF_COLUMNS,
    PI_COLUMNS,
    SUMCHECK_COLUMNS,
    SUPPORTED_N_MAX,
    TRACE_COLUMNS,
    WINDOW_HIGH,
    WINDOW_LOW,
)
from .construct import adaptive_greedy, default_bounds, paper_greedy, sweep_bounds
from .reports import Report, chain_records, chain_rows, load_chain
from .sieve import lpf_stream, primes_up_to
from .validators import missing_flags, parse_int, parse_range, parse_real, parse_sweep

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Parametros de uma execucao; valores textuais ainda nao normalizados sao aceitos."""

    command: str
    n: Any = None
    x: Any = None
    range: str | None = None
    geometric: bool = False
    segment_size: Any = None
    exact_cap: Any = None
    format: str = FORMAT_CSV
    out: str | None = None
    witness: bool = False
    start_bound: Any = None
    bounds_sweep: str | None = None
    smooth_tail: bool = False
    threads: Any = None
    file: str | None = None


class ExperimentService:
    """Centraliza validacao de parametros e despacho das operacoes."""

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or Settings()

    def prepare_config(self, config: RunConfig) -> RunConfig:
        """Normaliza a configuracao; faltas e faixas invalidas viram ValueError."""
        if config.command not in COMMANDS:
            raise ValueError(f"Comando desconhecido: {config.command!r}.")
        if config.format not in FORMATS:
            raise ValueError(f"Formato desconhecido: {config.format!r}.")
        if config.format == FORMAT_XLSX and not config.out:
            raise ValueError("O formato xlsx exige --out.")
        missing = missing_flags(config.command, vars(config))
        if missing:
            raise ValueError(f"Opções obrigatórias ausentes: {', '.join(missing)}.")

        minimum_n = 3 if config.command in (COMMAND_BOUNDS, COMMAND_SUMCHECK) else 1
        if config.command in (COMMAND_GREEDY, COMMAND_ADAPTIVE, COMMAND_LPFDUMP):
            minimum_n = 2
        return replace(
            config,
            n=None if config.n is None else parse_int(config.n, "n", minimum_n, SUPPORTED_N_MAX),
            x=None if config.x is None else parse_int(config.x, "x", 3, SUPPORTED_N_MAX),
            segment_size=parse_int(
                config.segment_size if config.segment_size is not None else self.settings.segment_size,
                "segment_size",
                minimum=1,
            ),
            exact_cap=parse_int(
                config.exact_cap if config.exact_cap is not None else DEFAULT_EXACT_CAP,
                "exact_cap",
                minimum=1,
            ),
            threads=parse_int(
                config.threads if config.threads is not None else self.settings.threads,
                "threads",
                minimum=1,
            ),
            start_bound=None if config.start_bound is None else parse_real(config.start_bound, "start_bound", 2.0),
        )

    def run(self, config: RunConfig) -> Report:
        """Executa o comando e devolve o relatorio correspondente."""
        config = self.prepare_config(config)
        handler = {
            COMMAND_EXACT: self._exact,
            COMMAND_GREEDY: self._greedy,
            COMMAND_ADAPTIVE: self._adaptive,
            COMMAND_BOUNDS: self._bounds,
            COMMAND_SCAN: self._scan,
            COMMAND_PRIMESUM: self._primesum,
            COMMAND_PI: self._pi,
            COMMAND_VALIDATE: self._validate,
            COMMAND_SUMCHECK: self._sumcheck,
            COMMAND_LPFDUMP: self._lpfdump,
        }[config.command]
        logger.info("Executando comando %s", config.command)
        return handler(config)

    def _values(self, config: RunConfig, single: int | None, minimum: int) -> list[int]:
        """Lista de n (ou x) vinda de --n/--x ou de --range."""
        if config.range:
            return parse_range(config.range, config.geometric, minimum=minimum)
        return [single]

    def _exact(self, config: RunConfig) -> Report:
        """g(n) exato, com testemunha quando pedida."""
        result = exact_g(
            config.n,
            config.witness,
            segment_size=config.segment_size,
            threads=config.threads,
            witness_cap=self.settings.witness_cap,
            max_memory=self.settings.max_memory,
        )
        lines = [f"g({result.n}) = {result.g}"]
        if result.witness is None:
            return Report(
                COMMAND_EXACT,
                G_COLUMNS,
                [(result.n, result.g)],
                payload={"n": result.n, "g": result.g},
                lines=lines,
            )
        lines.extend(f"  a={a:>12}  P(a)={p}" for a, p in result.witness)
        return Report(
            COMMAND_EXACT,
            CHAIN_COLUMNS,
            chain_rows(result.witness),
            payload={"n": result.n, "g": result.g, "witness": chain_records(result.witness)},
            lines=lines,
        )

    def _greedy(self, config: RunConfig) -> Report:
        """Rastreio completo da construcao gulosa."""
        trace = paper_greedy(config.n)
        rows = trace.rows()
        lines = [
            f"Construção gulosa para n={trace.n}: {len(trace.chain)} de {len(trace.values)} elementos válidos",
        ]
        if trace.overshoot_index is not None:
            lines.append(f"  ultrapassa n no índice {trace.overshoot_index}")
        lines.extend(
            f"  a={a:>12}  p={p:>8}  q={q:>6}  soma={s:>12}{'  (> n)' if flag else ''}"
            for _, a, p, q, s, flag in rows
        )
        return Report(
            COMMAND_GREEDY,
            TRACE_COLUMNS,
            rows,
            payload={
                "n": trace.n,
                "length": len(trace.chain),
                "overshoot_index": trace.overshoot_index,
                "chain": [dict(zip(TRACE_COLUMNS[1:], row[1:])) for row in rows],
            },
            lines=lines,
        )

    def _adaptive(self, config: RunConfig) -> Report:
        """Cadeia adaptativa a partir de --start-bound (padrao sqrt(n log n))."""
        bound = config.start_bound if config.start_bound is not None else default_bounds(config.n)[0]
        chain = adaptive_greedy(config.n, bound, config.smooth_tail)
        lines = [f"Construção adaptativa para n={config.n} (cota inicial {bound:.6g}): {len(chain)} elementos"]
        lines.extend(f"  a={a:>12}  P(a)={p}" for a, p in chain)
        return Report(
            COMMAND_ADAPTIVE,
            CHAIN_COLUMNS,
            chain_rows(chain),
            payload={"n": config.n, "start_bound": bound, "length": len(chain), "chain": chain_records(chain)},
            lines=lines,
        )

    def _bounds_for(self, config: RunConfig):
        """Funcao n -> cotas iniciais: --bounds-sweep ou a varredura padrao."""
        if not config.bounds_sweep:
            return default_bounds
        lo, hi, count = parse_sweep(config.bounds_sweep)
        return lambda n: sweep_bounds(n, lo, hi, count)

    def _bounds_report(self, kind: str, rows: list[BoundsRow]) -> Report:
        """Relatorio de linhas BoundsRow, com a desigualdade em texto."""
        lines = [self._sandwich_line(row) for row in rows]
        if kind == COMMAND_SCAN:
            first = first_exceeding(rows)
            lines.append(
                f"Primeiro n com g(n) > 2*sqrt(n/log n): {first}"
                if first is not None
                else "Nenhum n da varredura com g(n) > 2*sqrt(n/log n)."
            )
        return Report(kind, BOUNDS_COLUMNS, [row.as_row() for row in rows], lines=lines)

    def _sandwich_line(self, row: BoundsRow) -> str:
        """Linha de texto construcao <= g <= cota para um n."""
        if row.error:
            return f"n={row.n}: erro: {row.error}"
        g = "?" if row.g_exact is None else str(row.g_exact)
        window = "dentro" if row.in_window else "fora"
        return (
            f"n={row.n}: {row.lower_len} <= g={g} <= {row.upper}  "
            f"razao={row.ratio:.4f} ({window} de [{WINDOW_LOW:g}, {WINDOW_HIGH:.4f}])  "
            f"2*sqrt(2)*sqrt(n/log n)={upper_bound_asymptotic(row.n):.2f}"
        )

    def _bounds(self, config: RunConfig) -> Report:
        """Desigualdade para um unico n."""
        rows = scan(
            [config.n],
            config.exact_cap,
            bounds_for=self._bounds_for(config),
            smooth_tail=config.smooth_tail,
            segment_size=config.segment_size,
        )
        return self._bounds_report(COMMAND_BOUNDS, rows)

    def _scan(self, config: RunConfig) -> Report:
        """Varredura de uma faixa de n."""
        ns = parse_range(config.range, config.geometric, minimum=3)
        rows = scan(
            ns,
            config.exact_cap,
            bounds_for=self._bounds_for(config),
            smooth_tail=config.smooth_tail,
            threads=config.threads,
            segment_size=config.segment_size,
        )
        return self._bounds_report(COMMAND_SCAN, rows)

    def _primesum(self, config: RunConfig) -> Report:
        """Soma exata de primos contra a expansao assintotica."""
        xs = self._values(config, config.x, 3)
        table = primes_up_to(max(xs), self.settings.max_memory)
        reports = [prime_sum_expansion(x, table) for x in xs]
        lines = [
            f"x={r.x}: soma={r.exact_sum}  termos={r.term1 + r.term2:.6g}  "
            f"erro relativo={r.rel_err:.4%}  erro*log^3(x)/x^2={r.err_over_x2_log3:.4f}"
            for r in reports
        ]
        return Report(COMMAND_PRIMESUM, EXPANSION_COLUMNS, [r.as_row() for r in reports], lines=lines)

    def _pi(self, config: RunConfig) -> Report:
        """pi(x) contra a estimativa com dois termos."""
        xs = self._values(config, config.x, 3)
        table = primes_up_to(max(xs), self.settings.max_memory)
        rows = [pi_estimate_report(x, table) for x in xs]
        lines = [
            f"x={r.x}: pi(x)={r.pi_exact}  estimativa={r.estimate:.4f}  residuo normalizado={r.residual_norm:.4f}"
            for r in rows
        ]
        return Report(COMMAND_PI, PI_COLUMNS, [r.as_row() for r in rows], lines=lines)

    def _sumcheck(self, config: RunConfig) -> Report:
        """Soma dos primos ate sqrt(n log n) comparada com n."""
        ns = self._values(config, config.n, 3)
        limit = max(math.isqrt(int(n * math.log(n))) + 1 for n in ns)
        table = primes_up_to(limit, self.settings.max_memory)
        verdicts = [sum_bound_check(n, table) for n in ns]
        lines = [
            f"n={v.n}: soma dos primos <= {v.x} = {v.prime_sum} {'<' if v.holds else '>='} n  margem={v.margin:.4f}"
            for v in verdicts
        ]
        return Report(COMMAND_SUMCHECK, SUMCHECK_COLUMNS, [v.as_row() for v in verdicts], lines=lines)

    def _validate(self, config: RunConfig) -> Report:
        """Valida uma cadeia lida de CSV ou JSON."""
        chain = load_chain(config.file, config.n)
        verdict = validate_chain(chain)
        violation = verdict.violation.value if verdict.violation else None
        line = (
            f"Cadeia válida: {len(chain)} elementos sob n={chain.n}"
            if verdict
            else f"Cadeia inválida no índice {verdict.index}: {verdict.message}"
        )
        return Report(
            COMMAND_VALIDATE,
            ["valid", "length", "violation", "index", "message"],
            [(verdict.valid, len(chain), violation, verdict.index, verdict.message)],
            lines=[line],
            exit_code=0 if verdict else EXIT_INVALID_CHAIN,
        )

    def _lpfdump(self, config: RunConfig) -> Report:
        """Pares m,lpf em fluxo para m = 2..n."""
        stream = lpf_stream(
            config.n,
            config.segment_size,
            threads=config.threads,
            max_memory=self.settings.max_memory,
        )
        return Report(COMMAND_LPFDUMP, LPF_COLUMNS, iter(stream))
