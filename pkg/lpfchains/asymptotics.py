from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .chains import exact_g
from .constants import BOUNDS_COLUMNS, EXPANSION_COLUMNS, PI_COLUMNS, SUMCHECK_COLUMNS, WINDOW_HIGH, WINDOW_LOW
from .construct import best_construction, default_bounds
from .errors import LpfChainsError, PrimeSumOverflowError
from .numeric import floor_sqrt, half_n_log_n, n_log_n, two_n_over_log_n
from .sieve import PrimeTable, prime_count, primes_up_to

logger = logging.getLogger(__name__)

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class BoundsRow:
    """Linha da varredura: construcao <= g(n) <= cota superior."""

    n: int
    g_exact: int | None
    lower_len: int | None
    upper: int | None
    ratio: float | None
    sqrt_n_over_log_n: float | None
    error: str | None = None

    @property
    def sandwich_holds(self) -> bool:
        if self.g_exact is None or self.lower_len is None or self.upper is None:
            return True
        return self.lower_len <= self.g_exact <= self.upper

    @property
    def in_window(self) -> bool:
        """Razao dentro da janela assintotica [2, 2*sqrt(2)] (apenas relatada)."""
        return self.ratio is not None and WINDOW_LOW <= self.ratio <= WINDOW_HIGH

    def as_dict(self) -> dict[str, object]:
        return dict(zip(BOUNDS_COLUMNS, self.as_row()))

    def as_row(self) -> tuple:
        return (self.n, self.g_exact, self.lower_len, self.upper, self.ratio, self.sqrt_n_over_log_n)


@dataclass(frozen=True)
class ExpansionReport:
    """Soma exata de primos comparada com x^2/(2 log x) + x^2/(4 log^2 x)."""

    x: int
    exact_sum: int
    term1: float
    term2: float
    abs_err: float
    rel_err: float
    err_over_x2_log3: float

    def as_dict(self) -> dict[str, object]:
        return dict(zip(EXPANSION_COLUMNS, self.as_row()))

    def as_row(self) -> tuple:
        return (
            self.x,
            self.exact_sum,
            self.term1,
            self.term2,
            self.abs_err,
            self.rel_err,
            self.err_over_x2_log3,
        )


@dataclass(frozen=True)
class PiEstimateRow:
    """pi(x) exato, estimativa de dois termos e residuo normalizado."""

    x: int
    pi_exact: int
    estimate: float
    residual_norm: float

    def as_dict(self) -> dict[str, object]:
        return dict(zip(PI_COLUMNS, self.as_row()))

    def as_row(self) -> tuple:
        return (self.x, self.pi_exact, self.estimate, self.residual_norm)


@dataclass(frozen=True)
class SumBoundVerdict:
    """Soma dos primos ate sqrt(n log n) comparada com n."""

    n: int
    x: int
    prime_sum: int
    holds: bool
    margin: float

    def as_dict(self) -> dict[str, object]:
        return dict(zip(SUMCHECK_COLUMNS, self.as_row()))

    def as_row(self) -> tuple:
        return (self.n, self.x, self.prime_sum, self.holds, self.margin)


def _table_for(limit: int, table: PrimeTable | None) -> PrimeTable:
    """Reaproveita a tabela quando ela cobre o limite."""
    if table is not None and table.limit >= limit:
        return table
    return primes_up_to(limit)


def upper_bound(n: int, table: PrimeTable | None = None) -> int:
    """floor(sqrt(2n/log n)) + pi(floor(sqrt(n log n / 2))).

    Os q(a_i) = a_i/P(a_i) sao distintos e os P(a_i) sao primos distintos; como
    q > sqrt(2n/log n) e p > sqrt(n log n/2) juntos forcam q*p > n, cada elemento
    cai em um dos dois casos contados.
    """
    if n < 3:
        raise ValueError("upper_bound exige n >= 3.")
    distinct_q = floor_sqrt(two_n_over_log_n(n))
    prime_cut = floor_sqrt(half_n_log_n(n))
    return distinct_q + prime_count(_table_for(prime_cut, table), prime_cut)


def upper_bound_asymptotic(n: int) -> float:
    """Forma assintotica 2*sqrt(2)*sqrt(n/log n), so para relatorio."""
    return WINDOW_HIGH * math.sqrt(n / math.log(n))


def prime_sum(x: int, table: PrimeTable | None = None) -> int:
    """Soma exata dos primos <= x, acumulada em blocos que nao estouram int64."""
    if x < 0:
        raise ValueError("prime_sum exige x >= 0.")
    if x > _INT64_MAX:
        raise PrimeSumOverflowError(f"x={x} excede a largura de 64 bits do crivo.")
    if x < 2:
        return 0
    primes = _table_for(x, table).primes
    primes = primes[: int(np.searchsorted(primes, x, side="right"))]
    chunk = _INT64_MAX // x
    total = 0
    for start in range(0, primes.size, chunk):
        total += int(primes[start : start + chunk].sum(dtype=np.int64))
    return total


def prime_sum_expansion(x: int, table: PrimeTable | None = None) -> ExpansionReport:
    """Compara a soma exata com os dois termos principais da expansao."""
    if x < 3:
        raise ValueError("prime_sum_expansion exige x >= 3.")
    exact = prime_sum(x, table)
    log_x = math.log(x)
    x2 = float(x) * float(x)
    term1 = x2 / (2.0 * log_x)
    term2 = x2 / (4.0 * log_x * log_x)
    abs_err = abs(exact - term1 - term2)
    return ExpansionReport(
        x=x,
        exact_sum=exact,
        term1=term1,
        term2=term2,
        abs_err=abs_err,
        rel_err=abs_err / exact,
        err_over_x2_log3=abs_err * log_x**3 / x2,
    )


def pi_estimate(x: float) -> float:
    """(x/log x)(1 + 1/log x); o termo O(1)/log^2 x fica de fora."""
    if x < 3:
        raise ValueError("pi_estimate exige x >= 3.")
    log_x = math.log(x)
    return x / log_x * (1.0 + 1.0 / log_x)


def pi_estimate_report(x: int, table: PrimeTable | None = None) -> PiEstimateRow:
    """pi(x) exato, estimativa e residuo (pi - estimativa)*log^2 x*(log x/x)."""
    estimate = pi_estimate(x)
    exact = prime_count(_table_for(int(x), table), int(x))
    log_x = math.log(x)
    return PiEstimateRow(int(x), exact, estimate, (exact - estimate) * log_x**3 / x)


def sum_bound_check(n: int, table: PrimeTable | None = None) -> SumBoundVerdict:
    """Verifica se a soma dos primos <= sqrt(n log n) fica abaixo de n."""
    if n < 3:
        raise ValueError("sum_bound_check exige n >= 3.")
    x = floor_sqrt(n_log_n(n))
    total = prime_sum(x, table)
    return SumBoundVerdict(n, x, total, total < n, (n - total) / n)


def _scan_row(
    n: int,
    exact_cap: int,
    bounds_for: Callable[[int], Sequence[float]],
    smooth_tail: bool,
    segment_size: int | None,
) -> BoundsRow:
    """Uma linha da varredura; erros viram BoundsRow.error em vez de excecao."""
    try:
        if n < 3:
            raise ValueError("A varredura exige n >= 3.")
        scale = math.sqrt(n / math.log(n))
        upper = upper_bound(n)
        lower = len(best_construction(n, bounds_for(n), smooth_tail))
        g = exact_g(n, segment_size=segment_size).g if n <= exact_cap else None
    except (LpfChainsError, ValueError) as exc:
        logger.warning("Falha na linha n=%d da varredura: %s", n, exc)
        return BoundsRow(n, None, None, None, None, None, error=str(exc))

    row = BoundsRow(n, g, lower, upper, (g if g is not None else lower) / scale, scale)
    if not row.sandwich_holds:
        logger.error("Desigualdade violada em n=%d: %d <= %s <= %d", n, lower, g, upper)
    return row


def scan(
    ns: Sequence[int],
    exact_cap: int,
    *,
    bounds_for: Callable[[int], Sequence[float]] = default_bounds,
    smooth_tail: bool = False,
    threads: int = 1,
    segment_size: int | None = None,
) -> list[BoundsRow]:
    """Linhas BoundsRow para cada n; erros ficam registrados na linha e a varredura continua."""
    if not ns:
        raise ValueError("A varredura exige ao menos um n.")
    if any(b < a for a, b in zip(ns, ns[1:])):
        raise ValueError("Os valores de n da varredura devem estar em ordem crescente.")

    def row_for(n: int) -> BoundsRow:
        return _scan_row(int(n), exact_cap, bounds_for, smooth_tail, segment_size)

    if threads > 1 and len(ns) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(row_for, ns))
    else:
        rows = [row_for(n) for n in ns]
    logger.info("Varredura concluida: %d linhas", len(rows))
    return rows


def first_exceeding(rows: Sequence[BoundsRow], factor: float = WINDOW_LOW) -> int | None:
    """Primeiro n com g(n) exato > factor*sqrt(n/log n), se houver."""
    for row in rows:
        if row.g_exact is not None and row.sqrt_n_over_log_n is not None:
            if row.g_exact > factor * row.sqrt_n_over_log_n:
                return row.n
    return None
