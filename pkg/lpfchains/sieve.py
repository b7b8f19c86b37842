from __future__ import annotations

import logging
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .config import get_settings
from .constants import DEFAULT_SEGMENT_SIZE
from .errors import OutOfRangeError, ResourceLimitError

logger = logging.getLogger(__name__)


def _pi_upper(x: int) -> int:
    """Cota superior simples de pi(x) usada apenas para estimar memoria."""
    if x < 17:
        return max(x, 0)
    return int(1.25506 * x / math.log(x)) + 1


def check_budget(nbytes: int, what: str, max_memory: int | None = None) -> None:
    """Rejeita alocacoes acima de LPFCHAINS_MAX_MEMORY."""
    budget = max_memory if max_memory is not None else get_settings().max_memory
    if nbytes > budget:
        raise ResourceLimitError(
            f"{what} exigiria cerca de {nbytes} bytes, acima do limite de {budget} bytes "
            "(ajuste LPFCHAINS_MAX_MEMORY)."
        )


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Primos ate `limit`, em ordem crescente, somente leitura."""

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)


def primes_up_to(limit: int, max_memory: int | None = None) -> PrimeTable:
    """Crivo de Eratostenes com numpy; devolve a tabela de primos <= limit."""
    limit = int(limit)
    if limit < 0:
        raise ValueError("O limite do crivo deve ser nao negativo.")
    if limit < 2:
        primes = np.array([], dtype=np.int64)
        primes.flags.writeable = False
        return PrimeTable(limit, primes)

    check_budget((limit + 1) + 8 * _pi_upper(limit), f"Crivo ate {limit}", max_memory)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    primes.flags.writeable = False
    logger.debug("Crivo ate %d: %d primos", limit, primes.size)
    return PrimeTable(limit, primes)


def prime_count(table: PrimeTable, x: int) -> int:
    """pi(x) por busca binaria na tabela."""
    if x < 0:
        raise ValueError("x deve ser nao negativo.")
    if x > table.limit:
        raise OutOfRangeError(f"pi({x}) fora da tabela (limite {table.limit}).")
    return int(np.searchsorted(table.primes, x, side="right"))


def primes_in_interval(table: PrimeTable, lo: float, hi: float) -> list[int]:
    """Primos p com lo < p < hi, em ordem DECRESCENTE."""
    if hi > table.limit:
        raise OutOfRangeError(f"Intervalo ate {hi} fora da tabela (limite {table.limit}).")
    if not lo < hi:
        raise ValueError("O intervalo exige lo < hi.")
    start = int(np.searchsorted(table.primes, lo, side="right"))
    end = int(np.searchsorted(table.primes, hi, side="left"))
    return table.primes[start:end][::-1].tolist()


def largest_prime_factor(m: int) -> int:
    """P(m) por divisao por tentativa; indefinido para m < 2."""
    m = int(m)
    if m < 2:
        raise ValueError("P(m) so e definido para m >= 2.")
    largest = 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            largest = d
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    return m if m > 1 else largest


def lpf_table(n: int, max_memory: int | None = None) -> np.ndarray:
    """Tabela completa lpf[m] = P(m) para 0 <= m <= n (lpf[0] = lpf[1] = 0).

    Usa memoria O(n); serve de referencia independente do fluxo segmentado.
    """
    n = int(n)
    if n < 0:
        raise ValueError("n deve ser nao negativo.")
    check_budget(8 * (n + 1), f"Tabela de maior fator primo ate {n}", max_memory)
    lpf = np.zeros(n + 1, dtype=np.int64)
    # p crescente: a ultima escrita em cada multiplo e o maior primo que o divide
    for p in primes_up_to(n, max_memory).primes.tolist():
        lpf[p::p] = p
    return lpf


class LpfSegment(NamedTuple):
    """Bloco do fluxo: lpf[i] = P(low + i)."""

    low: int
    lpf: np.ndarray


class LpfStream:
    """Pares (m, P(m)) para m = 2..n, produzidos segmento a segmento.

    A memoria de trabalho e O(segment_size + pi(sqrt n)); com threads > 1 os
    segmentos sao calculados em paralelo e entregues em ordem crescente de m.
    """

    def __init__(
        self,
        n: int,
        segment_size: int = DEFAULT_SEGMENT_SIZE,
        threads: int = 1,
        max_memory: int | None = None,
    ):
        if n < 2:
            raise ValueError("O fluxo de maior fator primo exige n >= 2.")
        if segment_size < 1:
            raise ValueError("segment_size deve ser >= 1.")
        self.n = int(n)
        self.segment_size = int(min(segment_size, self.n))
        self.threads = max(1, int(threads))
        in_flight = 2 * self.threads if self.threads > 1 else 1
        check_budget(
            16 * self.segment_size * in_flight,
            f"Segmentos de {self.segment_size} entradas",
            max_memory,
        )
        self._base = primes_up_to(math.isqrt(self.n), max_memory).primes.tolist()

    def _segment(self, low: int) -> LpfSegment:
        """Calcula P(m) para m em [low, min(low + segment_size - 1, n)]."""
        high = min(low + self.segment_size - 1, self.n)
        residual = np.arange(low, high + 1, dtype=np.int64)
        lpf = np.zeros(high - low + 1, dtype=np.int64)
        for p in self._base:
            if p > high:
                break
            start = low + (-low) % p
            if start > high:
                continue
            lpf[start - low :: p] = p
            power = p
            while power <= high:
                first = low + (-low) % power
                if first > high:
                    break
                residual[first - low :: power] //= p
                power *= p
        # sobra > 1 e o unico fator primo acima de sqrt(n)
        cofactor = residual > 1
        lpf[cofactor] = residual[cofactor]
        return LpfSegment(low, lpf)

    def segments(self) -> Iterator[LpfSegment]:
        """Segmentos em ordem crescente de m."""
        lows = range(2, self.n + 1, self.segment_size)
        if self.threads <= 1 or len(lows) <= 1:
            for low in lows:
                yield self._segment(low)
            return

        window = 2 * self.threads
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            pending = deque()
            for low in lows:
                pending.append(executor.submit(self._segment, low))
                if len(pending) >= window:
                    yield pending.popleft().result()
            while pending:
                yield pending.popleft().result()

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for segment in self.segments():
            for offset, value in enumerate(segment.lpf.tolist()):
                yield segment.low + offset, value


def lpf_stream(
    n: int,
    segment_size: int | None = None,
    threads: int = 1,
    max_memory: int | None = None,
) -> LpfStream:
    """Cria o fluxo de maior fator primo com o tamanho de segmento configurado."""
    size = segment_size if segment_size is not None else get_settings().segment_size
    return LpfStream(n, size, threads=threads, max_memory=max_memory)

