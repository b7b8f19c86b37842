from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chains import Chain, ChainElement
from .constants import SMOOTH_PROBE_LIMIT
from .errors import EmptyIntervalError
from .numeric import largest_below_sqrt, n_log_n
from .sieve import PrimeTable, largest_prime_factor, primes_in_interval, primes_up_to

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GreedyTrace:
    """Execucao completa da construcao gulosa com primos em (sqrt n, sqrt(n log n)).

    `values` guarda todos os a_i construidos, inclusive os que passam de n;
    `chain` guarda apenas o maior prefixo valido.
    """

    n: int
    primes_used: tuple[int, ...]
    multipliers: tuple[int, ...]
    values: tuple[int, ...]
    partial_sums: tuple[int, ...]
    overshoot_index: int | None
    chain: Chain

    def rows(self) -> list[tuple[int, int, int, int, int, int]]:
        """Linhas i,a,p,q,partial_sum,overshoot_flag (i a partir de 1)."""
        return [
            (i + 1, a, p, q, s, int(a > self.n))
            for i, (a, p, q, s) in enumerate(
                zip(self.values, self.primes_used, self.multipliers, self.partial_sums)
            )
        ]


def greedy_interval(n: int) -> tuple[int, int]:
    """Extremos inteiros (lo, hi): os primos usados sao lo < p <= hi.

    p > sqrt(n) equivale a p > isqrt(n); p < sqrt(n log n) equivale a p*p < n log n,
    decidido por numeric.largest_below_sqrt.
    """
    if n < 2:
        raise ValueError("A construcao gulosa exige n >= 2.")
    return math.isqrt(n), largest_below_sqrt(n_log_n(n))


def paper_start_bound(n: int) -> float:
    """sqrt(n log n), limite superior do intervalo de primos da construcao gulosa."""
    return math.sqrt(n * math.log(n))


def default_bounds(n: int) -> list[float]:
    """Varredura padrao: apenas sqrt(n log n), recortado para [2, n]."""
    return [min(max(paper_start_bound(n), 2.0), float(n))]


def sweep_bounds(n: int, lo: float, hi: float, count: int) -> list[float]:
    """`count` cotas iniciais igualmente espacadas em [lo, hi], recortadas para [2, n]."""
    if count < 1:
        raise ValueError("A varredura exige pelo menos uma cota.")
    raw = np.linspace(float(lo), float(hi), int(count)).tolist()
    bounds: list[float] = []
    for value in raw:
        clipped = min(max(value, 2.0), float(n))
        if clipped not in bounds:
            bounds.append(clipped)
    return bounds


def paper_greedy(n: int, table: PrimeTable | None = None) -> GreedyTrace:
    """a_1 = p_1 e, para i >= 2, a_i = q_i p_i com q_i minimo tal que q_i p_i > a_{i-1}."""
    lo, hi = greedy_interval(n)
    if hi <= lo:
        raise EmptyIntervalError(f"Nenhum primo em (sqrt({n}), sqrt({n} log {n})).")
    table = table if table is not None else primes_up_to(hi + 1)
    primes = primes_in_interval(table, lo, hi + 1)
    if not primes:
        raise EmptyIntervalError(f"Nenhum primo em (sqrt({n}), sqrt({n} log {n})).")

    multipliers: list[int] = []
    values: list[int] = []
    partial_sums: list[int] = []
    previous = 0
    running = 0
    for p in primes:
        q = previous // p + 1
        previous = q * p
        running += p
        multipliers.append(q)
        values.append(previous)
        partial_sums.append(running)

    overshoot = next((i for i, a in enumerate(values) if a > n), None)
    kept = len(values) if overshoot is None else overshoot
    if overshoot is not None:
        logger.warning(
            "Construcao gulosa para n=%d ultrapassa n no indice %d; mantendo %d de %d elementos",
            n,
            overshoot,
            kept,
            len(values),
        )
    chain = Chain(n, tuple(ChainElement(a, p) for a, p in zip(values[:kept], primes[:kept])))
    return GreedyTrace(
        n=n,
        primes_used=tuple(primes),
        multipliers=tuple(multipliers),
        values=tuple(values),
        partial_sums=tuple(partial_sums),
        overshoot_index=overshoot,
        chain=chain,
    )


def _is_smooth(q: int, bound: int) -> bool:
    """Indica se todos os fatores primos de q sao <= bound."""
    d = 2
    while d * d <= q and d <= bound:
        while q % d == 0:
            q //= d
        d += 1 if d == 2 else 2
    return q <= bound


def _smooth_multiple(previous: int, p: int, n: int) -> int | None:
    """Menor q*p > previous, q*p <= n, com P(q) <= p; None se nao achar no limite de sondagem."""
    first = previous // p + 1
    last = min(n // p, first + SMOOTH_PROBE_LIMIT - 1)
    for q in range(first, last + 1):
        if _is_smooth(q, p):
            return q * p
    return None


def adaptive_greedy(
    n: int,
    start_bound: float,
    smooth_tail: bool = False,
    table: PrimeTable | None = None,
) -> Chain:
    """Percorre os primos em ordem decrescente a partir de start_bound, pulando os que nao cabem.

    O candidato e o menor multiplo q*p acima do ultimo valor aceito; ele e aceito sse
    nao passa de n e, para p <= sqrt(n), P(q*p) = p. Com smooth_tail=True os primos
    p <= sqrt(n) procuram o menor q com P(q) <= p em vez de pular.
    """
    if n < 2:
        raise ValueError("adaptive_greedy exige n >= 2.")
    if not 2 <= start_bound <= n:
        raise ValueError(f"start_bound deve estar em [2, {n}].")
    top = int(math.floor(start_bound))
    if table is None or table.limit < top:
        table = primes_up_to(top)
    root = math.isqrt(n)
    candidates = table.primes[: int(np.searchsorted(table.primes, top, side="right"))]

    elements: list[ChainElement] = []
    previous = 0
    for p in reversed(candidates.tolist()):
        if p > root:
            value = (previous // p + 1) * p
            if value > n:
                continue
        elif smooth_tail:
            value = _smooth_multiple(previous, p, n)
            if value is None:
                continue
        else:
            value = (previous // p + 1) * p
            if value > n or largest_prime_factor(value) != p:
                continue
        elements.append(ChainElement(value, p))
        previous = value
    return Chain(n, tuple(elements))


def best_construction(
    n: int,
    bounds: Sequence[float],
    smooth_tail: bool = False,
    threads: int = 1,
) -> Chain:
    """Maior cadeia entre paper_greedy(n) e adaptive_greedy(n, b) para b em bounds.

    Empates favorecem a menor cota inicial; a construcao gulosa conta com a cota sqrt(n log n).
    """
    if not bounds:
        raise ValueError("best_construction exige ao menos uma cota inicial.")
    if n < 2:
        raise ValueError("best_construction exige n >= 2.")
    _, hi = greedy_interval(n)
    table = primes_up_to(max(int(math.floor(max(bounds))), hi + 1))

    candidates: list[tuple[float, Chain]] = []
    try:
        candidates.append((paper_start_bound(n), paper_greedy(n, table).chain))
    except EmptyIntervalError:
        logger.debug("Sem primos no intervalo da construcao gulosa para n=%d", n)

    def build(bound: float) -> tuple[float, Chain]:
        return bound, adaptive_greedy(n, bound, smooth_tail, table)

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            candidates.extend(executor.map(build, bounds))
    else:
        candidates.extend(build(bound) for bound in bounds)

    bound, chain = min(candidates, key=lambda item: (-len(item[1]), item[0]))
    logger.info("Melhor construcao para n=%d: %d elementos (cota inicial %.6g)", n, len(chain), bound)
    return chain
