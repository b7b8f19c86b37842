from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .config import get_settings
from .errors import CapExceededError
from .sieve import check_budget, largest_prime_factor, lpf_stream, lpf_table

logger = logging.getLogger(__name__)


class ChainElement(NamedTuple):
    """Elemento (a, P(a)) de uma cadeia."""

    a: int
    p: int


@dataclass(frozen=True)
class Chain:
    """Sequencia de pares (a, p) sob a cota n."""

    n: int
    elements: tuple[ChainElement, ...] = ()

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[ChainElement]:
        return iter(self.elements)

    @property
    def values(self) -> list[int]:
        return [element.a for element in self.elements]

    @property
    def primes(self) -> list[int]:
        return [element.p for element in self.elements]

    @classmethod
    def from_values(cls, n: int, values: Iterable[int]) -> "Chain":
        """Monta a cadeia calculando P(a) por divisao por tentativa."""
        return cls(n, tuple(ChainElement(int(a), largest_prime_factor(a)) for a in values))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Chain":
        """Monta a cadeia a partir de pares (a, p) ja conhecidos."""
        return cls(n, tuple(ChainElement(int(a), int(p)) for a, p in pairs))


@dataclass(frozen=True)
class GResult:
    """Resultado de g(n) com testemunha opcional."""

    n: int
    g: int
    witness: Chain | None = None


class ChainViolation(str, Enum):
    """Invariantes de cadeia, na ordem em que sao verificados."""

    A_OUT_OF_BOUNDS = "a_out_of_bounds"
    NON_INCREASING_A = "non_increasing_a"
    P_MISMATCH = "p_not_largest_prime_factor"
    NON_DECREASING_P = "non_decreasing_p"


@dataclass(frozen=True)
class ChainVerdict:
    """Veredito de validate_chain: primeira violacao e indice, se houver."""

    valid: bool
    violation: ChainViolation | None = None
    index: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


def validate_chain(chain: Chain) -> ChainVerdict:
    """Aceita a cadeia sse todas as invariantes valem; senao relata a primeira falha."""
    previous: ChainElement | None = None
    for index, element in enumerate(chain.elements):
        a, p = element
        if a < 2 or a > chain.n:
            return ChainVerdict(
                False, ChainViolation.A_OUT_OF_BOUNDS, index, f"a={a} fora de [2, {chain.n}]"
            )
        if previous is not None and a <= previous.a:
            return ChainVerdict(
                False,
                ChainViolation.NON_INCREASING_A,
                index,
                f"a={a} nao e maior que o anterior {previous.a}",
            )
        actual = largest_prime_factor(a)
        if p != actual:
            return ChainVerdict(
                False, ChainViolation.P_MISMATCH, index, f"P({a})={actual}, mas a cadeia informa {p}"
            )
        if previous is not None and p >= previous.p:
            return ChainVerdict(
                False,
                ChainViolation.NON_DECREASING_P,
                index,
                f"P={p} nao e menor que o anterior {previous.p}",
            )
        previous = element
    return ChainVerdict(True)


def strict_lds_length(values: Sequence[int]) -> int:
    """Comprimento da maior subsequencia estritamente decrescente."""
    # LIS estrita sobre -v: bisect_left troca a cauda mais a esquerda >= chave
    tails: list[int] = []
    for value in values:
        key = -value
        pos = bisect_left(tails, key)
        if pos == len(tails):
            tails.append(key)
        else:
            tails[pos] = key
    return len(tails)


def exact_g(
    n: int,
    want_witness: bool = False,
    *,
    segment_size: int | None = None,
    threads: int = 1,
    witness_cap: int | None = None,
    max_memory: int | None = None,
) -> GResult:
    """g(n) pelo metodo de paciencia sobre o fluxo de maior fator primo.

    g(n) e a maior subsequencia estritamente decrescente de P(2), ..., P(n).
    Sem testemunha a memoria e O(g) alem do segmento corrente; com testemunha
    guarda um predecessor por m e por isso respeita LPFCHAINS_WITNESS_CAP.
    """
    if n < 1:
        raise ValueError("exact_g exige n >= 1.")
    if want_witness:
        cap = witness_cap if witness_cap is not None else get_settings().witness_cap
        if n > cap:
            raise CapExceededError(
                f"Reconstrucao da testemunha limitada a n <= {cap} (LPFCHAINS_WITNESS_CAP)."
            )
    if n == 1:
        return GResult(1, 0, Chain(1) if want_witness else None)

    stream = lpf_stream(n, segment_size, threads=threads, max_memory=max_memory)
    tails: list[int] = []

    if not want_witness:
        for segment in stream.segments():
            for p in segment.lpf.tolist():
                key = -p
                pos = bisect_left(tails, key)
                if pos == len(tails):
                    tails.append(key)
                else:
                    tails[pos] = key
        logger.info("g(%d) = %d", n, len(tails))
        return GResult(n, len(tails))

    tail_values: list[int] = []
    dtype = np.int32 if n < 2**31 else np.int64
    check_budget(np.dtype(dtype).itemsize * (n + 1), f"Predecessores da testemunha ate {n}", max_memory)
    predecessor = np.zeros(n + 1, dtype=dtype)
    for segment in stream.segments():
        m = segment.low
        for p in segment.lpf.tolist():
            key = -p
            pos = bisect_left(tails, key)
            if pos == len(tails):
                tails.append(key)
                tail_values.append(m)
            else:
                tails[pos] = key
                tail_values[pos] = m
            if pos:
                predecessor[m] = tail_values[pos - 1]
            m += 1

    values: list[int] = []
    current = tail_values[-1]
    while current:
        values.append(current)
        current = int(predecessor[current])
    values.reverse()
    witness = Chain.from_values(n, values)
    logger.info("g(%d) = %d (com testemunha)", n, len(tails))
    return GResult(n, len(tails), witness)


def exact_g_oracle(n: int, cap: int | None = None) -> GResult:
    """g(n) pela programacao dinamica quadratica, independente do fluxo."""
    if n < 1:
        raise ValueError("exact_g_oracle exige n >= 1.")
    limit = cap if cap is not None else get_settings().oracle_cap
    if n > limit:
        raise CapExceededError(f"Oraculo quadratico limitado a n <= {limit} (LPFCHAINS_ORACLE_CAP).")
    if n == 1:
        return GResult(1, 0, Chain(1))

    values = lpf_table(n)[2:]
    size = values.size
    best = np.ones(size, dtype=np.int64)
    previous = np.full(size, -1, dtype=np.int64)
    for i in range(1, size):
        candidates = np.where(values[:i] > values[i], best[:i], 0)
        j = int(np.argmax(candidates))
        if candidates[j] > 0:
            best[i] = candidates[j] + 1
            previous[i] = j

    end = int(np.argmax(best))
    indices = []
    while end >= 0:
        indices.append(end)
        end = int(previous[end])
    indices.reverse()
    witness = Chain.from_pairs(n, ((i + 2, int(values[i])) for i in indices))
    return GResult(n, int(best.max()), witness)
