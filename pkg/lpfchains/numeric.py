from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

from mpmath import mp

from .constants import FLOAT_GUARD, MPMATH_DPS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RealQuantity:
    """Valor real com aproximacao double e avaliacao precisa sob demanda."""

    approx: float
    precise: Callable[[], object]


def n_log_n(n: int) -> RealQuantity:
    """Quantidade n*log(n)."""
    return RealQuantity(n * math.log(n), lambda: mp.mpf(n) * mp.log(n))


def half_n_log_n(n: int) -> RealQuantity:
    """Quantidade n*log(n)/2."""
    return RealQuantity(n * math.log(n) / 2.0, lambda: mp.mpf(n) * mp.log(n) / 2)


def two_n_over_log_n(n: int) -> RealQuantity:
    """Quantidade 2n/log(n); exige n >= 2."""
    return RealQuantity(2.0 * n / math.log(n), lambda: 2 * mp.mpf(n) / mp.log(n))


def compare_square(k: int, quantity: RealQuantity) -> int:
    """Compara k*k com a quantidade: -1 (menor), 0 (igual) ou 1 (maior).

    Usa double fora da faixa de guarda relativa e mpmath dentro dela.
    """
    square = k * k
    diff = square - quantity.approx
    if abs(diff) > FLOAT_GUARD * max(abs(quantity.approx), 1.0):
        return 1 if diff > 0 else -1
    logger.debug("Comparacao de %d^2 dentro da guarda; usando mpmath", k)
    with mp.workdps(MPMATH_DPS):
        exact_diff = mp.mpf(square) - quantity.precise()
        if exact_diff == 0:
            return 0
        return 1 if exact_diff > 0 else -1


def _start(quantity: RealQuantity) -> int:
    """Palpite inicial isqrt da aproximacao double."""
    if quantity.approx <= 0:
        return 0
    return math.isqrt(int(quantity.approx))


def floor_sqrt(quantity: RealQuantity) -> int:
    """Maior inteiro k >= 0 com k*k <= quantidade."""
    k = _start(quantity)
    while k > 0 and compare_square(k, quantity) > 0:
        k -= 1
    while compare_square(k + 1, quantity) <= 0:
        k += 1
    return k


def largest_below_sqrt(quantity: RealQuantity) -> int:
    """Maior inteiro k >= 0 com k*k < quantidade (0 quando a quantidade e <= 0)."""
    k = _start(quantity)
    while k > 0 and compare_square(k, quantity) >= 0:
        k -= 1
    while compare_square(k + 1, quantity) < 0:
        k += 1
    return k
