import os
import sys
import time
import unittest

from hypothesis import given, settings, strategies

from lpfchains.chains import (
    Chain,
    ChainViolation,
    exact_g,
    exact_g_oracle,
    strict_lds_length,
    validate_chain,
)
from lpfchains.errors import CapExceededError, ResourceLimitError

SLOW = os.getenv("LPFCHAINS_SLOW_TESTS") == "1"


class StrictLdsTests(unittest.TestCase):
    """Testes da maior subsequencia estritamente decrescente."""

    def test_examples(self):
        """Valida lista vazia, lista decrescente e os valores P(2..10)."""
        self.assertEqual(0, strict_lds_length([]))
        self.assertEqual(3, strict_lds_length([5, 3, 2]))
        self.assertEqual(3, strict_lds_length([2, 3, 2, 5, 3, 7, 2, 3, 5]))

    def test_equal_values_never_extend(self):
        """Valores repetidos nao aumentam a subsequencia estrita."""
        self.assertEqual(1, strict_lds_length([3, 3, 3, 3]))
        self.assertEqual(2, strict_lds_length([5, 5, 3, 3]))

    @given(strategies.lists(strategies.integers(min_value=1, max_value=30), max_size=40))
    @settings(max_examples=80, deadline=None)
    def test_matches_quadratic_dp(self, values):
        """Metodo de paciencia coincide com a programacao dinamica quadratica."""
        best = []
        for i, value in enumerate(values):
            best.append(1 + max((best[j] for j in range(i) if values[j] > value), default=0))
        self.assertEqual(max(best, default=0), strict_lds_length(values))


class ValidateChainTests(unittest.TestCase):
    """Testes da validacao de cadeias."""

    def test_greedy_chain_for_100_is_valid(self):
        """Valida a cadeia (19, 34, 39, 44) sob n = 100."""
        chain = Chain.from_pairs(100, [(19, 19), (34, 17), (39, 13), (44, 11)])
        verdict = validate_chain(chain)

        self.assertTrue(verdict)
        self.assertIsNone(verdict.violation)

    def test_non_increasing_a(self):
        """Garante rejeicao quando a nao cresce."""
        verdict = validate_chain(Chain.from_pairs(10, [(4, 2), (3, 3)]))

        self.assertFalse(verdict)
        self.assertEqual(ChainViolation.NON_INCREASING_A, verdict.violation)
        self.assertEqual(1, verdict.index)

    def test_wrong_largest_prime_factor(self):
        """Garante rejeicao de P(6) informado como 2."""
        verdict = validate_chain(Chain.from_pairs(10, [(6, 2)]))

        self.assertEqual(ChainViolation.P_MISMATCH, verdict.violation)
        self.assertEqual(0, verdict.index)

    def test_out_of_bounds_and_non_decreasing_p(self):
        """Garante rejeicao de a > n, de a = 1 e de P repetido ou crescente."""
        self.assertEqual(
            ChainViolation.A_OUT_OF_BOUNDS,
            validate_chain(Chain.from_pairs(100, [(101, 101)])).violation,
        )
        self.assertEqual(
            ChainViolation.A_OUT_OF_BOUNDS,
            validate_chain(Chain.from_pairs(10, [(1, 1)])).violation,
        )
        self.assertEqual(
            ChainViolation.NON_DECREASING_P,
            validate_chain(Chain.from_pairs(10, [(2, 2), (3, 3)])).violation,
        )
        self.assertEqual(
            ChainViolation.NON_DECREASING_P,
            validate_chain(Chain.from_pairs(10, [(3, 3), (9, 3)])).violation,
        )

    def test_empty_chain_is_valid(self):
        """A cadeia vazia e aceita."""
        self.assertTrue(validate_chain(Chain(5)))

    def test_from_values_computes_primes(self):
        """Monta pares (a, P(a)) a partir dos valores."""
        chain = Chain.from_values(10, [5, 6, 8])

        self.assertEqual([5, 3, 2], chain.primes)
        self.assertEqual([5, 6, 8], chain.values)


class ExactGTests(unittest.TestCase):
    """Testes do calculo exato de g(n)."""

    def test_small_values(self):
        """Valida g(1) = 0, g(2) = 1, g(4) = 2 e g(10) = 3."""
        self.assertEqual(0, exact_g(1).g)
        self.assertEqual(1, exact_g(2).g)
        self.assertEqual(2, exact_g(4).g)
        self.assertEqual(3, exact_g(10).g)

    def test_witness_is_valid_and_has_length_g(self):
        """A testemunha passa na validacao e tem exatamente g elementos."""
        for n in (2, 4, 10, 100, 1000, 5000):
            result = exact_g(n, True)
            self.assertEqual(result.g, len(result.witness), msg=f"n={n}")
            self.assertTrue(validate_chain(result.witness), msg=f"n={n}")

    def test_witness_for_one_is_empty(self):
        """g(1) = 0 com testemunha vazia."""
        result = exact_g(1, True)

        self.assertEqual(0, result.g)
        self.assertEqual(0, len(result.witness))

    def test_witness_cap(self):
        """Garante CapExceededError acima do teto de testemunha."""
        with self.assertRaises(CapExceededError):
            exact_g(100, True, witness_cap=50)
        self.assertEqual(exact_g(100).g, exact_g(100, witness_cap=50).g)

    def test_witness_respects_memory_budget(self):
        """Predecessores da testemunha passam pelo limite de memoria."""
        with self.assertRaises(ResourceLimitError):
            exact_g(100000, True, segment_size=1000, max_memory=100000)
        self.assertEqual(
            exact_g(100000).g,
            exact_g(100000, segment_size=1000, max_memory=100000).g,
        )

    def test_segment_size_and_threads_do_not_change_result(self):
        """g(n) independe do tamanho de segmento e do numero de threads."""
        reference = exact_g(5000, segment_size=4096).g
        self.assertEqual(reference, exact_g(5000, segment_size=7).g)
        self.assertEqual(reference, exact_g(5000, segment_size=64, threads=3).g)
        self.assertEqual(reference, exact_g(5000, True, segment_size=64, threads=3).g)

    def test_oracle_examples(self):
        """Valida o oraculo em n = 2, 3 e 10."""
        self.assertEqual(1, exact_g_oracle(2).g)
        self.assertEqual(1, exact_g_oracle(3).g)
        self.assertEqual(3, exact_g_oracle(10).g)
        self.assertTrue(validate_chain(exact_g_oracle(10).witness))

    def test_oracle_cap(self):
        """Garante CapExceededError acima do teto do oraculo."""
        with self.assertRaises(CapExceededError):
            exact_g_oracle(100, cap=10)

    def test_oracle_equivalence_small_range(self):
        """exact_g coincide com o oraculo para n = 1..250."""
        for n in range(1, 251):
            self.assertEqual(exact_g_oracle(n).g, exact_g(n).g, msg=f"n={n}")

    @given(strategies.integers(min_value=1, max_value=6000))
    @settings(max_examples=20, deadline=None)
    def test_oracle_equivalence_random(self, n):
        """exact_g coincide com o oraculo em n sorteados."""
        self.assertEqual(exact_g_oracle(n).g, exact_g(n).g)

    def test_monotonicity(self):
        """g(n) <= g(n + 1)."""
        values = [exact_g(n).g for n in range(1, 400)]
        for n, (current, following) in enumerate(zip(values, values[1:]), start=1):
            self.assertLessEqual(current, following, msg=f"n={n}")

    @unittest.skipUnless(SLOW, "defina LPFCHAINS_SLOW_TESTS=1")
    def test_ten_million_within_time_and_memory(self):
        """exact_g(10^7) sem testemunha em menos de 60 s e 256 MB de pico."""
        import resource

        started = time.perf_counter()
        result = exact_g(10**7)
        elapsed = time.perf_counter() - started

        peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        peak_bytes = peak if sys.platform == "darwin" else peak * 1024
        self.assertEqual(1892, result.g)
        self.assertLess(elapsed, 60)
        self.assertLess(peak_bytes, 256 * 2**20)

    @unittest.skipUnless(SLOW, "defina LPFCHAINS_SLOW_TESTS=1")
    def test_oracle_equivalence_full(self):
        """Equivalencia com o oraculo para n = 1..2000 e 200 n ate 5*10^4."""
        import random

        for n in range(1, 2001):
            self.assertEqual(exact_g_oracle(n).g, exact_g(n).g, msg=f"n={n}")
        rng = random.Random(20240912)
        for n in rng.sample(range(2001, 50001), 200):
            self.assertEqual(exact_g_oracle(n).g, exact_g(n).g, msg=f"n={n}")


if __name__ == "__main__":
    unittest.main()
