import os
import unittest
from unittest import mock

from lpfchains.config import Settings, get_env, parse_memory
from lpfchains.constants import DEFAULT_SEGMENT_SIZE
from lpfchains.errors import ConfigError
from lpfchains.validators import missing_flags, parse_int, parse_range, parse_real, parse_sweep


class ConfigTests(unittest.TestCase):
    """Testes da leitura de configuracao via ambiente."""

    def test_parse_memory_units(self):
        """Aceita bytes e sufixos K/M/G."""
        self.assertEqual(1024, parse_memory("1024"))
        self.assertEqual(256 << 20, parse_memory("256M"))
        self.assertEqual(1 << 30, parse_memory("1g"))
        self.assertEqual(512 << 10, parse_memory("512KB"))

    def test_parse_memory_rejects_invalid(self):
        """Rejeita texto livre e zero."""
        with self.assertRaises(ConfigError):
            parse_memory("muito")
        with self.assertRaises(ConfigError):
            parse_memory("0")

    def test_get_env_ignores_blank(self):
        """Valor em branco cai no padrao."""
        with mock.patch.dict(os.environ, {"LPFCHAINS_LOG_FILE": "  "}):
            self.assertEqual("padrao", get_env("LPFCHAINS_LOG_FILE", "padrao"))

    def test_settings_from_env(self):
        """Le as variaveis LPFCHAINS_* com notacao cientifica."""
        env = {
            "LPFCHAINS_MAX_MEMORY": "64M",
            "LPFCHAINS_SEGMENT_SIZE": "1e3",
            "LPFCHAINS_THREADS": "2",
            "LPFCHAINS_LOG_LEVEL": "info",
        }
        with mock.patch.dict(os.environ, env, clear=True):
            settings = Settings.from_env()

        self.assertEqual(64 << 20, settings.max_memory)
        self.assertEqual(1000, settings.segment_size)
        self.assertEqual(2, settings.threads)
        self.assertEqual("INFO", settings.log_level)
        self.assertIsNone(settings.log_file)

    def test_settings_defaults(self):
        """Sem variaveis usa os padroes e os nucleos da maquina."""
        with mock.patch.dict(os.environ, {}, clear=True):
            settings = Settings.from_env()

        self.assertEqual(DEFAULT_SEGMENT_SIZE, settings.segment_size)
        self.assertEqual(os.cpu_count() or 1, settings.threads)

    def test_settings_rejects_invalid_values(self):
        """Valores nao positivos ou nao numericos geram ConfigError."""
        for key, value in (("LPFCHAINS_SEGMENT_SIZE", "0"), ("LPFCHAINS_ORACLE_CAP", "abc")):
            with mock.patch.dict(os.environ, {key: value}, clear=True):
                with self.assertRaises(ConfigError):
                    Settings.from_env()


class ValidatorsTests(unittest.TestCase):
    """Testes da validacao de parametros de linha de comando."""

    def test_parse_int_accepts_notations(self):
        """Aceita inteiro simples, separador _ e notacao cientifica."""
        self.assertEqual(1000000, parse_int("1e6", "n"))
        self.assertEqual(1000, parse_int("1_000", "n"))
        self.assertEqual(42, parse_int(42, "n"))

    def test_parse_int_rejects_invalid(self):
        """Rejeita fracoes, texto e valores fora da faixa com o rotulo da opcao."""
        with self.assertRaises(ValueError):
            parse_int("1.5", "n")
        with self.assertRaises(ValueError):
            parse_int("dez", "n")
        with self.assertRaisesRegex(ValueError, "--n"):
            parse_int("0", "n", minimum=1)
        with self.assertRaises(ValueError):
            parse_int("2e9", "n", maximum=10**9)

    def test_parse_real(self):
        """Aceita reais finitos e rejeita infinito."""
        self.assertAlmostEqual(21.46, parse_real("21.46", "start_bound"))
        with self.assertRaises(ValueError):
            parse_real("inf", "start_bound")

    def test_parse_range_additive_and_geometric(self):
        """Passo aditivo por padrao e razao com geometric."""
        self.assertEqual([1, 4, 7, 10], parse_range("1:10:3"))
        self.assertEqual([5, 6, 7], parse_range("5:7"))
        self.assertEqual([1000, 10000, 100000, 1000000], parse_range("1e3:1e6", geometric=True))
        self.assertEqual([100, 200, 400, 800], parse_range("100:1000:2", geometric=True))

    def test_parse_range_rejects_invalid(self):
        """Rejeita faixa invertida, formato errado e razao <= 1."""
        for spec, geometric in (("10:1", False), ("10", False), ("1:10:1", True)):
            with self.assertRaises(ValueError):
                parse_range(spec, geometric)

    def test_parse_sweep(self):
        """Interpreta lo:hi:quantidade."""
        self.assertEqual((2.0, 50.0, 5), parse_sweep("2:50:5"))
        with self.assertRaises(ValueError):
            parse_sweep("2:50")

    def test_missing_flags(self):
        """Lista as opcoes obrigatorias ausentes por comando."""
        self.assertEqual(["--x ou --range"], missing_flags("primesum", {}))
        self.assertEqual(["--n"], missing_flags("validate", {"file": "cadeia.csv"}))
        self.assertEqual([], missing_flags("scan", {"range": "1e3:1e4"}))


if __name__ == "__main__":
    unittest.main()
