import os
import re
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from .constants import (
    DEFAULT_MAX_MEMORY,
    DEFAULT_ORACLE_CAP,
    DEFAULT_SEGMENT_SIZE,
    DEFAULT_WITNESS_CAP,
)
from .errors import ConfigError

PROJECT_ROOT = Path(__file__).resolve().parent.parent
ENV_FILE_PATHS = (PROJECT_ROOT / ".env", PROJECT_ROOT / "assets" / ".env")

_MEMORY_PATTERN = re.compile(r"^\s*(\d+)\s*([KMG]?)I?B?\s*$", re.IGNORECASE)
_MEMORY_UNITS = {"": 1, "K": 1 << 10, "M": 1 << 20, "G": 1 << 30}


def load_env_file():
    """Carrega variaveis de ambiente dos arquivos .env do projeto quando existirem."""
    for path in ENV_FILE_PATHS:
        if path.exists():
            load_dotenv(dotenv_path=path, override=False)


def get_env(key, default=None):
    """Retorna variavel de ambiente nao vazia ou valor padrao."""
    value = os.getenv(key)
    if value is not None and str(value).strip() != "":
        return value
    return default


def parse_memory(value, key="LPFCHAINS_MAX_MEMORY"):
    """Converte textos como 256M, 1G ou 268435456 em bytes."""
    match = _MEMORY_PATTERN.fullmatch(str(value))
    if not match:
        raise ConfigError(f"Valor inválido para {key}: {value!r}. Use bytes ou sufixos K/M/G.")
    amount = int(match.group(1)) * _MEMORY_UNITS[match.group(2).upper()]
    if amount <= 0:
        raise ConfigError(f"{key} deve ser positivo.")
    return amount


def _positive_int_env(key, default):
    """Le inteiro positivo do ambiente, aceitando notacao 1e6."""
    raw = get_env(key)
    if raw is None:
        return default
    try:
        value = int(float(raw)) if any(c in str(raw).lower() for c in "e.") else int(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Valor inválido para {key}: {raw!r}.") from exc
    if value < 1:
        raise ConfigError(f"{key} deve ser um inteiro positivo.")
    return value


@dataclass(frozen=True)
class Settings:
    """Parametros de execucao resolvidos a partir do ambiente."""

    max_memory: int = DEFAULT_MAX_MEMORY
    segment_size: int = DEFAULT_SEGMENT_SIZE
    oracle_cap: int = DEFAULT_ORACLE_CAP
    witness_cap: int = DEFAULT_WITNESS_CAP
    threads: int = 1
    log_level: str = "WARNING"
    log_file: str | None = None

    @classmethod
    def from_env(cls):
        """Monta as configuracoes lendo as variaveis LPFCHAINS_*."""
        raw_memory = get_env("LPFCHAINS_MAX_MEMORY")
        return cls(
            max_memory=parse_memory(raw_memory) if raw_memory is not None else DEFAULT_MAX_MEMORY,
            segment_size=_positive_int_env("LPFCHAINS_SEGMENT_SIZE", DEFAULT_SEGMENT_SIZE),
            oracle_cap=_positive_int_env("LPFCHAINS_ORACLE_CAP", DEFAULT_ORACLE_CAP),
            witness_cap=_positive_int_env("LPFCHAINS_WITNESS_CAP", DEFAULT_WITNESS_CAP),
            threads=_positive_int_env("LPFCHAINS_THREADS", os.cpu_count() or 1),
            log_level=str(get_env("LPFCHAINS_LOG_LEVEL", default="WARNING")).strip().upper(),
            log_file=get_env("LPFCHAINS_LOG_FILE"),
        )


def get_settings():
    """Retorna as configuracoes atuais do ambiente."""
    return Settings.from_env()
