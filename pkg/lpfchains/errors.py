class LpfChainsError(Exception):
    """Erro base das operacoes de crivo, cadeias e estimativas."""

    pass


class ConfigError(LpfChainsError):
    """Variavel de ambiente com valor invalido."""

    pass


class ResourceLimitError(LpfChainsError):
    """Alocacao acima do orcamento de memoria configurado."""

    pass


class CapExceededError(ResourceLimitError):
    """Parametro acima do teto configurado (oraculo ou testemunha)."""

    pass


class OutOfRangeError(LpfChainsError):
    """Consulta alem do limite de uma tabela de primos."""

    pass


class EmptyIntervalError(LpfChainsError):
    """Nenhum primo no intervalo usado pela construcao gulosa."""

    pass


class PrimeSumOverflowError(LpfChainsError, OverflowError):
    """Acumulacao da soma de primos excederia a largura segura."""

    pass


class ChainFormatError(LpfChainsError):
    """Arquivo de cadeia que nao pode ser interpretado."""

    pass


class DependencyMissingError(LpfChainsError):
    """Biblioteca opcional necessaria nao instalada."""

    pass
