"""Pacote lpfchains: cadeias de maior fator primo decrescente (g(n))."""

__version__ = "0.1.0"
