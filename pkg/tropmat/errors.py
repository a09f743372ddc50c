"""
Hierarquia de exceções do tropmat.

Todas derivam de TropMatError (um ValueError), carregam a mensagem
padronizada de config.Messages e, quando houver, uma testemunha
serializável em JSON.
"""

from typing import Any, Optional


class TropMatError(ValueError):
    """Erro base da biblioteca."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self) -> dict:
        return {"error": self.message, "witness": self.witness}


class InputError(TropMatError):
    """Entrada malformada ou fora do domínio da operação."""


class SizeBoundError(TropMatError):
    """Enumeração excede Limits.SIZE_BOUND."""


class HypothesisError(TropMatError):
    """Hipótese de um teorema não satisfeita, ou pós-verificação falhou."""
