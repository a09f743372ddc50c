"""
Pacote utilitários do tropmat.

Este pacote contém módulos auxiliares para logging, validação de entradas
JSON e parse de valores racionais e tropicais.

Módulos disponíveis:
    - logger: Configuração centralizada de logging
    - validators: Validação de payloads (matroides, valuações, polinômios, matrizes)
"""

from . import validators

__all__ = ['validators']
