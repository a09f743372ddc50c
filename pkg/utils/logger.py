"""
Módulo de logging do tropmat.

Fornece configuração centralizada de logging com:
- Rotação de arquivos (logs/tropmat.log)
- Saída de console em stderr, para não misturar com o relatório JSON em stdout
- Formato padronizado
- Configuração via variáveis de ambiente

Exemplo de uso:
    from utils.logger import get_logger

    logger = get_logger(__name__)
    logger.info("Veredito: %s", veredito)
    logger.error("Falha inesperada", exc_info=True)
"""

import logging
import logging.handlers
import os
import sys
from pathlib import Path
from typing import Optional

from config import logging_config


# ============================================================================
# CONFIGURAÇÕES PADRÃO
# ============================================================================

DEFAULT_LOG_DIR = logging_config.LOG_DIR
DEFAULT_LOG_FILE = logging_config.LOG_FILE
DEFAULT_LOG_LEVEL = logging_config.LOG_LEVEL
DEFAULT_MAX_BYTES = logging_config.LOG_MAX_BYTES
DEFAULT_BACKUP_COUNT = logging_config.LOG_BACKUP_COUNT
DEFAULT_LOG_FORMAT = logging_config.LOG_FORMAT
DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

LOG_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}

# Loggers já configurados, por nome
_loggers: dict[str, logging.Logger] = {}


def _env(var_name: str, default_value: str) -> str:
    return os.getenv(var_name, default_value)


def _get_log_level() -> int:
    """Nível de log a partir de LOG_LEVEL (INFO se inválido)."""
    level_name = _env("LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    return LOG_LEVELS.get(level_name, logging.INFO)


def _create_formatter() -> logging.Formatter:
    log_format = _env("LOG_FORMAT", DEFAULT_LOG_FORMAT)
    date_format = _env("LOG_DATE_FORMAT", DEFAULT_DATE_FORMAT)
    return logging.Formatter(log_format, datefmt=date_format)


def _create_file_handler(log_dir: str, log_file: str) -> Optional[logging.Handler]:
    """
    Cria handler de arquivo com rotação.

    Retorna None quando o diretório não pode ser criado (por exemplo em
    ambientes somente leitura); nesse caso apenas o console é usado.
    """
    try:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
    except OSError:
        return None

    max_bytes = int(_env("LOG_MAX_BYTES", str(DEFAULT_MAX_BYTES)))
    backup_count = int(_env("LOG_BACKUP_COUNT", str(DEFAULT_BACKUP_COUNT)))

    handler = logging.handlers.RotatingFileHandler(
        filename=log_path / log_file,
        maxBytes=max_bytes,
        backupCount=backup_count,
        encoding="utf-8",
    )
    handler.setFormatter(_create_formatter())
    handler.setLevel(_get_log_level())
    return handler


def _create_console_handler() -> logging.StreamHandler:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_create_formatter())
    handler.setLevel(_get_log_level())
    return handler


def _configure_logger(logger: logging.Logger) -> None:
    """Anexa os handlers de arquivo e console a um logger novo."""
    if logger.handlers:
        return

    logger.setLevel(_get_log_level())

    file_handler = _create_file_handler(
        _env("LOG_DIR", DEFAULT_LOG_DIR), _env("LOG_FILE", DEFAULT_LOG_FILE)
    )
    if file_handler is not None:
        logger.addHandler(file_handler)

    if _env("LOG_CONSOLE", "true").lower() != "false":
        logger.addHandler(_create_console_handler())

    logger.propagate = False


def get_logger(name: str) -> logging.Logger:
    """
    Obtém um logger configurado com o nome especificado.

    Args:
        name: Nome do logger (recomendado usar __name__)

    Returns:
        Logger configurado e pronto para uso

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.debug("%d subclasses lineares", total)
    """
    if name not in _loggers:
        logger = logging.getLogger(name)
        _configure_logger(logger)
        _loggers[name] = logger

    return _loggers[name]


def get_logger_with_context(name: str, **context) -> logging.LoggerAdapter:
    """
    Obtém um logger que prefixa todas as mensagens com o contexto.

    Example:
        >>> logger = get_logger_with_context("app", verb="levi-check")
        >>> logger.info("Iniciando")
        # ... - app - INFO - [verb:levi-check] Iniciando
    """
    logger = get_logger(name)

    class ContextAdapter(logging.LoggerAdapter):
        def process(self, msg, kwargs):
            context_str = ", ".join(f"{k}:{v}" for k, v in self.extra.items())
            return f"[{context_str}] {msg}", kwargs

    return ContextAdapter(logger, context)


# ============================================================================
# FUNÇÕES UTILITÁRIAS
# ============================================================================

def set_log_level(level: str) -> None:
    """
    Altera o nível de log em tempo de execução (opção --log-level da CLI).

    Args:
        level: DEBUG, INFO, WARNING, ERROR ou CRITICAL
    """
    level_value = LOG_LEVELS.get(level.upper(), logging.INFO)

    for logger in _loggers.values():
        logger.setLevel(level_value)
        for handler in logger.handlers:
            handler.setLevel(level_value)


def clear_loggers() -> None:
    """Remove handlers e limpa o cache (útil em testes)."""
    for logger in _loggers.values():
        for handler in logger.handlers[:]:
            handler.close()
            logger.removeHandler(handler)
    _loggers.clear()
