"""
Testes do módulo de logging.

Execute com: pytest utils/test_logger.py
"""

import logging

import pytest

from utils.logger import (
    clear_loggers, get_logger, get_logger_with_context, set_log_level,
)


@pytest.fixture
def log_em_tmp(tmp_path, monkeypatch):
    monkeypatch.setenv("LOG_DIR", str(tmp_path))
    monkeypatch.setenv("LOG_FILE", "teste.log")
    monkeypatch.setenv("LOG_CONSOLE", "false")
    clear_loggers()
    yield tmp_path
    clear_loggers()


def test_arquivo_e_contexto(log_em_tmp):
    print("=" * 50)
    print("TESTES DO LOGGER")
    print("=" * 50)

    logger = get_logger("tropmat.teste")
    assert get_logger("tropmat.teste") is logger
    assert logger.propagate is False and len(logger.handlers) == 1

    get_logger_with_context("tropmat.teste", verb="levi-check").warning("Veredito: %s", False)
    for handler in logger.handlers:
        handler.flush()
    conteudo = (log_em_tmp / "teste.log").read_text(encoding="utf-8")
    assert "WARNING - [verb:levi-check] Veredito: False" in conteudo
    print("[OK] arquivo rotativo e contexto funcionando")


def test_set_log_level(log_em_tmp):
    logger = get_logger("tropmat.nivel")
    set_log_level("debug")
    assert logger.level == logging.DEBUG
    assert all(h.level == logging.DEBUG for h in logger.handlers)

    set_log_level("nada")
    assert logger.level == logging.INFO

    clear_loggers()
    assert logger.handlers == []
    print("[PASS] Todos os testes do logger passaram!\n")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
