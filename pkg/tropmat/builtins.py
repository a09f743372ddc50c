"""
Objetos nomeados acessíveis como ``builtin:<nome>`` na CLI e nos testes.

Nomes aceitos: uniform(d,n), vamos, v8_minus, projective_plane(q),
graphic_K(n) com n ≤ 6, table1_quotient(k) com k = 1..3, v8_Q1, v8_Q2 e
as matrizes A1, A2, A3 do exemplo de não convexidade (data/l1_not_convex.json).
"""

import json
import re
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Union

from config import messages, paths, settings
from tropmat.errors import InputError
from tropmat.matroid import (
    Matroid, graphic_Kn, mask_of, parse_label, projective_plane,
    quotient_from_linear_subclass, quotient_from_modular_cut, uniform, v8_minus, vamos,
)
from utils.logger import get_logger


logger = get_logger(__name__)

Builtin = Union[Matroid, List[List[Fraction]]]

_CHAMADA = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(([^()]*)\))?\s*$")

MAX_GRAPHIC_K = 6

# Geradores dos cortes modulares de V8⁻ (contraexemplo à submodularidade)
V8_Q1_CUT = ("127", "568", "3478")
V8_Q2_CUT = ("12", "34", "56")


# ============================================================================
# ARQUIVOS DE DADOS
# ============================================================================

def _load_json(path: Path) -> dict:
    try:
        with open(path, "r", encoding=settings.DEFAULT_ENCODING) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error("Erro ao carregar %s: %s", path, e)
        raise InputError(f"builtin data unavailable: {path.name}")


@lru_cache(maxsize=None)
def l1_matrices() -> Dict[str, List[List[Fraction]]]:
    """A1, A2 e A3 com entradas racionais."""
    dados = _load_json(paths.L1_NOT_CONVEX_FILE)
    return {
        nome: [[Fraction(x) for x in linha] for linha in dados[nome]]
        for nome in ("A1", "A2", "A3")
    }


@lru_cache(maxsize=None)
def table1_entries() -> List[dict]:
    """Registros de data/table1_quotients.json com máscaras já convertidas."""
    dados = _load_json(paths.TABLE1_FILE)
    return [
        {
            "k": q["k"],
            "subclass": frozenset(parse_label(s) for s in q["subclass"]),
            "modular_cut": [parse_label(s) for s in q["modular_cut"]],
            "bases": frozenset(mask_of(i - 1 for i in b) for b in q["bases"]),
        }
        for q in dados["quotients"]
    ]


def table1_quotient(k: int) -> Matroid:
    """
    k-ésimo quociente elementar de U_{3,4} gravado em data/, reconstruído pela subclasse.

    Raises:
        InputError: k fora de 1..3, ou bases gravadas divergem da reconstrução.
    """
    registros = {r["k"]: r for r in table1_entries()}
    if k not in registros:
        raise InputError(messages.UNKNOWN_BUILTIN.format(name=f"table1_quotient({k})"))
    registro = registros[k]
    q = quotient_from_linear_subclass(uniform(3, 4), registro["subclass"])
    if q.bases != registro["bases"]:
        raise InputError(messages.UNKNOWN_BUILTIN.format(name=f"table1_quotient({k})"),
                         witness=q.to_json())
    return q


# ============================================================================
# MATROIDES NOMEADAS
# ============================================================================

def _uniform(d: int, n: int) -> Matroid:
    if not 0 <= d <= n:
        raise InputError(messages.DEGREE_MISMATCH, witness={"d": d, "n": n})
    return uniform(d, n)


def graphic_K(n: int) -> Matroid:
    if not 2 <= n <= MAX_GRAPHIC_K:
        raise InputError(messages.GROUND_TOO_LARGE, witness={"n": n, "max": MAX_GRAPHIC_K})
    return graphic_Kn(n)


def v8_Q1() -> Matroid:
    return quotient_from_modular_cut(v8_minus(), [parse_label(s) for s in V8_Q1_CUT])


def v8_Q2() -> Matroid:
    return quotient_from_modular_cut(v8_minus(), [parse_label(s) for s in V8_Q2_CUT])


BUILTINS: Dict[str, Callable[..., Builtin]] = {
    "uniform": _uniform,
    "vamos": vamos,
    "v8_minus": v8_minus,
    "projective_plane": projective_plane,
    "graphic_K": graphic_K,
    "table1_quotient": table1_quotient,
    "v8_Q1": v8_Q1,
    "v8_Q2": v8_Q2,
    "A1": lambda: l1_matrices()["A1"],
    "A2": lambda: l1_matrices()["A2"],
    "A3": lambda: l1_matrices()["A3"],
}


def builtin_names() -> List[str]:
    return sorted(BUILTINS)


def resolve(name: str) -> Builtin:
    """
    Resolve "uniform(3,4)", "vamos", "A1", ...

    Raises:
        InputError: nome desconhecido ou argumentos inválidos.
    """
    casamento = _CHAMADA.match(name)
    if not casamento or casamento.group(1) not in BUILTINS:
        raise InputError(messages.UNKNOWN_BUILTIN.format(name=name))
    funcao, texto = BUILTINS[casamento.group(1)], casamento.group(2)
    try:
        argumentos = [int(a) for a in texto.split(",")] if texto and texto.strip() else []
        objeto = funcao(*argumentos)
    except InputError:
        raise
    except (ValueError, TypeError):
        raise InputError(messages.UNKNOWN_BUILTIN.format(name=name))
    logger.debug("Builtin resolvido: %s", name)
    return objeto
