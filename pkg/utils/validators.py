"""
Módulo de validação de entradas do tropmat.

Este módulo fornece funções para validação de valores racionais e tropicais,
rótulos de subconjuntos, payloads JSON (matroides, matroides valuados,
polinômios, matrizes, pontos) e utilitários de texto usados nos relatórios.
"""

import re
import unicodedata
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple


INF_TOKENS = ("inf", "∞", "+inf", "infinity")

_LAURENT = re.compile(r"^[0-9t+\-*/^ .]+$")

# expressões em w1..wn: só dígitos, variáveis, operadores aritméticos e parênteses
_POLINOMIO = re.compile(r"^[\sw0-9+\-*/^().]+$")
_IDENTIFICADOR = re.compile(r"[A-Za-z_]\w*")
_VARIAVEL = re.compile(r"w([1-9][0-9]*)")
_EXPOENTE = re.compile(r"(?:\*\*|\^)\s*\(?\s*([0-9]+)")
MAX_EXPR_EXPONENT = 64


# ============================================================================
# VALORES RACIONAIS E TROPICAIS
# ============================================================================

def parse_fraction(value: Any) -> Optional[Fraction]:
    """
    Converte int, Fraction ou string "p/q" / decimal em Fraction.

    Returns:
        Optional[Fraction]: o valor, ou None se não for racional.

    Examples:
        >>> parse_fraction("39/10")
        Fraction(39, 10)
        >>> parse_fraction("abc")
        None
    """
    if isinstance(value, bool) or value is None:
        return None
    if isinstance(value, float):
        return None
    try:
        return Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        return None


def is_valid_fraction(value: Any) -> bool:
    return parse_fraction(value) is not None


def is_valid_trop_value(value: Any) -> bool:
    """Racional ou "inf"."""
    if isinstance(value, str) and value.strip().lower() in INF_TOKENS:
        return True
    return is_valid_fraction(value)


def parse_q_values(tokens: Sequence[str]) -> Tuple[List[Fraction], List[str]]:
    """
    Lê os valores de --q.

    Returns:
        Tuple[List[Fraction], List[str]]: valores válidos em (0,1) e erros.
    """
    valores, errors = [], []
    for token in tokens:
        q = parse_fraction(token)
        if q is None:
            errors.append(f"q inválido: {token}")
        elif not 0 < q < 1:
            errors.append(f"q fora de (0,1): {token}")
        else:
            valores.append(q)
    return valores, errors


# ============================================================================
# RÓTULOS E SUBCONJUNTOS
# ============================================================================

def is_valid_label(label: str, n: int) -> bool:
    """
    Rótulo 1-based sem repetição: "1234" para n ≤ 9, "1,2,10" para n maior.

    Examples:
        >>> is_valid_label("127", 8)
        True
        >>> is_valid_label("19", 8)
        False
    """
    if not isinstance(label, str):
        return False
    texto = label.strip()
    if texto in ("", "∅"):
        return True
    partes = texto.split(",") if "," in texto else list(texto)
    if not all(p.strip().isdigit() for p in partes):
        return False
    elementos = [int(p) for p in partes]
    return len(set(elementos)) == len(elementos) and all(1 <= e <= n for e in elementos)


def validate_element_list(elements: Any, n: int) -> Tuple[bool, str]:
    """Lista de elementos 1-based distintos em [n]."""
    if not isinstance(elements, list):
        return False, "conjunto deve ser uma lista"
    if not all(isinstance(e, int) and not isinstance(e, bool) for e in elements):
        return False, "elementos devem ser inteiros"
    if len(set(elements)) != len(elements):
        return False, "elementos repetidos"
    if any(not 1 <= e <= n for e in elements):
        return False, f"elemento fora de [{n}]"
    return True, ""


def _validate_n(data: dict, errors: List[str]) -> Optional[int]:
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        errors.append("Campo 'n' deve ser um inteiro não negativo")
        return None
    return n


# ============================================================================
# VALIDAÇÃO DE PAYLOADS
# ============================================================================

def validate_matroid_payload(data: Any) -> Tuple[bool, List[str]]:
    """
    Formato {"n": int, "bases": [[int, ...], ...]} com elementos 1-based.

    Returns:
        Tuple[bool, List[str]]: (True, []) se válido, (False, erros) se não.
    """
    if not isinstance(data, dict):
        return False, ["Matroide deve ser um objeto JSON"]
    errors: List[str] = []
    n = _validate_n(data, errors)
    bases = data.get("bases")
    if not isinstance(bases, list) or not bases:
        errors.append("Campo 'bases' deve ser uma lista não vazia")
    elif n is not None:
        for i, b in enumerate(bases):
            ok, erro = validate_element_list(b, n)
            if not ok:
                errors.append(f"Base {i + 1}: {erro}")
    return len(errors) == 0, errors


def validate_valuated_payload(data: Any) -> Tuple[bool, List[str]]:
    """Formato {"n", "d", "entries": [{"set": [...], "value": "p/q" | "inf"}]}."""
    if not isinstance(data, dict):
        return False, ["Matroide valuado deve ser um objeto JSON"]
    errors: List[str] = []
    n = _validate_n(data, errors)
    d = data.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        errors.append("Campo 'd' deve ser um inteiro não negativo")
        d = None
    entries = data.get("entries")
    if not isinstance(entries, list) or not entries:
        errors.append("Campo 'entries' deve ser uma lista não vazia")
        return False, errors
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "set" not in entry or "value" not in entry:
            errors.append(f"Entrada {i + 1}: esperado {{'set', 'value'}}")
            continue
        if n is not None:
            ok, erro = validate_element_list(entry["set"], n)
            if not ok:
                errors.append(f"Entrada {i + 1}: {erro}")
            elif d is not None and len(entry["set"]) != d:
                errors.append(f"Entrada {i + 1}: conjunto deve ter {d} elementos")
        if not is_valid_trop_value(entry["value"]):
            errors.append(f"Entrada {i + 1}: valor inválido {entry['value']!r}")
    return len(errors) == 0, errors


def polynomial_expr_errors(text: Any, n: Optional[int] = None) -> List[str]:
    """
    Erros de uma expressão polinomial em w1..wn.

    Aceita apenas números, variáveis wi, + - * / ^ ** e parênteses; qualquer
    outro nome (funções, atributos, __import__) é rejeitado antes do parsing.

    Examples:
        >>> polynomial_expr_errors("w1^2 + 3*w1*w2", 2)
        []
    """
    if not isinstance(text, str) or not text.strip():
        return ["Campo 'expr' deve ser um texto não vazio"]
    if not _POLINOMIO.match(text):
        return [f"Campo 'expr' com caracteres inválidos: {text!r}"]
    errors: List[str] = []
    for nome in _IDENTIFICADOR.findall(text):
        m = _VARIAVEL.fullmatch(nome)
        if m is None:
            errors.append(f"Nome inválido em 'expr': {nome}")
        elif n is not None and int(m.group(1)) > n:
            errors.append(f"Variável {nome} fora de w1..w{n}")
    if text.count("(") != text.count(")"):
        errors.append("Parênteses desbalanceados em 'expr'")
    for expoente in _EXPOENTE.findall(text):
        if int(expoente) > MAX_EXPR_EXPONENT:
            errors.append(f"Expoente {expoente} acima do máximo {MAX_EXPR_EXPONENT}")
    return errors


def is_valid_polynomial_expr(text: Any, n: Optional[int] = None) -> bool:
    return not polynomial_expr_errors(text, n)


def validate_polynomial_payload(data: Any) -> Tuple[bool, List[str]]:
    """Formato {"n", "terms": [{"exp", "coeff"}]} ou {"n", "expr": "w1*w2 + ..."}."""
    if not isinstance(data, dict):
        return False, ["Polinômio deve ser um objeto JSON"]
    errors: List[str] = []
    n = _validate_n(data, errors)
    if "expr" in data:
        errors.extend(polynomial_expr_errors(data["expr"], n))
        return len(errors) == 0, errors
    terms = data.get("terms")
    if not isinstance(terms, list):
        errors.append("Campo 'terms' (ou 'expr') é obrigatório")
        return False, errors
    for i, t in enumerate(terms):
        if not isinstance(t, dict) or "exp" not in t or "coeff" not in t:
            errors.append(f"Termo {i + 1}: esperado {{'exp', 'coeff'}}")
            continue
        exp = t["exp"]
        if (not isinstance(exp, list) or (n is not None and len(exp) != n)
                or not all(isinstance(e, int) and e >= 0 for e in exp)):
            errors.append(f"Termo {i + 1}: expoente inválido")
        if not is_valid_fraction(t["coeff"]):
            errors.append(f"Termo {i + 1}: coeficiente inválido {t['coeff']!r}")
    return len(errors) == 0, errors


def validate_mconvex_payload(data: Any) -> Tuple[bool, List[str]]:
    """Formato {"n", "d", "entries": [{"exp": [...], "value": "p/q" | "inf"}]}."""
    if not isinstance(data, dict):
        return False, ["Função deve ser um objeto JSON"]
    errors: List[str] = []
    n = _validate_n(data, errors)
    d = data.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        errors.append("Campo 'd' deve ser um inteiro não negativo")
        d = None
    entries = data.get("entries")
    if not isinstance(entries, list) or not entries:
        errors.append("Campo 'entries' deve ser uma lista não vazia")
        return False, errors
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "exp" not in entry or "value" not in entry:
            errors.append(f"Entrada {i + 1}: esperado {{'exp', 'value'}}")
            continue
        exp = entry["exp"]
        if (not isinstance(exp, list) or (n is not None and len(exp) != n)
                or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exp)):
            errors.append(f"Entrada {i + 1}: expoente inválido")
        elif d is not None and sum(exp) != d:
            errors.append(f"Entrada {i + 1}: grau diferente de {d}")
        if not is_valid_trop_value(entry["value"]):
            errors.append(f"Entrada {i + 1}: valor inválido {entry['value']!r}")
    return len(errors) == 0, errors


def is_valid_matrix_entry(value: Any) -> bool:
    """Racional ou expressão de Laurent em t ("2*t^-1 + 3")."""
    if is_valid_fraction(value):
        return True
    return isinstance(value, str) and "t" in value and bool(_LAURENT.match(value))


def validate_matrix_payload(data: Any) -> Tuple[bool, List[str]]:
    """Lista de linhas de mesmo comprimento, ou {"rows": [...]}."""
    linhas = data.get("rows") if isinstance(data, dict) else data
    if not isinstance(linhas, list) or not linhas:
        return False, ["Matriz deve ser uma lista não vazia de linhas"]
    errors: List[str] = []
    if not all(isinstance(r, list) and r for r in linhas):
        return False, ["Cada linha deve ser uma lista não vazia"]
    if len({len(r) for r in linhas}) != 1:
        errors.append("Linhas com comprimentos diferentes")
    for i, r in enumerate(linhas):
        for j, x in enumerate(r):
            if not is_valid_matrix_entry(x):
                errors.append(f"Entrada ({i + 1},{j + 1}) inválida: {x!r}")
    return len(errors) == 0, errors


def validate_points_payload(data: Any, n: Optional[int] = None) -> Tuple[bool, List[str]]:
    """Lista de pontos tropicais (listas de valores racionais ou "inf")."""
    pontos = data.get("points") if isinstance(data, dict) else data
    if not isinstance(pontos, list):
        return False, ["Pontos devem ser uma lista"]
    errors: List[str] = []
    for i, p in enumerate(pontos):
        if not isinstance(p, list) or (n is not None and len(p) != n):
            errors.append(f"Ponto {i + 1}: tamanho inválido")
        elif not all(is_valid_trop_value(x) for x in p):
            errors.append(f"Ponto {i + 1}: coordenada inválida")
    return len(errors) == 0, errors


# ============================================================================
# UTILITÁRIOS
# ============================================================================

def slugify(text: str) -> str:
    """
    Converte um texto em slug para nomes de arquivo.

    Examples:
        >>> slugify("paper-example L1-not-convex")
        "paper-example-l1-not-convex"
    """
    if not text or not isinstance(text, str):
        return ""
    text = unicodedata.normalize("NFKD", text)
    text = "".join(c for c in text if not unicodedata.combining(c))
    text = re.sub(r"[^\w\s-]", "", text.lower())
    return re.sub(r"[-\s_]+", "-", text).strip("-")
