"""
Aritmética exata do tropmat.

Racionais (fractions.Fraction), valores tropicais em Q ∪ {∞}, polinômios de
Laurent em t com valuação t-ádica, corpos finitos pequenos (GF(2), GF(3),
GF(4)), inércia exata de matrizes simétricas (lei de Sylvester) e
determinante livre de frações (Bareiss).

Nenhuma operação usa ponto flutuante; o único float é ``INF``.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import messages
from tropmat.errors import InputError


# ============================================================================
# VALORES TROPICAIS
# ============================================================================

INF = math.inf

TropVal = Union[Fraction, float]


def to_trop(value) -> TropVal:
    """Converte int, Fraction, str ("p/q" ou "inf") ou None em TropVal."""
    if value is None:
        return INF
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INF
        return Fraction(value)
    if isinstance(value, str):
        texto = value.strip().lower()
        if texto in ("inf", "∞", "+inf", "infinity"):
            return INF
        return Fraction(texto)
    return Fraction(value)


def trop_to_str(value: TropVal) -> str:
    """Serializa um TropVal no formato JSON do projeto."""
    return "inf" if value == INF else str(Fraction(value))


def is_finite(value: TropVal) -> bool:
    return value != INF


def trop_min_vanishes(values: Iterable[TropVal]) -> bool:
    """
    Verdadeiro se o mínimo é atingido ao menos duas vezes.

    Um mínimo igual a ∞ conta como nulo (a relação é vazia).

    Raises:
        InputError: lista vazia.
    """
    vals = list(values)
    if not vals:
        raise InputError(messages.EMPTY_TROPICAL)
    menor = min(vals)
    if menor == INF:
        return True
    return sum(1 for v in vals if v == menor) >= 2


# ============================================================================
# POLINÔMIOS DE LAURENT
# ============================================================================

_TERM_SPLIT = re.compile(r"(?<!\^)(?=[+-])")


class LaurentElem:
    """
    Polinômio de Laurent em t com coeficientes racionais.

    Imutável; os termos ficam em uma tupla ordenada de pares
    (expoente, coeficiente) com coeficientes não nulos.
    """

    __slots__ = ("_terms",)

    def __init__(self, coeffs=None):
        if isinstance(coeffs, LaurentElem):
            self._terms = coeffs._terms
            return
        acumulado: dict = {}
        if isinstance(coeffs, dict):
            itens = coeffs.items()
        elif coeffs is None:
            itens = ()
        else:
            itens = coeffs
        for exp, coef in itens:
            acumulado[int(exp)] = acumulado.get(int(exp), Fraction(0)) + Fraction(coef)
        self._terms = tuple(sorted((e, c) for e, c in acumulado.items() if c != 0))

    # --------------------------------------------------------------------
    # Construtores
    # --------------------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "LaurentElem":
        return cls({0: c})

    @classmethod
    def monomial(cls, coef, exp: int) -> "LaurentElem":
        return cls({exp: coef})

    @classmethod
    def parse(cls, text: str) -> "LaurentElem":
        """
        Lê expressões como "2*t^-1 + 3", "t^2 - 1/2*t", "-t", "0".

        Raises:
            InputError: texto malformado.
        """
        if not isinstance(text, str) or not text.strip():
            raise InputError(f"invalid Laurent expression: {text!r}")
        limpo = text.replace(" ", "")
        termos = {}
        for parte in _TERM_SPLIT.split(limpo):
            if not parte:
                continue
            sinal = -1 if parte[0] == "-" else 1
            corpo = parte.lstrip("+-")
            try:
                if "t" in corpo:
                    coef_txt, _, exp_txt = corpo.partition("t")
                    coef_txt = coef_txt.rstrip("*")
                    coef = Fraction(coef_txt) if coef_txt else Fraction(1)
                    if exp_txt == "":
                        exp = 1
                    elif exp_txt.startswith("^"):
                        exp = int(exp_txt[1:])
                    else:
                        raise ValueError(exp_txt)
                else:
                    coef, exp = Fraction(corpo), 0
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"invalid Laurent expression: {text!r}") from exc
            termos[exp] = termos.get(exp, Fraction(0)) + sinal * coef
        return cls(termos)

    @staticmethod
    def coerce(value) -> "LaurentElem":
        if isinstance(value, LaurentElem):
            return value
        if isinstance(value, str):
            return LaurentElem.parse(value)
        return LaurentElem({0: value})

    # --------------------------------------------------------------------
    # Propriedades
    # --------------------------------------------------------------------

    @property
    def terms(self) -> Tuple[Tuple[int, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> TropVal:
        return self._terms[0][0] if self._terms else INF

    def leading_coefficient(self) -> Fraction:
        """Coeficiente do termo de menor expoente (0 para o zero)."""
        return self._terms[0][1] if self._terms else Fraction(0)

    def shift(self, k: int) -> "LaurentElem":
        return LaurentElem({e + k: c for e, c in self._terms})

    # --------------------------------------------------------------------
    # Aritmética
    # --------------------------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentElem.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return LaurentElem(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentElem({e: -c for e, c in self._terms})

    def __sub__(self, other):
        try:
            other = LaurentElem.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentElem.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentElem.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        produto: dict = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                produto[e1 + e2] = produto.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentElem(produto)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        resultado = LaurentElem.constant(1)
        for _ in range(k):
            resultado = resultado * self
        return resultado

    def __truediv__(self, other):
        """
        Divisão exata no anel de Laurent.

        Raises:
            ZeroDivisionError: divisor nulo.
            ArithmeticError: divisão não exata.
        """
        other = LaurentElem.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent element")
        if self.is_zero():
            return LaurentElem()
        if len(other._terms) == 1:
            e, c = other._terms[0]
            return LaurentElem({e1 - e: c1 / c for e1, c1 in self._terms})
        s_num, s_den = self._terms[0][0], other._terms[0][0]
        num = _dense(self.shift(-s_num))
        den = _dense(other.shift(-s_den))
        quociente, resto = _poly_divmod(num, den)
        if any(c != 0 for c in resto):
            raise ArithmeticError("inexact Laurent division")
        return LaurentElem(
            {i + s_num - s_den: c for i, c in enumerate(quociente)}
        )

    def __rtruediv__(self, other):
        return LaurentElem.coerce(other) / self

    # --------------------------------------------------------------------
    # Comparação e representação
    # --------------------------------------------------------------------

    def __eq__(self, other):
        try:
            other = LaurentElem.coerce(other)
        except (TypeError, ValueError, InputError):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if not self._terms:
            return hash(0)
        if len(self._terms) == 1 and self._terms[0][0] == 0:
            return hash(self._terms[0][1])
        return hash(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        partes: List[str] = []
        for exp, coef in self._terms:
            negativo = coef < 0
            absoluto = -coef if negativo else coef
            if exp == 0:
                corpo = str(absoluto)
            else:
                var = "t" if exp == 1 else f"t^{exp}"
                corpo = var if absoluto == 1 else f"{absoluto}*{var}"
            if not partes:
                partes.append(f"-{corpo}" if negativo else corpo)
            else:
                partes.append(f"- {corpo}" if negativo else f"+ {corpo}")
        return " ".join(partes)

    def __repr__(self):
        return f"LaurentElem({str(self)!r})"


def _dense(x: LaurentElem) -> List[Fraction]:
    """Coeficientes de um polinômio (expoentes ≥ 0) por grau crescente."""
    grau = x.terms[-1][0]
    coefs = [Fraction(0)] * (grau + 1)
    for e, c in x.terms:
        coefs[e] = c
    return coefs


def _poly_divmod(num: List[Fraction], den: List[Fraction]):
    """Divisão longa de polinômios densos (grau crescente)."""
    resto = list(num)
    grau_den = len(den) - 1
    if len(resto) - 1 < grau_den:
        return [Fraction(0)], resto
    quociente = [Fraction(0)] * (len(resto) - grau_den)
    for k in range(len(resto) - 1, grau_den - 1, -1):
        c = resto[k] / den[-1]
        quociente[k - grau_den] = c
        if c:
            for j, d in enumerate(den):
                resto[k - grau_den + j] -= c * d
    return quociente, resto[:grau_den]


def laurent_valuation(x) -> TropVal:
    """Menor expoente com coeficiente não nulo; ∞ para o zero."""
    if isinstance(x, LaurentElem):
        return x.valuation()
    return INF if x == 0 else Fraction(0)


def random_laurent(
    rng: random.Random,
    min_exp: int = 0,
    max_exp: int = 2,
    coeff_bound: int = 5,
) -> LaurentElem:
    """Elemento de Laurent com coeficientes inteiros aleatórios não nulos."""
    termos = {}
    for e in range(min_exp, max_exp + 1):
        c = 0
        while c == 0:
            c = rng.randint(-coeff_bound, coeff_bound)
        termos[e] = c
    return LaurentElem(termos)


# ============================================================================
# CORPOS FINITOS PEQUENOS
# ============================================================================

# GF(4) = {0, 1, a, a+1} codificado em bits, com a^2 = a + 1
_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)

SUPPORTED_FIELDS = (2, 3, 4)


class GFElem:
    """Elemento de GF(q) para q ∈ {2, 3, 4}."""

    __slots__ = ("q", "v")

    def __init__(self, q: int, v: int):
        if q not in SUPPORTED_FIELDS:
            raise InputError(messages.UNSUPPORTED_Q.format(q=q))
        self.q = q
        self.v = v % q if q != 4 else v & 3

    @classmethod
    def elements(cls, q: int) -> List["GFElem"]:
        return [cls(q, v) for v in range(q)]

    def _wrap(self, other) -> "GFElem":
        if isinstance(other, GFElem):
            return other
        return GFElem(self.q, int(other))

    def __add__(self, other):
        other = self._wrap(other)
        if self.q == 4:
            return GFElem(4, self.v ^ other.v)
        return GFElem(self.q, self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        if self.q in (2, 4):
            return self
        return GFElem(self.q, -self.v)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        if self.q == 4:
            return GFElem(4, _GF4_MUL[self.v][other.v])
        return GFElem(self.q, self.v * other.v)

    __rmul__ = __mul__

    def inverse(self) -> "GFElem":
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(q)")
        for cand in GFElem.elements(self.q):
            if (self * cand).v == 1:
                return cand
        raise ArithmeticError("no inverse")

    def __truediv__(self, other):
        return self * self._wrap(other).inverse()

    def __eq__(self, other):
        if isinstance(other, GFElem):
            return self.q == other.q and self.v == other.v
        if isinstance(other, int):
            return self.v == (other % self.q if self.q != 4 else other)
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.v))

    def __repr__(self):
        return f"GF{self.q}({self.v})"


# ============================================================================
# ÁLGEBRA LINEAR EXATA
# ============================================================================

def as_fraction_matrix(m) -> np.ndarray:
    """Matriz numpy de objetos Fraction."""
    arr = np.array(m, dtype=object)
    if arr.ndim != 2:
        raise InputError(messages.NOT_SQUARE)
    return np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr


def _fraction_sign(x) -> int:
    return (x > 0) - (x < 0)


def _object_matrix(m) -> np.ndarray:
    linhas = [list(row) for row in m]
    n = len(linhas)
    if any(len(row) != n for row in linhas):
        raise InputError(messages.NOT_SQUARE)
    a = np.empty((n, n), dtype=object)
    for i, row in enumerate(linhas):
        for j, x in enumerate(row):
            a[i, j] = x
    return a


def inertia(m, sign: Optional[Callable[[object], int]] = None) -> Tuple[int, int, int]:
    """
    Inércia (n_plus, n_minus, n_zero) de uma matriz simétrica.

    Eliminação simétrica com pivô diagonal; quando a diagonal restante é
    nula mas há entrada fora dela, um bloco hiperbólico 2×2 contribui (1,1).

    Sem ``sign`` as entradas são convertidas para Fraction. Com ``sign``
    (função que devolve -1, 0 ou 1) as entradas são usadas como estão, o
    que permite qualquer corpo ordenado, por exemplo germes em q → 0+.

    Raises:
        InputError: matriz não quadrada ou não simétrica.
    """
    if sign is None:
        a = as_fraction_matrix(m)
        sign = _fraction_sign
    else:
        a = _object_matrix(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise InputError(messages.NOT_SQUARE)
    if any(sign(a[i, j] - a[j, i]) for i in range(n) for j in range(i + 1, n)):
        raise InputError(messages.NOT_SYMMETRIC)

    n_plus = n_minus = 0
    ativos = list(range(n))
    while ativos:
        pivo = next((i for i in ativos if sign(a[i, i]) != 0), None)
        if pivo is not None:
            p = a[pivo, pivo]
            if sign(p) > 0:
                n_plus += 1
            else:
                n_minus += 1
            ativos.remove(pivo)
            if ativos:
                col = a[ativos, pivo]
                a[np.ix_(ativos, ativos)] -= np.outer(col, col) / p
            continue

        par = next(
            ((i, j) for i in ativos for j in ativos if i < j and sign(a[i, j]) != 0),
            None,
        )
        if par is None:
            break
        i, j = par
        b = a[i, j]
        n_plus += 1
        n_minus += 1
        ativos = [k for k in ativos if k not in (i, j)]
        if ativos:
            ri = a[ativos, i]
            rj = a[ativos, j]
            a[np.ix_(ativos, ativos)] -= (np.outer(ri, rj) + np.outer(rj, ri)) / b

    return n_plus, n_minus, n - n_plus - n_minus


def det(m):
    """
    Determinante exato por eliminação livre de frações (Bareiss).

    Funciona sobre Fraction, LaurentElem (divisões exatas) e GFElem.
    """
    a = [list(row) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise InputError(messages.NOT_SQUARE)
    if n == 0:
        return Fraction(1)
    zero = a[0][0] - a[0][0]
    sinal = 1
    anterior = None
    for k in range(n - 1):
        if a[k][k] == 0:
            troca = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if troca is None:
                return zero
            a[k], a[troca] = a[troca], a[k]
            sinal = -sinal
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if anterior is None else num / anterior
        anterior = a[k][k]
    resultado = a[n - 1][n - 1]
    return resultado if sinal == 1 else -resultado


def cofactor_expansion_det(m):
    """Determinante por expansão de Laplace (oráculo para testes)."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return a[0][0]
    total = a[0][0] - a[0][0]
    for j in range(n):
        menor = [row[:j] + row[j + 1:] for row in a[1:]]
        termo = a[0][j] * cofactor_expansion_det(menor)
        total = total + termo if j % 2 == 0 else total - termo
    return total


def matrix_rank(m) -> int:
    """Posto por eliminação gaussiana sobre um corpo (Fraction ou GFElem)."""
    a = [list(row) for row in m]
    if not a:
        return 0
    linhas, colunas = len(a), len(a[0])
    posto = 0
    for c in range(colunas):
        pivo = next((r for r in range(posto, linhas) if a[r][c] != 0), None)
        if pivo is None:
            continue
        a[posto], a[pivo] = a[pivo], a[posto]
        for r in range(posto + 1, linhas):
            if a[r][c] != 0:
                fator = a[r][c] / a[posto][c]
                a[r] = [x - fator * y for x, y in zip(a[r], a[posto])]
        posto += 1
        if posto == linhas:
            break
    return posto


def submatrix(m: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]):
    return [[m[r][c] for c in cols] for r in rows]


def random_rational_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9):
    """Matriz de inteiros aleatórios (como Fraction) em [-bound, bound]."""
    return [[Fraction(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)]


def random_laurent_matrix(rng: random.Random, rows: int, cols: int, max_shift: int = 3):
    """Matriz de binômios de Laurent a + b·t com valuações sorteadas em [0, max_shift]."""
    matriz = []
    for _ in range(rows):
        linha = []
        for _ in range(cols):
            e = rng.randint(0, max_shift)
            linha.append(random_laurent(rng, e, e + 1, 4))
        matriz.append(linha)
    return matriz
