"""
Importação das entradas da CLI: arquivos JSON, ``builtin:<nome>`` ou
``random:<d>,<n>``.

Os métodos ``carregar_*`` não levantam exceções: devolvem (objeto, erro),
com erro None em caso de sucesso.
"""

import json
import random
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional, Tuple, Union

from config import messages, settings
from tropmat.arith import LaurentElem, to_trop
from tropmat.builtins import resolve
from tropmat.errors import TropMatError
from tropmat.lorentzian import HomPoly, MConvexFn, basis_polynomial, from_quadratic_matrix
from tropmat.matroid import Matroid, mask_of
from tropmat.valuated import ValuatedMatroid, check_plucker, normalize_point, random_realizable
from utils.logger import get_logger
from utils.validators import (
    validate_matrix_payload, validate_mconvex_payload, validate_matroid_payload,
    validate_points_payload, validate_polynomial_payload, validate_valuated_payload,
)

Fonte = Union[str, Any]

_ALEATORIO = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*$")


class JSONImporter:
    """Classe para carregar matroides, valuações, polinômios e matrizes"""

    BUILTIN_PREFIX = "builtin:"
    RANDOM_PREFIX = "random:"

    def __init__(self, seed: int = settings.DEFAULT_SEED):
        self.logger = get_logger(self.__class__.__name__)
        self.rng = random.Random(seed)
        self.erros: List[str] = []
        self.posicao: Optional[dict] = None

    def _falha(self, erro: str) -> Tuple[None, str]:
        self.erros.append(erro)
        self.logger.warning("Entrada rejeitada: %s", erro)
        return None, erro

    # ------------------------------------------------------------------------
    # Leitura bruta
    # ------------------------------------------------------------------------

    def carregar_json(self, conteudo: Union[bytes, str]):
        """Faz o parse do JSON; o erro traz linha e coluna."""
        try:
            texto = conteudo.decode(settings.DEFAULT_ENCODING) if isinstance(conteudo, bytes) else conteudo
            return json.loads(texto), None
        except json.JSONDecodeError as e:
            self.posicao = {"line": e.lineno, "column": e.colno}
            return self._falha(messages.MALFORMED_JSON.format(line=e.lineno, col=e.colno))
        except UnicodeDecodeError as e:
            return self._falha(f"Erro ao decodificar arquivo: {e}")

    def carregar_arquivo(self, caminho: Union[str, Path]):
        try:
            conteudo = Path(caminho).read_bytes()
        except OSError as e:
            return self._falha(f"Erro ao ler arquivo: {e}")
        return self.carregar_json(conteudo)

    def carregar_aleatorio(self, texto: str):
        """``random:<d>,<n>``: valuação realizável sorteada com a semente do importador."""
        casamento = _ALEATORIO.match(texto)
        if not casamento:
            return self._falha(messages.UNKNOWN_BUILTIN.format(name=self.RANDOM_PREFIX + texto))
        d, n = int(casamento.group(1)), int(casamento.group(2))
        if not 1 <= d <= n:
            return self._falha(messages.DEGREE_MISMATCH)
        try:
            return random_realizable(self.rng, d, n), None
        except TropMatError as e:
            return self._falha(e.message)

    def carregar_entrada(self, entrada: str):
        """``builtin:<nome>``, ``random:<d>,<n>`` ou caminho de arquivo JSON."""
        if entrada.startswith(self.BUILTIN_PREFIX):
            nome = entrada[len(self.BUILTIN_PREFIX):]
            try:
                return resolve(nome), None
            except TropMatError as e:
                return self._falha(e.message)
        if entrada.startswith(self.RANDOM_PREFIX):
            return self.carregar_aleatorio(entrada[len(self.RANDOM_PREFIX):])
        return self.carregar_arquivo(entrada)

    def _obter(self, fonte: Fonte):
        if isinstance(fonte, str):
            return self.carregar_entrada(fonte)
        return fonte, None

    # ------------------------------------------------------------------------
    # Objetos do domínio
    # ------------------------------------------------------------------------

    def carregar_matroide(self, fonte: Fonte, validar: bool = True):
        """{"n", "bases"} com elementos 1-based; ``validar=False`` pula o axioma de troca."""
        dados, erro = self._obter(fonte)
        if erro:
            return None, erro
        if isinstance(dados, Matroid):
            return dados, None
        ok, erros = validate_matroid_payload(dados)
        if not ok:
            return self._falha("; ".join(erros))
        try:
            bases = [mask_of(i - 1 for i in b) for b in dados["bases"]]
            return Matroid.from_masks(dados["n"], bases, validate=validar), None
        except TropMatError as e:
            return self._falha(e.message)

    def carregar_valuado(self, fonte: Fonte, validar: bool = True):
        """
        {"n", "d", "entries"}; conjuntos omitidos valem ∞. Uma matroide
        (builtin ou {"n", "bases"}) é lida com a valuação trivial. ``validar=False``
        pula as relações de Plücker.
        """
        dados, erro = self._obter(fonte)
        if erro:
            return None, erro
        if isinstance(dados, ValuatedMatroid):
            return dados, None
        if isinstance(dados, Matroid):
            return ValuatedMatroid.trivial(dados), None
        if isinstance(dados, dict) and "bases" in dados:
            matroide, erro = self.carregar_matroide(dados, validar)
            return (None, erro) if erro else (ValuatedMatroid.trivial(matroide), None)
        ok, erros = validate_valuated_payload(dados)
        if not ok:
            return self._falha("; ".join(erros))
        try:
            valores = {
                mask_of(i - 1 for i in e["set"]): to_trop(e["value"]) for e in dados["entries"]
            }
            mu = ValuatedMatroid.of(dados["n"], dados["d"], valores)
            if validar:
                check_plucker(mu)
            return mu, None
        except TropMatError as e:
            return self._falha(e.message)

    def carregar_matroide_ou_valuado(self, fonte: Fonte):
        """Matroide para {"n", "bases"} e builtins; valuação para {"entries"}."""
        dados, erro = self._obter(fonte)
        if erro:
            return None, erro
        if isinstance(dados, Matroid) or (isinstance(dados, dict) and "bases" in dados):
            return self.carregar_matroide(dados)
        return self.carregar_valuado(dados)

    def carregar_funcao(self, fonte: Fonte):
        """
        Função em Δ^d_n: {"n", "d", "entries": [{"exp", "value"}]}. Valuações
        e matroides são aceitas e lidas sobre os vetores 0/1.
        """
        dados, erro = self._obter(fonte)
        if erro:
            return None, erro
        entradas = dados.get("entries") if isinstance(dados, dict) else None
        if not (isinstance(entradas, list) and entradas and isinstance(entradas[0], dict)
                and "exp" in entradas[0]):
            mu, erro = self.carregar_valuado(dados, validar=False)
            return (None, erro) if erro else (MConvexFn.from_valuated(mu), None)
        ok, erros = validate_mconvex_payload(dados)
        if not ok:
            return self._falha("; ".join(erros))
        try:
            valores = {tuple(e["exp"]): to_trop(e["value"]) for e in entradas}
            return MConvexFn.of(dados["n"], dados["d"], valores), None
        except TropMatError as e:
            return self._falha(e.message)

    def carregar_polinomio(self, fonte: Fonte):
        """
        {"n", "terms"} ou {"n", "expr"}; uma matroide vira f_M e uma matriz
        simétrica vira ½ wᵀAw.
        """
        dados, erro = self._obter(fonte)
        if erro:
            return None, erro
        try:
            if isinstance(dados, Matroid):
                return basis_polynomial(dados), None
            if isinstance(dados, list):
                matriz, erro = self.carregar_matriz(dados)
                return (None, erro) if erro else (from_quadratic_matrix(matriz), None)
            ok, erros = validate_polynomial_payload(dados)
            if not ok:
                return self._falha("; ".join(erros))
            if "expr" in dados:
                return HomPoly.from_expr(dados["expr"], dados["n"]), None
            return HomPoly.from_json(dados), None
        except TropMatError as e:
            return self._falha(e.message)

    def carregar_matriz(self, fonte: Fonte):
        """
        Lista de linhas (ou {"rows": ...}). Entradas racionais viram Fraction;
        havendo alguma expressão em t, todas viram LaurentElem.
        """
        dados, erro = self._obter(fonte)
        if erro:
            return None, erro
        ok, erros = validate_matrix_payload(dados)
        if not ok:
            return self._falha("; ".join(erros))
        linhas = dados["rows"] if isinstance(dados, dict) else dados
        laurent = any(isinstance(x, str) and "t" in x for r in linhas for x in r)
        try:
            if laurent:
                return [[LaurentElem.coerce(x if isinstance(x, str) else Fraction(x)) for x in r]
                        for r in linhas], None
            return [[Fraction(x.strip()) if isinstance(x, str) else Fraction(x) for x in r]
                    for r in linhas], None
        except TropMatError as e:
            return self._falha(e.message)

    def carregar_pontos(self, fonte: Fonte, n: Optional[int] = None):
        """Lista de pontos (ou {"points": ...}) normalizados com mínimo 0."""
        dados, erro = self._obter(fonte)
        if erro:
            return None, erro
        ok, erros = validate_points_payload(dados, n)
        if not ok:
            return self._falha("; ".join(erros))
        pontos = dados["points"] if isinstance(dados, dict) else dados
        try:
            return [normalize_point([to_trop(x) for x in p]) for p in pontos], None
        except TropMatError as e:
            return self._falha(e.message)
