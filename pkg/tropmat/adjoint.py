"""
Adjuntos de matroides e de matroides valuados.

Verificação da condição das triplas concorrentes, construção a partir de
uma configuração de pontos (arranjo dos hiperplanos gerados), a forma não
simplificada sobre os (d−1)-subconjuntos, adjuntos valuados, as fórmulas
de cofatores e a álgebra linear por trás delas: a matriz de cofatores
generalizada, a identidade de cofatores e o mapa pletístico Φ.

Na forma simplificada o solo de W (ou Σ_s) são os índices de
``M.hyperplanes``; na forma não simplificada, os (d−1)-subconjuntos de [n]
em ordem colex (ou na ordem ≺ escolhida).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from config import messages
from tropmat.arith import INF, LaurentElem, TropVal, det, submatrix
from tropmat.dressian import _lex_basis, simplified_space, three_term_relations
from tropmat.errors import HypothesisError, InputError
from tropmat.matroid import (
    Matroid, bits, concurrent_triples, k_subsets, mask_label, mask_of, matroid_from_vectors,
    popcount, projective_plane, quotient_lattice,
)
from tropmat.valuated import (
    ValuatedMatroid, check_plucker, from_matrix, points_equal, valuated_circuit,
)
from utils.logger import get_logger


logger = get_logger(__name__)


# ============================================================================
# ADJUNTOS DE MATROIDES
# ============================================================================

@dataclass(frozen=True)
class AdjointCandidate:
    """Matroide ``adjoint`` sobre os hiperplanos de ``host``, de mesmo posto."""

    host: Matroid
    adjoint: Matroid

    @property
    def hyperplanes(self) -> List[int]:
        return self.host.hyperplanes

    def to_json(self) -> dict:
        return {
            "hyperplanes": self.host.labels(self.hyperplanes),
            "adjoint": self.adjoint.to_json(),
        }


def _triple_labels(M: Matroid, tripla: Sequence[int]) -> List[str]:
    return [M.label(h) for h in tripla]


def is_adjoint(M: Matroid, W: Matroid) -> Tuple[bool, Optional[dict]]:
    """
    W é adjunto de M: toda tripla concorrente de M é circuito de W.

    Returns:
        (True, None) ou (False, {"triple": rótulos dos hiperplanos}).

    Raises:
        InputError: solo de W diferente de 𝓛¹(M), posto diferente, ou W
            (ou M) não simples.
    """
    hiperplanos = M.hyperplanes
    if W.n != len(hiperplanos):
        raise InputError(messages.GROUND_MISMATCH, witness={"expected": len(hiperplanos), "got": W.n})
    if W.d != M.d:
        raise InputError(messages.DEGREE_MISMATCH, witness={"expected": M.d, "got": W.d})
    if not W.is_simple:
        raise InputError(messages.NOT_SIMPLE, witness="W")
    posicao = {h: i for i, h in enumerate(hiperplanos)}
    for tripla in concurrent_triples(M):
        if W.rank(mask_of(posicao[h] for h in tripla)) != 2:
            return False, {"triple": _triple_labels(M, tripla)}
    return True, None


def _normal(vectors: Sequence[Sequence], elementos: Sequence[int]):
    """Produto vetorial generalizado dos d−1 vetores dados."""
    d = len(vectors[0])
    linhas = [list(vectors[e]) for e in elementos]
    normal = []
    for j in range(d):
        menor = det([row[:j] + row[j + 1:] for row in linhas])
        normal.append(menor if j % 2 == 0 else -menor)
    return normal


def adjoint_from_points(vectors: Sequence[Sequence]) -> AdjointCandidate:
    """
    Adjunto dado pelo arranjo de todos os hiperplanos gerados pelos pontos.

    ``vectors`` são as colunas (Fraction ou GFElem) de uma configuração
    em dimensão d; a normal de cada hiperplano H vem da base lexicográfica
    de H.

    Raises:
        InputError: configuração degenerada ou matroide não simples.
        HypothesisError: o arranjo obtido não passa em is_adjoint.
    """
    M = matroid_from_vectors(vectors)
    if M.d < 2 or not M.is_simple:
        raise InputError(messages.NOT_REALIZING, witness={"rank": M.d, "simple": M.is_simple})
    normais = [_normal(vectors, bits(_lex_basis(M, h, M.d - 1))) for h in M.hyperplanes]
    W = matroid_from_vectors(normais)
    ok, testemunha = is_adjoint(M, W)
    if not ok:
        raise HypothesisError(messages.NOT_ADJOINT, witness=testemunha)
    logger.info("Adjunto por pontos: %d hiperplanos, posto %d", W.n, W.d)
    return AdjointCandidate(M, W)


def unsimplified_adjoint(M: Matroid, W: Matroid) -> Matroid:
    """
    W̃ sobre os (d−1)-subconjuntos de [n] em colex.

    (B₁..B_d) é base quando cada Bᵢ tem posto d−1 e os fechos formam uma
    base de W; os conjuntos dependentes ficam como laços.

    Raises:
        HypothesisError: W não é adjunto de M.
    """
    ok, testemunha = is_adjoint(M, W)
    if not ok:
        raise HypothesisError(messages.NOT_ADJOINT, witness=testemunha)
    slots = k_subsets(M.n, M.d - 1)
    posicao = {h: i for i, h in enumerate(M.hyperplanes)}
    classes: Dict[int, List[int]] = {i: [] for i in range(W.n)}
    for s, a in enumerate(slots):
        if M.is_independent(a):
            classes[posicao[M.closure(a)]].append(s)
    bases = {
        mask_of(escolha)
        for b in W.bases
        for escolha in product(*(classes[h] for h in bits(b)))
    }
    return Matroid.from_masks(len(slots), bases, validate=False)


# ============================================================================
# ADJUNTOS VALUADOS
# ============================================================================

def _circuit_on(sigma: ValuatedMatroid, suporte: Sequence[int]) -> Optional[Tuple[TropVal, ...]]:
    """Valores do circuito valuado de suporte exato ``suporte``, ou None."""
    W = sigma.underlying
    t = mask_of(suporte)
    if W.rank(t) != len(suporte) - 1:
        return None
    if any(not W.is_independent(t & ~(1 << e)) for e in suporte):
        return None
    ultimo = suporte[-1]
    resto = t & ~(1 << ultimo)
    base = min(b for b in W.bases if b & resto == resto)
    circuito = valuated_circuit(sigma, base, ultimo)
    return tuple(circuito[e] for e in suporte)


def _detect_form(mu: ValuatedMatroid, sigma: ValuatedMatroid, form: Optional[str]) -> str:
    tamanhos = {
        "simplified": len(mu.underlying.hyperplanes),
        "unsimplified": comb(mu.n, mu.d - 1),
    }
    if form is not None:
        if form not in tamanhos or tamanhos[form] != sigma.n:
            raise InputError(messages.FORM_MISMATCH, witness={"form": form, "n": sigma.n})
        return form
    for nome, tamanho in tamanhos.items():
        if tamanho == sigma.n:
            return nome
    raise InputError(messages.GROUND_MISMATCH, witness={"n": sigma.n, **tamanhos})


def simplify_sigma(mu: ValuatedMatroid, sigma: ValuatedMatroid) -> ValuatedMatroid:
    """
    Σ_s: restrição de Σ às bases lexicográficas {D_H}, reindexada por
    hiperplano.

    Raises:
        InputError: Σ não tem base dentro de {D_H}.
    """
    espaco = simplified_space(mu)
    posicao = {s: i for i, s in enumerate(k_subsets(mu.n, mu.d - 1))}
    escolhidos = {posicao[b]: h for h, b in enumerate(espaco.basis_choice)}
    valores = {}
    for m, v in sigma.entries:
        elementos = bits(m)
        if all(e in escolhidos for e in elementos):
            valores[mask_of(escolhidos[e] for e in elementos)] = v
    return ValuatedMatroid.of(len(espaco.hyperplanes), sigma.d, valores)


def is_valuated_adjoint(
    mu: ValuatedMatroid, sigma: ValuatedMatroid, form: Optional[str] = None
) -> Tuple[bool, Optional[dict]]:
    """
    Σ é adjunto valuado de μ.

    Verifica que o subjacente de Σ_s é adjunto de M e que cada equação de
    𝒟¹_s(μ) é um circuito valuado de Σ_s (a menos de translação). Na forma
    não simplificada exige também que cada relação de três termos de
    𝒟¹(μ) seja circuito de Σ e que os (d−1)-conjuntos dependentes sejam
    laços.

    ``form`` é "simplified", "unsimplified" ou None (detectada pelo
    tamanho do solo).

    Raises:
        InputError: μ não simples, posto de Σ diferente de d, ou forma
            incompatível com o solo de Σ.
    """
    if sigma.d != mu.d:
        raise InputError(messages.DEGREE_MISMATCH, witness={"expected": mu.d, "got": sigma.d})
    forma = _detect_form(mu, sigma, form)
    try:
        check_plucker(sigma)
    except InputError as exc:
        return False, {"reason": exc.message, "witness": exc.witness}
    espaco = simplified_space(mu)
    M = mu.underlying

    if forma == "unsimplified":
        try:
            sigma_s = simplify_sigma(mu, sigma)
        except InputError:
            return False, {"reason": messages.RANK_COLLAPSE}
    else:
        sigma_s = sigma

    W = sigma_s.underlying
    if not W.is_simple:
        return False, {"reason": messages.NOT_SIMPLE}
    ok, testemunha = is_adjoint(M, W)
    if not ok:
        return False, testemunha

    for tripla, coefs in espaco.equations:
        circuito = _circuit_on(sigma_s, list(tripla))
        if circuito is None or not points_equal(circuito, coefs):
            return False, {"triple": [M.label(espaco.hyperplanes[t]) for t in tripla]}

    if forma == "unsimplified":
        posicao = {s: i for i, s in enumerate(k_subsets(mu.n, mu.d - 1))}
        for relacao in three_term_relations(mu):
            suporte = [posicao[a] for a, _ in relacao.terms]
            if relacao.kind == "degenerate":
                if sigma.underlying.rank(1 << suporte[0]) != 0:
                    return False, {"relation": relacao.to_json(mu.n)}
                continue
            circuito = _circuit_on(sigma, suporte)
            if circuito is None or not points_equal(circuito, [c for _, c in relacao.terms]):
                return False, {"relation": relacao.to_json(mu.n)}
    return True, None


# ============================================================================
# FÓRMULAS DE COFATORES
# ============================================================================

@dataclass
class CofactorReport:
    """Quantidade de instâncias verificadas por fórmula."""

    counts: Dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {"checked": dict(self.counts), "total": self.total}


def cofactor_check(
    mu: ValuatedMatroid, sigma: ValuatedMatroid, verify_adjoint: bool = True
) -> CofactorReport:
    """
    Verifica as fórmulas de cofatores para Σ não simplificado.

    "induced": 𝔻 = {D−i} é base de Σ para toda base D de μ.
    "2": Σ(𝔻₂) − Σ(𝔻₁) = (d−1)(μ(D₂) − μ(D₁)).
    "3": Σ(𝔻 − D^i + B) − Σ(𝔻) = μ(B+i) − μ(D), ambos ∞ quando B+i é
    dependente.
    "1": Σ(𝔻₂ − D₂^i + B) − Σ(𝔻₁ − D₁^i + B) = (d−2)(μ(D₂) − μ(D₁))
    sempre que o primeiro conjunto é base.

    Raises:
        InputError: Σ não está na forma não simplificada.
        HypothesisError: Σ não é adjunto, ou uma fórmula falha.
    """
    n, d = mu.n, mu.d
    slots = k_subsets(n, d - 1)
    if sigma.n != len(slots) or sigma.d != d:
        raise InputError(messages.FORM_MISMATCH, witness={"n": sigma.n, "d": sigma.d})
    if verify_adjoint:
        ok, testemunha = is_valuated_adjoint(mu, sigma, form="unsimplified")
        if not ok:
            raise HypothesisError(messages.SIGMA_NOT_ADJOINT, witness=testemunha)

    M = mu.underlying
    posicao = {s: i for i, s in enumerate(slots)}
    independentes = [a for a in slots if M.is_independent(a)]
    bases = sorted(mu.support)
    induzida = {b: {i: posicao[b & ~(1 << i)] for i in bits(b)} for b in bases}
    mascara = {b: mask_of(induzida[b].values()) for b in bases}
    contagem = {"induced": 0, "1": 0, "2": 0, "3": 0}

    def violacao(k: str, **testemunha):
        logger.error("Fórmula de cofatores (%s) falhou: %s", k, testemunha)
        raise HypothesisError(messages.COFACTOR_VIOLATION.format(k=k), witness=testemunha)

    ref = bases[0]
    for b in bases:
        if sigma(mascara[b]) == INF:
            violacao("induced", D=mu.label(b))
        contagem["induced"] += 1
        if sigma(mascara[b]) - sigma(mascara[ref]) != (d - 1) * (mu(b) - mu(ref)):
            violacao("2", D1=mu.label(ref), D2=mu.label(b))
        contagem["2"] += 1

    for b in bases:
        for i in bits(b):
            for a in independentes:
                s = posicao[a]
                if a >> i & 1 or mascara[b] >> s & 1:
                    continue
                trocado = sigma(mascara[b] & ~(1 << induzida[b][i]) | 1 << s)
                esperado = mu(a | 1 << i)
                if esperado == INF:
                    certo = trocado == INF
                else:
                    certo = trocado != INF and trocado - sigma(mascara[b]) == esperado - mu(b)
                if not certo:
                    violacao("3", D=mu.label(b), i=i + 1, B=mu.label(a))
                contagem["3"] += 1

    for b1, b2 in combinations(bases, 2):
        for i in bits(b1 & b2):
            for a in independentes:
                s = posicao[a]
                if (mascara[b1] | mascara[b2]) >> s & 1:
                    continue
                x1 = sigma(mascara[b1] & ~(1 << induzida[b1][i]) | 1 << s)
                if x1 == INF:
                    continue
                x2 = sigma(mascara[b2] & ~(1 << induzida[b2][i]) | 1 << s)
                if x2 == INF or x2 - x1 != (d - 2) * (mu(b2) - mu(b1)):
                    violacao("1", D1=mu.label(b1), D2=mu.label(b2), i=i + 1, B=mu.label(a))
                contagem["1"] += 1

    logger.info("Fórmulas de cofatores verificadas: %s", contagem)
    return CofactorReport(contagem)


# ============================================================================
# MATRIZ DE COFATORES GENERALIZADA
# ============================================================================

def _check_order(n: int, d: int, order: Optional[Sequence[int]]) -> Tuple[int, ...]:
    """Ordem ≺ sobre os (d−1)-subconjuntos; colex por padrão."""
    colex = k_subsets(n, d - 1)
    if order is None:
        return tuple(colex)
    ordem = tuple(order)
    if sorted(ordem) != colex:
        raise InputError(messages.BAD_ORDER)
    return ordem


@dataclass(frozen=True)
class GenCofactorMatrix:
    """
    B[i][J] = menor (d−1)×(d−1) de A nas linhas [d]−i e colunas J.

    A linha i é rotulada por [d]−i; as colunas seguem ``columns`` (ordem ≺).
    """

    source: Tuple[Tuple, ...]
    columns: Tuple[int, ...]
    entries: Tuple[Tuple, ...]

    @property
    def d(self) -> int:
        return len(self.source)

    @property
    def n(self) -> int:
        return len(self.source[0])

    def row_labels(self) -> List[str]:
        todos = (1 << self.d) - 1
        return [mask_label(todos & ~(1 << i), self.d) for i in range(self.d)]

    def column(self, j_set: int) -> List:
        k = self.columns.index(j_set)
        return [row[k] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "rows": self.row_labels(),
            "columns": [mask_label(j, self.n) for j in self.columns],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


def gen_cofactor(A: Sequence[Sequence], order: Optional[Sequence[int]] = None) -> GenCofactorMatrix:
    """
    Matriz de cofatores generalizada d × C(n, d−1) de uma matriz d×n.

    Raises:
        InputError: d > n ou ordem inválida.
    """
    d, n = len(A), len(A[0])
    if d > n or d < 1:
        raise InputError(messages.DEGREE_MISMATCH, witness={"d": d, "n": n})
    colunas = _check_order(n, d, order)
    entradas = []
    for i in range(d):
        linhas = [r for r in range(d) if r != i]
        entradas.append(tuple(det(submatrix(A, linhas, bits(j))) for j in colunas))
    return GenCofactorMatrix(tuple(tuple(row) for row in A), colunas, tuple(entradas))


def plucker_coordinates(A: Sequence[Sequence]) -> Tuple:
    """Menores maximais de A, nos d-subconjuntos de colunas em colex."""
    d, n = len(A), len(A[0])
    return tuple(det(submatrix(A, range(d), bits(c))) for c in k_subsets(n, d))


def _signed_minor_matrix(x: Mapping[int, object], js: Sequence[int], zero) -> List[List]:
    """[(−1)^{χ(J_k, i_l) + l} x(J_k + i_l)] com l = 1..d−1 e k = 2..d."""
    primeiro = bits(js[0])
    matriz = []
    for l, i in enumerate(primeiro, start=1):
        linha = []
        for j in js[1:]:
            if j >> i & 1:
                linha.append(zero)
                continue
            chi = popcount(j & ((1 << i) - 1))
            valor = x[j | 1 << i]
            linha.append(valor if (chi + l) % 2 == 0 else -valor)
        matriz.append(linha)
    return matriz


def cofactor_identity_check(
    A: Sequence[Sequence], js: Sequence[int], order: Optional[Sequence[int]] = None
) -> bool:
    """
    B_𝒥 coincide com o determinante dos menores maximais sinalizados de A.

    ``js`` são d (d−1)-subconjuntos distintos; são reordenados por ≺.
    """
    B = gen_cofactor(A, order)
    if len(set(js)) != B.d or any(j not in B.columns for j in js):
        raise InputError(messages.UNEQUAL_BASES, witness=[mask_label(j, B.n) for j in js])
    posicoes = sorted(B.columns.index(j) for j in js)
    esquerda = det(submatrix(B.entries, range(B.d), posicoes))
    x = dict(zip(k_subsets(B.n, B.d), plucker_coordinates(A)))
    zero = esquerda - esquerda
    direita = det(_signed_minor_matrix(x, [B.columns[p] for p in posicoes], zero))
    return esquerda == direita


# ============================================================================
# MAPA PLETÍSTICO Φ
# ============================================================================

PluckerLike = Union[Mapping[int, object], Sequence]


def phi_map(x: PluckerLike, n: int, d: int, order: Optional[Sequence[int]] = None) -> Tuple:
    """
    Φ_≺(x): uma coordenada por d-subconjunto 𝒥 das posições de ≺ (colex).

    ``x`` é indexado pelos d-subconjuntos de [n] (dicionário máscara →
    valor ou sequência em colex); x(I) = 0 para multiconjuntos com
    repetição.
    """
    if isinstance(x, Mapping):
        valores = dict(x)
    else:
        if len(x) != comb(n, d):
            raise InputError(messages.GROUND_MISMATCH)
        valores = dict(zip(k_subsets(n, d), x))
    if not valores:
        raise InputError(messages.GROUND_MISMATCH)
    colunas = _check_order(n, d, order)
    amostra = next(iter(valores.values()))
    zero = amostra - amostra
    resultado = []
    for p in k_subsets(len(colunas), d):
        js = [colunas[q] for q in bits(p)]
        resultado.append(det(_signed_minor_matrix(valores, js, zero)))
    return tuple(resultado)


def plethystic_diagram_check(
    A: Sequence[Sequence], order: Optional[Sequence[int]] = None
) -> Tuple[bool, Optional[dict]]:
    """Φ_≺(Plücker(A)) é proporcional a Plücker(gen_cofactor(A))."""
    d, n = len(A), len(A[0])
    esquerda = phi_map(plucker_coordinates(A), n, d, order)
    B = gen_cofactor(A, order)
    direita = plucker_coordinates(B.entries)
    pivo = next((k for k, v in enumerate(esquerda) if v != 0), None)
    if pivo is None:
        ok = all(v == 0 for v in direita)
        return ok, (None if ok else {"coordinate": "zero"})
    for k, (u, v) in enumerate(zip(esquerda, direita)):
        if v * esquerda[pivo] != u * direita[pivo]:
            posicoes = bits(k_subsets(len(B.columns), d)[k])
            return False, {"coordinate": [mask_label(B.columns[p], n) for p in posicoes]}
    return True, None


def tropicalize_realization(A: Sequence[Sequence]) -> Tuple[ValuatedMatroid, ValuatedMatroid]:
    """
    (μ, Σ) de uma matriz d×n sobre o corpo de Laurent.

    μ(B) = val det A_B e Σ = valuações dos menores maximais da matriz de
    cofatores generalizada (colex). O par é pós-verificado como adjunto.

    Raises:
        InputError: matriz degenerada ou matroide não simples.
        HypothesisError: a pós-verificação falha.
    """
    linhas = [[LaurentElem.coerce(v) for v in row] for row in A]
    try:
        mu = from_matrix(linhas)
    except InputError as exc:
        raise InputError(messages.DEGENERATE_MATRIX) from exc
    if not mu.underlying.is_simple:
        raise InputError(messages.NOT_REALIZING, witness={"simple": False})
    sigma = from_matrix(gen_cofactor(linhas).entries)
    ok, testemunha = is_valuated_adjoint(mu, sigma, form="unsimplified")
    if not ok:
        raise HypothesisError(messages.SIGMA_NOT_ADJOINT, witness=testemunha)
    logger.debug("Realização tropicalizada: %r, %r", mu, sigma)
    return mu, sigma


# ============================================================================
# DIMENSÃO (PLANOS PROJETIVOS)
# ============================================================================

def dressian_dimension_gap(q: int, verify: bool = False) -> Tuple[int, int, int]:
    """
    (dim 𝒱, dim 𝒟(2, q³−1), diferença) para o plano projetivo sobre 𝔽_q.

    dim 𝒟¹_s do plano é 2 (isomorfo a Trop M); somada à linearidade de
    dimensão q³−2 dá q³. Com ``verify`` o 2 é recalculado pela maior
    cadeia do reticulado de quocientes elementares.

    Raises:
        InputError: q ∉ {2, 3}.
        HypothesisError: a dimensão recalculada difere de 2.
    """
    if q not in (2, 3):
        raise InputError(messages.UNSUPPORTED_Q.format(q=q))
    if verify:
        dimensao = quotient_lattice(projective_plane(q)).longest_chain() - 1
        if dimensao != 2:
            raise HypothesisError(messages.DIMENSION_MISMATCH.format(dim=dimensao))
    dim_v = 2 + (q ** 3 - 2)
    dim_dressian = 2 * q ** 3 - 6
    return dim_v, dim_dressian, dim_dressian - dim_v
