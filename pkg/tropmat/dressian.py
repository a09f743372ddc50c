"""
O espaço 𝒟¹(μ) das subvariedades lineares tropicais de codimensão 1.

Relações de incidência de três termos, o modelo simplificado 𝒟¹_s(μ)
sobre os hiperplanos de M, a estrutura de complexo de ordem para a
valuação trivial, o espaço gerado pelos join-irredutíveis, interpolação
por um adjunto valuado, testemunhas de falha de Levi e a forma
multiplicativa das relações (coeficientes q^μ).

Pontos de 𝒟¹_s são tuplas indexadas por ``M.hyperplanes`` (mesma ordem).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from config import messages
from tropmat.arith import INF, TropVal, to_trop, trop_min_vanishes, trop_to_str
from tropmat.errors import HypothesisError, InputError
from tropmat.matroid import (
    LinearSubclass, Matroid, QuotientLattice, bits, concurrent_triples, k_subsets,
    linear_subclass_closure, mask_label, popcount,
)
from tropmat.valuated import (
    TropPoint, ValuatedMatroid, _run_checks, check_plucker, hyperplane_centered_at,
    initial_matroid, integer_rescale, is_quotient_valuated, point_in_trop, point_to_json,
    truncate_by, wedge_point,
)
from utils.logger import get_logger


logger = get_logger(__name__)

SimplifiedPoint = TropPoint
ThetaLike = Union[ValuatedMatroid, Mapping[int, TropVal]]


def _theta_getter(mu: ValuatedMatroid, theta: ThetaLike) -> Callable[[int], TropVal]:
    """Acesso uniforme a θ (matroide valuado ou dicionário máscara → valor)."""
    if isinstance(theta, ValuatedMatroid):
        if theta.n != mu.n:
            raise InputError(messages.GROUND_MISMATCH)
        if theta.d != mu.d - 1:
            raise InputError(messages.DEGREE_MISMATCH)
        return theta
    valores = {m: to_trop(v) for m, v in theta.items()}
    if any(popcount(m) != mu.d - 1 or m >> mu.n for m in valores):
        raise InputError(messages.UNEQUAL_BASES)
    if all(v == INF for v in valores.values()):
        raise InputError(messages.NO_FINITE_VALUE)
    return lambda m: valores.get(m, INF)


# ============================================================================
# RELAÇÕES DE TRÊS TERMOS
# ============================================================================

@dataclass(frozen=True)
class ThreeTermRelation:
    """
    Relação de incidência de três termos.

    ``terms`` são pares (conjunto A de tamanho d−1, coeficiente μ(...));
    a relação pede que min θ(A) + coeficiente seja atingido duas vezes.
    Na degenerada o único termo força θ(A) = ∞.

    index: (A,) | (A, B, k) | (D, i, j, k), com A, B, D máscaras e i, j, k
    elementos.
    """

    kind: str
    index: Tuple[int, ...]
    terms: Tuple[Tuple[int, TropVal], ...]

    def values(self, theta: Callable[[int], TropVal]) -> List[TropVal]:
        return [theta(a) + c for a, c in self.terms]

    def holds(self, theta: Callable[[int], TropVal]) -> bool:
        if self.kind == "degenerate":
            return theta(self.terms[0][0]) == INF
        return trop_min_vanishes(self.values(theta))

    def to_json(self, n: int) -> dict:
        if self.kind == "degenerate":
            indice = [mask_label(self.index[0], n)]
        elif self.kind == "parallel":
            a, b, k = self.index
            indice = [mask_label(a, n), mask_label(b, n), k + 1]
        else:
            d, i, j, k = self.index
            indice = [mask_label(d, n), i + 1, j + 1, k + 1]
        return {
            "kind": self.kind,
            "index": indice,
            "terms": [{"set": mask_label(a, n), "coefficient": trop_to_str(c)} for a, c in self.terms],
        }


def three_term_relations(mu: ValuatedMatroid) -> List[ThreeTermRelation]:
    """
    As três classes de relações que cortam 𝒟¹(μ).

    Degeneradas: A dependente de tamanho d−1. Paralelas: A = Di, B = Dj
    independentes com o mesmo fecho, uma por k com Ak base. Concorrentes:
    Di, Dj, Dk independentes com fechos distintos dois a dois.
    """
    M = mu.underlying
    n, d = mu.n, mu.d
    relacoes: List[ThreeTermRelation] = []
    if d < 1:
        return relacoes
    for a in k_subsets(n, d - 1):
        if not M.is_independent(a):
            relacoes.append(ThreeTermRelation("degenerate", (a,), ((a, Fraction(0)),)))
    if d < 2:
        return relacoes

    for base_d in k_subsets(n, d - 2):
        if not M.is_independent(base_d):
            continue
        fora = [e for e in bits(mu.ground & ~base_d) if M.is_independent(base_d | 1 << e)]
        fecho = {e: M.closure(base_d | 1 << e) for e in fora}
        for i, j in combinations(fora, 2):
            if fecho[i] != fecho[j]:
                continue
            a, b = base_d | 1 << i, base_d | 1 << j
            for k in bits(mu.ground & ~(a | b)):
                if mu(a | 1 << k) != INF:
                    relacoes.append(ThreeTermRelation(
                        "parallel", (a, b, k), ((a, mu(b | 1 << k)), (b, mu(a | 1 << k)))
                    ))
        for i, j, k in combinations(fora, 3):
            if len({fecho[i], fecho[j], fecho[k]}) < 3:
                continue
            relacoes.append(ThreeTermRelation(
                "concurrent", (base_d, i, j, k),
                (
                    (base_d | 1 << i, mu(base_d | 1 << j | 1 << k)),
                    (base_d | 1 << j, mu(base_d | 1 << i | 1 << k)),
                    (base_d | 1 << k, mu(base_d | 1 << i | 1 << j)),
                ),
            ))
    logger.debug("%d relações de três termos para %r", len(relacoes), mu)
    return relacoes


def d1_membership(
    mu: ValuatedMatroid, theta: ThetaLike, jobs: int = 1
) -> Tuple[bool, Optional[dict]]:
    """
    [θ] ∈ 𝒟¹(μ) pelas relações de três termos.

    Returns:
        (True, None) ou (False, relação violada em JSON).
    """
    obter = _theta_getter(mu, theta)
    relacoes = three_term_relations(mu)
    falha = _run_checks(
        relacoes, lambda r: None if r.holds(obter) else r.to_json(mu.n), jobs
    )
    return (falha is None), falha


def full_incidence_membership(mu: ValuatedMatroid, theta: ThetaLike) -> Tuple[bool, Optional[dict]]:
    """Oráculo: todas as relações de incidência (I, J), |I| = d−2, |J| = d+1."""
    obter = _theta_getter(mu, theta)
    valores = {a: obter(a) for a in k_subsets(mu.n, mu.d - 1)}
    return is_quotient_valuated(mu, ValuatedMatroid.of(mu.n, mu.d - 1, valores))


# ============================================================================
# ESPAÇO SIMPLIFICADO 𝒟¹_s(μ)
# ============================================================================

def _lex_basis(M: Matroid, flat: int, size: int) -> int:
    """Base lexicograficamente menor do flat."""
    return min(
        (s for s in M.independent_sets(size) if s & flat == s),
        key=bits,
    )


@dataclass(frozen=True)
class SimplifiedSpace:
    """
    Equações de 𝒟¹_s(μ) em ℙ𝕋^{𝓛¹(M)}, com a escolha de bases {D_H}.

    Cada equação é (tripla de índices de hiperplanos, coeficientes):
    min θ_s(H_a) + c_a anula tropicalmente. ``complement`` guarda, por
    hiperplano, o elemento k ∉ H usado nos deslocamentos μ(A+k) − μ(D_H+k).
    """

    mu: ValuatedMatroid
    hyperplanes: Tuple[int, ...]
    basis_choice: Tuple[int, ...]
    complement: Tuple[int, ...]
    equations: Tuple[Tuple[Tuple[int, int, int], Tuple[Fraction, Fraction, Fraction]], ...] = ()

    def offset(self, a: int) -> Fraction:
        """θ(A) − θ(D_H) para A base do hiperplano H = cl(A)."""
        h = self.mu.underlying.closure(a)
        idx = self.hyperplanes.index(h)
        k = self.complement[idx]
        return self.mu(a | 1 << k) - self.mu(self.basis_choice[idx] | 1 << k)

    def project(self, theta: ThetaLike) -> SimplifiedPoint:
        obter = _theta_getter(self.mu, theta)
        return tuple(obter(b) for b in self.basis_choice)

    def section(self, point: Sequence[TropVal]) -> ValuatedMatroid:
        """θ em (d−1)-conjuntos a partir de θ_s, pelas relações paralelas."""
        if len(point) != len(self.hyperplanes):
            raise InputError(messages.GROUND_MISMATCH)
        M = self.mu.underlying
        posicao = {h: i for i, h in enumerate(self.hyperplanes)}
        valores: Dict[int, TropVal] = {}
        for a in M.independent_sets(self.mu.d - 1):
            x = to_trop(point[posicao[M.closure(a)]])
            if x != INF:
                valores[a] = x + self.offset(a)
        return ValuatedMatroid.of(self.mu.n, self.mu.d - 1, valores)

    def contains(self, point: Sequence[TropVal]) -> Tuple[bool, Optional[dict]]:
        if len(point) != len(self.hyperplanes):
            raise InputError(messages.GROUND_MISMATCH)
        ponto = [to_trop(x) for x in point]
        if all(x == INF for x in ponto):
            raise InputError(messages.NO_FINITE_VALUE)
        for tripla, coefs in self.equations:
            if not trop_min_vanishes([ponto[t] + c for t, c in zip(tripla, coefs)]):
                return False, {"triple": [mask_label(self.hyperplanes[t], self.mu.n) for t in tripla]}
        return True, None


def simplified_space(
    mu: ValuatedMatroid, basis_choice: Optional[Mapping[int, int]] = None
) -> SimplifiedSpace:
    """
    Sistema de 𝒟¹_s(μ) para a escolha de bases dada (padrão: a menor
    lexicograficamente em cada hiperplano).

    Raises:
        InputError: M não simples, ou uma base escolhida não gera o hiperplano.
    """
    M = mu.underlying
    if not M.is_simple:
        raise InputError(messages.NOT_SIMPLE)
    escolha = dict(basis_choice or {})
    hiperplanos = tuple(M.hyperplanes)
    bases = []
    complementos = []
    for h in hiperplanos:
        b = escolha.get(h)
        if b is None:
            b = _lex_basis(M, h, mu.d - 1)
        elif popcount(b) != mu.d - 1 or not M.is_independent(b) or M.closure(b) != h:
            raise InputError(messages.NOT_A_BASIS, witness=mu.label(b))
        bases.append(b)
        complementos.append(bits(mu.ground & ~h)[0])

    espaco = SimplifiedSpace(mu, hiperplanos, tuple(bases), tuple(complementos))
    posicao = {h: i for i, h in enumerate(hiperplanos)}
    equacoes = []
    for tripla in concurrent_triples(M):
        coline = tripla[0] & tripla[1]
        base_d = _lex_basis(M, coline, mu.d - 2) if mu.d >= 2 else 0
        elementos = [bits(h & ~coline)[0] for h in tripla]
        coefs = []
        for pos, e in enumerate(elementos):
            outros = [x for q, x in enumerate(elementos) if q != pos]
            coefs.append(
                espaco.offset(base_d | 1 << e) + mu(base_d | 1 << outros[0] | 1 << outros[1])
            )
        equacoes.append((tuple(posicao[h] for h in tripla), tuple(coefs)))
    logger.debug("𝒟¹_s com %d hiperplanos e %d triplas", len(hiperplanos), len(equacoes))
    return replace(espaco, equations=tuple(equacoes))


# ============================================================================
# COMPLEXO DE ORDEM (VALUAÇÃO TRIVIAL)
# ============================================================================

Chain = List[Tuple[LinearSubclass, Fraction]]


def _non_subclass_witness(M: Matroid, level: LinearSubclass) -> Optional[List[int]]:
    for pencil in M.coline_pencils.values():
        dentro = [h for h in pencil if h in level]
        fora = [h for h in pencil if h not in level]
        if len(dentro) >= 2 and fora:
            return sorted(dentro[:2] + fora[:1], key=bits)
    return None


def order_complex_decompose(M: Matroid, w: Sequence) -> Chain:
    """
    Decomposição única w = Σ aᵢ e_{𝓖ᵢ} com 𝓖ᵢ cadeia ascendente de
    subclasses lineares (os conjuntos de nível {w ≥ v}).

    Raises:
        InputError: w com coordenada infinita ou negativa.
        HypothesisError: conjunto de nível que não é subclasse linear,
            com a tripla concorrente como testemunha.
    """
    hiperplanos = M.hyperplanes
    if len(w) != len(hiperplanos):
        raise InputError(messages.GROUND_MISMATCH)
    ponto = [to_trop(x) for x in w]
    if any(x == INF or x < 0 for x in ponto):
        raise InputError(messages.NEGATIVE_POINT)

    niveis = sorted({x for x in ponto if x > 0})
    cadeia: Chain = []
    anterior = Fraction(0)
    for v in niveis:
        nivel = frozenset(h for h, x in zip(hiperplanos, ponto) if x >= v)
        tripla = _non_subclass_witness(M, nivel)
        if tripla is not None:
            rotulos = M.labels(sorted(nivel, key=bits))
            logger.info("Conjunto de nível não é subclasse: %s", rotulos)
            raise HypothesisError(
                messages.LEVEL_SET_NOT_SUBCLASS.format(g="{" + ",".join(rotulos) + "}"),
                witness={"level_set": rotulos, "triple": M.labels(tripla)},
            )
        cadeia.append((nivel, v - anterior))
        anterior = v
    cadeia.reverse()
    return cadeia


def chain_point(M: Matroid, chain: Chain) -> SimplifiedPoint:
    """Σ aᵢ e_{𝓖ᵢ}."""
    return tuple(
        sum((a for g, a in chain if h in g), Fraction(0)) for h in M.hyperplanes
    )


def subclass_point(M: Matroid, subclass: LinearSubclass) -> SimplifiedPoint:
    """Valuação trivial do quociente de 𝓗 em 𝒟¹_s(M): ∞ em 𝓗, 0 fora."""
    return tuple(INF if h in subclass else Fraction(0) for h in M.hyperplanes)


def chain_as_tropical_sum(M: Matroid, chain: Chain) -> List[Tuple[Fraction, SimplifiedPoint]]:
    """
    Termos (constante, δ_{𝓗ⱼᶜ}) cujo mínimo é Σ aᵢ e_{𝓗ᵢ}; cadeia ascendente
    𝓗₁ ⊊ … ⊊ 𝓗_k, com 𝓗₀ = ∅ e constante Σ_{i>j} aᵢ.
    """
    trivial = frozenset(M.hyperplanes)
    subclasses = [frozenset()] + [g for g, _ in chain]
    pesos = [a for _, a in chain]
    termos = []
    for j, g in enumerate(subclasses):
        if g == trivial:
            continue
        termos.append((sum(pesos[j:], Fraction(0)), subclass_point(M, g)))
    return termos


def join_irreducible_generators(M: Matroid, bound: Optional[int] = None) -> List[SimplifiedPoint]:
    """Indicadores δ_{𝓗ᶜ} dos join-irredutíveis de Q̂¹(M)."""
    reticulado = QuotientLattice(M, bound)
    return [subclass_point(M, reticulado.elements[i]) for i in reticulado.join_irreducibles]


def _residual(g: Sequence[TropVal], w: Sequence[TropVal]) -> Optional[TropVal]:
    """Menor λ com λ + g ≥ w; None se g não tem coordenada finita."""
    diferencas = [
        (INF if x == INF else x - y) for x, y in zip(w, g) if y != INF
    ]
    return max(diferencas) if diferencas else None


def in_tropical_span(generators: Sequence[Sequence[TropVal]], w: Sequence) -> bool:
    """
    w está no espaço min-plus gerado se min_k (λ_k + g_k) = w, com λ_k o
    resíduo de w por g_k.
    """
    ponto = [to_trop(x) for x in w]
    if all(x == INF for x in ponto):
        raise InputError(messages.NO_FINITE_VALUE)
    projecao = [INF] * len(ponto)
    for g in generators:
        if len(g) != len(ponto):
            raise InputError(messages.GROUND_MISMATCH)
        lam = _residual(g, ponto)
        if lam is None or lam == INF:
            continue
        projecao = [min(p, lam + y) for p, y in zip(projecao, g)]
    return projecao == ponto


# ============================================================================
# INTERPOLAÇÃO
# ============================================================================

def interpolate(
    mu: ValuatedMatroid, sigma: ValuatedMatroid, points: Sequence[Sequence]
) -> ValuatedMatroid:
    """
    θ ∈ 𝒟¹(μ) com Trop θ contendo os d−1 pontos dados.

    Σ é um adjunto valuado no solo dos (d−1)-conjuntos de [n] em ordem
    colex. Trunca Σ pelos hiperplanos centrados em wᵢ^∧(d−1); o ponto
    final de posto 1 é θ. O resultado é pós-verificado.

    Raises:
        InputError: quantidade de pontos errada, ou ponto com coordenada ∞.
        HypothesisError: ponto fora de Trop μ, ou Σ não se comporta como adjunto.
    """
    n, d = mu.n, mu.d
    if d < 2:
        raise InputError(messages.RANK_COLLAPSE)
    if len(points) != d - 1:
        raise InputError(messages.DEGREE_MISMATCH, witness={"expected": d - 1, "got": len(points)})
    slots = k_subsets(n, d - 1)
    if sigma.n != len(slots) or sigma.d != d:
        raise HypothesisError(messages.SIGMA_NOT_ADJOINT, witness={"n": sigma.n, "d": sigma.d})

    pontos = []
    for w in points:
        ponto = tuple(to_trop(x) for x in w)
        if len(ponto) != n:
            raise InputError(messages.GROUND_MISMATCH)
        if INF in ponto:
            raise InputError(messages.INFINITE_POINT)
        if not point_in_trop(mu, ponto):
            raise HypothesisError(messages.POINT_NOT_ON_TROP, witness=point_to_json(ponto))
        pontos.append(ponto)

    atual = sigma
    try:
        for ponto in pontos:
            atual = truncate_by(atual, hyperplane_centered_at(wedge_point(ponto, d - 1)))
        theta = ValuatedMatroid.of(n, d - 1, {slots[i]: atual(1 << i) for i in range(len(slots))})
        check_plucker(theta)
    except InputError as exc:
        raise HypothesisError(messages.SIGMA_NOT_ADJOINT, witness=exc.witness) from exc

    ok, testemunha = d1_membership(mu, theta)
    if not ok:
        raise HypothesisError(messages.SIGMA_NOT_ADJOINT, witness=testemunha)
    for ponto in pontos:
        if not point_in_trop(theta, ponto):
            raise HypothesisError(messages.SIGMA_NOT_ADJOINT, witness={"point": point_to_json(ponto)})
    logger.info("Interpolação por %d pontos concluída", len(pontos))
    return theta


# ============================================================================
# FALHA DE LEVI
# ============================================================================

@dataclass
class LeviWitness:
    """Pontos sem reta (ou subespaço de codimensão 1) comum em Trop M."""

    n: int
    hyperplanes: List[int]
    c: Fraction
    points: List[TropPoint]
    trace: List[list]
    initial_checks: List[bool]

    @property
    def certified(self) -> bool:
        return all(self.initial_checks)

    def to_json(self) -> dict:
        return {
            "hyperplanes": [mask_label(h, self.n) for h in self.hyperplanes],
            "c": trop_to_str(self.c),
            "points": [point_to_json(p) for p in self.points],
            "trace": [
                [
                    {
                        "from": [mask_label(h, self.n) for h in passo["from"]],
                        "added": [mask_label(h, self.n) for h in passo["added"]],
                    }
                    for passo in rodada
                ]
                for rodada in self.trace
            ],
            "certified": self.certified,
        }


def levi_failure_witness(M: Matroid, hyperplanes: Sequence[int], c=1) -> LeviWitness:
    """
    Certificado de não interpolação: wᵢ = c em Hᵢ, 0 fora.

    Cada wᵢ está em Trop M e o matroide inicial em wᵢ é M|Hᵢ ⊕ U_{1,[n]−Hᵢ};
    o traço da propagação pelas triplas concorrentes mostra θ_H ≥ c em todo
    hiperplano, o que contradiz min θ = 0.

    Raises:
        InputError: c ≤ 0 ou quantidade de hiperplanos diferente de d−1.
        HypothesisError: o fecho em subclasse linear não é trivial.
    """
    c = Fraction(c)
    if c <= 0:
        raise InputError(messages.NOT_POSITIVE)
    hs = list(hyperplanes)
    if len(hs) != M.d - 1:
        raise InputError(messages.DEGREE_MISMATCH, witness={"expected": M.d - 1, "got": len(hs)})

    trace: list = []
    fecho = linear_subclass_closure(M, hs, trace)
    if fecho != frozenset(M.hyperplanes):
        raise HypothesisError(messages.LEVI_HOLDS, witness=M.labels(sorted(fecho, key=bits)))

    mu = ValuatedMatroid.trivial(M)
    pontos = []
    verificacoes = []
    for h in hs:
        w = tuple(c if h >> e & 1 else Fraction(0) for e in range(M.n))
        esperado = frozenset(
            b for b in M.bases
            if popcount(b & h) == M.d - 1
        )
        verificacoes.append(
            point_in_trop(mu, w) and initial_matroid(mu, w).bases == esperado
        )
        pontos.append(w)
    logger.info("Testemunha de Levi com %d rodadas de propagação", len(trace))
    return LeviWitness(M.n, hs, c, pontos, trace, verificacoes)


# ============================================================================
# FORMA MULTIPLICATIVA
# ============================================================================

@dataclass(frozen=True)
class MultiplicativeRelation:
    """max_A q^{coef}·a_A atingido duas vezes (ou todos os produtos nulos)."""

    kind: str
    index: Tuple[int, ...]
    terms: Tuple[Tuple[int, Fraction], ...]

    def holds(self, a: Callable[[int], Fraction]) -> bool:
        produtos = [coef * a(s) for s, coef in self.terms]
        maior = max(produtos)
        if maior == 0:
            return True
        return sum(1 for p in produtos if p == maior) >= 2


def _q_power(q: Fraction, x: TropVal) -> Fraction:
    return Fraction(0) if x == INF else q ** int(x)


def multiplicative_relations(mu: ValuatedMatroid, q) -> List[MultiplicativeRelation]:
    """
    Relações de três termos na forma q^{μ(Djk)}·a_{Di}.

    Raises:
        InputError: q fora de (0, 1), ou μ com valores não inteiros.
    """
    q = Fraction(q)
    if not 0 < q < 1:
        raise InputError(messages.Q_OUT_OF_RANGE)
    if any(v.denominator != 1 for _, v in mu.entries):
        k, _ = integer_rescale(mu)
        raise InputError(messages.NON_INTEGER, witness={"factor": k})
    return [
        MultiplicativeRelation(r.kind, r.index, tuple((s, _q_power(q, c)) for s, c in r.terms))
        for r in three_term_relations(mu)
    ]


def multiplicative_membership(
    mu: ValuatedMatroid, q, coefficients: Mapping[int, Fraction]
) -> Tuple[bool, Optional[dict]]:
    """Testa (a_B) contra todas as relações multiplicativas."""
    valores = {m: Fraction(v) for m, v in coefficients.items()}
    if any(v < 0 for v in valores.values()):
        raise InputError(messages.NEGATIVE_COEFF)
    obter = lambda m: valores.get(m, Fraction(0))  # noqa: E731
    for r in multiplicative_relations(mu, q):
        if not r.holds(obter):
            return False, {"kind": r.kind, "sets": [mask_label(s, mu.n) for s, _ in r.terms]}
    return True, None
