"""
Matroides valuados sobre Q ∪ {∞}.

Validação pelas relações de Plücker de três termos, circuitos valuados,
pertinência de pontos em Trop μ, menores, truncamento por hiperplano,
relações de incidência, árvores de retas tropicais e completamento de
bandeiras em direção a um ponto.

Valuações são normalizadas na construção (mínimo finito igual a 0); duas
valuações são iguais quando coincidem após a normalização.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from config import messages
from tropmat.arith import (
    INF, TropVal, det, laurent_valuation, random_laurent_matrix, to_trop,
    trop_min_vanishes, trop_to_str,
)
from tropmat.errors import HypothesisError, InputError
from tropmat.matroid import Matroid, bits, compress, k_subsets, mask_label, mask_of, popcount
from utils.logger import get_logger


logger = get_logger(__name__)

TropPoint = Tuple[TropVal, ...]


# ============================================================================
# PONTOS TROPICAIS
# ============================================================================

def normalize_point(w: Sequence[TropVal]) -> TropPoint:
    """Representante de [w] com menor coordenada finita igual a 0."""
    finitos = [x for x in w if x != INF]
    if not finitos:
        raise InputError(messages.NO_FINITE_VALUE)
    menor = min(finitos)
    return tuple(INF if x == INF else Fraction(x) - menor for x in w)


def points_equal(u: Sequence[TropVal], v: Sequence[TropVal]) -> bool:
    return len(u) == len(v) and normalize_point(u) == normalize_point(v)


def point_to_json(w: Sequence[TropVal]) -> List[str]:
    return [trop_to_str(x) for x in w]


def wedge_point(w: Sequence[TropVal], k: int) -> TropPoint:
    """
    w^∧k: coordenada I ↦ Σ_{i∈I} w(i), com os k-subconjuntos em ordem colex.

    Raises:
        InputError: w tem coordenadas infinitas.
    """
    if any(x == INF for x in w):
        raise InputError(messages.INFINITE_POINT)
    return tuple(sum((Fraction(w[i]) for i in bits(s)), Fraction(0)) for s in k_subsets(len(w), k))


# ============================================================================
# MATROIDE VALUADO
# ============================================================================

@dataclass(frozen=True)
class ValuatedMatroid:
    """μ: d-subconjuntos de [n] → Q ∪ {∞}; apenas os valores finitos são guardados."""

    n: int
    d: int
    entries: Tuple[Tuple[int, Fraction], ...]

    @classmethod
    def of(
        cls, n: int, d: int, values: Mapping[int, TropVal], validate: bool = False
    ) -> "ValuatedMatroid":
        """Normaliza (mínimo 0) e, se pedido, valida."""
        finitos = {m: Fraction(v) for m, v in values.items() if v != INF}
        if not finitos:
            raise InputError(messages.NO_FINITE_VALUE)
        if any(popcount(m) != d or m >> n for m in finitos):
            raise InputError(messages.UNEQUAL_BASES)
        menor = min(finitos.values())
        mu = cls(n, d, tuple(sorted((m, v - menor) for m, v in finitos.items())))
        if validate:
            check_plucker(mu)
        return mu

    @classmethod
    def trivial(cls, M: Matroid) -> "ValuatedMatroid":
        return cls(M.n, M.d, tuple((b, Fraction(0)) for b in sorted(M.bases)))

    @cached_property
    def values(self) -> Dict[int, Fraction]:
        return dict(self.entries)

    def __call__(self, mask: int) -> TropVal:
        return self.values.get(mask, INF)

    @cached_property
    def support(self) -> frozenset:
        return frozenset(self.values)

    @cached_property
    def underlying(self) -> Matroid:
        return Matroid(self.n, self.d, self.support)

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def label(self, mask: int) -> str:
        return mask_label(mask, self.n)

    def is_trivial(self) -> bool:
        return all(v == 0 for _, v in self.entries)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "entries": [
                {"set": [i + 1 for i in bits(m)], "value": trop_to_str(v)}
                for m, v in self.entries
            ],
        }

    def __repr__(self):
        return f"ValuatedMatroid(n={self.n}, d={self.d}, |supp|={len(self.entries)})"


def _run_checks(items: Sequence, check: Callable, jobs: int = 1):
    """Primeira testemunha (na ordem de ``items``) devolvida por ``check``, ou None."""
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            resultados = list(executor.map(check, items))
    else:
        resultados = []
        for item in items:
            r = check(item)
            resultados.append(r)
            if r is not None:
                break
    return next((r for r in resultados if r is not None), None)


def _three_term_failure(mu: ValuatedMatroid, s: int) -> Optional[dict]:
    fora = bits(mu.ground & ~s)
    for i, j, k, l in combinations(fora, 4):
        a, b, c, e = (1 << i, 1 << j, 1 << k, 1 << l)
        termos = [
            mu(s | a | b) + mu(s | c | e),
            mu(s | a | c) + mu(s | b | e),
            mu(s | a | e) + mu(s | b | c),
        ]
        if not trop_min_vanishes(termos):
            return {"I": mu.label(s | a), "J": mu.label(s | b | c | e)}
    return None


def check_plucker(mu: ValuatedMatroid, jobs: int = 1) -> ValuatedMatroid:
    """
    Verifica troca no suporte e todas as relações de Plücker de três termos.

    Raises:
        InputError: "support not a matroid" ou "Plücker relation (I,J) fails".
    """
    try:
        Matroid.from_masks(mu.n, mu.support)
    except InputError as exc:
        raise InputError(messages.SUPPORT_NOT_MATROID, witness=exc.witness) from exc
    if mu.d >= 2 and mu.n - mu.d >= 2:
        falha = _run_checks(
            k_subsets(mu.n, mu.d - 2), lambda s: _three_term_failure(mu, s), jobs
        )
        if falha is not None:
            raise InputError(messages.PLUCKER_FAILS.format(i=falha["I"], j=falha["J"]), witness=falha)
    return mu


def validate(n: int, d: int, values: Mapping[int, TropVal], jobs: int = 1) -> ValuatedMatroid:
    """Constrói e valida um matroide valuado a partir de máscara → valor."""
    mu = ValuatedMatroid.of(n, d, values)
    check_plucker(mu, jobs)
    logger.debug("Valuação válida: %r", mu)
    return mu


def all_plucker_relations_hold(mu: ValuatedMatroid) -> Tuple[bool, Optional[dict]]:
    """Oráculo: todas as relações (I, J) com |I| = d−1, |J| = d+1."""
    for i_set in k_subsets(mu.n, mu.d - 1) if mu.d >= 1 else []:
        for j_set in k_subsets(mu.n, mu.d + 1):
            termos = [mu(i_set | 1 << j) + mu(j_set & ~(1 << j)) for j in bits(j_set & ~i_set)]
            if termos and not trop_min_vanishes(termos):
                return False, {"I": mu.label(i_set), "J": mu.label(j_set)}
    return True, None


def from_matrix(rows: Sequence[Sequence]) -> ValuatedMatroid:
    """
    Tropicalização de uma matriz d×n (Fraction ou LaurentElem):
    μ(B) = val(det das colunas B).
    """
    d, n = len(rows), len(rows[0])
    valores = {}
    for b in k_subsets(n, d):
        colunas = bits(b)
        valores[b] = laurent_valuation(det([[row[c] for c in colunas] for row in rows]))
    return ValuatedMatroid.of(n, d, valores)


def random_realizable(
    rng: random.Random, d: int, n: int, max_shift: int = 3, tries: int = 50
) -> ValuatedMatroid:
    """Valuação realizável aleatória (matriz de Laurent com valuações variadas)."""
    for _ in range(tries):
        try:
            return from_matrix(random_laurent_matrix(rng, d, n, max_shift))
        except InputError:
            continue
    raise HypothesisError(messages.RANK_COLLAPSE)


def integer_rescale(mu: ValuatedMatroid) -> Tuple[int, ValuatedMatroid]:
    """Menor inteiro positivo k com k·μ inteiro, e a valuação escalada."""
    k = 1
    for _, v in mu.entries:
        k = lcm(k, v.denominator)
    return k, ValuatedMatroid(mu.n, mu.d, tuple((m, v * k) for m, v in mu.entries))


def rank1_from_point(w: Sequence[TropVal]) -> ValuatedMatroid:
    """Valuação de posto 1 com Trop = [w]: μ({i}) = w(i)."""
    return ValuatedMatroid.of(len(w), 1, {1 << i: to_trop(x) for i, x in enumerate(w)})


def point_of_rank1(mu: ValuatedMatroid) -> TropPoint:
    if mu.d != 1:
        raise InputError(messages.DEGREE_MISMATCH)
    return tuple(mu(1 << i) for i in range(mu.n))


def hyperplane_centered_at(v: Sequence[TropVal]) -> ValuatedMatroid:
    """Valuação de corposto 1 ν([n]−i) = −v(i); Trop ν é o hiperplano centrado em [v]."""
    n = len(v)
    full = (1 << n) - 1
    return ValuatedMatroid.of(
        n, n - 1, {full & ~(1 << i): (INF if x == INF else -Fraction(x)) for i, x in enumerate(v)}
    )


def principal_valuation(n: int, flat: int) -> ValuatedMatroid:
    """Valuação trivial em U_{|F|−1,F} ⊕ U_{n−|F|,[n]−F}: 0 em [n]−i para i ∈ F."""
    if not flat:
        raise InputError(messages.NO_FINITE_VALUE)
    full = (1 << n) - 1
    return ValuatedMatroid.of(n, n - 1, {full & ~(1 << i): 0 for i in bits(flat)})


# ============================================================================
# CIRCUITOS E PERTINÊNCIA
# ============================================================================

def valuated_circuit(mu: ValuatedMatroid, basis: int, i: int) -> TropPoint:
    """
    Circuito básico (B, i): C(j) = μ(B − j + i) para j ∈ B + i.

    Raises:
        InputError: B fora do suporte ou i ∈ B.
    """
    if basis not in mu.support or basis >> i & 1:
        raise InputError(messages.NOT_A_BASIS, witness=mu.label(basis))
    circuito = []
    for j in range(mu.n):
        if j == i:
            circuito.append(mu(basis))
        elif basis >> j & 1:
            circuito.append(mu((basis & ~(1 << j)) | 1 << i))
        else:
            circuito.append(INF)
    return normalize_point(circuito)


def all_circuits(mu: ValuatedMatroid) -> List[TropPoint]:
    """Todos os circuitos valuados, sem repetição módulo translação."""
    vistos = set()
    for b in sorted(mu.support):
        for i in bits(mu.ground & ~b):
            vistos.add(valuated_circuit(mu, b, i))
    return sorted(vistos, key=lambda c: [(x == INF, x if x != INF else 0) for x in c])


def point_in_trop(mu: ValuatedMatroid, w: Sequence[TropVal]) -> bool:
    """
    [w] ∈ Trop μ.

    Ponto finito: os minimizadores de μ(B) − w·e_B cobrem [n]. Com
    coordenadas infinitas: todas as equações de circuito anulam.
    """
    if len(w) != mu.n:
        raise InputError(messages.GROUND_MISMATCH)
    ponto = [to_trop(x) for x in w]
    if all(x == INF for x in ponto):
        raise InputError(messages.NO_FINITE_VALUE)
    if INF not in ponto:
        return initial_matroid(mu, ponto).loops == 0
    for c in all_circuits(mu):
        termos = [ponto[j] + c[j] for j in range(mu.n) if c[j] != INF]
        if not trop_min_vanishes(termos):
            return False
    return True


# ============================================================================
# MENORES
# ============================================================================

def dual(mu: ValuatedMatroid) -> ValuatedMatroid:
    return ValuatedMatroid.of(mu.n, mu.n - mu.d, {mu.ground & ~b: v for b, v in mu.entries})


def deletion(mu: ValuatedMatroid, deleted: int) -> ValuatedMatroid:
    """
    μ \\ I, reindexado em [n] − I.

    Raises:
        InputError: I não é co-independente (o posto cairia).
    """
    resto = mu.ground & ~deleted
    if mu.underlying.rank(resto) < mu.d:
        raise InputError(messages.RANK_COLLAPSE, witness=mu.label(deleted))
    return ValuatedMatroid.of(
        popcount(resto), mu.d,
        {compress(b, resto): v for b, v in mu.entries if b & deleted == 0},
    )


def contraction(mu: ValuatedMatroid, contracted: int) -> ValuatedMatroid:
    """
    μ / I = μ(B' ∪ J), com J o independente maximal guloso de I.

    Bem definido módulo translação, que a normalização elimina.
    """
    M = mu.underlying
    j_set = 0
    for e in bits(contracted):
        if M.is_independent(j_set | 1 << e):
            j_set |= 1 << e
    resto = mu.ground & ~contracted
    return ValuatedMatroid.of(
        popcount(resto), mu.d - popcount(j_set),
        {compress(b, resto): v for b, v in mu.entries if b & contracted == j_set},
    )


def initial_matroid(mu: ValuatedMatroid, w: Sequence[TropVal]) -> Matroid:
    """
    Matroide dos minimizadores de μ(B) − w·e_B.

    Raises:
        InputError: w tem coordenadas infinitas.
    """
    ponto = [to_trop(x) for x in w]
    if any(x == INF for x in ponto):
        raise InputError(messages.INFINITE_POINT)
    custos = {b: v - sum((ponto[i] for i in bits(b)), Fraction(0)) for b, v in mu.entries}
    menor = min(custos.values())
    return Matroid.from_masks(mu.n, [b for b, c in custos.items() if c == menor], validate=False)


# ============================================================================
# TRUNCAMENTO E QUOCIENTES
# ============================================================================

def truncate_by(mu: ValuatedMatroid, nu: ValuatedMatroid) -> ValuatedMatroid:
    """
    Tr_ν μ(B) = min_{i∉B} μ(B+i) + w(i), com w(i) = ν([n]−i).

    Raises:
        InputError: ν não tem corposto 1, ou posto de μ menor que 2.
    """
    if nu.n != mu.n:
        raise InputError(messages.GROUND_MISMATCH)
    if nu.d != nu.n - 1:
        raise InputError(messages.DEGREE_MISMATCH)
    if mu.d < 2:
        raise InputError(messages.RANK_COLLAPSE)
    w = [nu(mu.ground & ~(1 << i)) for i in range(mu.n)]
    valores: Dict[int, Fraction] = {}
    for b, v in mu.entries:
        for i in bits(b):
            if w[i] == INF:
                continue
            chave = b & ~(1 << i)
            candidato = v + w[i]
            if candidato < valores.get(chave, INF):
                valores[chave] = candidato
    return ValuatedMatroid.of(mu.n, mu.d - 1, valores)


def _incidence_failure(mu: ValuatedMatroid, theta: ValuatedMatroid, i_set: int) -> Optional[dict]:
    for j_set in k_subsets(mu.n, mu.d + 1):
        termos = [
            theta(i_set | 1 << j) + mu(j_set & ~(1 << j))
            for j in bits(j_set & ~i_set)
        ]
        if termos and not trop_min_vanishes(termos):
            return {"I": mu.label(i_set), "J": mu.label(j_set)}
    return None


def is_quotient_valuated(
    mu: ValuatedMatroid, theta: ValuatedMatroid, jobs: int = 1
) -> Tuple[bool, Optional[dict]]:
    """
    μ ↠ θ (elementar) pelas relações de incidência (I, J), |I| = d−2, |J| = d+1.

    Returns:
        (True, None) ou (False, {"I": ..., "J": ...}).
    """
    if mu.n != theta.n:
        raise InputError(messages.GROUND_MISMATCH)
    if theta.d != mu.d - 1:
        raise InputError(messages.DEGREE_MISMATCH)
    if theta.d == 0:
        return True, None
    falha = _run_checks(
        k_subsets(mu.n, mu.d - 2), lambda s: _incidence_failure(mu, theta, s), jobs
    )
    return (falha is None), falha


def trop_combination(
    theta1: ValuatedMatroid, theta2: ValuatedMatroid, a: TropVal, b: TropVal
) -> ValuatedMatroid:
    """B ↦ min(a + θ1(B), b + θ2(B)), normalizado."""
    if (theta1.n, theta1.d) != (theta2.n, theta2.d):
        raise InputError(messages.GROUND_MISMATCH)
    chaves = theta1.support | theta2.support
    return ValuatedMatroid.of(
        theta1.n, theta1.d, {m: min(a + theta1(m), b + theta2(m)) for m in chaves}
    )


# ============================================================================
# RETAS TROPICAIS
# ============================================================================

@dataclass
class LineTree:
    """
    Reta tropical como árvore métrica.

    ``edges`` são (u, v, S, comprimento): v = u + comprimento·e_S.
    ``rays`` são (u, P): raio u + t·e_P, t ≥ 0, terminando no cocircuito de P.
    """

    n: int
    classes: List[int]
    vertices: List[TropPoint]
    edges: List[Tuple[int, int, int, Fraction]]
    rays: List[Tuple[int, int]]
    endpoints: Dict[int, TropPoint]

    def to_json(self) -> dict:
        rotulo = lambda m: mask_label(m, self.n)
        return {
            "classes": [rotulo(c) for c in self.classes],
            "vertices": [point_to_json(v) for v in self.vertices],
            "edges": [
                {"from": u, "to": v, "direction": rotulo(s), "length": str(t)}
                for u, v, s, t in self.edges
            ],
            "rays": [{"from": u, "direction": rotulo(p)} for u, p in self.rays],
        }


def _require_rank_two(theta: ValuatedMatroid) -> None:
    if theta.d != 2:
        raise InputError(messages.NOT_RANK_TWO)


def _median(theta: ValuatedMatroid, a: int, b: int, c: int) -> TropPoint:
    """Vértice onde os três termos da relação (a, b, c) coincidem."""
    par = lambda x, y: theta(1 << x | 1 << y)
    x = [INF] * theta.n
    x[c] = Fraction(0)
    x[a] = par(a, b) - par(b, c)
    x[b] = par(a, b) - par(a, c)
    trio = (a, b, c)
    for l in range(theta.n):
        if l in trio:
            continue
        x[l] = max(
            min(x[y] + par(z, l), x[z] + par(y, l)) - par(y, z)
            for y, z in combinations(trio, 2)
        )
    return normalize_point(x)


def _offset_along(v: TropPoint, u: TropPoint, direction: int) -> Optional[Fraction]:
    """t com u ≡ v + t·e_S (mod R·1), ou None."""
    dentro, fora = set(), set()
    for i, (a, b) in enumerate(zip(v, u)):
        (dentro if direction >> i & 1 else fora).add(b - a)
    if len(dentro) != 1 or len(fora) > 1:
        return None
    t = dentro.pop()
    return t - fora.pop() if fora else None


def _cocircuit_point(theta: ValuatedMatroid, klass: int) -> TropPoint:
    p = bits(klass)[0]
    return normalize_point([
        INF if klass >> k & 1 else theta(1 << p | 1 << k) for k in range(theta.n)
    ])


def line_tree(theta: ValuatedMatroid) -> LineTree:
    """
    Trop θ (posto 2, sem laços) como árvore: vértices são as medianas das
    triplas de classes paralelas; arestas seguem as classes paralelas da
    matroide inicial em cada vértice.

    Raises:
        InputError: posto diferente de 2 ou θ com laços.
        HypothesisError: ramo sem vértice vizinho (valuação inconsistente).
    """
    _require_rank_two(theta)
    M = theta.underlying
    if M.loops:
        raise InputError(messages.HAS_LOOPS, witness=theta.label(M.loops))
    classes = list(M.flats(1))
    representantes = [bits(c)[0] for c in classes]
    pontas = {c: _cocircuit_point(theta, c) for c in classes}

    if len(classes) == 2:
        p, q = classes
        p0, q0 = representantes
        base_val = theta(1 << p0 | 1 << q0)
        base = [
            theta(1 << e | 1 << q0) - base_val if p >> e & 1 else theta(1 << p0 | 1 << e) - base_val
            for e in range(theta.n)
        ]
        return LineTree(theta.n, classes, [normalize_point(base)], [], [(0, p), (0, q)], pontas)

    vertices: List[TropPoint] = []
    for a, b, c in combinations(representantes, 3):
        x = _median(theta, a, b, c)
        if x not in vertices:
            vertices.append(x)

    classes_set = set(classes)
    edges, rays = [], []
    for idx, v in enumerate(vertices):
        for ramo in initial_matroid(theta, v).flats(1):
            if ramo in classes_set:
                rays.append((idx, ramo))
                continue
            melhor = None
            for jdx, u in enumerate(vertices):
                t = _offset_along(v, u, ramo)
                if t is not None and t > 0 and (melhor is None or t < melhor[1]):
                    melhor = (jdx, t)
            if melhor is None:
                raise HypothesisError("branch without neighbour", witness=theta.label(ramo))
            if idx < melhor[0]:
                edges.append((idx, melhor[0], ramo, melhor[1]))
    logger.debug("Árvore com %d vértices, %d arestas", len(vertices), len(edges))
    return LineTree(theta.n, classes, vertices, sorted(edges), sorted(rays), pontas)


def _tree_cells(tree: LineTree) -> List[Tuple[TropPoint, int, TropVal]]:
    """Células (base, direção, comprimento); vértices têm comprimento 0."""
    celulas = [(v, 0, Fraction(0)) for v in tree.vertices]
    celulas += [(tree.vertices[u], s, t) for u, _, s, t in tree.edges]
    celulas += [(tree.vertices[u], p, INF) for u, p in tree.rays]
    return celulas


def _point_on_cell(p: TropPoint, cell) -> bool:
    base, direcao, comprimento = cell
    if direcao == 0:
        return points_equal(p, base)
    t = _offset_along(base, p, direcao)
    return t is not None and 0 <= t <= comprimento


def _solve_cells(cell1, cell2) -> Optional[TropPoint]:
    """Interseção transversal de duas células de dimensão 1 (solução única)."""
    (v1, s1, l1), (v2, s2, l2) = cell1, cell2
    n = len(v1)
    a = Matrix([[int(s1 >> i & 1), -int(s2 >> i & 1), -1] for i in range(n)])
    rhs = Matrix([Rational((v2[i] - v1[i]).numerator, (v2[i] - v1[i]).denominator) for i in range(n)])
    try:
        sol, params = a.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        return None
    t, s = (Fraction(int(x.p), int(x.q)) for x in (sol[0], sol[1]))
    if not (0 <= t <= l1 and 0 <= s <= l2):
        return None
    return normalize_point([v1[i] + t * (s1 >> i & 1) for i in range(n)])


def _intersect_loopless_lines(theta1: ValuatedMatroid, theta2: ValuatedMatroid) -> Optional[TropPoint]:
    arvore1, arvore2 = line_tree(theta1), line_tree(theta2)
    celulas1, celulas2 = _tree_cells(arvore1), _tree_cells(arvore2)
    for v in arvore1.vertices:
        if any(_point_on_cell(v, c) for c in celulas2):
            return v
    for v in arvore2.vertices:
        if any(_point_on_cell(v, c) for c in celulas1):
            return v
    for c1 in celulas1[len(arvore1.vertices):]:
        for c2 in celulas2[len(arvore2.vertices):]:
            p = _solve_cells(c1, c2)
            if p is not None:
                return p
    for classe, ponta in arvore1.endpoints.items():
        outra = arvore2.endpoints.get(classe)
        if outra is not None and outra == ponta:
            return ponta
    return None


def _intersect(theta1: ValuatedMatroid, theta2: ValuatedMatroid) -> Optional[TropPoint]:
    lacos = theta1.underlying.loops | theta2.underlying.loops
    if lacos:
        resto = theta1.ground & ~lacos
        if not resto:
            return None
        p = _intersect(contraction(theta1, lacos), contraction(theta2, lacos))
        if p is None:
            return None
        alvo = bits(resto)
        cheio = [INF] * theta1.n
        for pos, e in enumerate(alvo):
            cheio[e] = p[pos]
        return tuple(cheio)
    if theta1.d == 0 or theta2.d == 0:
        return None
    if theta1.d == 1:
        p = point_of_rank1(theta1)
        return normalize_point(p) if point_in_trop(theta2, p) else None
    if theta2.d == 1:
        p = point_of_rank1(theta2)
        return normalize_point(p) if point_in_trop(theta1, p) else None
    return _intersect_loopless_lines(theta1, theta2)


def lines_intersect(theta1: ValuatedMatroid, theta2: ValuatedMatroid) -> Optional[TropPoint]:
    """
    Ponto comum de duas retas tropicais, ou None.

    Laços são tratados por contração; o ponto obtido é levantado com ∞ nas
    coordenadas contraídas.

    Raises:
        InputError: posto diferente de 2 ou solos distintos.
        HypothesisError: o ponto encontrado não passa na verificação.
    """
    _require_rank_two(theta1)
    _require_rank_two(theta2)
    if theta1.n != theta2.n:
        raise InputError(messages.GROUND_MISMATCH)
    p = _intersect(theta1, theta2)
    if p is not None and not (point_in_trop(theta1, p) and point_in_trop(theta2, p)):
        raise HypothesisError(messages.POINT_NOT_ON_TROP, witness=point_to_json(p))
    return p


# ============================================================================
# COMPLETAMENTO DE BANDEIRAS
# ============================================================================

def _translate(mu: ValuatedMatroid, c: Sequence[Fraction]) -> ValuatedMatroid:
    """μ(B) + c·e_B."""
    return ValuatedMatroid.of(
        mu.n, mu.d, {b: v + sum((c[i] for i in bits(b)), Fraction(0)) for b, v in mu.entries}
    )


def complete_flag_to_point(mu0: ValuatedMatroid, mu_last: ValuatedMatroid) -> List[ValuatedMatroid]:
    """
    Cadeia μ0 ↠ μ1 ↠ ... ↠ μ_{d−1} = μ_last por truncamentos sucessivos.

    Com F o conjunto de laços de μ_last: truncamento simples enquanto
    rk(F) < posto − 1, e principal por F quando F vira hiperplano.

    Raises:
        HypothesisError: μ_last não é quociente de μ0, ou o último passo
            não reproduz μ_last.
    """
    if mu_last.d != 1 or mu_last.n != mu0.n:
        raise InputError(messages.DEGREE_MISMATCH)
    ponto = point_of_rank1(mu_last)
    if not point_in_trop(mu0, ponto):
        raise HypothesisError(messages.POINT_NOT_ON_TROP, witness=point_to_json(ponto))

    flat = mask_of(i for i, x in enumerate(ponto) if x == INF)
    deslocamento = [Fraction(0) if x == INF else -Fraction(x) for x in ponto]
    volta = [-x for x in deslocamento]
    plano = hyperplane_centered_at([Fraction(0)] * mu0.n)
    principal = principal_valuation(mu0.n, flat) if flat else None

    atual = _translate(mu0, deslocamento)
    cadeia = [mu0]
    while atual.d > 1:
        if flat and atual.underlying.rank(flat) == atual.d - 1:
            atual = truncate_by(atual, principal)
        else:
            atual = truncate_by(atual, plano)
        cadeia.append(_translate(atual, volta))
    if cadeia[-1] != mu_last:
        raise HypothesisError(messages.FLAG_INCOMPLETE, witness=cadeia[-1].to_json())
    logger.info("Bandeira completada em %d passos", len(cadeia) - 1)
    return cadeia


def flag_from_values(chain: Iterable[ValuatedMatroid]) -> List[dict]:
    return [mu.to_json() for mu in chain]
