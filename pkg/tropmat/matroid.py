"""
Matroides por coleção de bases (bitmasks).

Elementos são 0-based internamente; rótulos, JSON e mensagens usam 1-based
("1234" é a máscara de {0,1,2,3}). Flats, hiperplanos, subclasses lineares,
cortes modulares, quocientes elementares, o reticulado de quocientes
elementares, perspectividade e as matroides nomeadas.

Example:
    >>> from tropmat.matroid import uniform, enumerate_linear_subclasses
    >>> len(enumerate_linear_subclasses(uniform(3, 4)))
    15
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from config import limits, messages
from tropmat.arith import GFElem, det, matrix_rank
from tropmat.errors import HypothesisError, InputError, SizeBoundError
from utils.logger import get_logger


logger = get_logger(__name__)

LinearSubclass = FrozenSet[int]


# ============================================================================
# BITMASKS
# ============================================================================

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> List[int]:
    """Índices (0-based) presentes na máscara, em ordem crescente."""
    resultado = []
    i = 0
    while mask:
        if mask & 1:
            resultado.append(i)
        mask >>= 1
        i += 1
    return resultado


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def mask_label(mask: int, n: int = 9) -> str:
    """Rótulo 1-based: "1234" para n ≤ 9, "1,2,10" caso contrário."""
    sep = "" if n <= 9 else ","
    return sep.join(str(i + 1) for i in bits(mask)) or "∅"


def parse_label(label: str) -> int:
    """Inverso de mask_label."""
    if label in ("", "∅"):
        return 0
    partes = label.split(",") if "," in label else list(label)
    return mask_of(int(p) - 1 for p in partes)


def compress(mask: int, keep: int) -> int:
    """Reindexa os elementos de ``mask`` ∩ ``keep`` para 0..|keep|-1."""
    resultado = 0
    for pos, e in enumerate(bits(keep)):
        if mask >> e & 1:
            resultado |= 1 << pos
    return resultado


def expand(mask: int, keep: int) -> int:
    """Inverso de compress."""
    alvo = bits(keep)
    return mask_of(alvo[pos] for pos in bits(mask))


def k_subsets(n: int, k: int) -> List[int]:
    """Máscaras dos k-subconjuntos de [n] em ordem colexicográfica."""
    return sorted((mask_of(c) for c in combinations(range(n), k)))


# ============================================================================
# MATROIDE
# ============================================================================

@dataclass(frozen=True)
class Matroid:
    """
    Matroide sobre [n] dada por suas bases.

    Os caches (flats, hiperplanos, feixes de colinhas) são calculados sob
    demanda uma única vez por instância.
    """

    n: int
    d: int
    bases: FrozenSet[int]

    # --------------------------------------------------------------------
    # Construtores
    # --------------------------------------------------------------------

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], validate: bool = True) -> "Matroid":
        bases = frozenset(masks)
        if not bases:
            raise InputError(messages.EMPTY_BASES)
        tamanhos = {popcount(b) for b in bases}
        if len(tamanhos) != 1:
            raise InputError(messages.UNEQUAL_BASES)
        if any(b >> n for b in bases):
            raise InputError(f"basis element outside [{n}]")
        matroide = cls(n, tamanhos.pop(), bases)
        if validate:
            matroide.check_exchange()
        return matroide

    def check_exchange(self) -> None:
        """
        Verifica o axioma de troca em todos os pares de bases.

        Raises:
            InputError: com a testemunha (B1, B2, i).
        """
        for b1 in self.bases:
            for b2 in self.bases:
                diff = b1 & ~b2
                if not diff:
                    continue
                fora = bits(b2 & ~b1)
                for i in bits(diff):
                    sem_i = b1 & ~(1 << i)
                    if not any(sem_i | (1 << j) in self.bases for j in fora):
                        b1_l, b2_l = self.label(b1), self.label(b2)
                        raise InputError(
                            messages.EXCHANGE_VIOLATED.format(b1=b1_l, b2=b2_l, i=i + 1),
                            witness={"B1": b1_l, "B2": b2_l, "i": i + 1},
                        )

    # --------------------------------------------------------------------
    # Rótulos e serialização
    # --------------------------------------------------------------------

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def label(self, mask: int) -> str:
        return mask_label(mask, self.n)

    def labels(self, masks: Iterable[int]) -> List[str]:
        return [self.label(m) for m in masks]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "bases": [[i + 1 for i in bits(b)] for b in sorted(self.bases)],
        }

    def __repr__(self):
        return f"Matroid(n={self.n}, d={self.d}, |B|={len(self.bases)})"

    # --------------------------------------------------------------------
    # Posto e fecho
    # --------------------------------------------------------------------

    @cached_property
    def _rank_memo(self) -> Dict[int, int]:
        return {}

    def rank(self, s: Optional[int] = None) -> int:
        if s is None:
            return self.d
        memo = self._rank_memo
        if s not in memo:
            memo[s] = max(popcount(b & s) for b in self.bases)
        return memo[s]

    def is_independent(self, s: int) -> bool:
        return any(b & s == s for b in self.bases)

    def is_basis(self, s: int) -> bool:
        return s in self.bases

    def closure(self, s: int) -> int:
        r = self.rank(s)
        fecho = s
        for e in range(self.n):
            if not s >> e & 1 and self.rank(s | 1 << e) == r:
                fecho |= 1 << e
        return fecho

    def is_flat(self, s: int) -> bool:
        return self.closure(s) == s

    @cached_property
    def flats_by_rank(self) -> List[List[int]]:
        """Flats agrupados por posto, construídos nível a nível."""
        nivel = {self.closure(0)}
        niveis = [sorted(nivel)]
        for _ in range(self.d):
            proximo = set()
            for f in nivel:
                for e in range(self.n):
                    if not f >> e & 1:
                        proximo.add(self.closure(f | 1 << e))
            nivel = proximo
            niveis.append(sorted(nivel))
        return niveis

    def flats(self, k: Optional[int] = None) -> List[int]:
        if k is None:
            return [f for nivel in self.flats_by_rank for f in nivel]
        if k < 0 or k > self.d:
            return []
        return list(self.flats_by_rank[k])

    @cached_property
    def flat_set(self) -> FrozenSet[int]:
        return frozenset(self.flats())

    @cached_property
    def hyperplanes(self) -> List[int]:
        return self.flats(self.d - 1) if self.d >= 1 else []

    @cached_property
    def colines(self) -> List[int]:
        return self.flats(self.d - 2) if self.d >= 2 else []

    @cached_property
    def coline_pencils(self) -> Dict[int, List[int]]:
        """Colinha → hiperplanos que a contêm."""
        return {
            c: [h for h in self.hyperplanes if h & c == c]
            for c in self.colines
        }

    @cached_property
    def loops(self) -> int:
        return self.closure(0)

    @cached_property
    def is_simple(self) -> bool:
        if self.loops:
            return False
        if self.d == 0:
            return self.n == 0
        if self.d == 1:
            return self.n <= 1
        return all(self.rank(1 << i | 1 << j) == 2 for i, j in combinations(range(self.n), 2))

    def independent_sets(self, k: int) -> FrozenSet[int]:
        return frozenset(
            mask_of(c) for b in self.bases for c in combinations(bits(b), k)
        )

    # --------------------------------------------------------------------
    # Menores e operações
    # --------------------------------------------------------------------

    def dual(self) -> "Matroid":
        return Matroid(self.n, self.n - self.d, frozenset(self.ground & ~b for b in self.bases))

    def restriction(self, s: int) -> "Matroid":
        """Restrição a ``s``, reindexada para 0..|s|-1."""
        r = self.rank(s)
        bases = {compress(b & s, s) for b in self.bases if popcount(b & s) == r}
        return Matroid(popcount(s), r, frozenset(bases))

    def deletion(self, s: int) -> "Matroid":
        return self.restriction(self.ground & ~s)

    def contraction(self, s: int) -> "Matroid":
        return self.dual().deletion(s).dual()

    def truncation(self) -> "Matroid":
        if self.d == 0:
            raise InputError(messages.RANK_COLLAPSE)
        return Matroid(self.n, self.d - 1, self.independent_sets(self.d - 1))

    def with_loops(self, loops: int, n_total: int) -> "Matroid":
        """Reinsere ``loops`` (máscara em [n_total]) como laços."""
        keep = ((1 << n_total) - 1) & ~loops
        return Matroid(n_total, self.d, frozenset(expand(b, keep) for b in self.bases))


# ============================================================================
# CONSTRUTORES
# ============================================================================

def from_bases(n: int, basis_list: Iterable[Iterable[int]]) -> Matroid:
    """
    Matroide a partir de bases dadas como coleções de elementos 0-based.

    Raises:
        InputError: lista vazia, tamanhos diferentes ou troca violada.
    """
    return Matroid.from_masks(n, [mask_of(b) for b in basis_list])


def uniform(d: int, n: int) -> Matroid:
    return Matroid(n, d, frozenset(k_subsets(n, d)))


def _from_non_bases(n: int, d: int, non_bases: Sequence[str]) -> Matroid:
    proibidas = {parse_label(s) for s in non_bases}
    return Matroid.from_masks(n, [b for b in k_subsets(n, d) if b not in proibidas])


def v8_minus() -> Matroid:
    """Matroide de posto 4 em [8] com 4-circuitos 1234, 3456, 1256, 3478."""
    return _from_non_bases(8, 4, ["1234", "3456", "1256", "3478"])


def vamos() -> Matroid:
    """Vámos: V8⁻ com o 4-circuito adicional 5678 (1278 permanece base)."""
    return _from_non_bases(8, 4, ["1234", "3456", "1256", "3478", "5678"])


def matroid_from_vectors(vectors: Sequence[Sequence]) -> Matroid:
    """
    Matroide de uma configuração de vetores (colunas) de mesma dimensão d.

    Raises:
        InputError: configuração de posto menor que d.
    """
    if not vectors:
        raise InputError(messages.EMPTY_BASES)
    d = len(vectors[0])
    linhas = [[v[i] for v in vectors] for i in range(d)]
    if matrix_rank(linhas) != d:
        raise InputError(messages.NOT_REALIZING)
    n = len(vectors)
    bases = [
        mask_of(c)
        for c in combinations(range(n), d)
        if det([[vectors[j][i] for j in c] for i in range(d)]) != 0
    ]
    return Matroid.from_masks(n, bases, validate=False)


def projective_points(q: int) -> List[Tuple[GFElem, GFElem, GFElem]]:
    """Representantes canônicos (primeira coordenada não nula = 1) de PG(2,q)."""
    pontos = []
    for coords in product(range(q), repeat=3):
        if not any(coords):
            continue
        primeiro = next(c for c in coords if c)
        if primeiro != 1:
            continue
        pontos.append(tuple(GFElem(q, c) for c in coords))
    return pontos


def projective_plane(q: int) -> Matroid:
    """
    Plano projetivo PG(2,q) para q ∈ {2, 3, 4}.

    Raises:
        InputError: q não suportado.
    """
    if q not in (2, 3, 4):
        raise InputError(messages.UNSUPPORTED_Q.format(q=q))
    return matroid_from_vectors(projective_points(q))


def kn_edges(n: int) -> List[Tuple[int, int]]:
    """Arestas de K_n em ordem lexicográfica (0-based)."""
    return list(combinations(range(n), 2))


def graphic_Kn(n: int) -> Matroid:
    """Matroide gráfica de K_n; bases são as árvores geradoras."""
    arestas = kn_edges(n)
    bases = []
    for c in combinations(range(len(arestas)), n - 1):
        pai = list(range(n))

        def raiz(x):
            while pai[x] != x:
                pai[x] = pai[pai[x]]
                x = pai[x]
            return x

        aciclico = True
        for idx in c:
            a, b = arestas[idx]
            ra, rb = raiz(a), raiz(b)
            if ra == rb:
                aciclico = False
                break
            pai[ra] = rb
        if aciclico:
            bases.append(mask_of(c))
    return Matroid.from_masks(len(arestas), bases, validate=False)


# ============================================================================
# TRIPLAS CONCORRENTES E QUOCIENTES
# ============================================================================

def concurrent_triples(M: Matroid, require_simple: bool = True) -> List[Tuple[int, int, int]]:
    """
    Triplas de hiperplanos distintos que se encontram numa colinha.

    Raises:
        InputError: M não simples (quando exigido).
    """
    if require_simple and not M.is_simple:
        raise InputError(messages.NOT_SIMPLE)
    triplas = []
    for pencil in M.coline_pencils.values():
        triplas.extend(combinations(pencil, 3))
    return sorted(triplas)


def is_quotient(M: Matroid, N: Matroid) -> bool:
    """Verdadeiro se todo flat de N é flat de M."""
    if M.n != N.n:
        raise InputError(messages.GROUND_MISMATCH)
    return N.flat_set <= M.flat_set


class _HyperplaneIndex:
    """Hiperplanos indexados, com feixes como máscaras de índices."""

    def __init__(self, M: Matroid):
        self.hyperplanes = list(M.hyperplanes)
        self.index = {h: i for i, h in enumerate(self.hyperplanes)}
        self.full = (1 << len(self.hyperplanes)) - 1
        self.pencils = [
            mask_of(self.index[h] for h in pencil)
            for pencil in M.coline_pencils.values()
            if len(pencil) >= 3
        ]

    def encode(self, hs: Iterable[int]) -> int:
        try:
            return mask_of(self.index[h] for h in hs)
        except KeyError as exc:
            raise InputError("set contains a non-hyperplane", witness=exc.args[0]) from exc

    def decode(self, idx_mask: int) -> FrozenSet[int]:
        return frozenset(self.hyperplanes[i] for i in bits(idx_mask))

    def close(self, s: int, trace: Optional[list] = None) -> int:
        """Fecho pela regra dos feixes, em rodadas."""
        while True:
            novos = 0
            passos = []
            for p in self.pencils:
                dentro = s & p
                if dentro != p and popcount(dentro) >= 2:
                    adicionados = p & ~s & ~novos
                    if adicionados:
                        novos |= adicionados
                        passos.append((dentro, adicionados))
            if not novos:
                return s
            if trace is not None:
                trace.append(passos)
            s |= novos


def hyperplane_index(M: Matroid) -> _HyperplaneIndex:
    cache = M.__dict__.get("_hyperplane_index")
    if cache is None:
        cache = M.__dict__["_hyperplane_index"] = _HyperplaneIndex(M)
    return cache


def linear_subclass_closure(
    M: Matroid, h_set: Iterable[int], trace: Optional[list] = None
) -> LinearSubclass:
    """
    Menor subclasse linear contendo ``h_set``.

    Se ``trace`` for uma lista, recebe uma entrada por rodada com os pares
    (hiperplanos já presentes no feixe, hiperplanos adicionados) em
    máscaras de hiperplanos.
    """
    idx = hyperplane_index(M)
    bruto: Optional[list] = [] if trace is not None else None
    fecho = idx.close(idx.encode(h_set), bruto)
    if trace is not None:
        for rodada in bruto:
            trace.append([
                {"from": sorted(idx.decode(a)), "added": sorted(idx.decode(b))}
                for a, b in rodada
            ])
    return idx.decode(fecho)


def is_linear_subclass(M: Matroid, h_set: Iterable[int]) -> bool:
    h = frozenset(h_set)
    return linear_subclass_closure(M, h) == h


def is_trivial_subclass(M: Matroid, h: Iterable[int]) -> bool:
    return frozenset(h) == frozenset(M.hyperplanes)


def _check_bound(total: int, bound: Optional[int]) -> None:
    limite = limits.size_bound() if bound is None else bound
    if total > limite:
        logger.warning("Enumeração recusada: %d hiperplanos > limite %d", total, limite)
        raise SizeBoundError(
            messages.GROUND_TOO_LARGE, witness={"hyperplanes": total, "bound": limite}
        )


def _enumerate_index_masks(
    idx: _HyperplaneIndex, allowed: Optional[int] = None
) -> List[int]:
    """BFS sobre subclasses (máscaras de índices) contidas em ``allowed``."""
    permitido = idx.full if allowed is None else allowed
    vistos = {0}
    fila = deque([0])
    while fila:
        s = fila.popleft()
        for i in bits(permitido & ~s):
            t = idx.close(s | 1 << i)
            if t & ~permitido or t in vistos:
                continue
            vistos.add(t)
            fila.append(t)
    return sorted(vistos, key=lambda m: (popcount(m), bits(m)))


def enumerate_linear_subclasses(M: Matroid, bound: Optional[int] = None) -> List[LinearSubclass]:
    """
    Todas as subclasses lineares de M, incluindo ∅ e a trivial.

    Raises:
        SizeBoundError: mais hiperplanos que o limite configurado.
    """
    idx = hyperplane_index(M)
    _check_bound(len(idx.hyperplanes), bound)
    resultado = [idx.decode(m) for m in _enumerate_index_masks(idx)]
    logger.debug("%d subclasses lineares para %r", len(resultado), M)
    return resultado


# ============================================================================
# CORTES MODULARES
# ============================================================================

def modular_cut_of(M: Matroid, h: Iterable[int]) -> FrozenSet[int]:
    """Flats F tais que todo hiperplano contendo F está em ``h``."""
    hs = frozenset(h)
    return frozenset(
        f for f in M.flats()
        if all(hp in hs for hp in M.hyperplanes if hp & f == f)
    )


def _is_modular_pair(M: Matroid, f1: int, f2: int) -> bool:
    return M.rank(f1) + M.rank(f2) == M.rank(f1 | f2) + M.rank(f1 & f2)


def is_modular_cut(M: Matroid, flats: Iterable[int]) -> bool:
    corte = frozenset(flats)
    if not corte or not corte <= M.flat_set:
        return False
    for f in corte:
        if any(g & f == f and g not in corte for g in M.flat_set):
            return False
    for f1, f2 in combinations(corte, 2):
        if _is_modular_pair(M, f1, f2) and (f1 & f2) not in corte:
            return False
    return True


def modular_cut_closure(M: Matroid, generators: Iterable[int]) -> FrozenSet[int]:
    """Menor corte modular contendo os flats geradores."""
    geradores = set(generators)
    if not geradores <= M.flat_set:
        raise InputError(messages.NOT_MODULAR_CUT, witness=M.labels(geradores - M.flat_set))
    corte = set()
    pendentes = list(geradores)
    while pendentes:
        corte.update(g for f in pendentes for g in M.flat_set if g & f == f)
        pendentes = [
            f1 & f2
            for f1, f2 in combinations(corte, 2)
            if (f1 & f2) not in corte and _is_modular_pair(M, f1, f2)
        ]
    return frozenset(corte)


def quotient_from_linear_subclass(M: Matroid, h: Iterable[int]) -> Matroid:
    """
    Quociente elementar Q com L¹(Q) ∩ L¹(M) = h.

    Raises:
        InputError: h não é subclasse linear, ou é a trivial.
    """
    hs = frozenset(h)
    if not is_linear_subclass(M, hs):
        raise InputError(messages.NOT_SUBCLASS, witness=M.labels(sorted(hs)))
    if is_trivial_subclass(M, hs):
        raise InputError(messages.NO_ELEMENTARY_QUOTIENT)
    bases = [
        s for s in M.independent_sets(M.d - 1)
        if M.closure(s) not in hs
    ]
    return Matroid(M.n, M.d - 1, frozenset(bases))


def quotient_from_modular_cut(M: Matroid, generators: Iterable[int]) -> Matroid:
    """Quociente elementar do corte modular gerado pelos flats dados."""
    corte = modular_cut_closure(M, generators)
    h = corte & frozenset(M.hyperplanes)
    return quotient_from_linear_subclass(M, h)


def subclass_of_quotient(M: Matroid, Q: Matroid) -> LinearSubclass:
    """Subclasse linear correspondente a Q ∈ Q̂¹(M); M mesmo dá a trivial."""
    if Q == M:
        return frozenset(M.hyperplanes)
    if Q.d != M.d - 1 or not is_quotient(M, Q):
        raise InputError(messages.NO_ELEMENTARY_QUOTIENT)
    return frozenset(M.hyperplanes) & Q.flat_set


# ============================================================================
# RETICULADO DE QUOCIENTES ELEMENTARES
# ============================================================================

class QuotientLattice:
    """
    Q̂¹(M) ordenado por inclusão reversa das subclasses lineares.

    O fundo é a subclasse trivial (o próprio M); o topo é ∅ (Tr M).
    join = interseção; meet = fecho da união.
    """

    def __init__(self, M: Matroid, bound: Optional[int] = None):
        self.matroid = M
        self._idx = hyperplane_index(M)
        _check_bound(len(self._idx.hyperplanes), bound)
        self._masks = _enumerate_index_masks(self._idx)
        self._pos = {m: i for i, m in enumerate(self._masks)}
        self.elements: List[LinearSubclass] = [self._idx.decode(m) for m in self._masks]
        self.bottom = self._pos[self._idx.full]
        self.top = self._pos[0]
        self.logger = get_logger(self.__class__.__name__)
        self.logger.debug("Reticulado com %d elementos", len(self.elements))

    def __len__(self):
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        """i ≤ j na ordem reversa: elements[j] ⊆ elements[i]."""
        return self._masks[j] & ~self._masks[i] == 0

    def join(self, i: int, j: int) -> int:
        return self._pos[self._masks[i] & self._masks[j]]

    def meet(self, i: int, j: int) -> int:
        return self._pos[self._idx.close(self._masks[i] | self._masks[j])]

    @cached_property
    def lower_covers(self) -> List[List[int]]:
        """Para cada elemento, as subclasses que o cobrem por baixo (superconjuntos mínimos)."""
        resultado = []
        for s in self._masks:
            candidatos = {self._idx.close(s | 1 << i) for i in bits(self._idx.full & ~s)}
            minimos = [
                c for c in candidatos
                if not any(o != c and o & ~c == 0 for o in candidatos)
            ]
            resultado.append(sorted(self._pos[c] for c in minimos))
        return resultado

    @cached_property
    def covers(self) -> List[Tuple[int, int]]:
        """Pares (menor, maior) da relação de cobertura."""
        return sorted(
            (baixo, alto)
            for alto, baixos in enumerate(self.lower_covers)
            for baixo in baixos
        )

    @cached_property
    def join_irreducibles(self) -> List[int]:
        return [i for i, baixos in enumerate(self.lower_covers) if len(baixos) == 1]

    def quotient(self, i: int) -> Matroid:
        """Quociente do elemento i (M para o fundo)."""
        if i == self.bottom:
            return self.matroid
        return quotient_from_linear_subclass(self.matroid, self.elements[i])

    def _chain_lengths(self) -> Tuple[int, int]:
        longo: Dict[int, int] = {}
        curto: Dict[int, int] = {}
        for i in sorted(range(len(self)), key=lambda k: -popcount(self._masks[k])):
            baixos = self.lower_covers[i]
            if not baixos:
                longo[i] = curto[i] = 0
            else:
                longo[i] = 1 + max(longo[b] for b in baixos)
                curto[i] = 1 + min(curto[b] for b in baixos)
        return longo[self.top], curto[self.top]

    def longest_chain(self) -> int:
        """Comprimento (em coberturas) da maior cadeia maximal."""
        return self._chain_lengths()[0]

    def shortest_maximal_chain(self) -> int:
        return self._chain_lengths()[1]

    def rank_table(self) -> List[dict]:
        return [
            {"subclass": self.matroid.labels(sorted(e)), "covers": len(c)}
            for e, c in zip(self.elements, self.lower_covers)
        ]


def quotient_lattice(M: Matroid, bound: Optional[int] = None) -> QuotientLattice:
    return QuotientLattice(M, bound)


def poset_isomorphism(
    size_a: int, leq_a, size_b: int, leq_b
) -> Optional[List[int]]:
    """
    Isomorfismo de posets por backtracking (mapeia índices de A em B).

    Usa como invariante o número de elementos abaixo e acima de cada um.
    """
    if size_a != size_b:
        return None

    def assinatura(size, leq):
        return [
            (sum(leq(j, i) for j in range(size)), sum(leq(i, j) for j in range(size)))
            for i in range(size)
        ]

    sig_a, sig_b = assinatura(size_a, leq_a), assinatura(size_b, leq_b)
    if sorted(sig_a) != sorted(sig_b):
        return None
    ordem = sorted(range(size_a), key=lambda i: sig_a[i])
    mapa: Dict[int, int] = {}
    usados = set()

    def busca(k: int) -> bool:
        if k == len(ordem):
            return True
        a = ordem[k]
        for b in range(size_b):
            if b in usados or sig_b[b] != sig_a[a]:
                continue
            if all(
                leq_a(a, x) == leq_b(b, y) and leq_a(x, a) == leq_b(y, b)
                for x, y in mapa.items()
            ):
                mapa[a] = b
                usados.add(b)
                if busca(k + 1):
                    return True
                del mapa[a]
                usados.discard(b)
        return False

    if not busca(0):
        return None
    return [mapa[i] for i in range(size_a)]


# ============================================================================
# PERSPECTIVIDADE E PROPRIEDADE DE LEVI
# ============================================================================

def have_common_elementary_quotient(
    M1: Matroid, M2: Matroid, bound: Optional[int] = None
) -> Optional[Matroid]:
    """
    Algum quociente elementar comum de M1 e M2, ou None.

    Busca apenas subclasses de M1 contidas nos flats comuns, pois os
    hiperplanos de M1 que são flats de um quociente comum são flats de M2.
    """
    if M1.n != M2.n or M1.d != M2.d:
        raise InputError(messages.GROUND_MISMATCH)
    idx = hyperplane_index(M1)
    comuns = [h for h in idx.hyperplanes if h in M2.flat_set]
    _check_bound(len(comuns), bound)
    permitido = idx.encode(comuns)
    for s in _enumerate_index_masks(idx, permitido):
        if s == idx.full:
            continue
        candidato = quotient_from_linear_subclass(M1, idx.decode(s))
        if is_quotient(M2, candidato):
            logger.debug("Quociente comum encontrado: %s", M1.labels(sorted(idx.decode(s))))
            return candidato
    return None


def levi_intersection_property(M: Matroid) -> Tuple[bool, Optional[List[int]]]:
    """
    Testa se quaisquer d−1 hiperplanos estão numa subclasse linear não trivial.

    Returns:
        (True, None) ou (False, testemunha com d−1 hiperplanos).

    Raises:
        SizeBoundError: combinações demais.
    """
    idx = hyperplane_index(M)
    ordenados = sorted(idx.hyperplanes, key=lambda h: (-popcount(h), bits(h)))
    k = M.d - 1
    contador = 0
    for combo in combinations(ordenados, k):
        contador += 1
        if contador > limits.MAX_LEVI_COMBINATIONS:
            raise SizeBoundError(messages.GROUND_TOO_LARGE, witness={"combinations": contador})
        if idx.close(idx.encode(combo)) == idx.full and idx.full:
            logger.info("Propriedade de Levi falha: %s", M.labels(combo))
            return False, list(combo)
    return True, None


# ============================================================================
# SOMA DIRETA E O ISOMORFISMO κ
# ============================================================================

def direct_sum(M: Matroid, N: Matroid, offset: Optional[int] = None) -> Matroid:
    """
    M ⊕ N com o solo de N deslocado por ``offset`` (padrão M.n).

    Raises:
        InputError: solos sobrepostos (offset < M.n).
    """
    desloc = M.n if offset is None else offset
    if desloc < M.n:
        raise InputError(messages.GROUND_OVERLAP)
    bases = frozenset(b | c << desloc for b in M.bases for c in N.bases)
    return Matroid(desloc + N.n, M.d + N.d, bases)


def kappa(M: Matroid, N: Matroid, Q1: Matroid, Q2: Matroid) -> Matroid:
    """κ(Q1, Q2): quociente de M⊕N com subclasse 𝓗×{E′} ∪ {E}×𝓖."""
    h = subclass_of_quotient(M, Q1)
    g = subclass_of_quotient(N, Q2)
    soma = direct_sum(M, N)
    e_m = M.ground
    e_n = N.ground << M.n
    if is_trivial_subclass(M, h) and is_trivial_subclass(N, g):
        return soma
    subclasse = {x | e_n for x in h} | {e_m | y << M.n for y in g}
    return quotient_from_linear_subclass(soma, subclasse)


def kappa_inverse(M: Matroid, N: Matroid, Q: Matroid) -> Tuple[Matroid, Matroid]:
    """κ⁻¹(Q) = (Q/E′, Q/E)."""
    e_m = M.ground
    e_n = N.ground << M.n
    return Q.contraction(e_n), Q.contraction(e_m)


# ============================================================================
# MATROIDES DE POSTO 3 A PARTIR DE INCIDÊNCIAS
# ============================================================================

def _check_incidence_conditions(s1: List[int], s2: List[int]) -> None:
    def falha(k, witness):
        raise InputError(messages.INCIDENCE_CONDITION.format(k=k), witness=witness)

    if any(not a for a in s1 + s2):
        falha(1, "empty set")
    for a, b in combinations(s1, 2):
        if a & b:
            falha(1, [a, b])
    for a, b in combinations(s2, 2):
        if a & b in (a, b):
            falha(1, [a, b])
    for a in s1:
        for b in s2:
            if not (a & b == 0 or (a & b == a and a != b)):
                falha(2, [a, b])
    for a in s1:
        for b1, b2 in combinations(s2, 2):
            inter = b1 & b2
            if a & inter == a and a != inter:
                falha(3, [a, b1, b2])
    for b1, b2, b3 in combinations(s2, 3):
        if b1 & b2 & b3 and not (b1 & b2 == b1 & b3 == b2 & b3):
            falha(4, [b1, b2, b3])


def rank3_from_incidence(s1: Iterable[int], s2: Iterable[int], n: int) -> Matroid:
    """
    Matroide sem laços de posto 3 com S1 ∪ S2 entre seus flats.

    Pontos são as classes geradas por S1 e pelas interseções dos pares de
    S2; retas são os elementos de S2 e os pares de pontos fora deles.

    Raises:
        InputError: condição (k) violada.
        HypothesisError: menos de três pontos.
    """
    a1 = sorted(set(s1))
    a2 = sorted(set(s2))
    _check_incidence_conditions(a1, a2)
    s3 = {b1 & b2 for b1, b2 in combinations(a2, 2) if b1 & b2}

    classe = list(range(n))
    for bloco in list(a1) + sorted(s3):
        membros = bits(bloco)
        for e in membros[1:]:
            antigo, novo = classe[e], classe[membros[0]]
            classe = [novo if c == antigo else c for c in classe]
    representantes = sorted(set(classe))
    if len(representantes) < 3:
        raise HypothesisError(messages.RANK_COLLAPSE, witness={"points": len(representantes)})

    bases = []
    for tripla in combinations(range(n), 3):
        if len({classe[e] for e in tripla}) < 3:
            continue
        m = mask_of(tripla)
        if any(m & b == m for b in a2):
            continue
        bases.append(m)
    resultado = Matroid.from_masks(n, bases)
    faltando = [x for x in a1 + a2 if x not in resultado.flat_set]
    if faltando:
        raise HypothesisError("incidence sets are not flats", witness=resultado.labels(faltando))
    return resultado


def _rank2_data(M: Matroid) -> Tuple[int, List[int]]:
    """Laços A e a partição B_1..B_k de [n] − A."""
    a = M.loops
    return a, [f & ~a for f in M.flats(1)]


def rank2_common_lift(M1: Matroid, M2: Matroid) -> Optional[Matroid]:
    """
    Matroide de posto 3 da qual M1 e M2 são quocientes elementares.

    M1 e M2 têm posto 2. Retorna None quando não compartilham flat próprio
    (não são perspectivas).
    """
    if M1.d != 2 or M2.d != 2 or M1.n != M2.n:
        raise InputError(messages.GROUND_MISMATCH)
    n = M1.n
    comuns = M1.loops & M2.loops
    keep = ((1 << n) - 1) & ~comuns
    m1, m2 = M1.restriction(keep), M2.restriction(keep)
    s1, s2 = _lift_incidences(m1, m2)
    elevado = None
    if s1 is None:
        if have_common_elementary_quotient(M1, M2) is None:
            return None
    else:
        try:
            elevado = rank3_from_incidence(s1, s2, m1.n)
        except (InputError, HypothesisError):
            elevado = None
    if elevado is not None and is_quotient(elevado, m1) and is_quotient(elevado, m2):
        return elevado.with_loops(comuns, n) if comuns else elevado
    if n <= 5:
        logger.warning("Construção por incidências falhou; usando força bruta")
        for candidato in enumerate_matroids(n, 3):
            if is_quotient(candidato, M1) and is_quotient(candidato, M2):
                return candidato
        return None
    raise HypothesisError("rank-2 lift construction failed")


def _lift_incidences(m1: Matroid, m2: Matroid):
    a, bs = _rank2_data(m1)
    c, ds = _rank2_data(m2)

    if not a and not c:
        s1 = [b for b in bs if any(b & d == b for d in ds)]
        s1 += [d for d in ds if any(d & b == d for b in bs) and d not in s1]
        s2 = [x for x in bs + ds if x not in s1]
        return s1, s2

    for troca in (False, True):
        aa, bb, cc, dd = (c, ds, a, bs) if troca else (a, bs, c, ds)
        # flat de posto 1 compartilhado, com A ≠ C
        for i, j in product(range(len(bb)), range(len(dd))):
            if aa | bb[i] != cc | dd[j] or aa == cc:
                continue
            b_ord = [bb[i]] + bb[:i] + bb[i + 1:]
            d_ord = [dd[j]] + dd[:j] + dd[j + 1:]
            if not aa and cc:
                s1 = [b for b in b_ord if any(b & d == b for d in d_ord)] + [cc]
                s2 = b_ord[1:] + [cc | d for d in d_ord]
                return s1, [x for x in s2 if x not in s1]
            if aa and cc:
                s1 = [aa, cc]
                s2 = [aa | b for b in b_ord] + [cc | d for d in d_ord[1:]]
                return s1, s2
        # laços de um são um ponto do outro
        for i in range(len(bb)):
            if not aa and cc and bb[i] == cc:
                b_ord = [bb[i]] + bb[:i] + bb[i + 1:]
                s1 = [b for b in b_ord if any(b & (cc | d) == b for d in dd)]
                s2 = b_ord[1:] + [cc | d for d in dd]
                return s1, [x for x in s2 if x not in s1]
    return None, None


# ============================================================================
# FORÇA BRUTA, HIGGS
# ============================================================================

def enumerate_matroids(n: int, d: int) -> List[Matroid]:
    """
    Todas as matroides de posto d em [n], por força bruta.

    Raises:
        SizeBoundError: mais de MAX_BRUTE_FORCE_SETS d-subconjuntos.
    """
    candidatos = k_subsets(n, d)
    if len(candidatos) > limits.MAX_BRUTE_FORCE_SETS:
        raise SizeBoundError(messages.GROUND_TOO_LARGE, witness={"subsets": len(candidatos)})
    resultado = []
    for escolha in range(1, 1 << len(candidatos)):
        bases = [candidatos[i] for i in bits(escolha)]
        try:
            resultado.append(Matroid.from_masks(n, bases))
        except InputError:
            continue
    return resultado


def is_coperspective(M1: Matroid, M2: Matroid) -> bool:
    """Existe matroide de posto d+1 da qual ambas são quocientes elementares?"""
    if M1.n != M2.n or M1.d != M2.d:
        raise InputError(messages.GROUND_MISMATCH)
    return any(
        is_quotient(L, M1) and is_quotient(L, M2)
        for L in enumerate_matroids(M1.n, M1.d + 1)
    )


def higgs_factorization(M: Matroid, N: Matroid) -> List[Matroid]:
    """
    Fatoração de Higgs M = L_k ↠ ... ↠ L_0 = N.

    L_i tem como independentes os I independentes em M com
    rk_N(I) ≥ |I| − i.
    """
    if not is_quotient(M, N):
        raise InputError(messages.NO_ELEMENTARY_QUOTIENT)
    k = M.d - N.d
    cadeia = []
    for i in range(k, -1, -1):
        tamanho = N.d + i
        bases = [s for s in M.independent_sets(tamanho) if N.rank(s) >= tamanho - i]
        cadeia.append(Matroid(M.n, tamanho, frozenset(bases)))
    return cadeia
