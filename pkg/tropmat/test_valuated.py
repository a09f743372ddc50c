"""
Testes de matroides valuados.

Execute com: pytest tropmat/test_valuated.py
"""

import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tropmat.arith import INF, trop_min_vanishes
from tropmat.errors import HypothesisError, InputError
from tropmat.matroid import k_subsets, parse_label, quotient_from_linear_subclass, uniform, vamos
from tropmat.valuated import (
    ValuatedMatroid, all_circuits, all_plucker_relations_hold, check_plucker,
    complete_flag_to_point, contraction, deletion, dual, hyperplane_centered_at,
    initial_matroid, integer_rescale, is_quotient_valuated, line_tree,
    lines_intersect, point_in_trop, random_realizable, rank1_from_point,
    trop_combination, truncate_by, validate, valuated_circuit, wedge_point,
)


def V(n, d, **valores):
    """Valuação por rótulos: V(4, 2, _12=0, _34=1)."""
    return {parse_label(k.lstrip("_")): v for k, v in valores.items()}


def trivial(M):
    return ValuatedMatroid.trivial(M)


ARVORE = V(4, 2, _12=1, _34=1, _13=0, _14=0, _23=0, _24=0)


def random_hyperplane(rng, n):
    return hyperplane_centered_at([F(rng.randint(-4, 4)) for _ in range(n)])


def test_validate():
    """Testa a validação por relações de três termos."""
    print("=" * 50)
    print("TESTES DE VALIDAÇÃO")
    print("=" * 50)

    u23 = validate(3, 2, {b: 0 for b in k_subsets(3, 2)})
    assert u23.is_trivial()
    print("[OK] valuação trivial em U_{2,3}")

    mu = validate(4, 2, ARVORE)
    assert mu(parse_label("12")) == 1
    print("[OK] métrica de árvore aceita")

    ruim = V(4, 2, _12=0, _34=0, _13=2, _14=2, _23=2, _24=2)
    with pytest.raises(InputError, match="Plücker relation") as exc:
        validate(4, 2, ruim)
    assert exc.value.witness == {"I": "1", "J": "234"}
    print("[OK] condição dos quatro pontos violada detectada")

    with pytest.raises(InputError, match="support not a matroid"):
        validate(4, 2, V(4, 2, _12=0, _34=0))
    with pytest.raises(InputError, match="no finite value"):
        validate(3, 2, {b: INF for b in k_subsets(3, 2)})
    print("[PASS] Todos os testes de validação passaram!\n")


def test_validate_parallel_same_witness():
    ruim = ValuatedMatroid.of(5, 2, {b: (0 if b in (3, 12) else 2) for b in k_subsets(5, 2)})
    with pytest.raises(InputError) as seq:
        check_plucker(ruim, jobs=1)
    with pytest.raises(InputError) as par:
        check_plucker(ruim, jobs=3)
    assert seq.value.witness == par.value.witness


@settings(max_examples=80, deadline=None)
@given(
    shape=st.sampled_from([(2, 4), (2, 5), (3, 5)]),
    data=st.data(),
)
def test_validate_matches_full_relations(shape, data):
    d, n = shape
    subsets = k_subsets(n, d)
    vals = data.draw(st.lists(st.sampled_from([F(0), F(1), F(2), INF]),
                              min_size=len(subsets), max_size=len(subsets)))
    assume(any(v != INF for v in vals))
    mu = ValuatedMatroid.of(n, d, dict(zip(subsets, vals)))
    try:
        check_plucker(mu)
        aceito = True
    except InputError:
        aceito = False
    assert aceito == all_plucker_relations_hold(mu)[0]


def test_circuits():
    """Testa circuitos valuados."""
    u23 = trivial(uniform(2, 3))
    assert valuated_circuit(u23, parse_label("12"), 2) == (0, 0, 0)
    assert all_circuits(u23) == [(0, 0, 0)]

    mu = ValuatedMatroid.of(4, 2, ARVORE)
    assert valuated_circuit(mu, parse_label("12"), 2) == (0, 0, 1, INF)

    q2 = trivial(quotient_from_linear_subclass(uniform(3, 4), [parse_label("12"), parse_label("34")]))
    assert valuated_circuit(q2, parse_label("13"), 1) == (0, 0, INF, INF)

    with pytest.raises(InputError, match="not a basis"):
        valuated_circuit(q2, parse_label("12"), 2)
    print("[PASS] circuitos valuados funcionando!\n")


def test_point_in_trop():
    """Testa a pertinência de pontos."""
    print("=" * 50)
    print("TESTES DE PERTINÊNCIA")
    print("=" * 50)

    u23 = trivial(uniform(2, 3))
    assert point_in_trop(u23, (0, 0, 0)) is True
    assert point_in_trop(u23, (0, 1, 2)) is False
    assert point_in_trop(u23, (INF, 0, 0)) is True
    assert point_in_trop(u23, (INF, 0, 1)) is False
    print("[OK] U_{2,3} trivial")

    v = (F(1), F(5), F(-2), F(3))
    assert point_in_trop(hyperplane_centered_at(v), v) is True
    assert point_in_trop(hyperplane_centered_at(v), (0, 0, 0, 0)) is False
    print("[OK] hiperplano contém o próprio centro")

    with pytest.raises(InputError):
        point_in_trop(u23, (INF, INF, INF))
    print("[PASS] Todos os testes de pertinência passaram!\n")


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_circuit_equations_on_trop(seed):
    rng = random.Random(seed)
    mu = random_realizable(rng, 3, 5)
    theta = truncate_by(mu, random_hyperplane(rng, 5))
    if theta.underlying.loops or len(theta.underlying.flats(1)) < 3:
        return
    for w in line_tree(theta).vertices:
        assert point_in_trop(mu, w)
        for c in all_circuits(mu):
            assert trop_min_vanishes([w[i] + c[i] for i in range(5) if c[i] != INF])


def test_minors():
    """Testa dual, deleção, contração e matroide inicial."""
    print("=" * 50)
    print("TESTES DE MENORES")
    print("=" * 50)

    rng = random.Random(11)
    for _ in range(10):
        mu = random_realizable(rng, 2, 5)
        assert dual(dual(mu)) == mu
        for i in range(5):
            deleted = 1 << i
            if mu.underlying.rank(mu.ground & ~deleted) < mu.d:
                continue
            assert dual(deletion(mu, deleted)) == contraction(dual(mu), deleted)
    print("[OK] dualidade e (μ\\I)* = μ*/I")

    u34 = uniform(3, 4)
    assert initial_matroid(trivial(u34), (0, 0, 0, 0)) == u34
    inicial = initial_matroid(trivial(u34), (1, 1, 0, 0))
    assert inicial.bases == frozenset({parse_label("123"), parse_label("124")})
    print("[OK] matroide inicial funcionando")

    assert contraction(trivial(u34), parse_label("1")) == trivial(uniform(2, 3))
    with pytest.raises(InputError, match="rank collapse"):
        deletion(trivial(uniform(2, 3)), parse_label("12"))
    with pytest.raises(InputError):
        initial_matroid(trivial(u34), (INF, 0, 0, 0))
    print("[PASS] Todos os testes de menores passaram!\n")


def test_truncate_by():
    """Testa o truncamento por hiperplano."""
    u33 = trivial(uniform(3, 3))
    assert truncate_by(u33, trivial(uniform(2, 3))) == trivial(uniform(2, 3))

    v = vamos()
    assert truncate_by(trivial(v), trivial(uniform(7, 8))) == trivial(v.truncation())

    with pytest.raises(InputError):
        truncate_by(trivial(uniform(1, 3)), trivial(uniform(2, 3)))
    with pytest.raises(InputError):
        truncate_by(u33, trivial(uniform(1, 3)))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_truncation_is_quotient(seed):
    rng = random.Random(seed)
    mu = random_realizable(rng, 3, 5)
    theta = truncate_by(mu, random_hyperplane(rng, 5))
    check_plucker(theta)
    assert is_quotient_valuated(mu, theta) == (True, None)


def test_is_quotient_valuated():
    """Testa as relações de incidência."""
    u34 = uniform(3, 4)
    q2 = quotient_from_linear_subclass(u34, [parse_label("12"), parse_label("34")])
    assert is_quotient_valuated(trivial(u34), trivial(q2)) == (True, None)

    transladado = validate(4, 2, V(4, 2, _12=0, _13=1, _14=1, _23=1, _24=1, _34=2))
    ok, witness = is_quotient_valuated(trivial(u34), transladado)
    assert ok is False and witness == {"I": "1", "J": "1234"}

    with pytest.raises(InputError):
        is_quotient_valuated(trivial(u34), trivial(u34))
    print("[PASS] relações de incidência funcionando!\n")


def test_wedge_point():
    assert wedge_point((0, 1, 2), 2) == (1, 2, 3)
    assert wedge_point((0, 0, 0, 0), 2) == (0,) * 6
    assert wedge_point((3, 1, 2), 1) == (3, 1, 2)
    with pytest.raises(InputError, match="infinite"):
        wedge_point((0, INF, 1), 2)


def test_trop_combination():
    """Testa combinações tropicais de quocientes."""
    mu = ValuatedMatroid.of(4, 2, ARVORE)
    assert trop_combination(mu, mu, 0, 5) == mu

    u34 = uniform(3, 4)
    t1 = trivial(quotient_from_linear_subclass(u34, []))
    t2 = trivial(quotient_from_linear_subclass(u34, [parse_label("12"), parse_label("34")]))
    comb = trop_combination(t1, t2, 1, 0)
    check_plucker(comb)
    assert is_quotient_valuated(trivial(u34), comb)[0]
    assert trop_combination(t1, t2, 0, 10**6) == t1


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_combination_of_quotients_is_quotient(seed):
    rng = random.Random(seed)
    d, n = rng.choice([(3, 5), (3, 6), (4, 6)])
    mu = random_realizable(rng, d, n)
    t1 = truncate_by(mu, random_hyperplane(rng, n))
    t2 = truncate_by(mu, random_hyperplane(rng, n))
    comb = trop_combination(t1, t2, F(rng.randint(-3, 3)), F(rng.randint(-3, 3)))
    check_plucker(comb)
    assert is_quotient_valuated(mu, comb)[0]


def test_line_tree():
    """Testa árvores de retas tropicais."""
    print("=" * 50)
    print("TESTES DE RETAS")
    print("=" * 50)

    estrela = line_tree(trivial(uniform(2, 3)))
    assert estrela.vertices == [(0, 0, 0)]
    assert estrela.edges == [] and len(estrela.rays) == 3
    print("[OK] estrela de U_{2,3}")

    arvore = line_tree(ValuatedMatroid.of(4, 2, ARVORE))
    assert sorted(arvore.vertices) == [(0, 0, 1, 1), (1, 1, 0, 0)]
    assert len(arvore.edges) == 1 and arvore.edges[0][3] == 2
    assert len(arvore.rays) == 4
    print("[OK] árvore com aresta interna de comprimento 2")

    q2 = trivial(quotient_from_linear_subclass(uniform(3, 4), [parse_label("12"), parse_label("34")]))
    reta = line_tree(q2)
    assert reta.vertices == [(0, 0, 0, 0)] and len(reta.rays) == 2
    print("[OK] reta com duas classes paralelas")

    with pytest.raises(InputError, match="not of rank 2"):
        line_tree(trivial(uniform(3, 4)))
    q3 = trivial(quotient_from_linear_subclass(uniform(3, 4), [parse_label(s) for s in ("12", "13", "14")]))
    with pytest.raises(InputError, match="loops"):
        line_tree(q3)
    print("[PASS] Todos os testes de retas passaram!\n")


def test_lines_intersect():
    """Testa a interseção de retas tropicais."""
    u24 = trivial(uniform(2, 4))
    assert lines_intersect(u24, ValuatedMatroid.of(4, 2, ARVORE)) == (0, 0, 0, 0)

    q2 = trivial(quotient_from_linear_subclass(uniform(3, 4), [parse_label("12"), parse_label("34")]))
    deslocada = validate(4, 2, V(4, 2, _13=0, _14=0, _23=5, _24=5))
    assert lines_intersect(q2, deslocada) == (INF, INF, 0, 0)
    print("[OK] cocircuito comum encontrado")

    distante = validate(4, 2, {b: sum((F(c) for i, c in enumerate((0, 0, 3, 5)) if b >> i & 1), F(0))
                               for b in k_subsets(4, 2)})
    assert lines_intersect(u24, distante) is None
    print("[OK] retas disjuntas")

    q3 = trivial(quotient_from_linear_subclass(uniform(3, 4), [parse_label(s) for s in ("12", "13", "14")]))
    assert lines_intersect(q3, u24) == (INF, 0, 0, 0)
    print("[OK] laços tratados por contração")

    with pytest.raises(InputError):
        lines_intersect(u24, trivial(uniform(3, 4)))
    print("[PASS] Todos os testes de interseção passaram!\n")


@pytest.mark.parametrize("seed", range(100))
def test_coperspective_lines_meet(seed):
    rng = random.Random(seed)
    n = rng.choice([4, 5, 6])
    mu = random_realizable(rng, 3, n)
    t1 = truncate_by(mu, random_hyperplane(rng, n))
    t2 = truncate_by(mu, random_hyperplane(rng, n))
    p = lines_intersect(t1, t2)
    assert p is not None
    assert point_in_trop(t1, p) and point_in_trop(t2, p)
    assert point_in_trop(mu, p)


def test_complete_flag_to_point():
    """Testa o completamento de bandeiras."""
    print("=" * 50)
    print("TESTES DE BANDEIRAS")
    print("=" * 50)

    u33 = trivial(uniform(3, 3))
    cadeia = complete_flag_to_point(u33, rank1_from_point((0, 0, 0)))
    assert [mu.d for mu in cadeia] == [3, 2, 1]
    assert cadeia[1] == trivial(uniform(2, 3))
    print("[OK] U_{3,3} até o ponto (0,0,0)")

    v = trivial(vamos())
    ponto = (INF,) * 4 + (F(0),) * 4
    cadeia = complete_flag_to_point(v, rank1_from_point(ponto))
    assert len(cadeia) == 4
    for a, b in zip(cadeia, cadeia[1:]):
        assert is_quotient_valuated(a, b)[0]
    print("[OK] Vámos até um cocircuito por truncamentos principais")

    with pytest.raises(HypothesisError, match="not on Trop"):
        complete_flag_to_point(trivial(uniform(2, 3)), rank1_from_point((0, 1, 2)))
    print("[PASS] Todos os testes de bandeiras passaram!\n")


@pytest.mark.parametrize("seed", range(50))
def test_flag_completion_random(seed):
    rng = random.Random(seed)
    d = rng.choice([3, 4])
    n = rng.randint(d + 2, 6)
    mu = random_realizable(rng, d, n)
    theta = mu
    for _ in range(d - 2):
        theta = truncate_by(theta, random_hyperplane(rng, n))
    if theta.underlying.loops or len(theta.underlying.flats(1)) < 3:
        return
    w = line_tree(theta).vertices[0]
    assert point_in_trop(mu, w)
    cadeia = complete_flag_to_point(mu, rank1_from_point(w))
    assert cadeia[0] == mu and [a.d for a in cadeia] == list(range(d, 0, -1))
    for a, b in zip(cadeia, cadeia[1:]):
        check_plucker(b)
        assert is_quotient_valuated(a, b)[0]


def test_helpers():
    k, escalada = integer_rescale(ValuatedMatroid.of(3, 1, {1: F(1, 2), 2: F(1, 3), 4: 0}))
    assert k == 6 and escalada.values == {1: 3, 2: 2, 4: 0}
    mu = ValuatedMatroid.of(4, 2, ARVORE)
    assert mu.to_json()["entries"][0] == {"set": [1, 2], "value": "1"}
    assert all(len(c) == 4 for c in all_circuits(mu))
    assert len(mu.entries) == 6


if __name__ == "__main__":
    test_validate()
    test_circuits()
    test_point_in_trop()
    test_minors()
    test_is_quotient_valuated()
    test_line_tree()
    test_lines_intersect()
    test_complete_flag_to_point()
