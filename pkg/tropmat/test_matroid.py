"""
Testes de matroides, subclasses lineares e quocientes.

Execute com: pytest tropmat/test_matroid.py
"""

from itertools import combinations

import pytest

from tropmat.errors import InputError, SizeBoundError
from tropmat.matroid import (
    Matroid, concurrent_triples, direct_sum, enumerate_linear_subclasses,
    enumerate_matroids, from_bases, graphic_Kn, have_common_elementary_quotient,
    higgs_factorization, is_coperspective, is_linear_subclass, is_modular_cut,
    is_quotient, kappa, kappa_inverse, levi_intersection_property,
    linear_subclass_closure, mask_of, modular_cut_of, parse_label,
    poset_isomorphism, projective_plane, quotient_from_linear_subclass,
    quotient_from_modular_cut, quotient_lattice, rank2_common_lift,
    rank3_from_incidence, uniform, v8_minus, vamos,
)


def L(*labels):
    return [parse_label(s) for s in labels]


def rank2(n, classes):
    """Matroide de posto 2 com as classes paralelas dadas; o resto são laços."""
    cls = [parse_label(c) for c in classes]
    bases = [
        (1 << a) | (1 << b)
        for i, j in combinations(range(len(cls)), 2)
        for a in range(n) if cls[i] >> a & 1
        for b in range(n) if cls[j] >> b & 1
    ]
    return Matroid.from_masks(n, bases)


def v8_quotients():
    m = v8_minus()
    q1 = quotient_from_modular_cut(m, L("127", "568", "3478"))
    q2 = quotient_from_modular_cut(m, L("12", "34", "56"))
    return m, q1, q2


def test_from_bases():
    """Testa a construção e validação por bases."""
    print("=" * 50)
    print("TESTES DE CONSTRUÇÃO")
    print("=" * 50)

    u23 = from_bases(3, [[0, 1], [0, 2], [1, 2]])
    assert u23 == uniform(2, 3)
    print("[OK] U_{2,3} construída")

    with pytest.raises(InputError, match="exchange axiom violated") as exc:
        from_bases(4, [[0, 1], [2, 3]])
    assert exc.value.witness["i"] in (1, 2, 3, 4)
    print("[OK] troca violada detectada")

    m = v8_minus()
    assert m.n == 8 and m.d == 4 and len(m.bases) == 70 - 4
    print("[OK] V8⁻ válida")

    with pytest.raises(InputError):
        from_bases(3, [])
    with pytest.raises(InputError):
        from_bases(3, [[0], [1, 2]])
    print("[PASS] Todos os testes de construção passaram!\n")


def test_closure_rank_flats():
    """Testa fecho, posto e flats."""
    u23 = uniform(2, 3)
    assert u23.closure(parse_label("1")) == parse_label("1")
    assert u23.rank(parse_label("1")) == 1

    v = vamos()
    assert v.closure(parse_label("1234")) == parse_label("1234")
    assert v.rank(parse_label("1234")) == 3
    assert v.closure(parse_label("1278")) == v.ground

    u34 = uniform(3, 4)
    assert sorted(u34.hyperplanes) == sorted(L("12", "13", "14", "23", "24", "34"))
    assert len(u34.flats(1)) == 4
    print("[PASS] fecho, posto e flats funcionando!\n")


def test_concurrent_triples():
    """Testa as triplas concorrentes."""
    u34 = uniform(3, 4)
    triplas = concurrent_triples(u34)
    assert len(triplas) == 4
    assert tuple(L("12", "13", "14")) in triplas

    assert len(concurrent_triples(uniform(2, 4))) == 4
    assert concurrent_triples(uniform(1, 1)) == []
    assert concurrent_triples(uniform(1, 3), require_simple=False) == []
    with pytest.raises(InputError, match="not simple"):
        concurrent_triples(uniform(1, 3))
    print("[PASS] triplas concorrentes funcionando!\n")


def test_is_quotient():
    u34, u24 = uniform(3, 4), uniform(2, 4)
    assert is_quotient(u34, u24) is True
    assert is_quotient(u24, u34) is False
    q = quotient_from_linear_subclass(u34, L("12", "34"))
    assert is_quotient(u34, q) is True
    with pytest.raises(InputError):
        is_quotient(u34, uniform(2, 3))


def test_linear_subclasses_table1():
    """Testa subclasses lineares de U_{3,4} e os três quocientes elementares gravados em data/."""
    print("=" * 50)
    print("TESTES DE SUBCLASSES LINEARES")
    print("=" * 50)

    u34 = uniform(3, 4)
    todos = frozenset(u34.hyperplanes)
    assert linear_subclass_closure(u34, L("12", "13")) == todos
    assert linear_subclass_closure(u34, L("12", "34")) == frozenset(L("12", "34"))
    print("[OK] linear_subclass_closure funcionando")

    subclasses = enumerate_linear_subclasses(u34)
    assert len(subclasses) == 15
    brute = [
        frozenset(c)
        for k in range(7)
        for c in combinations(u34.hyperplanes, k)
        if is_linear_subclass(u34, c)
    ]
    assert sorted(map(sorted, brute)) == sorted(map(sorted, subclasses))
    print("[OK] 15 subclasses, conferido por força bruta")

    assert len(enumerate_linear_subclasses(uniform(2, 3))) == 5
    rank1 = enumerate_linear_subclasses(uniform(1, 3))
    assert rank1 == [frozenset(), frozenset({0})]
    print("[OK] contagens pequenas funcionando")

    q1 = quotient_from_linear_subclass(u34, [])
    assert q1 == uniform(2, 4)
    q2 = quotient_from_linear_subclass(u34, L("12", "34"))
    assert q2.bases == frozenset(L("13", "14", "23", "24"))
    q3 = quotient_from_linear_subclass(u34, L("12", "13", "14"))
    assert q3.bases == frozenset(L("23", "24", "34"))
    assert q3.loops == parse_label("1")
    print("[OK] quocientes elementares de U_{3,4} reproduzidos")

    for h in subclasses:
        if h == todos:
            continue
        q = quotient_from_linear_subclass(u34, h)
        assert frozenset(q.flat_set) & todos == h
    print("[OK] ida e volta L¹(Q) ∩ L¹(M) = H")

    with pytest.raises(InputError, match="no elementary quotient"):
        quotient_from_linear_subclass(u34, todos)
    with pytest.raises(InputError):
        quotient_from_linear_subclass(u34, L("12", "13"))
    print("[PASS] Todos os testes de subclasses passaram!\n")


def test_modular_cuts():
    """Cortes modulares ↔ subclasses lineares em U_{3,4} e U_{3,5}."""
    for m in (uniform(3, 4), uniform(3, 5)):
        for h in enumerate_linear_subclasses(m):
            corte = modular_cut_of(m, h)
            assert is_modular_cut(m, corte)
            assert corte & frozenset(m.hyperplanes) == h
    u34 = uniform(3, 4)
    assert modular_cut_of(u34, []) == frozenset({u34.ground})
    assert quotient_from_modular_cut(u34, L("12", "34")) == quotient_from_linear_subclass(
        u34, L("12", "34")
    )
    assert quotient_from_modular_cut(u34, L("1")) == quotient_from_linear_subclass(
        u34, L("12", "13", "14")
    )


def test_quotient_lattice():
    """Testa o reticulado de quocientes elementares."""
    print("=" * 50)
    print("TESTES DO RETICULADO")
    print("=" * 50)

    lat = quotient_lattice(uniform(3, 4))
    k4 = graphic_Kn(4)
    flats = k4.flats()
    dual_leq = lambda i, j: flats[i] & flats[j] == flats[j]
    mapa = poset_isomorphism(len(lat), lat.leq, len(flats), dual_leq)
    assert mapa is not None
    print("[OK] Q̂¹(U_{3,4}) ≅ dual de L(M_K4)")

    assert lat.longest_chain() == 3
    assert len(lat.join_irreducibles) > 0
    a, b = lat.join_irreducibles[:2]
    assert lat.leq(a, lat.join(a, b)) and lat.leq(b, lat.join(a, b))
    assert lat.leq(lat.meet(a, b), a)
    print("[OK] join, meet e irredutíveis funcionando")

    u36 = quotient_lattice(uniform(3, 6))
    assert len(u36) == 83
    assert u36.longest_chain() != u36.shortest_maximal_chain()
    print("[OK] U_{3,6} tem cadeias maximais de comprimentos diferentes")

    u1 = quotient_lattice(uniform(1, 3))
    assert len(u1) == 2 and u1.covers == [(u1.bottom, u1.top)]

    fano = quotient_lattice(projective_plane(2))
    assert fano.longest_chain() == 3
    print("[PASS] Todos os testes do reticulado passaram!\n")


def test_size_bound(monkeypatch):
    monkeypatch.setenv("TROPMAT_SIZE_BOUND", "5")
    with pytest.raises(SizeBoundError, match="ground too large"):
        enumerate_linear_subclasses(uniform(3, 4))
    assert len(enumerate_linear_subclasses(uniform(3, 4), bound=6)) == 15


def test_levi():
    """Testa a propriedade de interseção de Levi."""
    v = vamos()
    testemunha = L("1234", "1256", "3456")
    assert linear_subclass_closure(v, testemunha) == frozenset(v.hyperplanes)
    ok, witness = levi_intersection_property(v)
    assert ok is False and witness == testemunha

    assert levi_intersection_property(uniform(3, 4)) == (True, None)
    assert levi_intersection_property(uniform(2, 5))[0] is True
    print("[PASS] propriedade de Levi funcionando!\n")


def test_common_quotients_v8():
    """Q1, Q2 de V8⁻ não têm quociente elementar comum."""
    print("=" * 50)
    print("TESTES DE V8⁻")
    print("=" * 50)

    m, q1, q2 = v8_quotients()
    assert q1.d == 3 and q2.d == 3
    assert is_quotient(m, q1) and is_quotient(m, q2)
    comuns = q1.flat_set & q2.flat_set
    assert comuns == frozenset(L("", "7", "8", "127", "568", "3478", "12345678"))
    print("[OK] flats comuns conferem")

    assert have_common_elementary_quotient(q1, q2) is None
    print("[OK] sem quociente elementar comum")

    u11 = uniform(1, 1)
    assert have_common_elementary_quotient(direct_sum(q1, u11), direct_sum(q2, u11)) is None
    print("[PASS] estabilidade por soma direta conferida!\n")


def test_common_quotient_found():
    u34 = uniform(3, 4)
    assert have_common_elementary_quotient(u34, u34) == uniform(2, 4)
    qa = quotient_from_linear_subclass(u34, [])
    qb = quotient_from_linear_subclass(u34, L("12", "34"))
    comum = have_common_elementary_quotient(qa, qb)
    assert comum is not None and comum.d == 1
    assert is_quotient(qa, comum) and is_quotient(qb, comum)


def test_direct_sum_kappa():
    """κ e κ⁻¹ em U_{2,3} ⊕ U_{1,1}."""
    m, n = uniform(2, 3), uniform(1, 1)
    soma = direct_sum(m, n)
    lat_m, lat_n = quotient_lattice(m), quotient_lattice(n)
    assert len(quotient_lattice(soma)) == len(lat_m) * len(lat_n) == 10

    for i in range(len(lat_m)):
        for j in range(len(lat_n)):
            q1, q2 = lat_m.quotient(i), lat_n.quotient(j)
            q = kappa(m, n, q1, q2)
            assert kappa_inverse(m, n, q) == (q1, q2)
    with pytest.raises(InputError):
        direct_sum(m, n, offset=1)
    print("[PASS] κ e κ⁻¹ funcionando!\n")


def test_rank3_from_incidence():
    """Testa a construção de posto 3."""
    m = rank3_from_incidence([], L("123"), 4)
    assert m.d == 3 and parse_label("123") in m.flat_set
    assert m.bases == frozenset(L("124", "134", "234"))

    with pytest.raises(InputError, match=r"\(3\)"):
        rank3_from_incidence(L("1"), L("123", "124"), 4)
    with pytest.raises(InputError, match=r"\(1\)"):
        rank3_from_incidence(L("12", "23"), [], 4)
    with pytest.raises(InputError, match=r"\(2\)"):
        rank3_from_incidence(L("12"), L("234"), 4)


def test_rank2_lift_case_IIb():
    m1 = rank2(5, ["2", "3", "45"])
    m2 = rank2(5, ["1", "34", "5"])
    lift = rank2_common_lift(m1, m2)
    assert lift is not None and lift.d == 3
    assert m1.flat_set | m2.flat_set <= lift.flat_set


def test_rank2_perspectivity():
    """Coperspectivas ⇒ perspectivas, para posto 2 em [4]."""
    rank2s = enumerate_matroids(4, 2)
    rank3s = enumerate_matroids(4, 3)
    for m1, m2 in combinations(rank2s, 2):
        coperspectivas = any(
            is_quotient(l, m1) and is_quotient(l, m2) for l in rank3s
        )
        perspectivas = have_common_elementary_quotient(m1, m2) is not None
        if coperspectivas:
            assert perspectivas
        if perspectivas:
            lift = rank2_common_lift(m1, m2)
            assert lift is not None
            assert is_quotient(lift, m1) and is_quotient(lift, m2)
    assert is_coperspective(uniform(2, 4), uniform(2, 4))


def test_higgs():
    cadeia = higgs_factorization(uniform(3, 4), uniform(1, 4))
    assert [c.d for c in cadeia] == [3, 2, 1]
    assert cadeia[1] == uniform(2, 4)
    for a, b in zip(cadeia, cadeia[1:]):
        assert is_quotient(a, b)


def test_named():
    fano = projective_plane(2)
    assert fano.n == 7 and fano.d == 3 and len(fano.bases) == 28
    assert projective_plane(3).n == 13
    assert projective_plane(4).n == 21
    with pytest.raises(InputError):
        projective_plane(5)
    k4 = graphic_Kn(4)
    assert k4.n == 6 and k4.d == 3 and len(k4.bases) == 16
    assert uniform(3, 4).bases == frozenset(mask_of(c) for c in combinations(range(4), 3))
    assert len(vamos().bases) == 65


if __name__ == "__main__":
    test_from_bases()
    test_closure_rank_flats()
    test_concurrent_triples()
    test_linear_subclasses_table1()
    test_quotient_lattice()
    test_common_quotients_v8()
    test_direct_sum_kappa()
