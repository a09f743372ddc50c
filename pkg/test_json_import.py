"""
Testes do JSONImporter.

Execute com: pytest test_json_import.py
"""

import json
from fractions import Fraction as F

import pytest

from json_import import JSONImporter
from tropmat.arith import INF, LaurentElem
from tropmat.lorentzian import HomPoly, MConvexFn
from tropmat.matroid import Matroid
from tropmat.valuated import ValuatedMatroid

ARVORE = {"n": 4, "d": 2, "entries": [
    {"set": [1, 2], "value": "1"}, {"set": [3, 4], "value": "1"},
    {"set": [1, 3], "value": "0"}, {"set": [1, 4], "value": "0"},
    {"set": [2, 3], "value": "0"}, {"set": [2, 4], "value": "0"},
]}


def test_leitura_bruta(tmp_path):
    print("=" * 50)
    print("TESTES DO JSON IMPORTER")
    print("=" * 50)

    imp = JSONImporter()
    dados, erro = imp.carregar_json(b'{"n": 3}')
    assert erro is None and dados == {"n": 3}

    dados, erro = imp.carregar_json('{"n": 3,\n  "bases": [')
    assert dados is None and erro.startswith("malformed JSON at line 2")
    assert imp.posicao["line"] == 2 and imp.erros == [erro]

    dados, erro = imp.carregar_arquivo(tmp_path / "inexistente.json")
    assert dados is None and erro.startswith("Erro ao ler arquivo")

    caminho = tmp_path / "m.json"
    caminho.write_text(json.dumps({"n": 2, "bases": [[1]]}), encoding="utf-8")
    M, erro = imp.carregar_matroide(str(caminho))
    assert erro is None and M.n == 2 and M.d == 1
    print("[OK] leitura de arquivos")


def test_builtins_e_aleatorios():
    imp = JSONImporter(seed=3)
    M, erro = imp.carregar_entrada("builtin:vamos")
    assert erro is None and isinstance(M, Matroid) and (M.n, M.d) == (8, 4)

    _, erro = imp.carregar_entrada("builtin:nada")
    assert erro == "unknown builtin: nada"

    mu, erro = imp.carregar_entrada("random:2,5")
    assert erro is None and isinstance(mu, ValuatedMatroid) and (mu.n, mu.d) == (5, 2)
    assert JSONImporter(seed=3).carregar_entrada("random:2,5")[0] == mu

    assert imp.carregar_entrada("random:x")[0] is None
    assert imp.carregar_entrada("random:4,2")[1] == "degree mismatch"
    print("[OK] builtin: e random:")


def test_matroides_e_valuacoes():
    imp = JSONImporter()
    M, erro = imp.carregar_matroide({"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]})
    assert erro is None and M.d == 2

    _, erro = imp.carregar_matroide({"n": 4, "bases": [[1, 2], [3, 4]]})
    assert erro.startswith("exchange axiom violated")
    M, erro = imp.carregar_matroide({"n": 4, "bases": [[1, 2], [3, 4]]}, validar=False)
    assert erro is None and len(M.bases) == 2

    _, erro = imp.carregar_matroide({"n": 3, "bases": [[1, 4]]})
    assert "Base 1" in erro

    mu, erro = imp.carregar_valuado(ARVORE)
    assert erro is None and not mu.is_trivial() and len(mu.support) == 6

    quebrado = json.loads(json.dumps(ARVORE))
    quebrado["entries"][2]["value"] = "1"
    assert imp.carregar_valuado(quebrado)[0] is None
    assert imp.carregar_valuado(quebrado, validar=False)[1] is None

    mu, erro = imp.carregar_valuado("builtin:uniform(2,3)")
    assert erro is None and mu.is_trivial() and mu.d == 2

    assert isinstance(imp.carregar_matroide_ou_valuado({"n": 2, "bases": [[1]]})[0], Matroid)
    assert isinstance(imp.carregar_matroide_ou_valuado(ARVORE)[0], ValuatedMatroid)
    print("[OK] matroides e valuações")


def test_funcoes_e_polinomios():
    imp = JSONImporter()
    phi, erro = imp.carregar_funcao({"n": 2, "d": 2, "entries": [
        {"exp": [2, 0], "value": "1"}, {"exp": [1, 1], "value": "0"}, {"exp": [0, 2], "value": "inf"},
    ]})
    assert erro is None and isinstance(phi, MConvexFn)
    assert phi((1, 1)) == 0 and phi((0, 2)) == INF

    phi, erro = imp.carregar_funcao(ARVORE)
    assert erro is None and phi.d == 2 and phi((1, 1, 0, 0)) == 1

    _, erro = imp.carregar_funcao({"n": 2, "d": 2, "entries": [{"exp": [1, 0], "value": "0"}]})
    assert "grau" in erro

    f, erro = imp.carregar_polinomio({"n": 2, "expr": "w1**2 + 3*w1*w2"})
    assert erro is None and isinstance(f, HomPoly) and f.degree == 2

    f, erro = imp.carregar_polinomio({"n": 2, "terms": [{"exp": [1, 1], "coeff": "3/2"}]})
    assert erro is None and f.support == frozenset({(1, 1)})

    f, erro = imp.carregar_polinomio("builtin:uniform(2,3)")
    assert erro is None and len(f.support) == 3

    f, erro = imp.carregar_polinomio([["0", "1"], ["1", "0"]])
    assert erro is None and f.support == frozenset({(1, 1)})
    print("[OK] funções e polinômios")


def test_matrizes_e_pontos():
    imp = JSONImporter()
    A, erro = imp.carregar_matriz([["1", "1/2"], [0, "3"]])
    assert erro is None and A == [[F(1), F(1, 2)], [F(0), F(3)]]

    A, erro = imp.carregar_matriz({"rows": [["1", "t"], ["0", "1+t^2"]]})
    assert erro is None and all(isinstance(x, LaurentElem) for r in A for x in r)

    assert imp.carregar_matriz([["1", "x"]])[0] is None

    pontos, erro = imp.carregar_pontos([["1", "2", "inf"]], n=3)
    assert erro is None and pontos == [(F(0), F(1), INF)]
    assert imp.carregar_pontos({"points": [["0", "1"]]}, n=3)[0] is None
    print("[PASS] Todos os testes do JSONImporter passaram!\n")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
