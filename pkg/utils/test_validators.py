"""
Script de teste para o módulo validators.

Execute com: python utils/test_validators.py
"""

from fractions import Fraction

from utils.validators import (
    # Valores
    parse_fraction, is_valid_fraction, is_valid_trop_value, parse_q_values,
    # Rótulos
    is_valid_label, validate_element_list,
    # Payloads
    validate_matroid_payload, validate_valuated_payload, validate_polynomial_payload,
    validate_mconvex_payload, polynomial_expr_errors, is_valid_polynomial_expr,
    is_valid_matrix_entry, validate_matrix_payload, validate_points_payload,
    # Utilitários
    slugify,
)


def test_values():
    """Testa valores racionais e tropicais."""
    print("=" * 50)
    print("TESTES DE VALORES")
    print("=" * 50)

    assert parse_fraction("39/10") == Fraction(39, 10)
    assert parse_fraction("3.9") == Fraction(39, 10)
    assert parse_fraction(7) == 7
    assert parse_fraction("1/0") is None
    assert parse_fraction(True) is None
    assert is_valid_fraction("abc") == False
    print("[OK] parse_fraction funcionando")

    assert is_valid_trop_value("inf") == True
    assert is_valid_trop_value("∞") == True
    assert is_valid_trop_value("-2/3") == True
    assert is_valid_trop_value("-inf") == False
    print("[OK] is_valid_trop_value funcionando")

    valores, erros = parse_q_values(["1/2", "1/3"])
    assert valores == [Fraction(1, 2), Fraction(1, 3)] and erros == []
    valores, erros = parse_q_values(["1", "x"])
    assert valores == [] and len(erros) == 2
    print("[OK] parse_q_values funcionando")

    print("[PASS] Todos os testes de valores passaram!\n")


def test_labels():
    """Testa rótulos de subconjuntos."""
    print("=" * 50)
    print("TESTES DE RÓTULOS")
    print("=" * 50)

    assert is_valid_label("127", 8) == True
    assert is_valid_label("19", 8) == False
    assert is_valid_label("1,2,10", 10) == True
    assert is_valid_label("11", 9) == False
    assert is_valid_label("", 3) == True
    print("[OK] is_valid_label funcionando")

    assert validate_element_list([1, 2], 3) == (True, "")
    assert validate_element_list([1, 1], 3)[0] == False
    assert validate_element_list([0], 3)[0] == False
    assert validate_element_list("12", 3)[0] == False
    print("[OK] validate_element_list funcionando")

    print("[PASS] Todos os testes de rótulos passaram!\n")


def test_payloads():
    """Testa os formatos JSON de entrada."""
    print("=" * 50)
    print("TESTES DE PAYLOADS")
    print("=" * 50)

    ok, erros = validate_matroid_payload({"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]})
    assert ok and erros == []
    ok, erros = validate_matroid_payload({"n": 3, "bases": [[1, 4]]})
    assert not ok and "Base 1" in erros[0]
    assert validate_matroid_payload([1, 2])[0] == False
    print("[OK] validate_matroid_payload funcionando")

    valuado = {"n": 3, "d": 2, "entries": [{"set": [1, 2], "value": "0"}, {"set": [1, 3], "value": "inf"}]}
    assert validate_valuated_payload(valuado) == (True, [])
    valuado["entries"].append({"set": [1], "value": "x"})
    ok, erros = validate_valuated_payload(valuado)
    assert not ok and len(erros) == 2
    print("[OK] validate_valuated_payload funcionando")

    assert validate_polynomial_payload({"n": 2, "expr": "w1*w2"}) == (True, [])
    assert validate_polynomial_payload({"n": 2, "terms": [{"exp": [1, 1], "coeff": "3/2"}]})[0]
    ok, erros = validate_polynomial_payload({"n": 2, "terms": [{"exp": [1], "coeff": "a"}]})
    assert not ok and len(erros) == 2
    print("[OK] validate_polynomial_payload funcionando")

    funcao = {"n": 2, "d": 2, "entries": [{"exp": [2, 0], "value": "1"}, {"exp": [1, 1], "value": "inf"}]}
    assert validate_mconvex_payload(funcao) == (True, [])
    funcao["entries"].append({"exp": [1, 0], "value": "0"})
    ok, erros = validate_mconvex_payload(funcao)
    assert not ok and "grau" in erros[0]
    print("[OK] validate_mconvex_payload funcionando")

    assert is_valid_matrix_entry("2*t^-1 + 3") == True
    assert is_valid_matrix_entry("1/2") == True
    assert is_valid_matrix_entry("x + 1") == False
    assert validate_matrix_payload([["1", "0"], ["0", "t"]]) == (True, [])
    assert validate_matrix_payload({"rows": [["1", "0"], ["0"]]})[0] == False
    print("[OK] validate_matrix_payload funcionando")

    assert validate_points_payload([["0", "1", "inf"]], n=3) == (True, [])
    assert validate_points_payload({"points": [["0", "1"]]}, n=3)[0] == False
    print("[OK] validate_points_payload funcionando")

    print("[PASS] Todos os testes de payloads passaram!\n")


def test_polynomial_expr():
    """Testa a whitelist de expressões polinomiais."""
    print("=" * 50)
    print("TESTES DE EXPRESSÕES POLINOMIAIS")
    print("=" * 50)

    assert polynomial_expr_errors("w1^2 + 3*w1*w2", 2) == []
    assert is_valid_polynomial_expr("(w1 + w2)**3 - 1/2*w10", 10) == True
    assert is_valid_polynomial_expr("3.9*w1*w2") == True
    print("[OK] expressões válidas aceitas")

    assert is_valid_polynomial_expr("__import__('os').system('true') or w1") == False
    assert is_valid_polynomial_expr("exp(w1)") == False
    assert is_valid_polynomial_expr("w1.real") == False
    assert is_valid_polynomial_expr("ww1 + w0") == False
    assert polynomial_expr_errors("w1*w3", 2) == ["Variável w3 fora de w1..w2"]
    assert polynomial_expr_errors("(w1*w2", 2) == ["Parênteses desbalanceados em 'expr'"]
    assert len(polynomial_expr_errors("(w1+w2)**1000", 2)) == 1
    assert polynomial_expr_errors("   ") == ["Campo 'expr' deve ser um texto não vazio"]
    assert polynomial_expr_errors(12) == ["Campo 'expr' deve ser um texto não vazio"]
    print("[OK] nomes, parênteses e expoentes rejeitados")

    ok, erros = validate_polynomial_payload({"n": 2, "expr": "__import__('pathlib') or w1*w2"})
    assert not ok and "caracteres inválidos" in erros[0]
    print("[PASS] Todos os testes de expressões passaram!\n")


def test_utilities():
    """Testa funções utilitárias."""
    print("=" * 50)
    print("TESTES DE UTILITÁRIOS")
    print("=" * 50)

    assert slugify("paper-example L1-not-convex") == "paper-example-l1-not-convex"
    assert slugify("  Espaços  Extras  ") == "espacos-extras"
    print("[OK] slugify funcionando")

    print("[PASS] Todos os testes de utilitários passaram!\n")


def main():
    """Executa todos os testes."""
    print("\n" + "=" * 50)
    print("INICIANDO TESTES DO MÓDULO VALIDATORS")
    print("=" * 50 + "\n")

    try:
        test_values()
        test_labels()
        test_payloads()
        test_polynomial_expr()
        test_utilities()

        print("=" * 50)
        print(">>> TODOS OS TESTES PASSARAM COM SUCESSO!")
        print("=" * 50)

    except AssertionError as e:
        print(f"\n[FAIL] TESTE FALHOU: {e}")
        raise
    except Exception as e:
        print(f"\n[FAIL] ERRO INESPERADO: {e}")
        raise


if __name__ == "__main__":
    main()
