"""
tropmat - Interface de linha de comando

Carrega matroides, valuações, polinômios e matrizes (arquivos JSON,
``builtin:<nome>`` ou ``random:<d>,<n>``), executa a verificação pedida e
escreve um relatório {"verb", "verdict", "witness", "stats"} em stdout.

Códigos de saída:
    0  veredito verdadeiro
    1  veredito falso (com testemunha) ou hipótese não satisfeita
    2  entrada inválida, limite de tamanho, JSON malformado ou verbo desconhecido

Usage:
    python app.py levi-check builtin:vamos
    python app.py linear-subclasses "builtin:uniform(3,4)" --format text
    python app.py fq phi.json --q 1/2 1/3 --jobs 4
"""

import argparse
import json
import sys
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence

from config import export_config, limits, messages, settings

# =============================================================================
# LOGGER
# =============================================================================

from utils.logger import get_logger, get_logger_with_context, set_log_level

logger = get_logger(__name__)

# =============================================================================
# MANAGERS
# =============================================================================

from json_import import JSONImporter
from report_manager import ReportManager

# =============================================================================
# BIBLIOTECA
# =============================================================================

from tropmat.adjoint import (
    cofactor_check, cofactor_identity_check, dressian_dimension_gap, gen_cofactor,
    is_adjoint, is_valuated_adjoint, plethystic_diagram_check, tropicalize_realization,
)
from tropmat.builtins import l1_matrices, table1_entries, table1_quotient, v8_Q1, v8_Q2
from tropmat.dressian import interpolate, levi_failure_witness
from tropmat.errors import HypothesisError, InputError, SizeBoundError
from tropmat.lorentzian import (
    MConvexFn, basis_generating, basis_polynomial, from_quadratic_matrix, higgs_supports,
    invert, is_lorentzian, is_m_convex_fn, lorentzian_as_q_to_zero, mconvex_quotient,
    proper_position, proper_position_as_q_to_zero, segment,
)
from tropmat.matroid import (
    Matroid, enumerate_linear_subclasses, have_common_elementary_quotient, is_quotient,
    levi_intersection_property, parse_label, quotient_from_modular_cut, quotient_lattice,
    uniform, v8_minus, vamos,
)
from tropmat.valuated import (
    all_plucker_relations_hold, check_plucker, complete_flag_to_point,
    flag_from_values, is_quotient_valuated, lines_intersect, point_to_json,
)
from utils.validators import is_valid_label, parse_fraction, parse_q_values


EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2

EXAMPLE_NAMES = ("L1-not-convex", "table1", "vamos", "counter-to-submodular", "projective-plane")

Relatorio = Dict[str, object]


class _Parser(argparse.ArgumentParser):
    """Erros de argumento viram InputError (saída 2 com relatório JSON)."""

    def error(self, message):
        raise InputError(message)


# =============================================================================
# FUNÇÕES AUXILIARES
# =============================================================================

def relatorio(verb: str, verdict: Optional[bool], witness=None, stats: Optional[dict] = None) -> Relatorio:
    return {"verb": verb, "verdict": verdict, "witness": witness, "stats": stats or {}}


def _exigir(par, importer: JSONImporter):
    """Desempacota (obj, erro) do importador; erro vira InputError com a posição."""
    objeto, erro = par
    if erro:
        raise InputError(erro, witness=importer.posicao)
    return objeto


def _valores_q(tokens: Optional[Sequence[str]]) -> List:
    if not tokens:
        return list(limits.DEFAULT_Q_VALUES)
    valores, erros = parse_q_values(tokens)
    if erros:
        raise InputError(messages.BAD_Q_VALUES.format(erros="; ".join(erros)))
    return valores


def _inteira(phi: MConvexFn) -> bool:
    return all(v.denominator == 1 for _, v in phi.entries)


def _hiperplanos(M: Matroid, rotulos: Sequence[str]) -> List[int]:
    mascaras = []
    for rotulo in rotulos:
        if not is_valid_label(rotulo, M.n) or parse_label(rotulo) not in M.hyperplanes:
            raise InputError(messages.NOT_A_HYPERPLANE.format(label=rotulo))
        mascaras.append(parse_label(rotulo))
    return mascaras


# =============================================================================
# VERBOS: MATROIDES E VALUAÇÕES
# =============================================================================

def verbo_validate_matroid(args, imp: JSONImporter) -> Relatorio:
    M = _exigir(imp.carregar_matroide(args.matroid, validar=False), imp)
    stats = {"n": M.n, "d": M.d, "bases": len(M.bases)}
    try:
        M.check_exchange()
    except InputError as e:
        return relatorio(args.verb, False, {"reason": e.message, "witness": e.witness}, stats)
    stats.update({"hyperplanes": len(M.hyperplanes), "simple": M.is_simple})
    return relatorio(args.verb, True, None, stats)


def verbo_validate_valuated(args, imp: JSONImporter) -> Relatorio:
    mu = _exigir(imp.carregar_valuado(args.valuated, validar=False), imp)
    stats = {"n": mu.n, "d": mu.d, "support": len(mu.support), "trivial": mu.is_trivial()}
    try:
        check_plucker(mu, args.jobs)
    except InputError as e:
        return relatorio(args.verb, False, {"reason": e.message, "witness": e.witness}, stats)
    return relatorio(args.verb, True, None, stats)


def verbo_plucker_check(args, imp: JSONImporter) -> Relatorio:
    """Todas as relações de Plücker, não só as de três termos."""
    mu = _exigir(imp.carregar_valuado(args.valuated, validar=False), imp)
    ok, testemunha = all_plucker_relations_hold(mu)
    return relatorio(args.verb, ok, testemunha, {"n": mu.n, "d": mu.d})


def verbo_quotient_check(args, imp: JSONImporter) -> Relatorio:
    a = _exigir(imp.carregar_matroide_ou_valuado(args.matroid), imp)
    b = _exigir(imp.carregar_matroide_ou_valuado(args.quotient), imp)
    if isinstance(a, Matroid) and isinstance(b, Matroid):
        ok = is_quotient(a, b)
        return relatorio(args.verb, ok, None, {"valuated": False, "rank_drop": a.d - b.d})
    mu = _exigir(imp.carregar_valuado(a), imp)
    theta = _exigir(imp.carregar_valuado(b), imp)
    ok, testemunha = is_quotient_valuated(mu, theta, args.jobs)
    return relatorio(args.verb, ok, testemunha, {"valuated": True, "rank_drop": mu.d - theta.d})


def verbo_linear_subclasses(args, imp: JSONImporter) -> Relatorio:
    M = _exigir(imp.carregar_matroide(args.matroid), imp)
    subclasses = enumerate_linear_subclasses(M, args.size_bound)
    stats = {
        "count": len(subclasses),
        "hyperplanes": len(M.hyperplanes),
        "subclasses": [M.labels(sorted(s)) for s in subclasses],
    }
    return relatorio(args.verb, True, None, stats)


def verbo_quotient_lattice(args, imp: JSONImporter) -> Relatorio:
    M = _exigir(imp.carregar_matroide(args.matroid), imp)
    L = quotient_lattice(M, args.size_bound)
    longa, curta = L.longest_chain(), L.shortest_maximal_chain()
    stats = {
        "size": len(L),
        "covers": len(L.covers),
        "join_irreducibles": len(L.join_irreducibles),
        "longest_chain": longa,
        "shortest_maximal_chain": curta,
        "graded": longa == curta,
    }
    return relatorio(args.verb, True, None, stats)


def verbo_levi_check(args, imp: JSONImporter) -> Relatorio:
    M = _exigir(imp.carregar_matroide(args.matroid), imp)
    ok, combo = levi_intersection_property(M)
    testemunha = None if ok else M.labels(combo)
    return relatorio(args.verb, ok, testemunha, {"n": M.n, "d": M.d, "hyperplanes": len(M.hyperplanes)})


def verbo_common_quotient(args, imp: JSONImporter) -> Relatorio:
    M1 = _exigir(imp.carregar_matroide(args.first), imp)
    M2 = _exigir(imp.carregar_matroide(args.second), imp)
    comum = have_common_elementary_quotient(M1, M2, args.size_bound)
    stats = {"common_flats": len(M1.flat_set & M2.flat_set)}
    return relatorio(args.verb, comum is not None, comum.to_json() if comum else None, stats)


def verbo_lines_intersect(args, imp: JSONImporter) -> Relatorio:
    t1 = _exigir(imp.carregar_valuado(args.first), imp)
    t2 = _exigir(imp.carregar_valuado(args.second), imp)
    ponto = lines_intersect(t1, t2)
    return relatorio(args.verb, ponto is not None, point_to_json(ponto) if ponto else None, {"n": t1.n})


def verbo_flag_complete(args, imp: JSONImporter) -> Relatorio:
    mu0 = _exigir(imp.carregar_valuado(args.valuated), imp)
    mu_last = _exigir(imp.carregar_valuado(args.last), imp)
    cadeia = complete_flag_to_point(mu0, mu_last)
    return relatorio(args.verb, True, flag_from_values(cadeia), {"steps": len(cadeia) - 1})


# =============================================================================
# VERBOS: ESPAÇO DE QUOCIENTES E ADJUNTOS
# =============================================================================

def verbo_interpolate(args, imp: JSONImporter) -> Relatorio:
    mu = _exigir(imp.carregar_valuado(args.valuated), imp)
    sigma = _exigir(imp.carregar_valuado(args.sigma), imp)
    pontos = _exigir(imp.carregar_pontos(args.points, mu.n), imp)
    theta = interpolate(mu, sigma, pontos)
    return relatorio(args.verb, True, theta.to_json(), {"points": len(pontos)})


def verbo_levi_witness(args, imp: JSONImporter) -> Relatorio:
    M = _exigir(imp.carregar_matroide(args.matroid), imp)
    c = parse_fraction(args.c)
    if c is None:
        raise InputError(messages.NOT_POSITIVE, witness={"c": args.c})
    if args.hyperplanes:
        hs = _hiperplanos(M, args.hyperplanes)
    else:
        ok, hs = levi_intersection_property(M)
        if ok:
            raise HypothesisError(messages.LEVI_HOLDS)
    certificado = levi_failure_witness(M, hs, c)
    return relatorio(args.verb, certificado.certified, certificado.to_json(),
                     {"rounds": len(certificado.trace)})


def verbo_adjoint_check(args, imp: JSONImporter) -> Relatorio:
    a = _exigir(imp.carregar_matroide_ou_valuado(args.matroid), imp)
    b = _exigir(imp.carregar_matroide_ou_valuado(args.adjoint), imp)
    if isinstance(a, Matroid) and isinstance(b, Matroid) and args.form is None:
        ok, testemunha = is_adjoint(a, b)
        return relatorio(args.verb, ok, testemunha, {"valuated": False, "hyperplanes": len(a.hyperplanes)})
    mu = _exigir(imp.carregar_valuado(a), imp)
    sigma = _exigir(imp.carregar_valuado(b), imp)
    ok, testemunha = is_valuated_adjoint(mu, sigma, args.form)
    return relatorio(args.verb, ok, testemunha, {"valuated": True, "ground": sigma.n})


def verbo_cofactor_verify(args, imp: JSONImporter) -> Relatorio:
    """(μ, Σ) não simplificado, ou uma matriz: tropicaliza e confere também 𝒥."""
    stats: dict = {}
    if len(args.inputs) == 1:
        A = _exigir(imp.carregar_matriz(args.inputs[0]), imp)
        mu, sigma = tropicalize_realization(A)
        B = gen_cofactor(A)
        falhas = [js for js in combinations(B.columns, B.d) if not cofactor_identity_check(A, js)]
        stats["identity_checked"] = sum(1 for _ in combinations(B.columns, B.d))
        if falhas:
            return relatorio(args.verb, False, {"identity": [mu.label(j) for j in falhas[0]]}, stats)
    elif len(args.inputs) == 2:
        mu = _exigir(imp.carregar_valuado(args.inputs[0]), imp)
        sigma = _exigir(imp.carregar_valuado(args.inputs[1]), imp)
    else:
        raise InputError(messages.BAD_COFACTOR_INPUTS)
    stats.update(cofactor_check(mu, sigma).to_json())
    return relatorio(args.verb, True, None, stats)


def verbo_plethysm_check(args, imp: JSONImporter) -> Relatorio:
    A = _exigir(imp.carregar_matriz(args.matrix), imp)
    ok, testemunha = plethystic_diagram_check(A)
    return relatorio(args.verb, ok, testemunha, {"d": len(A), "n": len(A[0])})


def verbo_tropicalize(args, imp: JSONImporter) -> Relatorio:
    A = _exigir(imp.carregar_matriz(args.matrix), imp)
    mu, sigma = tropicalize_realization(A)
    return relatorio(args.verb, True, {"mu": mu.to_json(), "sigma": sigma.to_json()},
                     {"d": mu.d, "n": mu.n, "sigma_ground": sigma.n})


# =============================================================================
# VERBOS: POLINÔMIOS DE LORENTZ
# =============================================================================

def verbo_lorentzian_check(args, imp: JSONImporter) -> Relatorio:
    f = _exigir(imp.carregar_polinomio(args.polynomial), imp)
    ok, testemunha = is_lorentzian(f, args.jobs)
    return relatorio(args.verb, ok, testemunha, {"n": f.n, "degree": f.degree, "terms": len(f.support)})


def verbo_proper_position(args, imp: JSONImporter) -> Relatorio:
    h = _exigir(imp.carregar_polinomio(args.lower), imp)
    f = _exigir(imp.carregar_polinomio(args.upper), imp)
    ok, testemunha = proper_position(h, f, args.jobs)
    return relatorio(args.verb, ok, testemunha, {"n": f.n, "degree": f.degree})


def verbo_fq(args, imp: JSONImporter) -> Relatorio:
    """
    Decide pelo germe q → 0+; os valores de --q são amostras e só entram
    nas estatísticas.
    """
    phi = _exigir(imp.carregar_funcao(args.phi), imp)
    qs = _valores_q(args.q)
    stats: dict = {"n": phi.n, "d": phi.d}
    if args.psi is None:
        ok, testemunha = lorentzian_as_q_to_zero(phi, args.jobs)
        stats["m_convex"] = is_m_convex_fn(phi)[0]
        if _inteira(phi):
            stats["samples"] = {
                str(q): is_lorentzian(basis_generating(phi, q), args.jobs)[0] for q in qs
            }
        return relatorio(args.verb, ok, testemunha, stats)

    psi = _exigir(imp.carregar_funcao(args.psi), imp)
    ok, testemunha = proper_position_as_q_to_zero(psi, phi, args.jobs)
    stats["m_convex_quotient"] = mconvex_quotient(phi, psi)[0]
    if _inteira(phi) and _inteira(psi):
        stats["samples"] = {
            str(q): proper_position(basis_generating(psi, q), basis_generating(phi, q), args.jobs)[0]
            for q in qs
        }
    return relatorio(args.verb, ok, testemunha, stats)


def verbo_segment(args, imp: JSONImporter) -> Relatorio:
    """Variáveis numeradas a partir de 1, como em w1..wn."""
    f = _exigir(imp.carregar_polinomio(args.polynomial), imp)
    var = args.variable - 1
    g = segment(f, var, args.i, args.j)
    ok, testemunha = is_lorentzian(g, args.jobs)
    stats = {"segment": g.to_json(), "higgs_supports": len(higgs_supports(f, var))}
    return relatorio(args.verb, ok, testemunha, stats)


# =============================================================================
# EXEMPLOS
# =============================================================================

def _exemplo_l1() -> Relatorio:
    """h1, h2 ≪_L f_M mas h1 + h2 não; inverter g2 perde a propriedade de Lorentz."""
    matrizes = l1_matrices()
    f_m = basis_polynomial(uniform(3, 4))
    h1, h2 = from_quadratic_matrix(matrizes["A1"]), from_quadratic_matrix(matrizes["A2"])
    soma_ok, soma_w = is_lorentzian(h1 + h2)
    g2 = f_m.add_variable() + h2.add_variable().times_variable(f_m.n)
    inv_ok, inv_w = is_lorentzian(invert(g2))
    observado = {
        "h1": is_lorentzian(h1)[0],
        "h2": is_lorentzian(h2)[0],
        "h1_proper": proper_position(h1, f_m)[0],
        "h2_proper": proper_position(h2, f_m)[0],
        "h1+h2": soma_ok,
        "g2": is_lorentzian(g2)[0],
        "invert(g2)": inv_ok,
    }
    esperado = {"h1": True, "h2": True, "h1_proper": True, "h2_proper": True,
                "h1+h2": False, "g2": True, "invert(g2)": False}
    return relatorio("paper-example", observado == esperado,
                     {"h1+h2": soma_w, "invert(g2)": inv_w}, observado)


def _exemplo_table1() -> Relatorio:
    m = uniform(3, 4)
    linhas, ok = [], True
    for registro in table1_entries():
        q = table1_quotient(registro["k"])
        certo = is_quotient(m, q) and quotient_from_modular_cut(m, registro["modular_cut"]) == q
        ok = ok and certo
        linhas.append({
            "k": registro["k"],
            "subclass": m.labels(sorted(registro["subclass"])),
            "bases": q.to_json()["bases"],
            "ok": certo,
        })
    total = len(enumerate_linear_subclasses(m))
    return relatorio("paper-example", ok and total == 15, None, {"quotients": linhas, "linear_subclasses": total})


def _exemplo_vamos() -> Relatorio:
    M = vamos()
    ok, combo = levi_intersection_property(M)
    if ok:
        return relatorio("paper-example", False, None, {"levi": True})
    certificado = levi_failure_witness(M, combo)
    return relatorio("paper-example", certificado.certified,
                     {"hyperplanes": M.labels(combo), "certificate": certificado.to_json()},
                     {"levi": False, "rounds": len(certificado.trace)})


def _exemplo_submodular() -> Relatorio:
    """Dois quocientes de V8⁻ sem quociente elementar comum."""
    M, q1, q2 = v8_minus(), v8_Q1(), v8_Q2()
    comum = have_common_elementary_quotient(q1, q2)
    stats = {
        "Q1_quotient": is_quotient(M, q1),
        "Q2_quotient": is_quotient(M, q2),
        "common_flats": len(q1.flat_set & q2.flat_set),
        "common_quotient": comum is not None,
    }
    ok = stats["Q1_quotient"] and stats["Q2_quotient"] and comum is None
    return relatorio("paper-example", ok, {"Q1": q1.to_json(), "Q2": q2.to_json()}, stats)


def _exemplo_plano_projetivo() -> Relatorio:
    linhas = []
    for q in (2, 3):
        dimensao, dressian, diferenca = dressian_dimension_gap(q, verify=(q == 2))
        linhas.append({"q": q, "dimension": dimensao, "dressian": dressian, "gap": diferenca})
    return relatorio("paper-example", all(r["gap"] > 0 for r in linhas), None, {"planes": linhas})


EXEMPLOS: Dict[str, Callable[[], Relatorio]] = {
    "L1-not-convex": _exemplo_l1,
    "table1": _exemplo_table1,
    "vamos": _exemplo_vamos,
    "counter-to-submodular": _exemplo_submodular,
    "projective-plane": _exemplo_plano_projetivo,
}


def verbo_paper_example(args, imp: JSONImporter) -> Relatorio:
    resultado = EXEMPLOS[args.name]()
    resultado["stats"] = {"name": args.name, **resultado["stats"]}
    return resultado


# =============================================================================
# PARSER
# =============================================================================

# verbo -> (função, [(argumento, opções do argparse)])
VERBOS: Dict[str, tuple] = {
    "validate-matroid": (verbo_validate_matroid, [("matroid", {})]),
    "validate-valuated": (verbo_validate_valuated, [("valuated", {})]),
    "plucker-check": (verbo_plucker_check, [("valuated", {})]),
    "quotient-check": (verbo_quotient_check, [("matroid", {}), ("quotient", {})]),
    "linear-subclasses": (verbo_linear_subclasses, [("matroid", {})]),
    "quotient-lattice": (verbo_quotient_lattice, [("matroid", {})]),
    "levi-check": (verbo_levi_check, [("matroid", {})]),
    "common-quotient": (verbo_common_quotient, [("first", {}), ("second", {})]),
    "lorentzian-check": (verbo_lorentzian_check, [("polynomial", {})]),
    "proper-position": (verbo_proper_position, [("lower", {}), ("upper", {})]),
    "fq": (verbo_fq, [("phi", {}), ("psi", {"nargs": "?"})]),
    "segment": (verbo_segment, [
        ("polynomial", {}), ("variable", {"type": int}), ("i", {"type": int}), ("j", {"type": int}),
    ]),
    "adjoint-check": (verbo_adjoint_check, [
        ("matroid", {}), ("adjoint", {}),
        ("--form", {"choices": ("simplified", "unsimplified"), "default": None}),
    ]),
    "cofactor-verify": (verbo_cofactor_verify, [("inputs", {"nargs": "+"})]),
    "plethysm-check": (verbo_plethysm_check, [("matrix", {})]),
    "tropicalize": (verbo_tropicalize, [("matrix", {})]),
    "interpolate": (verbo_interpolate, [("valuated", {}), ("sigma", {}), ("points", {})]),
    "levi-witness": (verbo_levi_witness, [
        ("matroid", {}), ("hyperplanes", {"nargs": "*"}), ("--c", {"default": "1"}),
    ]),
    "lines-intersect": (verbo_lines_intersect, [("first", {}), ("second", {})]),
    "flag-complete": (verbo_flag_complete, [("valuated", {}), ("last", {})]),
    "paper-example": (verbo_paper_example, [("name", {"choices": EXAMPLE_NAMES})]),
}


def build_parser() -> argparse.ArgumentParser:
    comum = _Parser(add_help=False)
    comum.add_argument("--format", choices=("json", "text"), default="json")
    comum.add_argument("--jobs", type=int, default=1)
    comum.add_argument("--size-bound", type=int, default=None)
    comum.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    comum.add_argument("--q", nargs="+", default=None)
    comum.add_argument("--save-report", nargs="*", choices=("csv", "xlsx"), default=None)
    comum.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"))

    parser = _Parser(prog=settings.APP_NAME, description=settings.APP_DESCRIPTION)
    sub = parser.add_subparsers(dest="verb")
    for verbo, (_, argumentos) in VERBOS.items():
        p = sub.add_parser(verbo, parents=[comum])
        for nome, opcoes in argumentos:
            p.add_argument(nome, **opcoes)
    return parser


# =============================================================================
# SAÍDA
# =============================================================================

def formatar(rel: Relatorio, formato: str) -> str:
    if formato == "json":
        return json.dumps(rel, ensure_ascii=False, indent=export_config.JSON_INDENT, default=str)
    linhas = [f"verb: {rel['verb']}", f"verdict: {json.dumps(rel['verdict'])}"]
    if "error" in rel:
        linhas.append(f"error: {rel['error']}")
    if rel.get("witness") is not None:
        linhas.append(f"witness: {json.dumps(rel['witness'], ensure_ascii=False, default=str)}")
    for chave, valor in (rel.get("stats") or {}).items():
        linhas.append(f"  {chave}: {json.dumps(valor, ensure_ascii=False, default=str)}")
    return "\n".join(linhas)


def _codigo(rel: Relatorio) -> int:
    if "error" in rel:
        return EXIT_INPUT
    return EXIT_TRUE if rel["verdict"] else EXIT_FALSE


def _erro(verb: str, mensagem: str, witness=None, posicao: Optional[dict] = None) -> Relatorio:
    rel = relatorio(verb, None, witness)
    rel["error"] = mensagem
    if posicao:
        rel["position"] = posicao
    return rel


def _executar(verbo: str, argv: Sequence[str]):
    """Devolve (relatório, args); args é None se o parse falhou."""
    log = get_logger_with_context(__name__, verb=verbo)
    args, posicao = None, None
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            set_log_level(args.log_level)
        importer = JSONImporter(seed=args.seed)
        log.info("Iniciando com %d job(s)", args.jobs)
        try:
            rel = VERBOS[verbo][0](args, importer)
        finally:
            posicao = importer.posicao
        log.info("Veredito: %s", rel["verdict"])
    except HypothesisError as e:
        log.warning("Hipótese não satisfeita: %s", e.message)
        rel = relatorio(verbo, False, {"reason": e.message, "witness": e.witness})
    except (InputError, SizeBoundError) as e:
        log.warning("Entrada rejeitada: %s", e.message)
        rel = _erro(verbo, e.message, e.witness, posicao)
    except Exception:
        log.error("Erro inesperado", exc_info=True)
        raise
    return rel, args


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    """Executa um verbo, escreve o relatório e devolve o código de saída."""
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    verbo = argv[0] if argv else ""

    if verbo not in VERBOS:
        logger.warning("Verbo desconhecido: %s", verbo)
        print(formatar(_erro(verbo, messages.UNKNOWN_VERB.format(verb=verbo)), "json"), file=out)
        return EXIT_INPUT

    rel, args = _executar(verbo, argv)
    print(formatar(rel, args.format if args else "json"), file=out)

    if args is not None and args.save_report is not None and "error" not in rel:
        sucesso, mensagem = ReportManager().salvar_relatorio(rel, args.save_report)
        if not sucesso:
            logger.error(mensagem)
    return _codigo(rel)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
