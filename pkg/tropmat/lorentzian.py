"""
Polinômios homogêneos de coeficientes não negativos e a propriedade de Lorentz.

Certificação exata (inércia de Sylvester, sem autovalores em ponto
flutuante), posição própria de Lorentz, segmentos e fatoração de Higgs,
polarização/projeção, inversão, q-deformações de funções M-convexas e
polinômios determinantais.

Expoentes são tuplas de n inteiros não negativos; variáveis são 0-based
internamente e aparecem como w1, ..., wn em texto e JSON.

Example:
    >>> from tropmat.lorentzian import basis_polynomial, is_lorentzian
    >>> from tropmat.matroid import uniform
    >>> is_lorentzian(basis_polynomial(uniform(2, 3)))
    (True, None)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import comb, factorial, lcm, prod
from tokenize import TokenError
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly
from sympy.parsing.sympy_parser import convert_xor, parse_expr, rationalize, standard_transformations
from sympy.polys.fields import field as frac_field

from config import messages
from tropmat.arith import INF, TropVal, det, inertia, matrix_rank, submatrix, to_trop, trop_to_str
from tropmat.errors import HypothesisError, InputError
from tropmat.matroid import Matroid, have_common_elementary_quotient
from tropmat.valuated import ValuatedMatroid, _run_checks, is_quotient_valuated
from utils.logger import get_logger
from utils.validators import polynomial_expr_errors


logger = get_logger(__name__)

Exponent = Tuple[int, ...]

# Corpo Q(q) com q → 0+ (germes); o sinal é o do termo de menor grau
_GERMES, _Q = frac_field("q", QQ)


# ============================================================================
# EXPOENTES
# ============================================================================

def exp_of_mask(mask: int, n: int) -> Exponent:
    return tuple(mask >> i & 1 for i in range(n))


def mask_of_exp(exp: Exponent) -> int:
    return sum(1 << i for i, e in enumerate(exp) if e)


def _unit(n: int, i: int) -> Exponent:
    return tuple(1 if k == i else 0 for k in range(n))


def _add(x: Exponent, y: Exponent) -> Exponent:
    return tuple(a + b for a, b in zip(x, y))


def _move(x: Exponent, i: int, j: int) -> Exponent:
    """x − e_i + e_j."""
    return tuple(v - (k == i) + (k == j) for k, v in enumerate(x))


def _exp_factorial(exp: Exponent) -> int:
    return prod(factorial(e) for e in exp)


def _check_exponent(exp, n: int) -> Exponent:
    try:
        tupla = tuple(int(e) for e in exp)
    except (TypeError, ValueError):
        raise InputError(messages.BAD_EXPONENT, witness={"exp": repr(exp)})
    if len(tupla) != n or any(e < 0 for e in tupla):
        raise InputError(messages.BAD_EXPONENT, witness={"exp": list(tupla)})
    return tupla


# ============================================================================
# POLINÔMIOS HOMOGÊNEOS
# ============================================================================

@dataclass(frozen=True)
class HomPoly:
    """f = Σ c_a w^a, homogêneo, com coeficientes racionais positivos no suporte."""

    n: int
    terms: Tuple[Tuple[Exponent, Fraction], ...]

    @classmethod
    def of(cls, n: int, coeffs: Mapping[Sequence[int], object]) -> "HomPoly":
        """
        Constrói e valida; coeficientes nulos são descartados.

        Raises:
            InputError: expoente inválido, coeficiente negativo ou não homogêneo.
        """
        acumulado: Dict[Exponent, Fraction] = {}
        for exp, c in coeffs.items():
            e = _check_exponent(exp, n)
            acumulado[e] = acumulado.get(e, Fraction(0)) + Fraction(c)
        termos = {e: c for e, c in acumulado.items() if c != 0}
        negativos = [e for e, c in termos.items() if c < 0]
        if negativos:
            raise InputError(messages.NEGATIVE_COEFF, witness={"exp": list(negativos[0])})
        if len({sum(e) for e in termos}) > 1:
            raise InputError(messages.NOT_HOMOGENEOUS)
        return cls(n, tuple(sorted(termos.items())))

    @classmethod
    def zero(cls, n: int) -> "HomPoly":
        return cls(n, ())

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "HomPoly":
        return cls.of(len(exp), {tuple(exp): c})

    @classmethod
    def from_json(cls, payload: Mapping) -> "HomPoly":
        """Formato {"n": int, "terms": [{"exp": [...], "coeff": "p/q"}]}."""
        try:
            n = int(payload["n"])
            termos = {tuple(t["exp"]): Fraction(str(t["coeff"])) for t in payload["terms"]}
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(messages.MALFORMED_POLYNOMIAL.format(detail=e))
        return cls.of(n, termos)

    @classmethod
    def from_expr(cls, text: str, n: int) -> "HomPoly":
        """
        Lê uma expressão em w1..wn ("3.9*w1*w2 + w1*w3"); decimais viram racionais.

        Raises:
            InputError: expressão que não é polinômio em w1..wn.
        """
        erros = polynomial_expr_errors(text, n)
        if erros:
            raise InputError(messages.MALFORMED_POLYNOMIAL.format(detail="; ".join(erros)))
        simbolos = sympy.symbols(f"w1:{n + 1}")
        locais = {str(s): s for s in simbolos}
        try:
            expr = parse_expr(
                text, local_dict=locais,
                transformations=standard_transformations + (convert_xor, rationalize),
            )
        except (sympy.SympifyError, sympy.PolynomialError, SyntaxError, TokenError,
                TypeError, ValueError, ZeroDivisionError) as e:
            raise InputError(messages.MALFORMED_POLYNOMIAL.format(detail=e))
        if not isinstance(expr, sympy.Expr):
            raise InputError(messages.MALFORMED_POLYNOMIAL.format(detail=text))
        if not expr.free_symbols <= set(simbolos):
            raise InputError(messages.POLYNOMIAL_OUTSIDE_VARS.format(n=n))
        try:
            poly = Poly(expr, *simbolos)
        except (sympy.PolynomialError, TypeError, ValueError) as e:
            raise InputError(messages.MALFORMED_POLYNOMIAL.format(detail=e))
        if not all(c.is_Rational for _, c in poly.terms()):
            raise InputError(messages.NON_RATIONAL_COEFFICIENT)
        return cls.of(
            n, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}
        )

    # --------------------------------------------------------------------
    # Consultas
    # --------------------------------------------------------------------

    @cached_property
    def coeffs(self) -> Dict[Exponent, Fraction]:
        return dict(self.terms)

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(exp), Fraction(0))

    @cached_property
    def support(self) -> FrozenSet[Exponent]:
        return frozenset(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0]) if self.terms else 0

    def degree_in(self, i: int) -> int:
        return max((e[i] for e, _ in self.terms), default=0)

    def is_multi_affine(self) -> bool:
        return all(max(e, default=0) <= 1 for e, _ in self.terms)

    # --------------------------------------------------------------------
    # Aritmética
    # --------------------------------------------------------------------

    def _check_same_n(self, other: "HomPoly") -> None:
        if self.n != other.n:
            raise InputError(messages.GROUND_MISMATCH)

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check_same_n(other)
        soma = dict(self.coeffs)
        for e, c in other.terms:
            soma[e] = soma.get(e, Fraction(0)) + c
        return HomPoly.of(self.n, soma)

    def __mul__(self, other: "HomPoly") -> "HomPoly":
        self._check_same_n(other)
        produto: Dict[Exponent, Fraction] = {}
        for (e1, c1), (e2, c2) in product(self.terms, other.terms):
            e = _add(e1, e2)
            produto[e] = produto.get(e, Fraction(0)) + c1 * c2
        return HomPoly.of(self.n, produto)

    def scale(self, c) -> "HomPoly":
        c = Fraction(c)
        if c < 0:
            raise InputError(messages.NEGATIVE_COEFF)
        return HomPoly.of(self.n, {e: c * v for e, v in self.terms})

    def derivative(self, i: int) -> "HomPoly":
        """∂_i f."""
        return self.derivative_by(_unit(self.n, i))

    def derivative_by(self, a: Sequence[int]) -> "HomPoly":
        """∂^a f."""
        a = _check_exponent(a, self.n)
        termos = {}
        for e, c in self.terms:
            if all(x >= y for x, y in zip(e, a)):
                fator = prod(factorial(x) // factorial(x - y) for x, y in zip(e, a))
                termos[tuple(x - y for x, y in zip(e, a))] = c * fator
        return HomPoly.of(self.n, termos)

    def directional_derivative(self, v: Sequence) -> "HomPoly":
        """∂_v f = Σ v_i ∂_i f, com v ≥ 0."""
        if len(v) != self.n:
            raise InputError(messages.GROUND_MISMATCH)
        total = HomPoly.zero(self.n)
        for i, x in enumerate(v):
            if Fraction(x) != 0:
                total = total + self.derivative(i).scale(x)
        return total

    def add_variable(self, k: int = 1) -> "HomPoly":
        """Mesmo polinômio em n + k variáveis."""
        return HomPoly(self.n + k, tuple((e + (0,) * k, c) for e, c in self.terms))

    def times_variable(self, i: int) -> "HomPoly":
        """w_i · f."""
        return HomPoly(self.n, tuple(sorted((_add(e, _unit(self.n, i)), c) for e, c in self.terms)))

    # --------------------------------------------------------------------
    # Serialização
    # --------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.terms],
        }

    def to_sympy(self):
        simbolos = sympy.symbols(f"w1:{self.n + 1}")
        return sum(
            (sympy.Rational(c.numerator, c.denominator)
             * sympy.Mul(*[s ** k for s, k in zip(simbolos, e)])
             for e, c in self.terms),
            sympy.Integer(0),
        )

    def __str__(self):
        return str(self.to_sympy())

    def __repr__(self):
        return f"HomPoly(n={self.n}, d={self.degree}, |supp|={len(self.terms)})"


def linear_form(coeffs: Sequence) -> HomPoly:
    """ℓ = Σ c_i w_i."""
    n = len(coeffs)
    return HomPoly.of(n, {_unit(n, i): c for i, c in enumerate(coeffs)})


def elementary_symmetric(n: int, k: int) -> HomPoly:
    return HomPoly.of(n, {exp_of_mask(sum(1 << i for i in s), n): 1 for s in combinations(range(n), k)})


def basis_polynomial(M: Matroid) -> HomPoly:
    """f_M = Σ_{B base} w^B."""
    return HomPoly.of(M.n, {exp_of_mask(b, M.n): 1 for b in M.bases})


def from_quadratic_matrix(A: Sequence[Sequence]) -> HomPoly:
    """h = ½ wᵀAw para A simétrica de entradas não negativas."""
    n = len(A)
    termos = {}
    for i in range(n):
        termos[_add(_unit(n, i), _unit(n, i))] = Fraction(A[i][i]) / 2
        for j in range(i + 1, n):
            if Fraction(A[i][j]) != Fraction(A[j][i]):
                raise InputError(messages.NOT_SYMMETRIC)
            termos[_add(_unit(n, i), _unit(n, j))] = Fraction(A[i][j])
    return HomPoly.of(n, termos)


def quadratic_form_matrix(f: HomPoly) -> List[List[Fraction]]:
    """Hessiana da forma quadrática f (a matriz A com f = ½ wᵀAw)."""
    if not f.is_zero and f.degree != 2:
        raise InputError(messages.DEGREE_MISMATCH)
    return _hessian(lambda x: f.coeff(x) * _exp_factorial(x), f.n, (0,) * f.n, Fraction(0))


# ============================================================================
# CONJUNTOS E FUNÇÕES M-CONVEXAS
# ============================================================================

def _exchange_witness(x: Exponent, y: Exponent, i: int) -> dict:
    return {"x": list(x), "y": list(y), "i": i + 1}


def is_m_convex_set(S: Iterable[Sequence[int]]) -> Tuple[bool, Optional[dict]]:
    """
    Propriedade de troca: para x, y ∈ S e x(i) > y(i) existe j com
    y(j) > x(j), x − e_i + e_j ∈ S e y − e_j + e_i ∈ S.

    Returns:
        (True, None) ou (False, {"x", "y", "i"}).
    """
    conjunto = {tuple(s) for s in S}
    for x in sorted(conjunto):
        for y in sorted(conjunto):
            n = len(x)
            for i in range(n):
                if x[i] <= y[i]:
                    continue
                if not any(
                    y[j] > x[j] and _move(x, i, j) in conjunto and _move(y, j, i) in conjunto
                    for j in range(n)
                ):
                    return False, _exchange_witness(x, y, i)
    return True, None


@dataclass(frozen=True)
class MConvexFn:
    """φ: Δ^d_n → Q ∪ {∞}; apenas os valores finitos são guardados."""

    n: int
    d: int
    entries: Tuple[Tuple[Exponent, Fraction], ...]

    @classmethod
    def of(cls, n: int, d: int, values: Mapping[Sequence[int], TropVal]) -> "MConvexFn":
        """
        Raises:
            InputError: suporte vazio ou expoente fora de Δ^d_n.
        """
        finitos = {}
        for exp, v in values.items():
            e = _check_exponent(exp, n)
            if sum(e) != d:
                raise InputError(messages.DEGREE_MISMATCH, witness={"exp": list(e)})
            v = to_trop(v)
            if v != INF:
                finitos[e] = Fraction(v)
        if not finitos:
            raise InputError(messages.NO_FINITE_VALUE)
        return cls(n, d, tuple(sorted(finitos.items())))

    @classmethod
    def from_valuated(cls, mu: ValuatedMatroid) -> "MConvexFn":
        return cls(mu.n, mu.d, tuple(sorted((exp_of_mask(b, mu.n), v) for b, v in mu.entries)))

    @classmethod
    def indicator(cls, S: Iterable[Sequence[int]]) -> "MConvexFn":
        pontos = [tuple(s) for s in S]
        if not pontos:
            raise InputError(messages.NO_FINITE_VALUE)
        return cls.of(len(pontos[0]), sum(pontos[0]), {p: 0 for p in pontos})

    @cached_property
    def values(self) -> Dict[Exponent, Fraction]:
        return dict(self.entries)

    def __call__(self, exp: Sequence[int]) -> TropVal:
        return self.values.get(tuple(exp), INF)

    @cached_property
    def support(self) -> FrozenSet[Exponent]:
        return frozenset(self.values)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "entries": [{"exp": list(e), "value": trop_to_str(v)} for e, v in self.entries],
        }


PhiLike = Union[MConvexFn, ValuatedMatroid]


def _as_mconvex(phi: PhiLike) -> MConvexFn:
    return MConvexFn.from_valuated(phi) if isinstance(phi, ValuatedMatroid) else phi


def is_m_convex_fn(phi: PhiLike) -> Tuple[bool, Optional[dict]]:
    """
    Troca valuada: para x, y no suporte e x(i) > y(i) existe j com
    x(j) < y(j) e φ(x) + φ(y) ≥ φ(x − e_i + e_j) + φ(y − e_j + e_i).
    """
    phi = _as_mconvex(phi)
    pontos = sorted(phi.support)
    for x in pontos:
        for y in pontos:
            alvo = phi(x) + phi(y)
            for i in range(phi.n):
                if x[i] <= y[i]:
                    continue
                if not any(
                    x[j] < y[j] and alvo >= phi(_move(x, i, j)) + phi(_move(y, j, i))
                    for j in range(phi.n)
                ):
                    return False, _exchange_witness(x, y, i)
    return True, None


def _phi_hat(phi: MConvexFn, psi: MConvexFn) -> MConvexFn:
    """φ̂ em Δ^d_{n+1}: φ com x_{n+1} = 0, ψ com x_{n+1} = 1."""
    valores = {e + (0,): v for e, v in phi.entries}
    valores.update({e + (1,): v for e, v in psi.entries})
    return MConvexFn.of(phi.n + 1, phi.d, valores)


def _check_quotient_shapes(phi: MConvexFn, psi: MConvexFn) -> None:
    if phi.n != psi.n:
        raise InputError(messages.GROUND_MISMATCH)
    if psi.d != phi.d - 1:
        raise InputError(messages.DEGREE_MISMATCH)


def mconvex_quotient(phi: PhiLike, psi: PhiLike) -> Tuple[bool, Optional[dict]]:
    """
    φ ↠ ψ é quociente elementar sse φ̂ é M-convexa.

    Raises:
        InputError: solos diferentes ou postos que não diferem de 1.
    """
    phi, psi = _as_mconvex(phi), _as_mconvex(psi)
    _check_quotient_shapes(phi, psi)
    return is_m_convex_fn(_phi_hat(phi, psi))


# ============================================================================
# PROPRIEDADE DE LORENTZ
# ============================================================================

def _derivative_points(support: Iterable[Exponent], k: int) -> List[Exponent]:
    """Expoentes a com |a| = k e ∂^a f ≠ 0 (a ≤ algum ponto do suporte)."""
    pontos = set()
    for x in support:
        n = len(x)
        for i in range(n):
            for j in range(i, n):
                b = _add(_unit(n, i), _unit(n, j))
                if all(p >= q for p, q in zip(x, b)):
                    pontos.add(tuple(p - q for p, q in zip(x, b)))
    return sorted(pontos)


def _hessian(entry: Callable[[Exponent], object], n: int, a: Exponent, zero) -> List[list]:
    """H_ij = entry(a + e_i + e_j), com ``zero`` fora do suporte."""
    matriz = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = _add(a, _add(_unit(n, i), _unit(n, j)))
            valor = entry(x)
            matriz[i][j] = matriz[j][i] = valor
    return matriz


def _signature_check(
    support: FrozenSet[Exponent],
    degree: int,
    n: int,
    entry: Callable[[Exponent], object],
    zero,
    sign: Optional[Callable] = None,
    jobs: int = 1,
) -> Tuple[bool, Optional[dict]]:
    if degree <= 1:
        return True, None
    ok, testemunha = is_m_convex_set(support)
    if not ok:
        return False, {"reason": "support", **testemunha}

    def verificar(a: Exponent) -> Optional[dict]:
        h = _hessian(entry, n, a, zero)
        n_plus, n_minus, n_zero = inertia(h, sign)
        if n_plus > 1:
            return {"reason": "signature", "derivative": list(a), "inertia": [n_plus, n_minus, n_zero]}
        return None

    pontos = _derivative_points(support, degree - 2)
    logger.debug("Assinatura: %d derivadas de ordem %d", len(pontos), degree - 2)
    falha = _run_checks(pontos, verificar, jobs)
    return (falha is None), falha


def is_lorentzian(f: HomPoly, jobs: int = 1) -> Tuple[bool, Optional[dict]]:
    """
    Suporte M-convexo e, para todo |a| = d − 2, a forma ∂^a f com no máximo
    um autovalor positivo (contado pela inércia exata).

    Graus 0 e 1 são de Lorentz por convenção.

    Returns:
        (True, None) ou (False, testemunha com "reason" = "support" ou "signature").
    """
    return _signature_check(
        f.support, f.degree, f.n,
        lambda x: f.coeff(x) * _exp_factorial(x), Fraction(0), jobs=jobs,
    )


def _require_nonzero(*polys: HomPoly) -> None:
    for p in polys:
        if p.is_zero:
            raise InputError(messages.ZERO_POLY)


def proper_position(h: HomPoly, f: HomPoly, jobs: int = 1) -> Tuple[bool, Optional[dict]]:
    """
    h ≪_L f: f + w_{n+1}·h é de Lorentz.

    Raises:
        InputError: polinômio nulo, solos diferentes ou deg f ≠ deg h + 1.
    """
    _require_nonzero(h, f)
    if h.n != f.n:
        raise InputError(messages.GROUND_MISMATCH)
    if f.degree != h.degree + 1:
        raise InputError(messages.DEGREE_MISMATCH)
    g = f.add_variable() + h.add_variable().times_variable(f.n)
    return is_lorentzian(g, jobs)


# ============================================================================
# q-DEFORMAÇÕES
# ============================================================================

def _integer_values(phi: MConvexFn) -> Tuple[int, Dict[Exponent, Fraction]]:
    fator = lcm(*(v.denominator for _, v in phi.entries))
    return fator, {e: v * fator for e, v in phi.entries}


def basis_generating(phi: PhiLike, q) -> HomPoly:
    """
    f_q^φ = Σ q^{φ(a)} / a! · w^a.

    Raises:
        InputError: q fora de (0,1), ou φ não inteira; a testemunha traz o
            menor inteiro positivo que torna φ inteira (reescalar φ preserva
            todas as relações de quociente).
    """
    q = Fraction(q)
    if not 0 < q < 1:
        raise InputError(messages.Q_OUT_OF_RANGE, witness={"q": str(q)})
    phi = _as_mconvex(phi)
    fator, _ = _integer_values(phi)
    if fator != 1:
        raise InputError(messages.NON_INTEGER, witness={"factor": fator})
    return HomPoly.of(
        phi.n, {e: q ** int(v) / _exp_factorial(e) for e, v in phi.entries}
    )


def _germ_sign(x) -> int:
    """Sinal de um elemento de Q(q) para q → 0+."""
    if not x.numer:
        return 0

    def menor(p):
        return min(p.terms(), key=lambda t: t[0])[1]

    return 1 if menor(x.numer) * menor(x.denom) > 0 else -1


def lorentzian_as_q_to_zero(phi: PhiLike, jobs: int = 1) -> Tuple[bool, Optional[dict]]:
    """
    f_q^φ é de Lorentz para todo q > 0 suficientemente pequeno?

    Decide sobre o corpo ordenado Q(q) dos germes em 0+, onde a Hessiana
    de ∂^a f_q^φ tem entradas q^{φ(a+e_i+e_j)}. Valores racionais são
    reescalados (q ↦ q^k) e transladados; nada disso altera a resposta.
    Coincide com a M-convexidade de φ.
    """
    phi = _as_mconvex(phi)
    _, inteiros = _integer_values(phi)
    menor = min(inteiros.values())
    expoentes = {e: int(v - menor) for e, v in inteiros.items()}

    def entrada(x: Exponent):
        k = expoentes.get(x)
        return _GERMES(0) if k is None else _Q ** k

    return _signature_check(
        frozenset(expoentes), phi.d, phi.n, entrada, _GERMES(0), sign=_germ_sign, jobs=jobs
    )


def proper_position_as_q_to_zero(psi: PhiLike, phi: PhiLike, jobs: int = 1) -> Tuple[bool, Optional[dict]]:
    """f_q^ψ ≪_L f_q^φ para todo q pequeno (f_q^φ + w_{n+1} f_q^ψ = f_q^φ̂)."""
    phi, psi = _as_mconvex(phi), _as_mconvex(psi)
    _check_quotient_shapes(phi, psi)
    return lorentzian_as_q_to_zero(_phi_hat(phi, psi), jobs)


# ============================================================================
# SEGMENTOS E FATORAÇÃO DE HIGGS
# ============================================================================

def _check_variable(f: HomPoly, var: int) -> None:
    if not 0 <= var < f.n:
        raise InputError(messages.GROUND_MISMATCH, witness={"variable": var + 1})


def slices(f: HomPoly, var: int) -> List[HomPoly]:
    """f = f_0 + w f_1 + ... + w^k f_k em w = w_var; cada f_m sem a variável w."""
    _check_variable(f, var)
    partes: List[Dict[Exponent, Fraction]] = [{} for _ in range(f.degree_in(var) + 1)]
    for e, c in f.terms:
        partes[e[var]][e[:var] + (0,) + e[var + 1:]] = c
    return [HomPoly.of(f.n, p) for p in partes]


def segment(f: HomPoly, var: int, i: int, j: int) -> HomPoly:
    """
    f_{[i,j]} = w^i f_i + ... + w^j f_j.

    Raises:
        InputError: f_0 = 0 ou fora de 0 ≤ i < j ≤ grau em w.
    """
    fatias = slices(f, var)
    if fatias[0].is_zero:
        raise InputError(messages.ZERO_SLICE)
    if not 0 <= i < j <= len(fatias) - 1:
        raise InputError(messages.DEGREE_MISMATCH, witness={"i": i, "j": j})
    return HomPoly.of(f.n, {e: c for e, c in f.terms if i <= e[var] <= j})


def higgs_supports(f: HomPoly, var: int) -> List[FrozenSet[Exponent]]:
    """Suportes das fatias não nulas, sem a coordenada de w_var."""
    fatias = slices(f, var)
    if fatias[0].is_zero:
        raise InputError(messages.ZERO_SLICE)
    return [
        frozenset(e[:var] + e[var + 1:] for e in fatia.support)
        for fatia in fatias if not fatia.is_zero
    ]


def merge_variables(f: HomPoly, group: Iterable[int]) -> HomPoly:
    """Substitui w_i (i ∈ group) por uma nova variável w_0; as demais mantêm a ordem."""
    grupo = sorted(set(group))
    for i in grupo:
        _check_variable(f, i)
    resto = [i for i in range(f.n) if i not in grupo]
    termos: Dict[Exponent, Fraction] = {}
    for e, c in f.terms:
        novo = (sum(e[i] for i in grupo),) + tuple(e[i] for i in resto)
        termos[novo] = termos.get(novo, Fraction(0)) + c
    return HomPoly.of(1 + len(resto), termos)


# ============================================================================
# POLARIZAÇÃO, PROJEÇÃO E INVERSÃO
# ============================================================================

def _check_bounds(f: HomPoly, h: Sequence[int]) -> None:
    if len(h) != f.n:
        raise InputError(messages.GROUND_MISMATCH)
    for i in range(f.n):
        if f.degree_in(i) > h[i]:
            raise InputError(messages.POLARIZE_BOUND, witness={"variable": i + 1})


def polarize(f: HomPoly, h: Sequence[int]) -> HomPoly:
    """
    Π↑_h: w^a ↦ Π_i e_{a(i)}(w_{i1}, ..., w_{i h(i)}) / binom(h, a).

    As variáveis w_ij ficam agrupadas por i, na ordem (1,1), ..., (1,h1), (2,1), ...
    """
    _check_bounds(f, h)
    inicio = [sum(h[:i]) for i in range(f.n)]
    total = sum(h)
    termos: Dict[Exponent, Fraction] = {}
    for e, c in f.terms:
        peso = c / prod(comb(h[i], e[i]) for i in range(f.n))
        escolhas = [combinations(range(h[i]), e[i]) for i in range(f.n)]
        for escolha in product(*escolhas):
            novo = [0] * total
            for i, subconjunto in enumerate(escolha):
                for k in subconjunto:
                    novo[inicio[i] + k] = 1
            chave = tuple(novo)
            termos[chave] = termos.get(chave, Fraction(0)) + peso
    return HomPoly.of(total, termos)


def project(g: HomPoly, h: Sequence[int]) -> HomPoly:
    """Π↓_h: w_ij ↦ w_i."""
    if sum(h) != g.n:
        raise InputError(messages.GROUND_MISMATCH)
    inicio = [sum(h[:i]) for i in range(len(h))]
    termos: Dict[Exponent, Fraction] = {}
    for e, c in g.terms:
        novo = tuple(sum(e[inicio[i]:inicio[i] + h[i]]) for i in range(len(h)))
        termos[novo] = termos.get(novo, Fraction(0)) + c
    return HomPoly.of(len(h), termos)


def invert(f: HomPoly, degrees: Optional[Sequence[int]] = None) -> HomPoly:
    """
    w_1^{d_1} ... w_n^{d_n} f(w_1^{-1}, ..., w_n^{-1}).

    ``degrees`` padrão: o grau de f em cada variável. A inversão não preserva
    a propriedade de Lorentz.
    """
    graus = list(degrees) if degrees is not None else [f.degree_in(i) for i in range(f.n)]
    _check_bounds(f, graus)
    return HomPoly.of(f.n, {tuple(d - x for d, x in zip(graus, e)): c for e, c in f.terms})


# ============================================================================
# POLINÔMIOS DETERMINANTAIS E QUADRÂNGULOS DEGENERADOS
# ============================================================================

def determinantal_poly(A: Sequence[Sequence]) -> HomPoly:
    """
    f_A = det(A Z Aᵀ) = Σ_{|S|=d} det(A_S)² z^S (Cauchy–Binet).

    Raises:
        InputError: posto de A menor que o número de linhas.
    """
    linhas = [[Fraction(x) for x in row] for row in A]
    d = len(linhas)
    n = len(linhas[0]) if linhas else 0
    if d == 0 or matrix_rank(linhas) < d:
        raise InputError(messages.RANK_DEFICIENT)
    termos = {}
    for cols in combinations(range(n), d):
        valor = det(submatrix(linhas, range(d), cols))
        termos[exp_of_mask(sum(1 << c for c in cols), n)] = valor * valor
    return HomPoly.of(n, termos)


def degenerate_quadrangles(M: Matroid) -> List[Tuple[int, int, int, int]]:
    """
    Quádruplas (Aij, Ajk, Akl, Ail) de bases com Aik ou Ajl dependente.
    """
    resultado = []
    for a in sorted(M.independent_sets(M.d - 2)):
        fora = [e for e in range(M.n) if not a >> e & 1]
        for quatro in combinations(fora, 4):
            i, j, k, l = quatro
            for ciclo in ((i, j, k, l), (i, j, l, k), (i, k, j, l)):
                p, q, r, s = ciclo
                lados = [a | 1 << x | 1 << y for x, y in ((p, q), (q, r), (r, s), (p, s))]
                if not all(M.is_basis(b) for b in lados):
                    continue
                if M.is_basis(a | 1 << p | 1 << r) and M.is_basis(a | 1 << q | 1 << s):
                    continue
                resultado.append(tuple(lados))
    return resultado


def degenerate_quadrangle_check(f: HomPoly, M: Matroid) -> Tuple[bool, Optional[dict]]:
    """
    a_{Aij} a_{Akl} = a_{Ajk} a_{Ail} em todo quadrângulo degenerado de M.

    Raises:
        InputError: suporte de f diferente das bases de M.
    """
    if f.n != M.n or f.support != frozenset(exp_of_mask(b, M.n) for b in M.bases):
        raise InputError(messages.SUPPORT_MISMATCH)

    def a(mask: int) -> Fraction:
        return f.coeff(exp_of_mask(mask, M.n))

    for ij, jk, kl, il in degenerate_quadrangles(M):
        if a(ij) * a(kl) != a(jk) * a(il):
            return False, {"quadrangle": M.labels([ij, jk, kl, il])}
    return True, None


# ============================================================================
# CONES DE POSIÇÃO PRÓPRIA
# ============================================================================

@dataclass
class ConeReport:
    """Resultado de um teste de cone: veredito e os casos verificados."""

    verdict: bool
    checks: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "checks": self.checks}


def cone_witness_tests(f: HomPoly, g1: HomPoly, g2: HomPoly, jobs: int = 1) -> ConeReport:
    """
    Com f ≪_L g1 e f ≪_L g2, verifica f ≪_L g1 + g2.

    Raises:
        HypothesisError: algum dos pares não está em posição própria.
    """
    for nome, g in (("g1", g1), ("g2", g2)):
        ok, testemunha = proper_position(f, g, jobs)
        if not ok:
            raise HypothesisError(messages.NOT_PROPER_POSITION, witness={"which": nome, **testemunha})
    ok, testemunha = proper_position(f, g1 + g2, jobs)
    logger.info("Cone acima de f: %s", ok)
    return ConeReport(ok, [{"sum": "g1+g2", "holds": ok, "witness": testemunha}])


def quotient_cone_tests(
    mu: ValuatedMatroid,
    thetas: Sequence[ValuatedMatroid],
    weights: Sequence,
    q_values: Sequence,
    jobs: int = 1,
) -> ConeReport:
    """
    Σ c_k f_q^{θ_k} ≪_L f_q^μ para θ_k ∈ 𝒟¹(μ), pesos c_k ≥ 0 e cada q.

    Raises:
        InputError: pesos negativos, todos nulos ou em número errado.
        HypothesisError: algum θ_k não é quociente elementar de μ.
    """
    pesos = [Fraction(c) for c in weights]
    if len(pesos) != len(thetas) or not thetas:
        raise InputError(messages.GROUND_MISMATCH)
    if any(c < 0 for c in pesos):
        raise InputError(messages.NEGATIVE_COEFF)
    if all(c == 0 for c in pesos):
        raise InputError(messages.ZERO_POLY)
    for k, theta in enumerate(thetas):
        ok, testemunha = is_quotient_valuated(mu, theta, jobs)
        if not ok:
            raise HypothesisError(messages.NOT_QUOTIENT, witness={"index": k, **testemunha})

    casos = []
    for q in q_values:
        f_mu = basis_generating(mu, q)
        combinacao = HomPoly.zero(mu.n)
        for c, theta in zip(pesos, thetas):
            combinacao = combinacao + basis_generating(theta, q).scale(c)
        ok, testemunha = proper_position(combinacao, f_mu, jobs)
        casos.append({"q": str(Fraction(q)), "holds": ok, "witness": testemunha})
    veredito = all(c["holds"] for c in casos)
    logger.info("Cone abaixo de f_q^μ: %s em %d valores de q", veredito, len(casos))
    return ConeReport(veredito, casos)


def converse_cone_exhibit(
    M: Matroid, Q1: Matroid, Q2: Matroid, samples: Sequence = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
    jobs: int = 1,
) -> ConeReport:
    """
    Combinações convexas t·f_Q1 + (1−t)·f_Q2 ficam abaixo de f_M, embora
    nenhum h esteja abaixo de ambos: Q1 e Q2 não têm quociente elementar comum.

    O veredito é verdadeiro quando as duas afirmações se confirmam.
    """
    f_m, f1, f2 = basis_polynomial(M), basis_polynomial(Q1), basis_polynomial(Q2)
    casos = []
    for t in samples:
        t = Fraction(t)
        combinacao = f1.scale(t) + f2.scale(1 - t)
        lorentz, _ = is_lorentzian(combinacao, jobs)
        abaixo, _ = proper_position(combinacao, f_m, jobs)
        casos.append({"t": str(t), "lorentzian": lorentz, "below_f_M": abaixo})
    comum = have_common_elementary_quotient(Q1, Q2)
    casos.append({"common_quotient": None if comum is None else comum.to_json()})
    veredito = comum is None and all(c["lorentzian"] and c["below_f_M"] for c in casos[:-1])
    return ConeReport(veredito, casos)
