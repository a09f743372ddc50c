"""
Arquivo de configuração centralizado do tropmat.

Este módulo contém todas as constantes, limites e mensagens do sistema,
organizados em classes para facilitar a manutenção e reuso.

Usage:
    from config import settings, limits, messages

    print(settings.APP_NAME)
    print(limits.size_bound())
    print(messages.EMPTY_TROPICAL)
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Tuple
import os


# =============================================================================
# CONFIGURAÇÕES GERAIS DO SISTEMA
# =============================================================================

@dataclass(frozen=True)
class Settings:
    """Configurações gerais da aplicação."""

    # Informações do aplicativo
    APP_NAME: str = "tropmat"
    APP_DESCRIPTION: str = (
        "Aritmética exata para matroides valuados, quocientes, adjuntos "
        "e polinômios de Lorentz"
    )

    # Configurações de dados
    DEFAULT_ENCODING: str = "utf-8"
    DATETIME_FORMAT: str = "%Y%m%d_%H%M%S"

    # Semente padrão dos cenários aleatórios
    DEFAULT_SEED: int = 20240601


# =============================================================================
# CONFIGURAÇÕES DE CAMINHOS
# =============================================================================

@dataclass(frozen=True)
class Paths:
    """Caminhos de diretórios e arquivos do sistema."""

    REPORTS_DIR: Path = field(default_factory=lambda: Path(__file__).parent / "reports")

    # Arquivos de dados embutidos
    L1_NOT_CONVEX_FILE: Path = field(
        default_factory=lambda: Path(__file__).parent / "data" / "l1_not_convex.json"
    )
    TABLE1_FILE: Path = field(
        default_factory=lambda: Path(__file__).parent / "data" / "table1_quotients.json"
    )


# =============================================================================
# LIMITES DE ENUMERAÇÃO
# =============================================================================

@dataclass(frozen=True)
class Limits:
    """Limites das enumerações exponenciais.

    SIZE_BOUND limita o número de hiperplanos de uma matroide nas
    enumerações de subclasses lineares; pode ser sobrescrito pela
    variável de ambiente TROPMAT_SIZE_BOUND.
    """

    SIZE_BOUND: int = 20
    SIZE_BOUND_ENV: str = "TROPMAT_SIZE_BOUND"

    # Enumeração de matroides por força bruta (número de conjuntos de bases)
    MAX_BRUTE_FORCE_SETS: int = 10

    # Combinações de hiperplanos testadas na propriedade de Levi
    MAX_LEVI_COMBINATIONS: int = 200_000

    # Relatórios mantidos pelo ReportManager
    MAX_REPORTS: int = 30

    # Amostra finita de q em (0, 1)
    DEFAULT_Q_VALUES: Tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1, 3))

    def size_bound(self) -> int:
        """Retorna o limite efetivo, considerando a variável de ambiente."""
        valor = os.getenv(self.SIZE_BOUND_ENV)
        if valor is None:
            return self.SIZE_BOUND
        try:
            return max(1, int(valor))
        except ValueError:
            return self.SIZE_BOUND


# =============================================================================
# CONFIGURAÇÕES DE LOGGING
# =============================================================================

@dataclass(frozen=True)
class LoggingConfig:
    """Configurações de logging (espelham os padrões de utils.logger)."""

    LOG_DIR: str = "logs"
    LOG_FILE: str = "tropmat.log"
    LOG_LEVEL: str = "INFO"
    LOG_MAX_BYTES: int = 5 * 1024 * 1024
    LOG_BACKUP_COUNT: int = 5
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# =============================================================================
# MENSAGENS DO SISTEMA
# =============================================================================

@dataclass(frozen=True)
class Messages:
    """Mensagens de erro e de veredito padronizadas."""

    # Aritmética
    EMPTY_TROPICAL: str = "empty tropical expression"
    NOT_SQUARE: str = "matrix is not square"
    NOT_SYMMETRIC: str = "matrix is not symmetric"

    # Matroides
    GROUND_TOO_LARGE: str = "ground too large"
    NO_ELEMENTARY_QUOTIENT: str = "no elementary quotient"
    EXCHANGE_VIOLATED: str = "exchange axiom violated at ({b1},{b2},{i})"
    EMPTY_BASES: str = "basis list is empty"
    UNEQUAL_BASES: str = "bases must have equal size"
    NOT_SIMPLE: str = "matroid is not simple"
    NOT_SUBCLASS: str = "hyperplane set is not a linear subclass"
    NOT_MODULAR_CUT: str = "flat set is not a modular cut"
    GROUND_OVERLAP: str = "ground sets overlap"
    UNSUPPORTED_Q: str = "unsupported q: {q}"
    INCIDENCE_CONDITION: str = "incidence condition ({k}) violated"

    # Matroides valuados
    SUPPORT_NOT_MATROID: str = "support not a matroid"
    PLUCKER_FAILS: str = "Plücker relation ({i},{j}) fails"
    NO_FINITE_VALUE: str = "no finite value"
    NOT_A_BASIS: str = "set is not a basis"
    RANK_COLLAPSE: str = "rank collapse"
    INFINITE_POINT: str = "point has infinite coordinates"
    NOT_RANK_TWO: str = "valuated matroid is not of rank 2"
    HAS_LOOPS: str = "valuated matroid has loops"
    POINT_NOT_ON_TROP: str = "point not on Trop μ"
    FLAG_INCOMPLETE: str = "flag completion failed"

    # Dressian
    LEVEL_SET_NOT_SUBCLASS: str = "level set {g} not a linear subclass"
    NEGATIVE_POINT: str = "point must be finite and nonnegative"
    SIGMA_NOT_ADJOINT: str = "Σ fails adjoint checks"
    LEVI_HOLDS: str = "subclass closure is nontrivial"
    Q_OUT_OF_RANGE: str = "q must lie in (0,1)"
    NON_INTEGER: str = "valuation is not integer-valued"
    NOT_POSITIVE: str = "c must be positive"

    # Adjuntos
    GROUND_MISMATCH: str = "ground-set mismatch"
    NOT_REALIZING: str = "configuration does not realize a simple matroid"
    DEGENERATE_MATRIX: str = "degenerate matrix"
    COFACTOR_VIOLATION: str = "cofactor formula ({k}) violated"
    NOT_ADJOINT: str = "W is not an adjoint of M"
    FORM_MISMATCH: str = "Σ form mismatch"
    BAD_ORDER: str = "order is not a permutation of the (d-1)-subsets"
    DIMENSION_MISMATCH: str = "unexpected dimension {dim}"

    # Lorentz
    NOT_HOMOGENEOUS: str = "polynomial is not homogeneous"
    NEGATIVE_COEFF: str = "coefficients must be nonnegative"
    DEGREE_MISMATCH: str = "degree mismatch"
    ZERO_SLICE: str = "f0 = 0"
    POLARIZE_BOUND: str = "degree bound violated"
    RANK_DEFICIENT: str = "rank-deficient matrix"
    ZERO_POLY: str = "polynomial is zero"
    SUPPORT_MISMATCH: str = "polynomial support differs from the bases of M"
    NOT_PROPER_POSITION: str = "pair is not in Lorentzian proper position"
    NOT_QUOTIENT: str = "θ is not an elementary quotient of μ"
    BAD_EXPONENT: str = "exponent must be a tuple of n nonnegative integers"

    # CLI
    UNKNOWN_VERB: str = "unknown verb: {verb}"
    UNKNOWN_BUILTIN: str = "unknown builtin: {name}"
    MALFORMED_JSON: str = "malformed JSON at line {line}, column {col}"
    NOT_A_HYPERPLANE: str = "not a hyperplane: {label}"
    BAD_Q_VALUES: str = "invalid q values: {erros}"
    BAD_COFACTOR_INPUTS: str = "cofactor-verify expects a matrix or a pair (μ, Σ)"

    # Polinômios
    MALFORMED_POLYNOMIAL: str = "malformed polynomial: {detail}"
    POLYNOMIAL_OUTSIDE_VARS: str = "malformed polynomial: variables outside w1..w{n}"
    NON_RATIONAL_COEFFICIENT: str = "malformed polynomial: non-rational coefficient"


# =============================================================================
# CONFIGURAÇÕES DE EXPORTAÇÃO
# =============================================================================

@dataclass(frozen=True)
class ExportConfig:
    """Configurações para exportação de relatórios."""

    # Configurações CSV
    CSV_SEPARATOR: str = ";"
    CSV_ENCODING: str = "utf-8-sig"

    # Configurações Excel
    EXCEL_ENGINE: str = "openpyxl"
    EXCEL_SHEET_NAME: str = "Relatorio"

    # Configurações JSON
    JSON_INDENT: int = 2


# =============================================================================
# INSTÂNCIAS GLOBAIS (para importação direta)
# =============================================================================

settings = Settings()
paths = Paths()
limits = Limits()
logging_config = LoggingConfig()
messages = Messages()
export_config = ExportConfig()


# =============================================================================
# FUNÇÕES UTILITÁRIAS
# =============================================================================

def validate_config() -> Tuple[bool, List[str]]:
    """Valida se as configurações estão consistentes.

    Returns:
        Tuple contendo (sucesso, lista de erros)
    """
    errors = []

    if limits.SIZE_BOUND < 1:
        errors.append("SIZE_BOUND deve ser positivo")

    if limits.MAX_BRUTE_FORCE_SETS < 1:
        errors.append("MAX_BRUTE_FORCE_SETS deve ser positivo")

    if not all(0 < q < 1 for q in limits.DEFAULT_Q_VALUES):
        errors.append("DEFAULT_Q_VALUES deve estar em (0,1)")

    if export_config.EXCEL_ENGINE != "openpyxl":
        errors.append("EXCEL_ENGINE suportado: openpyxl")

    return len(errors) == 0, errors


# Valida as configurações ao importar o módulo
_is_valid, _errors = validate_config()
if not _is_valid:
    import warnings
    warnings.warn(f"Configurações inconsistentes: {_errors}")
