"""
Pacote tropmat: matroides, matroides valuadas e polinômios de Lorentz.

Módulos disponíveis:
    - errors: hierarquia TropMatError / InputError / SizeBoundError / HypothesisError
    - arith: valores tropicais, corpo de Laurent, corpos finitos e inércia exata
    - matroid: matroides em bitmask, subclasses lineares e reticulado de quocientes
    - valuated: matroides valuadas, Plücker, retas tropicais e bandeiras
    - dressian: espaço de quocientes, interpolação e testemunha de Levi
    - adjoint: adjuntos, cofatores generalizados e tropicalização
    - lorentzian: polinômios de Lorentz e funções M-convexas
    - builtins: objetos nomeados resolvidos pela CLI

Example:
    >>> from tropmat import vamos, levi_intersection_property
    >>> levi_intersection_property(vamos())[0]
    False
"""

from .errors import HypothesisError, InputError, SizeBoundError, TropMatError
from .matroid import Matroid, levi_intersection_property, uniform, vamos
from .valuated import ValuatedMatroid, check_plucker
from .lorentzian import HomPoly, MConvexFn, is_lorentzian, proper_position

__all__ = [
    'TropMatError', 'InputError', 'SizeBoundError', 'HypothesisError',
    'Matroid', 'uniform', 'vamos', 'levi_intersection_property',
    'ValuatedMatroid', 'check_plucker',
    'HomPoly', 'MConvexFn', 'is_lorentzian', 'proper_position',
]
