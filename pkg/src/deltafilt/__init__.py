"""Homological systems and Delta-filtered modules over bound quiver algebras on GF(p).

The main entry points::

    from deltafilt import HomologicalSystem, check_system, normalize, h_filtration_canonical
"""
from .ext import ExtSpace, ShortExactSequence, build_extension, ext_dim, ext_space
from .filtration import (Filtration, HFiltration, additivity_check, check_uniqueness, decompose_summands,
                         h_filtration_canonical, h_filtration_from, multiplicities, normalize, verify_filtration)
from .linalg import PrimeField, Subspace
from .modules import (BoundQuiverAlgebra, ModuleMap, Quiver, Representation, SearchExhausted, Submodule,
                      direct_sum, hom_dim, hom_space, iso_test, projective, simple)
from .preorder import Preorder, height, quotient
from .system import HomologicalSystem, check_system, height_consequences

__all__ = [
    "BoundQuiverAlgebra",
    "ExtSpace",
    "Filtration",
    "HFiltration",
    "HomologicalSystem",
    "ModuleMap",
    "Preorder",
    "PrimeField",
    "Quiver",
    "Representation",
    "SearchExhausted",
    "ShortExactSequence",
    "Submodule",
    "Subspace",
    "additivity_check",
    "build_extension",
    "check_system",
    "check_uniqueness",
    "decompose_summands",
    "direct_sum",
    "ext_dim",
    "ext_space",
    "h_filtration_canonical",
    "h_filtration_from",
    "height",
    "height_consequences",
    "hom_dim",
    "hom_space",
    "iso_test",
    "multiplicities",
    "normalize",
    "projective",
    "quotient",
    "simple",
    "verify_filtration",
]

__version__ = "0.1.0"
