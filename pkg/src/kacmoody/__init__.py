"""Exact computations with symmetrizable Kac-Moody algebras, their standard graded
modules, pro-unipotent groups and complete imaginary root groups."""

from .cartan import GCM, classify, realization, validate
from .errors import KMError
from .groups import (
    ChiReal,
    ExpPos,
    RootAlgebra,
    Torus,
    UnipotentElement,
    WTilde,
    bch,
    commutator_coeffs,
    evaluate_word,
    factorize_ordered,
    magnus_embedding,
    root_group_element,
    unipotent,
)
from .liealg import AlgebraElement, GradedAlgebra, build_graded_algebra, peterson_mult
from .modules import adjoint_module, verma_module
from .prosum import exp_apply, exp_operator, smear_decompose

__version__ = "0.1.0"

__all__ = [
    "GCM",
    "AlgebraElement",
    "ChiReal",
    "ExpPos",
    "GradedAlgebra",
    "KMError",
    "RootAlgebra",
    "Torus",
    "UnipotentElement",
    "WTilde",
    "adjoint_module",
    "bch",
    "build_graded_algebra",
    "classify",
    "commutator_coeffs",
    "evaluate_word",
    "exp_apply",
    "exp_operator",
    "factorize_ordered",
    "magnus_embedding",
    "peterson_mult",
    "realization",
    "root_group_element",
    "smear_decompose",
    "unipotent",
    "validate",
    "verma_module",
]
