"""Exact computations with support tau-tilting pairs over bound quiver algebras."""

from .algebra import AlgebraError, Arrow, BoundQuiverAlgebra, Quiver, Relation, build_algebra
from .formats import AlgebraParseError, bundled, format_algebra, load_algebra, parse_algebra
from .homology import GpVerdict, gi_verdict, gp_verdict, tau, tau_inverse, transpose
from .linalg import QQ, Matrix, PrimeField
from .modules import Representation, decompose, hom, injective, is_isomorphic, projective, simple
from .tilting import (
    SupportTauTiltingPair,
    bongartz_completion,
    check_pair,
    check_support_tau_tilting,
    cm_tau_finiteness,
    dagger,
    enumerate_exchange_graph,
    mutate,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "AlgebraParseError", "Arrow", "BoundQuiverAlgebra", "GpVerdict", "Matrix", "PrimeField", "QQ",
    "Quiver", "Relation", "Representation", "SupportTauTiltingPair", "bongartz_completion", "build_algebra",
    "bundled", "check_pair", "check_support_tau_tilting", "cm_tau_finiteness", "dagger", "decompose",
    "enumerate_exchange_graph", "format_algebra", "gi_verdict", "gp_verdict", "hom", "injective", "is_isomorphic",
    "load_algebra", "mutate", "parse_algebra", "projective", "simple", "tau", "tau_inverse", "transpose",
]
