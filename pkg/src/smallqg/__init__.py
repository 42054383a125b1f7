"""Exact construction and comparison of generalized small quantum groups."""

from __future__ import annotations

from .datum import Datum, enumerate_data, load_triple, load_triple_file
from .groups import AbelianGroup, GroupAlgElem
from .isomorphy import IsoTriple, Undecided, decide, find_isomorphisms, iso_constants, solve_monomial, soundness
from .kalgebra import KAlgebra, build_ufamily, coproduct_constants, u_alpha
from .scalars import CycScalar, make_context
from .uqgroup import UAlgebra, build_u, cauchy_check, verify_hopf

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CycScalar",
    "Datum",
    "GroupAlgElem",
    "IsoTriple",
    "KAlgebra",
    "UAlgebra",
    "Undecided",
    "build_u",
    "build_ufamily",
    "cauchy_check",
    "coproduct_constants",
    "decide",
    "enumerate_data",
    "find_isomorphisms",
    "iso_constants",
    "load_triple",
    "load_triple_file",
    "make_context",
    "solve_monomial",
    "soundness",
    "u_alpha",
    "verify_hopf",
]
