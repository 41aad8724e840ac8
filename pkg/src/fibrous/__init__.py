"""Euler characteristic of spaces described by fibrous decompositions."""

from .catalog import BUILTIN, Catalog, CatalogEntry, Param, builtin_catalog, lookup
from .dsl import parse, render, tokenize
from .errors import (
    ArityError,
    ComplexError,
    DomainError,
    ExpansionDepthError,
    FibrousError,
    ParseError,
    ResolutionError,
    SchemaError,
    TermError,
    UnknownNameError,
)
from .evaluate import ChiDerivation, Evaluator, Rule, chi, expand, fibrous_rank
from .homology import (
    CwSkeleton,
    IntegerMatrix,
    SimplicialComplex,
    SnfResult,
    betti_numbers,
    boundary_matrix,
    chi_by_betti,
    chi_by_cells,
    chi_by_faces,
    close_and_validate,
    homology,
    smith_normal_form,
)
from .terms import CatalogRef, Decomp, Finite, FibrousDecomposition, Multiple, SpaceTerm, Sum

__version__ = "0.1.0"
