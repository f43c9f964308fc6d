"""Applicative patterns with recursive, union and application types.

The package covers matching and reduction, contractive μ-types, two
interchangeable engines for subtyping and equivalence, pattern compatibility
and a syntax-directed type checker.
"""
from capc.types import (  # noqa: F401
    Arrow,
    Atom,
    Comp,
    DVar,
    Mu,
    SortError,
    TVar,
    Union,
    check_sort,
    is_contractive,
    is_datatype,
    lookup,
    mu,
    truncate,
    tree_eq,
    tree_sub,
)
from capc.relations import Engine, equivalent, subtype  # noqa: F401

__version__ = "0.1.0"
