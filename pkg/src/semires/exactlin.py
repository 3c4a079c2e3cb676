"""Exact dense linear algebra facade: the substrate operations under
their stable public names.

Everything delegates to the Matrix type; these wrappers fix the
functional signatures other layers and external callers rely on. All
results are canonical, so equal inputs give bit-equal outputs.
"""

from __future__ import annotations

from .errors import InputError
from .fields import FieldSpec
from .matrix import Matrix, quotient_map as _quotient_map, subspace_intersection

__all__ = [
    "FieldSpec",
    "Matrix",
    "rref",
    "kernel_basis",
    "image_basis",
    "solve",
    "subspace_intersection",
    "quotient_map",
]


def rref(m: Matrix):
    """Reduced row echelon form and pivot columns."""
    return m.rref()


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of the right kernel."""
    return m.kernel_basis()


def image_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of the column space."""
    return m.column_space()


def solve(m: Matrix, b: Matrix):
    """Solve m @ x = b; None when inconsistent. Free variables zero."""
    return m.solve(b)


def quotient_map(ambient_dim: int, u: Matrix):
    """Projection with kernel span(u), plus a section.

    The ambient dimension is taken explicitly and checked against u;
    u's columns must be independent.
    """
    if u.rows != ambient_dim:
        raise InputError("quotient subspace does not live in the ambient space")
    if u.rank() != u.cols:
        raise InputError("quotient subspace columns are dependent")
    return _quotient_map(u)
