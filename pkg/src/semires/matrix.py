"""Exact dense matrices over a FieldSpec, with canonical echelon conventions.

Prime-field matrices are int64 numpy arrays with entries in [0, p) and go
through the backend kernels in :mod:`semires.kernels`. Rational matrices are
object arrays of ``Fraction`` and are reduced in pure Python. Both lanes
share one calling surface so nothing above this module branches on the field.

Canonicality contract used throughout the package:

  * ``rref`` uses leftmost-pivot, leading-one reduction, so the reduced form
    and pivot set of a matrix are unique;
  * ``kernel_basis`` is the standard free-column basis read off the rref, in
    ascending free-column order;
  * ``column_space`` returns the unique rref-form basis of the column span
    (rref of the transpose, nonzero rows), so equal subspaces give equal
    matrices;
  * ``solve`` returns the particular solution with every free variable zero.

Everything downstream inherits bit-for-bit reproducibility from these rules.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels
from .errors import InputError
from .fields import FieldSpec


def _obj_array(rows, cols, values=None):
    a = np.empty((rows, cols), dtype=object)
    if values is not None:
        for i in range(rows):
            for j in range(cols):
                a[i, j] = values[i][j]
    else:
        a.fill(Fraction(0))
    return a


class Matrix:
    """Immutable exact matrix. Maps act on column vectors: shape is
    (dim target, dim source)."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data: np.ndarray):
        self.field = field
        if data.ndim != 2:
            raise InputError(f"matrix data must be 2-dimensional, got shape {data.shape}")
        self.rows, self.cols = data.shape
        self.data = data
        data.flags.writeable = False

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "Matrix":
        rows = list(rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise InputError("ragged matrix rows")
        if field.is_prime_field:
            a = np.zeros((len(rows), ncols), dtype=np.int64)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    a[i, j] = field.coerce(x)
        else:
            a = _obj_array(len(rows), ncols, [[field.coerce(x) for x in r] for r in rows])
        return cls(field, a)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        if field.is_prime_field:
            return cls(field, np.zeros((rows, cols), dtype=np.int64))
        return cls(field, _obj_array(rows, cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        if field.is_prime_field:
            return cls(field, np.eye(n, dtype=np.int64))
        a = _obj_array(n, n)
        for i in range(n):
            a[i, i] = Fraction(1)
        return cls(field, a)

    @classmethod
    def column(cls, field: FieldSpec, entries) -> "Matrix":
        return cls.from_rows(field, [[x] for x in entries])

    def _wrap(self, data: np.ndarray) -> "Matrix":
        return Matrix(self.field, data)

    def copy_data(self) -> np.ndarray:
        return self.data.copy()

    # -- basic algebra ----------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise InputError("field mismatch in matrix product")
        if self.cols != other.rows:
            raise InputError(
                f"shape mismatch in product: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        if self.field.is_prime_field:
            return self._wrap(kernels.matmul_mod(self.data, other.data, self.field.p))
        out = np.dot(self.data, other.data)
        if out.dtype != object:
            out = _obj_array(self.rows, other.cols)
        if self.cols == 0:
            out = _obj_array(self.rows, other.cols)
        return self._wrap(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        if self.field.is_prime_field:
            return self._wrap((self.data + other.data) % self.field.p)
        return self._wrap(self.data + other.data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        if self.field.is_prime_field:
            return self._wrap((self.data - other.data) % self.field.p)
        return self._wrap(self.data - other.data)

    def __neg__(self) -> "Matrix":
        if self.field.is_prime_field:
            return self._wrap((-self.data) % self.field.p)
        return self._wrap(-self.data)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        if self.field.is_prime_field:
            return self._wrap((self.data * c) % self.field.p)
        return self._wrap(self.data * c)

    def _check_same_shape(self, other: "Matrix"):
        if self.field != other.field or (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("matrix shape/field mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and (self.rows, self.cols) == (other.rows, other.cols)
            and bool(np.array_equal(self.data, other.data))
        )

    __hash__ = None

    def transpose(self) -> "Matrix":
        return self._wrap(np.ascontiguousarray(self.data.T))

    def is_zero(self) -> bool:
        if self.data.size == 0:
            return True
        if self.field.is_prime_field:
            return not self.data.any()
        return all(x == 0 for x in self.data.flat)

    def entry(self, i: int, j: int):
        return self.data[i, j]

    def col(self, j: int) -> "Matrix":
        return self._wrap(np.ascontiguousarray(self.data[:, j : j + 1]))

    def take_columns(self, idx) -> "Matrix":
        return self._wrap(np.ascontiguousarray(self.data[:, list(idx)]))

    def tolist(self):
        return [[x for x in row] for row in self.data]

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    # -- stacking ---------------------------------------------------------

    @staticmethod
    def hstack(mats) -> "Matrix":
        mats = list(mats)
        if not mats:
            raise InputError("hstack of nothing")
        field = mats[0].field
        rows = mats[0].rows
        for m in mats:
            if m.field != field or m.rows != rows:
                raise InputError("hstack mismatch")
        return Matrix(field, np.hstack([m.data for m in mats]))

    @staticmethod
    def vstack(mats) -> "Matrix":
        mats = list(mats)
        if not mats:
            raise InputError("vstack of nothing")
        field = mats[0].field
        cols = mats[0].cols
        for m in mats:
            if m.field != field or m.cols != cols:
                raise InputError("vstack mismatch")
        return Matrix(field, np.vstack([m.data for m in mats]))

    @staticmethod
    def block_diag(field: FieldSpec, mats) -> "Matrix":
        mats = list(mats)
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = Matrix.zeros(field, rows, cols).copy_data()
        r = c = 0
        for m in mats:
            if m.field != field:
                raise InputError("block_diag field mismatch")
            out[r : r + m.rows, c : c + m.cols] = m.data
            r += m.rows
            c += m.cols
        return Matrix(field, out)

    # -- echelon machinery ------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        if self.field.is_prime_field:
            work = self.data.copy()
            piv, _rank = kernels.rref_mod(work, self.field.p)
            return self._wrap(work), tuple(int(c) for c in piv)
        rows = [list(r) for r in self.data]
        piv = _rref_frac(rows, self.cols)
        out = _obj_array(self.rows, self.cols, rows) if rows else _obj_array(0, self.cols)
        return self._wrap(out), tuple(piv)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Matrix":
        """Columns form the canonical basis of the right kernel."""
        r, piv = self.rref()
        free = [c for c in range(self.cols) if c not in piv]
        out = Matrix.zeros(self.field, self.cols, len(free)).copy_data()
        one = self.field.one()
        for k, f in enumerate(free):
            out[f, k] = one
            for i, pc in enumerate(piv):
                out[pc, k] = self.field.neg(r.data[i, f])
        return Matrix(self.field, out)

    def column_space(self) -> "Matrix":
        """Canonical basis of the column span; equal subspaces compare equal."""
        r, piv = self.transpose().rref()
        return Matrix(self.field, np.ascontiguousarray(r.data[: len(piv)].T))

    def row_space(self) -> "Matrix":
        r, piv = self.rref()
        return Matrix(self.field, np.ascontiguousarray(r.data[: len(piv)]))

    def solve(self, b: "Matrix") -> "Matrix | None":
        """Solve self @ x = b columnwise; None when inconsistent.

        The returned solution has all free variables equal to zero.
        """
        if b.rows != self.rows or b.field != self.field:
            raise InputError("solve shape/field mismatch")
        aug = Matrix.hstack([self, b])
        r, piv = aug.rref()
        n = self.cols
        if any(c >= n for c in piv):
            return None
        out = Matrix.zeros(self.field, n, b.cols).copy_data()
        for i, pc in enumerate(piv):
            out[pc, :] = r.data[i, n:]
        return Matrix(self.field, out)

    def solve_left(self, b: "Matrix") -> "Matrix | None":
        """Solve x @ self = b."""
        xt = self.transpose().solve(b.transpose())
        return None if xt is None else xt.transpose()

    def inverse(self) -> "Matrix | None":
        if self.rows != self.cols:
            return None
        return self.solve(Matrix.identity(self.field, self.rows))

    def is_injective_map(self) -> bool:
        return self.rank() == self.cols

    def is_surjective_map(self) -> bool:
        return self.rank() == self.rows

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def _rref_frac(rows: list[list[Fraction]], ncols: int) -> list[int]:
    piv = []
    r = 0
    m = len(rows)
    for c in range(ncols):
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    return piv


def kron(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise InputError("kron field mismatch")
    if a.field.is_prime_field:
        return Matrix(a.field, np.kron(a.data, b.data) % a.field.p)
    out = _obj_array(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.data[i, j]
            for k in range(b.rows):
                for l in range(b.cols):
                    out[i * b.rows + k, j * b.cols + l] = x * b.data[k, l]
    return Matrix(a.field, out)


def subspace_intersection(u: Matrix, v: Matrix) -> Matrix:
    """Canonical basis of span(u) intersected with span(v); bases as columns."""
    if u.field != v.field or u.rows != v.rows:
        raise InputError("subspace_intersection mismatch")
    paired = Matrix.hstack([u, -v])
    ker = paired.kernel_basis()
    coeff = Matrix(u.field, np.ascontiguousarray(ker.data[: u.cols, :]))
    return (u @ coeff).column_space()


def quotient_map(u: Matrix) -> tuple[Matrix, Matrix]:
    """Projection q with kernel exactly span(u), plus a section s, q @ s = id.

    u must have independent columns inside the ambient space of dimension
    u.rows. The quotient is realized on the complement coordinates of the
    pivot set of rref(u^T): q projects along span(u) onto those coordinates.
    """
    field = u.field
    n = u.rows
    r, piv = u.transpose().rref()
    if len(piv) != u.cols:
        raise InputError("quotient_map requires independent columns")
    free = [c for c in range(n) if c not in piv]
    q = Matrix.zeros(field, len(free), n).copy_data()
    s = Matrix.zeros(field, n, len(free)).copy_data()
    one = field.one()
    for j, f in enumerate(free):
        q[j, f] = one
        s[f, j] = one
        for i, pc in enumerate(piv):
            q[j, pc] = field.neg(r.data[i, f])
    return Matrix(field, q), Matrix(field, s)


def columns_contained_in(sub: Matrix, space: Matrix) -> bool:
    """Is every column of sub inside the column span of space?"""
    return space.solve(sub) is not None
