"""Facade-level checks with hand-computed frozen values."""

import numpy as np
import pytest

from semires.errors import InputError
from semires.exactlin import (
    FieldSpec,
    Matrix,
    image_basis,
    kernel_basis,
    quotient_map,
    rref,
    solve,
    subspace_intersection,
)

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
QQ = FieldSpec.rationals()


def test_rref_frozen():
    z = Matrix.zeros(F5, 2, 2)
    r, piv = rref(z)
    assert r.tolist() == [[0, 0], [0, 0]] and list(piv) == []
    i3 = Matrix.identity(F5, 3)
    r, piv = rref(i3)
    assert r.tolist() == i3.tolist() and list(piv) == [0, 1, 2]
    m = Matrix.from_rows(F5, [[2, 4], [1, 2]])
    r, piv = rref(m)
    assert r.tolist() == [[1, 2], [0, 0]]
    assert list(piv) == [0]


def test_rref_idempotent():
    rng = np.random.default_rng(5)
    for field in (F2, F5):
        for _ in range(20):
            m = Matrix(field, rng.integers(0, field.p, size=(4, 5), dtype=np.int64))
            r, _ = rref(m)
            r2, _ = rref(r)
            assert r.tolist() == r2.tolist()


def test_kernel_frozen():
    assert kernel_basis(Matrix.identity(F2, 2)).cols == 0
    k = kernel_basis(Matrix.zeros(F2, 2, 3))
    assert k.cols == 3 and k.rank() == 3
    k = kernel_basis(Matrix.from_rows(F2, [[1, 1]]))
    assert k.tolist() == [[1], [1]]


def test_rank_nullity_random():
    rng = np.random.default_rng(9)
    for field in (F3, QQ):
        for _ in range(20):
            data = rng.integers(-3, 4, size=(3, 6))
            m = Matrix(field, data) if field.is_prime_field \
                else Matrix.from_rows(field, data.tolist())
            assert m.cols == m.rank() + kernel_basis(m).cols


def test_solve_frozen():
    m = Matrix.from_rows(F3, [[1, 1], [0, 1]])
    b = Matrix.column(F3, [1, 1])
    x = solve(m, b)
    assert x.tolist() == [[0], [1]]
    assert solve(Matrix.zeros(F3, 2, 2), b) is None


def test_solve_exact_on_image():
    rng = np.random.default_rng(12)
    for _ in range(25):
        m = Matrix(F5, rng.integers(0, 5, size=(4, 3), dtype=np.int64))
        y = Matrix(F5, rng.integers(0, 5, size=(3, 1), dtype=np.int64))
        b = m @ y
        x = solve(m, b)
        assert x is not None
        assert (m @ x).tolist() == b.tolist()


def test_quotient_map_frozen():
    u = Matrix.column(F5, [1, 0])
    q, s = quotient_map(2, u)
    assert q.tolist() == [[0, 1]]
    assert s.tolist() == [[0], [1]]
    assert (q @ s).tolist() == [[1]]
    assert (q @ u).tolist() == [[0]]


def test_quotient_map_guards():
    u = Matrix.column(F5, [1, 0])
    with pytest.raises(InputError):
        quotient_map(3, u)
    dep = Matrix.from_rows(F5, [[1, 2], [2, 4]])
    with pytest.raises(InputError):
        quotient_map(2, dep)


def test_subspace_intersection_frozen():
    a = Matrix.column(F5, [1, 0])
    b = Matrix.column(F5, [0, 1])
    assert subspace_intersection(a, b).cols == 0
    assert image_basis(Matrix.from_rows(F5, [[2, 4], [1, 2]])).cols == 1
