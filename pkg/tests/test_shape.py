"""Tests for shapes, their category algebras, and stalk resolutions.

Hom dimensions and the object permutation below are worked out by hand
from the convention that the step lowers the object index.
"""

import numpy as np
import pytest

from semires.algebra import (
    Module,
    QuiverAlgebra,
    min_projective_resolution,
    projective,
    simple,
)
from semires.errors import InputError
from semires.fields import FieldSpec
from semires.matrix import Matrix
from semires.shape import (
    Shape,
    TRIVIAL_VERTEX,
    base_arrow_name,
    category_algebra,
    shape_algebra,
    slice_module,
    stalk_resolution,
    stalk_spine,
    step_arrow_name,
    step_path_arrows,
    trivial_algebra,
)

F2 = FieldSpec.prime(2)
F5 = FieldSpec.prime(5)


def test_shape_validation():
    with pytest.raises(InputError):
        Shape(0, 2)
    with pytest.raises(InputError):
        Shape(3, 1)


def test_loop_shape_homs():
    s = Shape.loop()
    assert s.num_objects == 1 and s.nilpotency == 2
    assert s.hom_dim(0, 0) == 2
    assert s.hom_powers(0, 0) == [0, 1]
    assert s.serre(0) == 0
    assert s.is_loop


def test_cyclic_3_2_homs_frozen():
    s = Shape.cyclic(3, 2)
    assert s.hom_dim(0, 0) == 1
    assert s.hom_dim(0, 1) == 0
    assert s.hom_dim(0, 2) == 1
    assert s.hom_powers(0, 2) == [1]
    assert s.serre(0) == 2
    assert s.serre(1) == 0


def test_cyclic_2_3_homs_frozen():
    s = Shape.cyclic(2, 3)
    # powers 0..2; from 0: 0 and 2 land at 0, 1 lands at 1
    assert s.hom_powers(0, 0) == [0, 2]
    assert s.hom_powers(0, 1) == [1]
    assert s.serre(0) == 0
    assert s.serre(1) == 1


def test_serre_duality_many_shapes():
    for (m, n) in [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (4, 3), (5, 4), (1, 5)]:
        s = Shape.cyclic(m, n)
        for p in s.objects:
            for q in s.objects:
                assert s.hom_dim(p, q) == s.hom_dim(q, s.serre(p))
        assert sum(s.hom_dim(p, q) for p in s.objects for q in s.objects) == m * n


def test_shape_algebra_dims():
    assert shape_algebra(Shape.loop(), F5).dim == 2
    assert shape_algebra(Shape.cyclic(3, 2), F5).dim == 6
    assert shape_algebra(Shape.cyclic(2, 3), F5).dim == 6
    assert shape_algebra(Shape.cyclic(4, 3), F2).dim == 12


def test_shape_algebra_projectives_frozen():
    lam = shape_algebra(Shape.cyclic(3, 2), F5)
    p2 = projective(lam, (2, TRIVIAL_VERTEX))
    assert p2.dims[(2, TRIVIAL_VERTEX)] == 1
    assert p2.dims[(1, TRIVIAL_VERTEX)] == 1
    assert p2.dims[(0, TRIVIAL_VERTEX)] == 0

    loop_alg = shape_algebra(Shape.loop(), F5)
    p = projective(loop_alg, (0, TRIVIAL_VERTEX))
    assert p.dims[(0, TRIVIAL_VERTEX)] == 2
    assert p.maps[step_arrow_name(0, TRIVIAL_VERTEX)].tolist() == [[0, 0], [1, 0]]


def a2(field=F5):
    return QuiverAlgebra(field, [1, 2], [("a", 1, 2)])


def triangle(field=F5):
    return QuiverAlgebra(field, [1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 1, 3)])


def test_category_algebra_dims_frozen():
    assert category_algebra(Shape.loop(), a2()).dim == 6
    assert category_algebra(Shape.cyclic(3, 2), a2()).dim == 18
    assert category_algebra(Shape.cyclic(2, 3), triangle()).dim == 42


def test_category_algebra_projective_dim():
    lam = category_algebra(Shape.loop(), a2())
    p = projective(lam, (0, 1))
    # hom out of the object (2 step powers) times paths out of base vertex 1
    assert p.total_dim() == 4


def test_loop_category_module_valid():
    lam = category_algebra(Shape.loop(), a2())
    good = Module(lam, {(0, 1): 1, (0, 2): 1}, {
        step_arrow_name(0, 1): Matrix.from_rows(F5, [[0]]),
        step_arrow_name(0, 2): Matrix.from_rows(F5, [[0]]),
        base_arrow_name("a", 0): Matrix.from_rows(F5, [[1]]),
    })
    assert good.total_dim() == 2


def test_commutation_relation_catches_mismatch():
    lam = category_algebra(Shape.cyclic(2, 2), a2())
    dims = {(0, 1): 1, (1, 1): 1, (0, 2): 1, (1, 2): 1}
    maps = {
        step_arrow_name(1, 1): Matrix.from_rows(F5, [[1]]),
        step_arrow_name(1, 2): Matrix.from_rows(F5, [[2]]),
        base_arrow_name("a", 1): Matrix.from_rows(F5, [[1]]),
        base_arrow_name("a", 0): Matrix.from_rows(F5, [[1]]),
    }
    with pytest.raises(InputError):
        Module(lam, dims, maps)
    maps[step_arrow_name(1, 2)] = Matrix.from_rows(F5, [[1]])
    assert Module(lam, dims, maps).total_dim() == 4


def test_step_path_arrows_wraps():
    s = Shape.cyclic(2, 3)
    assert step_path_arrows(s, 0, 3) == (
        step_arrow_name(0, TRIVIAL_VERTEX),
        step_arrow_name(1, TRIVIAL_VERTEX),
        step_arrow_name(0, TRIVIAL_VERTEX),
    )


def test_stalk_spine_frozen():
    s = Shape.cyclic(2, 3)
    objects, powers = stalk_spine(s, 0, 4)
    assert powers == [1, 2, 1, 2]
    assert objects == [0, 1, 1, 0, 0]

    t = Shape.cyclic(3, 2)
    objects, powers = stalk_spine(t, 1, 4)
    assert powers == [1, 1, 1, 1]
    assert objects == [1, 0, 2, 1, 0]


@pytest.mark.parametrize("m,n", [(1, 2), (2, 3), (3, 2), (3, 3)])
def test_stalk_resolution_exact(m, n):
    shape = Shape.cyclic(m, n)
    field = F5
    terms = 6
    aug, diffs = stalk_resolution(shape, field, 0, terms)
    assert aug.is_surjective()
    # composites vanish
    assert (aug @ diffs[0]).is_zero()
    for i in range(len(diffs) - 1):
        assert (diffs[i] @ diffs[i + 1]).is_zero()
    # exactness by rank counting
    aug_rank = sum(b.rank() for b in aug.blocks.values())
    d_ranks = [sum(b.rank() for b in d.blocks.values()) for d in diffs]
    p_dims = [aug.source.total_dim()] + [d.source.total_dim() for d in diffs]
    assert d_ranks[0] == p_dims[0] - aug_rank
    for i in range(len(diffs) - 1):
        assert d_ranks[i + 1] == p_dims[i + 1] - d_ranks[i]


@pytest.mark.parametrize("m,n", [(2, 3), (3, 2)])
def test_stalk_resolution_matches_generic_machinery(m, n):
    shape = Shape.cyclic(m, n)
    alg = shape_algebra(shape, F2)
    s = simple(alg, (0, TRIVIAL_VERTEX))
    aug, diffs = min_projective_resolution(s, 4)
    spine_aug, spine_diffs = stalk_resolution(shape, F2, 0, 4)
    assert aug.source.dim_vector() == spine_aug.source.dim_vector()
    for d, sd in zip(diffs, spine_diffs):
        assert d.source.dim_vector() == sd.source.dim_vector()


def test_slice_module_roundtrip():
    shape = Shape.cyclic(2, 2)
    steps = {
        0: Matrix.from_rows(F5, [[0, 0], [1, 0]]),
        1: Matrix.from_rows(F5, [[0, 0], [1, 0]]),
    }
    m = slice_module(shape, F5, {0: 2, 1: 2}, steps)
    assert m.total_dim() == 4
    assert m.maps[step_arrow_name(0, TRIVIAL_VERTEX)] == steps[0]
    # nilpotency must hold
    bad = {0: Matrix.from_rows(F5, [[1, 0], [0, 1]]),
           1: Matrix.from_rows(F5, [[1, 0], [0, 1]])}
    with pytest.raises(InputError):
        slice_module(shape, F5, {0: 2, 1: 2}, bad)


def test_trivial_algebra_cached():
    assert trivial_algebra(F5) is trivial_algebra(F5)
    assert trivial_algebra(F5).dim == 1
