"""Indexing shapes for periodic complexes, and their category algebras.

A shape has m objects arranged in a cycle and a step endofunctor that
lowers the object index by one (mod m), with the composite of N steps
equal to zero. The classical differential-module case is m = 1, N = 2.
A hom space between two objects is spanned by the step powers ell in
[0, N) with ell congruent to the index difference mod m.

The category algebra of a shape over a base algebra A is the path
algebra of the product quiver: one vertex (o, v) per object o and base
vertex v, a step arrow (o, v) -> (o - 1, v) for every vertex, a copy of
every base arrow at every object, with relations forcing step nilpotency,
the base relations, and commutation of steps past base arrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Module, ModuleMap, QuiverAlgebra, simple
from .errors import InputError
from .matrix import Matrix


@dataclass(frozen=True)
class Shape:
    num_objects: int
    nilpotency: int

    def __post_init__(self):
        if self.num_objects < 1:
            raise InputError("shape needs at least one object")
        if self.nilpotency < 2:
            raise InputError("step nilpotency must be at least 2")

    @classmethod
    def loop(cls) -> "Shape":
        return cls(1, 2)

    @classmethod
    def cyclic(cls, m: int, n: int) -> "Shape":
        return cls(m, n)

    @property
    def objects(self):
        return range(self.num_objects)

    @property
    def is_loop(self) -> bool:
        return self.num_objects == 1 and self.nilpotency == 2

    def step(self, o: int) -> int:
        return (o - 1) % self.num_objects

    def shift(self, o: int, ell: int) -> int:
        return (o - ell) % self.num_objects

    def hom_powers(self, p: int, q: int):
        """Step powers spanning the hom space from p to q."""
        m = self.num_objects
        return [ell for ell in range(self.nilpotency) if (p - ell - q) % m == 0]

    def hom_dim(self, p: int, q: int) -> int:
        return len(self.hom_powers(p, q))

    def serre(self, q: int) -> int:
        """Object permutation with hom_dim(p, q) == hom_dim(q, serre(p))."""
        return (q - (self.nilpotency - 1)) % self.num_objects

    def amplitudes(self):
        return range(1, self.nilpotency)

    def __str__(self):
        if self.is_loop:
            return "loop"
        return f"cyclic({self.num_objects},{self.nilpotency})"


TRIVIAL_VERTEX = "*"


@lru_cache(maxsize=None)
def trivial_algebra(field) -> QuiverAlgebra:
    return QuiverAlgebra(field, [TRIVIAL_VERTEX], [])


def step_arrow_name(o: int, v) -> str:
    return f"step|{o}|{v}"


def base_arrow_name(name: str, o: int) -> str:
    return f"{name}|{o}"


def step_path_arrows(shape: Shape, o: int, length: int, v=TRIVIAL_VERTEX):
    """Arrow names of the length-fold step path starting at object o."""
    out = []
    cur = o
    for _ in range(length):
        out.append(step_arrow_name(cur, v))
        cur = shape.step(cur)
    return tuple(out)


@lru_cache(maxsize=None)
def category_algebra(shape: Shape, base: QuiverAlgebra) -> QuiverAlgebra:
    """Path-algebra presentation of the product of a shape with a base."""
    m, n = shape.num_objects, shape.nilpotency
    strs = [str(v) for v in base.vertices]
    if len(set(strs)) != len(strs):
        raise InputError("base vertex labels must stringify distinctly")
    for name, _s, _t in base.arrows:
        if "|" in name:
            raise InputError("base arrow names may not contain '|'")

    vertices = [(o, v) for o in shape.objects for v in base.vertices]
    arrows = []
    for o in shape.objects:
        for v in base.vertices:
            arrows.append((step_arrow_name(o, v), (o, v), (shape.step(o), v)))
        for name, s, t in base.arrows:
            arrows.append((base_arrow_name(name, o), (o, s), (o, t)))

    relations = []
    one = base.field.one()
    for o in shape.objects:
        for v in base.vertices:
            relations.append([(one, step_path_arrows(shape, o, n, v))])
        for rel in base.relations:
            relations.append(
                [(c, tuple(base_arrow_name(a, o) for a in arrs)) for c, arrs in rel]
            )
        for name, s, t in base.arrows:
            relations.append([
                (one, (base_arrow_name(name, o), step_arrow_name(o, t))),
                (base.field.neg(one), (step_arrow_name(o, s),
                                       base_arrow_name(name, shape.step(o)))),
            ])
    return QuiverAlgebra(base.field, vertices, arrows, relations)


def shape_algebra(shape: Shape, field) -> QuiverAlgebra:
    """The category algebra of the shape alone."""
    return category_algebra(shape, trivial_algebra(field))


def slice_module(shape: Shape, field, dims_by_object, steps_by_object) -> Module:
    """Bundle one space per object with its step maps into a module over
    the shape algebra."""
    alg = shape_algebra(shape, field)
    dims = {(o, TRIVIAL_VERTEX): dims_by_object.get(o, 0) for o in shape.objects}
    maps = {}
    for o in shape.objects:
        mt = steps_by_object.get(o)
        if mt is not None:
            maps[step_arrow_name(o, TRIVIAL_VERTEX)] = mt
    return Module(alg, dims, maps)


def stalk_spine(shape: Shape, q: int, terms: int):
    """Leading objects and connecting step powers of the standard
    resolution of the one-point module at q.

    Returns ([o_0, ..., o_terms], [c_1, ..., c_terms]) where o_0 = q and
    the i-th map is right multiplication by the c_i-fold step out of o_i.
    Powers alternate 1, N-1, 1, N-1, ...
    """
    n = shape.nilpotency
    objects = [q % shape.num_objects]
    powers = []
    for i in range(terms):
        c = 1 if i % 2 == 0 else n - 1
        powers.append(c)
        objects.append(shape.shift(objects[-1], c))
    return objects, powers


def stalk_resolution(shape: Shape, field, q: int, terms: int):
    """Initial segment of the projective resolution of the one-point
    module at q over the shape algebra.

    Returns (augmentation P_0 -> S_q, [P_1 -> P_0, ..., P_terms -> ...]).
    The identity path comes first in each projective's basis, so the
    augmentation row picks coordinate zero at the peak vertex.
    """
    from .algebra import path_right_multiplication, projective

    alg = shape_algebra(shape, field)
    objects, powers = stalk_spine(shape, q, terms)
    peak = (objects[0], TRIVIAL_VERTEX)
    s_q = simple(alg, peak)
    p0 = projective(alg, peak)
    row = Matrix.zeros(field, 1, p0.dims[peak]).copy_data()
    row[0, 0] = field.one()
    aug = ModuleMap(p0, s_q, {peak: Matrix(field, row)})
    diffs = []
    for i, c in enumerate(powers):
        start = objects[i]
        path = ((start, TRIVIAL_VERTEX), step_path_arrows(shape, start, c))
        diffs.append(path_right_multiplication(alg, path))
    return aug, diffs
