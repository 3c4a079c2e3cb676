"""Seeded random constructions of modules, diagrams, and maps.

Everything here is deterministic given a numpy Generator, so test runs
and the built-in self checks are reproducible. Modules over an arbitrary
algebra are drawn as quotients of finite sums of projectives, which
respects every relation by construction. Diagrams are drawn either from
a graded template (step raises an internal grade, so the N-fold step
dies) or, for termwise-injective ones, from chains of injectives shorter
than the nilpotency window; both are then conjugated by random
isomorphisms to hide the template.
"""

from __future__ import annotations

import numpy as np
from fractions import Fraction

from .algebra import (
    Module,
    ModuleMap,
    QuiverAlgebra,
    direct_sum as module_direct_sum,
    hom_basis,
    injective,
    projective,
    quotient_by,
    submodule_generated,
)
from .diagrams import Diagram, DiagramMap
from .errors import InputError
from .fields import FieldSpec
from .matrix import Matrix
from .shape import Shape


def rand_matrix(field: FieldSpec, rng, rows: int, cols: int) -> Matrix:
    if rows == 0 or cols == 0:
        return Matrix.zeros(field, rows, cols)
    if field.is_prime_field:
        return Matrix(field, rng.integers(0, field.p, size=(rows, cols), dtype=np.int64))
    data = np.array(
        [[Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
          for _ in range(cols)] for _ in range(rows)],
        dtype=object,
    )
    return Matrix(field, data)


def rand_module(alg: QuiverAlgebra, rng, gens: int = 2, cut_cols: int = 2) -> Module:
    """Random quotient of a random finite sum of projectives."""
    gens = max(1, gens)
    verts = [alg.vertices[int(rng.integers(0, len(alg.vertices)))] for _ in range(gens)]
    total, _i, _p = module_direct_sum([projective(alg, v) for v in verts])
    spans = {}
    for v in alg.vertices:
        k = int(rng.integers(0, cut_cols + 1))
        spans[v] = rand_matrix(alg.field, rng, total.dims[v], k)
    sub, incl = submodule_generated(total, spans)
    quot, _proj = quotient_by(incl)
    return quot


def rand_injective_module(alg: QuiverAlgebra, rng, max_mult: int = 2) -> Module:
    """Random sum of indecomposable injectives (possibly zero)."""
    pieces = []
    for v in alg.vertices:
        for _ in range(int(rng.integers(0, max_mult + 1))):
            pieces.append(injective(alg, v))
    if not pieces:
        return Module.zero(alg)
    total, _i, _p = module_direct_sum(pieces)
    return total


def rand_hom(m: Module, n: Module, rng) -> ModuleMap:
    """Random element of the hom space."""
    basis = hom_basis(m, n)
    out = ModuleMap.zero_map(m, n)
    field = m.algebra.field
    for b in basis:
        c = field.coerce(int(rng.integers(0, 5)))
        out = out + b.scale(c)
    return out


def rand_automorphism(m: Module, rng, attempts: int = 8) -> ModuleMap:
    """Random isomorphism of a module with itself. Falls back to the
    identity when rejection sampling runs out of attempts."""
    ident = ModuleMap.identity(m)
    for _ in range(attempts):
        t = ident + rand_hom(m, m, rng)
        if t.is_iso():
            return t
    return ident


def conjugate_diagram(x: Diagram, rng):
    """Replace each step D by T . D . T^{-1} for random per-object
    isomorphisms T; returns the new diagram and the iso old -> new."""
    shape, base = x.shape, x.base
    autos = {o: rand_automorphism(x.value_at(o), rng) for o in shape.objects}
    values = {o: x.value_at(o) for o in shape.objects}
    steps = {}
    for o in shape.objects:
        t_src = autos[o]
        t_tgt = autos[shape.step(o)]
        steps[o] = t_tgt @ x.step_map(o) @ t_src.inverse()
    y = Diagram.from_values(shape, base, values, steps)
    iso = DiagramMap.from_components(x, y, autos)
    return y, iso


def rand_graded_diagram(shape: Shape, base: QuiverAlgebra, rng,
                        gens: int = 1, cut_cols: int = 2) -> Diagram:
    """Random diagram from a graded template: each object carries modules
    in grades [0, N), the step raises the grade, so the N-fold composite
    vanishes. Conjugated afterwards to hide the grading."""
    n = shape.nilpotency
    grades = {}
    for o in shape.objects:
        grades[o] = [rand_module(base, rng, gens=gens, cut_cols=cut_cols)
                     if rng.integers(0, 3) > 0 else Module.zero(base)
                     for _ in range(n)]
    values = {}
    for o in shape.objects:
        total, _i, _p = module_direct_sum(grades[o])
        values[o] = total
    steps = {}
    for o in shape.objects:
        src_parts = grades[o]
        tgt_parts = grades[shape.step(o)]
        blocks_grid = [[None] * len(src_parts) for _ in range(len(tgt_parts))]
        for j, srcm in enumerate(src_parts):
            for i, tgtm in enumerate(tgt_parts):
                if i == j + 1:
                    blocks_grid[i][j] = rand_hom(srcm, tgtm, rng)
        steps[o] = _assemble_block_map(values[o], values[shape.step(o)],
                                       src_parts, tgt_parts, blocks_grid)
    x = Diagram.from_values(shape, base, values, steps)
    y, _iso = conjugate_diagram(x, rng)
    return y


def _assemble_block_map(src_total, tgt_total, src_parts, tgt_parts, grid) -> ModuleMap:
    field = src_total.algebra.field
    blocks = {}
    for v in src_total.algebra.vertices:
        rows = []
        for i, tgtm in enumerate(tgt_parts):
            row = []
            for j, srcm in enumerate(src_parts):
                g = grid[i][j]
                if g is None:
                    row.append(Matrix.zeros(field, tgtm.dims[v], srcm.dims[v]))
                else:
                    row.append(g.blocks[v])
            if row:
                rows.append(Matrix.hstack(row))
        if rows:
            blocks[v] = Matrix.vstack(rows)
        else:
            blocks[v] = Matrix.zeros(field, tgt_total.dims[v], src_total.dims[v])
    return ModuleMap(src_total, tgt_total, blocks, check=False)


def interval_diagram(shape: Shape, base: QuiverAlgebra, start: int,
                     chain, connectors) -> Diagram:
    """Diagram supported on a step chain: chain[j] sits at object
    start - j, connected by the given maps, chain no longer than N.

    With every chain module injective this is a termwise-injective
    diagram; the N-fold step dies because the window leaves the chain.
    """
    k = len(chain)
    if k > shape.nilpotency:
        raise InputError("chain longer than the nilpotency window")
    for j, f in enumerate(connectors):
        if f.source.dims != chain[j].dims or f.target.dims != chain[j + 1].dims:
            raise InputError("connector endpoints do not match the chain")
    slots = {o: [j for j in range(k) if (start - j) % shape.num_objects == o]
             for o in shape.objects}
    values = {}
    for o in shape.objects:
        parts = [chain[j] for j in slots[o]]
        if not parts:
            values[o] = Module.zero(base)
        else:
            total, _i, _p = module_direct_sum(parts)
            values[o] = total
    steps = {}
    for o in shape.objects:
        src_parts = [chain[j] for j in slots[o]]
        tgt_slots = slots[shape.step(o)]
        tgt_parts = [chain[j] for j in tgt_slots]
        grid = [[None] * len(src_parts) for _ in range(len(tgt_parts))]
        for jj, j in enumerate(slots[o]):
            if j + 1 < k and (j + 1) in tgt_slots:
                grid[tgt_slots.index(j + 1)][jj] = connectors[j]
        steps[o] = _assemble_block_map(values[o], values[shape.step(o)],
                                       src_parts, tgt_parts, grid)
    return Diagram.from_values(shape, base, values, steps)


def rand_termwise_injective_diagram(shape: Shape, base: QuiverAlgebra, rng,
                                    pieces: int = 2, max_mult: int = 1) -> Diagram:
    """Random sum of injective chains, conjugated by random isomorphisms."""
    from .diagrams import diagram_direct_sum
    parts = []
    for _ in range(max(1, pieces)):
        length = int(rng.integers(1, shape.nilpotency + 1))
        chain = []
        for _j in range(length):
            m = rand_injective_module(base, rng, max_mult=max_mult)
            chain.append(m)
        connectors = [rand_hom(chain[j], chain[j + 1], rng)
                      for j in range(length - 1)]
        start = int(rng.integers(0, shape.num_objects))
        parts.append(interval_diagram(shape, base, start, chain, connectors))
    total, _i, _p = diagram_direct_sum(parts)
    y, _iso = conjugate_diagram(total, rng)
    return y


def rand_exact_diagram(shape: Shape, base: QuiverAlgebra, rng,
                       pieces: int = 2) -> Diagram:
    """Random exact diagram: a sum of full-window chains with identity
    connectors (induced diagrams), conjugated."""
    from .diagrams import diagram_direct_sum, induce
    parts = []
    for _ in range(max(1, pieces)):
        m = rand_module(base, rng, gens=1, cut_cols=2)
        start = int(rng.integers(0, shape.num_objects))
        parts.append(induce(shape, base, start, m))
    total, _i, _p = diagram_direct_sum(parts)
    y, _iso = conjugate_diagram(total, rng)
    return y


def rand_diagram_map(x: Diagram, y: Diagram, rng) -> DiagramMap:
    from .diagrams import diagram_hom_basis
    basis = diagram_hom_basis(x, y)
    out = DiagramMap.zero_map(x, y)
    field = x.base.field
    for b in basis:
        out = out + b.scale(field.coerce(int(rng.integers(0, 4))))
    return out


# -- differential modules (loop shape) --------------------------------------


def rand_differential(m: Module, rng) -> ModuleMap:
    """Random square-zero endomorphism: factor through a random middle
    module as d = c . b with b . c = 0, which reaches every square-zero
    endomorphism and never needs a retry."""
    alg = m.algebra
    field = alg.field
    w = rand_module(alg, rng, gens=1, cut_cols=1)
    b = rand_hom(m, w, rng)
    # solve for c in Hom(w, m) with b . c = 0
    basis = hom_basis(w, m)
    if not basis:
        return ModuleMap.zero_map(m, m)
    from .algebra import _vec
    cols = [_vec(b @ h) for h in basis]
    coeffs = Matrix.hstack(cols).kernel_basis()
    c = ModuleMap.zero_map(w, m)
    if coeffs.cols == 0:
        return ModuleMap.zero_map(m, m)
    pick = rand_matrix(field, rng, coeffs.cols, 1)
    weights = coeffs @ pick
    for i, h in enumerate(basis):
        c = c + h.scale(weights.data[i, 0])
    d = c @ b
    return d


def standard_bases(field: FieldSpec):
    """The stock base algebras used across tests and self checks."""
    a2 = QuiverAlgebra(field, [1, 2], [("a", 1, 2)])
    a3 = QuiverAlgebra(field, [1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    tri = QuiverAlgebra(
        field, [1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 1, 3)]
    )
    return {"a2": a2, "a3": a3, "triangle": tri}
