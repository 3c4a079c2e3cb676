"""Shape-indexed diagrams of modules and the functor calculus on them.

A diagram assigns a base-algebra module to every shape object and a step
map to every step arrow, with the N-fold step composite zero. Internally
a diagram is exactly a module over the category algebra of the shape and
the base, so hom spaces, kernels, and sums reuse the module machinery.

The key functors:
  * evaluate at an object q (just read off the value),
  * induce at q (left adjoint of evaluation): value at p is one copy of
    the input per step power from q to p, steps shift the copy index up,
  * coinduce at q (right adjoint): copies indexed by powers from p to q,
    steps shift the copy index down.

Homology at an object is measured per amplitude a in [1, N): the kernel
of the a-fold step modulo the image of the (N-a)-fold step. A map of
diagrams is a weak equivalence when it induces isomorphisms on all of
these subquotients at every object.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Module,
    ModuleMap,
    QuiverAlgebra,
    descend_map,
    direct_sum as module_direct_sum,
    ext_dim,
    hom_basis,
    hom_coords,
    hom_dim,
    injective_envelope,
    restrict_map,
    simple,
    subquotient,
)
from .errors import InputError, UnsupportedError
from .matrix import Matrix
from .shape import (
    Shape,
    TRIVIAL_VERTEX,
    base_arrow_name,
    category_algebra,
    slice_module,
    step_arrow_name,
)


class Diagram:
    """A shape-indexed diagram, stored as a category-algebra module."""

    def __init__(self, shape: Shape, base: QuiverAlgebra, module: Module):
        self.shape = shape
        self.base = base
        self.algebra = category_algebra(shape, base)
        if module.algebra != self.algebra:
            raise InputError("module is not over the category algebra of this shape")
        self.module = module
        self._values = {}

    @classmethod
    def from_values(cls, shape: Shape, base: QuiverAlgebra, values, steps) -> "Diagram":
        """Build and validate from per-object modules and step maps."""
        alg = category_algebra(shape, base)
        dims = {}
        maps = {}
        for o in shape.objects:
            val = values[o]
            if val.algebra != base:
                raise InputError("diagram value over the wrong base algebra")
            for v in base.vertices:
                dims[(o, v)] = val.dims[v]
            for n, _s, _t in base.arrows:
                maps[base_arrow_name(n, o)] = val.maps[n]
            st = steps.get(o)
            if st is not None:
                for v in base.vertices:
                    maps[step_arrow_name(o, v)] = st.blocks[v]
        return cls(shape, base, Module(alg, dims, maps))

    @classmethod
    def zero(cls, shape: Shape, base: QuiverAlgebra) -> "Diagram":
        return cls(shape, base, Module.zero(category_algebra(shape, base)))

    def value_at(self, o: int) -> Module:
        o = o % self.shape.num_objects
        if o not in self._values:
            dims = {v: self.module.dims[(o, v)] for v in self.base.vertices}
            maps = {n: self.module.maps[base_arrow_name(n, o)]
                    for n, _s, _t in self.base.arrows}
            self._values[o] = Module(self.base, dims, maps, check=False)
        return self._values[o]

    def step_map(self, o: int) -> ModuleMap:
        o = o % self.shape.num_objects
        blocks = {v: self.module.maps[step_arrow_name(o, v)] for v in self.base.vertices}
        return ModuleMap(self.value_at(o), self.value_at(self.shape.step(o)),
                         blocks, check=False)

    def step_power(self, o: int, ell: int) -> ModuleMap:
        o = o % self.shape.num_objects
        out = ModuleMap.identity(self.value_at(o))
        cur = o
        for _ in range(ell):
            out = self.step_map(cur) @ out
            cur = self.shape.step(cur)
        return out

    def total_dim(self) -> int:
        return self.module.total_dim()

    def dims_table(self):
        return {o: self.value_at(o).dim_vector() for o in self.shape.objects}

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def __repr__(self):
        return f"Diagram({self.shape}, dims={self.dims_table()})"


class DiagramMap:
    """A natural transformation of diagrams (a category-algebra module map)."""

    def __init__(self, source: Diagram, target: Diagram, module_map: ModuleMap):
        if source.algebra != target.algebra:
            raise InputError("diagram map across different shapes or bases")
        self.source = source
        self.target = target
        self.module_map = module_map

    @classmethod
    def from_components(cls, source: Diagram, target: Diagram, comps) -> "DiagramMap":
        blocks = {}
        for o in source.shape.objects:
            comp = comps[o]
            for v in source.base.vertices:
                blocks[(o, v)] = comp.blocks[v]
        mm = ModuleMap(source.module, target.module, blocks)
        return cls(source, target, mm)

    @classmethod
    def identity(cls, d: Diagram) -> "DiagramMap":
        return cls(d, d, ModuleMap.identity(d.module))

    @classmethod
    def zero_map(cls, source: Diagram, target: Diagram) -> "DiagramMap":
        return cls(source, target, ModuleMap.zero_map(source.module, target.module))

    def component_at(self, o: int) -> ModuleMap:
        o = o % self.source.shape.num_objects
        blocks = {v: self.module_map.blocks[(o, v)] for v in self.source.base.vertices}
        return ModuleMap(self.source.value_at(o), self.target.value_at(o),
                         blocks, check=False)

    def __matmul__(self, other: "DiagramMap") -> "DiagramMap":
        return DiagramMap(other.source, self.target,
                          self.module_map @ other.module_map)

    def __add__(self, other: "DiagramMap") -> "DiagramMap":
        return DiagramMap(self.source, self.target,
                          self.module_map + other.module_map)

    def __sub__(self, other: "DiagramMap") -> "DiagramMap":
        return DiagramMap(self.source, self.target,
                          self.module_map - other.module_map)

    def scale(self, c) -> "DiagramMap":
        return DiagramMap(self.source, self.target, self.module_map.scale(c))

    def is_injective(self) -> bool:
        return self.module_map.is_injective()

    def is_surjective(self) -> bool:
        return self.module_map.is_surjective()

    def is_iso(self) -> bool:
        return self.module_map.is_iso()

    def is_zero(self) -> bool:
        return self.module_map.is_zero()

    def inverse(self) -> "DiagramMap":
        return DiagramMap(self.target, self.source, self.module_map.inverse())

    def validate(self):
        self.module_map.validate()

    def kernel(self):
        ker, incl = self.module_map.kernel()
        d = Diagram(self.source.shape, self.source.base, ker)
        return d, DiagramMap(d, self.source, incl)

    def image(self):
        img, incl = self.module_map.image()
        d = Diagram(self.source.shape, self.source.base, img)
        return d, DiagramMap(d, self.target, incl)

    def cokernel(self):
        cok, proj = self.module_map.cokernel()
        d = Diagram(self.source.shape, self.source.base, cok)
        out = DiagramMap(self.target, d, proj)
        return d, out

    def __repr__(self):
        return f"DiagramMap({self.source.dims_table()} -> {self.target.dims_table()})"


def stalk(shape: Shape, base: QuiverAlgebra, o: int, m: Module) -> Diagram:
    """The diagram concentrated at one object with zero steps."""
    o = o % shape.num_objects
    values = {p: (m if p == o else Module.zero(base)) for p in shape.objects}
    steps = {
        p: ModuleMap.zero_map(values[p], values[shape.step(p)])
        for p in shape.objects
    }
    return Diagram.from_values(shape, base, values, steps)


def diagram_direct_sum(diagrams):
    diagrams = list(diagrams)
    total, incls, projs = module_direct_sum([d.module for d in diagrams])
    shape, base = diagrams[0].shape, diagrams[0].base
    td = Diagram(shape, base, total)
    return (
        td,
        [DiagramMap(d, td, f) for d, f in zip(diagrams, incls)],
        [DiagramMap(td, d, f) for d, f in zip(diagrams, projs)],
    )


def diagram_hom_basis(x: Diagram, y: Diagram):
    return [DiagramMap(x, y, f) for f in hom_basis(x.module, y.module)]


def diagram_hom_dim(x: Diagram, y: Diagram) -> int:
    return hom_dim(x.module, y.module)


# -- induction and coinduction ----------------------------------------------


def _copy_matrix(field, src_powers, tgt_powers, image_of, block):
    """Matrix sending copy ell of a block space to copy image_of(ell),
    acting by the given block, and dropping copies whose image is absent."""
    rows = len(tgt_powers) * block.rows
    cols = len(src_powers) * block.cols
    m = Matrix.zeros(field, rows, cols).copy_data()
    tgt_index = {l: i for i, l in enumerate(tgt_powers)}
    for j, l in enumerate(src_powers):
        l2 = image_of(l)
        if l2 in tgt_index:
            i = tgt_index[l2]
            for r in range(block.rows):
                for c in range(block.cols):
                    m[i * block.rows + r, j * block.cols + c] = block.data[r, c]
    return Matrix(field, m)


def _copies_module(base, m: Module, count: int) -> Module:
    if count == 0:
        return Module.zero(base)
    if count == 1:
        return m
    total, _i, _p = module_direct_sum([m] * count)
    return total


def induce(shape: Shape, base: QuiverAlgebra, q: int, m: Module) -> Diagram:
    """Left adjoint of evaluation at q: copies indexed by step powers out
    of q, steps shifting the copy index up."""
    field = base.field
    q = q % shape.num_objects
    values, steps = {}, {}
    for p in shape.objects:
        values[p] = _copies_module(base, m, shape.hom_dim(q, p))
    for p in shape.objects:
        src_powers = shape.hom_powers(q, p)
        tgt_powers = shape.hom_powers(q, shape.step(p))
        blocks = {}
        for v in base.vertices:
            ident = Matrix.identity(field, m.dims[v])
            blocks[v] = _copy_matrix(field, src_powers, tgt_powers,
                                     lambda l: l + 1, ident)
        steps[p] = ModuleMap(values[p], values[shape.step(p)], blocks, check=False)
    return Diagram.from_values(shape, base, values, steps)


def coinduce(shape: Shape, base: QuiverAlgebra, q: int, m: Module) -> Diagram:
    """Right adjoint of evaluation at q: copies indexed by step powers
    into q, steps shifting the copy index down."""
    field = base.field
    q = q % shape.num_objects
    values, steps = {}, {}
    for p in shape.objects:
        values[p] = _copies_module(base, m, shape.hom_dim(p, q))
    for p in shape.objects:
        src_powers = shape.hom_powers(p, q)
        tgt_powers = shape.hom_powers(shape.step(p), q)
        blocks = {}
        for v in base.vertices:
            ident = Matrix.identity(field, m.dims[v])
            blocks[v] = _copy_matrix(field, src_powers, tgt_powers,
                                     lambda l: l - 1, ident)
        steps[p] = ModuleMap(values[p], values[shape.step(p)], blocks, check=False)
    return Diagram.from_values(shape, base, values, steps)


def counit(q: int, x: Diagram) -> DiagramMap:
    """Evaluation counit: induced-from-the-value -> the diagram, sending
    copy ell at p to the ell-fold step of the value."""
    shape, base = x.shape, x.base
    src = induce(shape, base, q, x.value_at(q))
    comps = {}
    for p in shape.objects:
        powers = shape.hom_powers(q, p)
        blocks = {}
        for v in base.vertices:
            pieces = [x.step_power(q, l).blocks[v] for l in powers]
            if pieces:
                blocks[v] = Matrix.hstack(pieces)
            else:
                blocks[v] = Matrix.zeros(base.field, x.value_at(p).dims[v], 0)
        comps[p] = ModuleMap(src.value_at(p), x.value_at(p), blocks, check=False)
    return DiagramMap.from_components(src, x, comps)


def unit(q: int, x: Diagram) -> DiagramMap:
    """Evaluation unit: the diagram -> coinduced-from-the-value, with
    copy ell reading off the ell-fold step."""
    shape, base = x.shape, x.base
    tgt = coinduce(shape, base, q, x.value_at(q))
    comps = {}
    for p in shape.objects:
        powers = shape.hom_powers(p, q)
        blocks = {}
        for v in base.vertices:
            pieces = [x.step_power(p, l).blocks[v] for l in powers]
            if pieces:
                blocks[v] = Matrix.vstack(pieces)
            else:
                blocks[v] = Matrix.zeros(base.field, 0, x.value_at(p).dims[v])
        comps[p] = ModuleMap(x.value_at(p), tgt.value_at(p), blocks, check=False)
    return DiagramMap.from_components(x, tgt, comps)


def induced_adjoint(q: int, f: ModuleMap, x: Diagram) -> DiagramMap:
    """Turn a module map into the value at q into a diagram map out of
    the induced diagram on its source."""
    shape, base = x.shape, x.base
    src = induce(shape, base, q, f.source)
    comps = {}
    for p in shape.objects:
        powers = shape.hom_powers(q, p)
        blocks = {}
        for v in base.vertices:
            pieces = [(x.step_power(q, l) @ f).blocks[v] for l in powers]
            if pieces:
                blocks[v] = Matrix.hstack(pieces)
            else:
                blocks[v] = Matrix.zeros(base.field, x.value_at(p).dims[v], 0)
        comps[p] = ModuleMap(src.value_at(p), x.value_at(p), blocks, check=False)
    return DiagramMap.from_components(src, x, comps)


def coinduced_adjoint(q: int, f: ModuleMap, x: Diagram) -> DiagramMap:
    """Turn a module map out of the value at q into a diagram map into
    the coinduced diagram on its target."""
    shape, base = x.shape, x.base
    tgt = coinduce(shape, base, q, f.target)
    comps = {}
    for p in shape.objects:
        powers = shape.hom_powers(p, q)
        blocks = {}
        for v in base.vertices:
            pieces = [(f @ x.step_power(p, l)).blocks[v] for l in powers]
            if pieces:
                blocks[v] = Matrix.vstack(pieces)
            else:
                blocks[v] = Matrix.zeros(base.field, 0, x.value_at(p).dims[v])
        comps[p] = ModuleMap(x.value_at(p), tgt.value_at(p), blocks, check=False)
    return DiagramMap.from_components(x, tgt, comps)


def coinduction_embedding(x: Diagram) -> DiagramMap:
    """Embed a diagram into a sum of coinduced injectives: at each object
    take the injective envelope of the value and coinduce it back.

    The result is a termwise-injective diagram and the map is a termwise
    monomorphism, certified here.
    """
    shape = x.shape
    pieces = []
    for q in shape.objects:
        env = injective_envelope(x.value_at(q))
        pieces.append(coinduced_adjoint(q, env, x))
    total, incls, _projs = diagram_direct_sum([p.target for p in pieces])
    out = DiagramMap.zero_map(x, total)
    for piece, incl in zip(pieces, incls):
        out = out + (incl @ piece)
    if not out.is_injective():
        raise InputError("coinduction embedding failed to be a monomorphism")
    return out


def serre_twist_iso(q: int, m: Module, shape: Shape) -> DiagramMap:
    """The canonical isomorphism from inducing at q to coinducing at the
    Serre image of q, flipping copy index ell to N - 1 - ell."""
    base = m.algebra
    field = base.field
    n = shape.nilpotency
    src = induce(shape, base, q, m)
    tgt = coinduce(shape, base, shape.serre(q), m)
    comps = {}
    for p in shape.objects:
        src_powers = shape.hom_powers(q, p)
        tgt_powers = shape.hom_powers(p, shape.serre(q))
        blocks = {}
        for v in base.vertices:
            ident = Matrix.identity(field, m.dims[v])
            blocks[v] = _copy_matrix(field, src_powers, tgt_powers,
                                     lambda l: n - 1 - l, ident)
        comps[p] = ModuleMap(src.value_at(p), tgt.value_at(p), blocks, check=False)
    out = DiagramMap.from_components(src, tgt, comps)
    if not out.is_iso():
        raise InputError("twist map failed to be an isomorphism")
    return out


# -- homs modulo injective objects ------------------------------------------


def _composition_rank(base_maps, post_basis, iota):
    """Rank of the span of {g . iota} inside the hom space with the given
    basis."""
    from .algebra import hom_coords
    if not base_maps or not post_basis:
        return 0
    cols = [hom_coords(base_maps, g @ iota) for g in post_basis]
    return Matrix.hstack(cols).rank()


def stable_hom_dim(x: Diagram, y: Diagram) -> int:
    """Dimension of Hom(x, y) modulo maps factoring through injective
    objects, realized by extension along the module-level injective
    envelope of x."""
    basis = hom_basis(x.module, y.module)
    if not basis:
        return 0
    iota = injective_envelope(x.module)
    post = hom_basis(iota.target, y.module)
    return len(basis) - _composition_rank(basis, post, iota)


def stable_hom_dim_via_coinduction(x: Diagram, y: Diagram) -> int:
    """Independent route to the stable hom dimension: factor through the
    coinduction embedding instead of the module-level envelope."""
    basis = hom_basis(x.module, y.module)
    if not basis:
        return 0
    emb = coinduction_embedding(x)
    post = hom_basis(emb.target.module, y.module)
    return len(basis) - _composition_rank(basis, post, emb.module_map)


def factors_through_injectives(f: DiagramMap) -> bool:
    """Does f vanish modulo injective objects? Tested by extending along
    the injective envelope of its source."""
    from .algebra import _vec
    iota = injective_envelope(f.source.module)
    post = hom_basis(iota.target, f.target.module)
    if not post:
        return f.is_zero()
    mat = Matrix.hstack([_vec(g @ iota) for g in post])
    return mat.solve(_vec(f.module_map)) is not None


# -- homology ---------------------------------------------------------------


@dataclass
class HomologySpace:
    """Cycles-over-boundaries data at one object and amplitude."""
    module: Module          # the subquotient as a base module
    cycles_incl: ModuleMap  # cycles -> value
    proj: ModuleMap         # cycles -> subquotient


def homology_space(x: Diagram, q: int, amplitude: int = 1) -> HomologySpace:
    shape = x.shape
    n = shape.nilpotency
    a = amplitude
    if not 1 <= a < n:
        raise InputError("amplitude must lie in [1, N)")
    q = q % shape.num_objects
    da = x.step_power(q, a)
    db = x.step_power((q + n - a) % shape.num_objects, n - a)
    cycles, z_incl = da.kernel()
    bound, b_incl = db.image()
    h, proj = subquotient(z_incl, b_incl)
    return HomologySpace(module=h, cycles_incl=z_incl, proj=proj)


def homology_dims(x: Diagram, q: int, amplitude: int = 1):
    """Per-base-vertex dimensions of the homology, by rank counting."""
    shape = x.shape
    n = shape.nilpotency
    q = q % shape.num_objects
    da = x.step_power(q, amplitude)
    db = x.step_power((q + n - amplitude) % shape.num_objects, n - amplitude)
    val = x.value_at(q)
    return tuple(
        val.dims[v] - da.blocks[v].rank() - db.blocks[v].rank()
        for v in x.base.vertices
    )


def is_exact(x: Diagram) -> bool:
    return all(
        all(d == 0 for d in homology_dims(x, q, a))
        for q in x.shape.objects
        for a in x.shape.amplitudes()
    )


def induced_homology_map(f: DiagramMap, q: int, amplitude: int = 1) -> ModuleMap:
    hx = homology_space(f.source, q, amplitude)
    hy = homology_space(f.target, q, amplitude)
    g = restrict_map(f.component_at(q), hx.cycles_incl, hy.cycles_incl)
    return descend_map(hy.proj @ g, hx.proj)


def is_weak_equivalence(f: DiagramMap) -> bool:
    for q in f.source.shape.objects:
        for a in f.source.shape.amplitudes():
            if homology_dims(f.source, q, a) != homology_dims(f.target, q, a):
                return False
            if not induced_homology_map(f, q, a).is_iso():
                return False
    return True


def homology_dims_via_ext_slices(x: Diagram, q: int, amplitude: int):
    """Independent route to the homology dimensions: fix a base vertex,
    view the slice as a module over the shape algebra, and read the
    dimension off a derived hom against a one-point module, computed from
    a projective resolution. Covers amplitudes 1 and N - 1; returns None
    otherwise.
    """
    shape = x.shape
    n = shape.nilpotency
    m = shape.num_objects
    q = q % m
    if amplitude == n - 1:
        peak, degree = (q + 1) % m, 1
    elif amplitude == 1:
        peak, degree = (q + n) % m, 2
    else:
        return None
    field = x.base.field
    out = []
    for v in x.base.vertices:
        dims_by_object = {o: x.value_at(o).dims[v] for o in shape.objects}
        steps_by_object = {o: x.step_map(o).blocks[v] for o in shape.objects}
        sl = slice_module(shape, field, dims_by_object, steps_by_object)
        s = simple(sl.algebra, (peak, TRIVIAL_VERTEX))
        out.append(ext_dim(s, sl, degree))
    return tuple(out)


# -- named functor surface --------------------------------------------------


def _check_object(shape: Shape, q) -> int:
    if not isinstance(q, int):
        raise InputError("unknown shape object")
    return q % shape.num_objects


def functor_F(shape: Shape, q: int, m: Module) -> Diagram:
    """Induce the module at the object q (left adjoint of evaluation)."""
    return induce(shape, m.algebra, _check_object(shape, q), m)


def functor_E(q: int, x: Diagram) -> Module:
    """Evaluate the diagram at the object q."""
    return x.value_at(_check_object(x.shape, q))


def functor_G(shape: Shape, q: int, m: Module) -> Diagram:
    """Coinduce the module at the object q (right adjoint of evaluation)."""
    return coinduce(shape, m.algebra, _check_object(shape, q), m)


def induce_map(shape: Shape, q: int, f: ModuleMap) -> DiagramMap:
    """Apply induction at q to a module map, one copy per step power."""
    q = _check_object(shape, q)
    base = f.source.algebra
    src = induce(shape, base, q, f.source)
    tgt = induce(shape, base, q, f.target)
    comps = {}
    for p in shape.objects:
        powers = shape.hom_powers(q, p)
        blocks = {}
        for v in base.vertices:
            blocks[v] = _copy_matrix(base.field, powers, powers,
                                     lambda l: l, f.blocks[v])
        comps[p] = ModuleMap(src.value_at(p), tgt.value_at(p), blocks, check=False)
    return DiagramMap.from_components(src, tgt, comps)


def coinduce_map(shape: Shape, q: int, f: ModuleMap) -> DiagramMap:
    """Apply coinduction at q to a module map."""
    q = _check_object(shape, q)
    base = f.source.algebra
    src = coinduce(shape, base, q, f.source)
    tgt = coinduce(shape, base, q, f.target)
    comps = {}
    for p in shape.objects:
        powers = shape.hom_powers(p, q)
        blocks = {}
        for v in base.vertices:
            blocks[v] = _copy_matrix(base.field, powers, powers,
                                     lambda l: l, f.blocks[v])
        comps[p] = ModuleMap(src.value_at(p), tgt.value_at(p), blocks, check=False)
    return DiagramMap.from_components(src, tgt, comps)


def adjoint_of(q: int, f: ModuleMap, x: Diagram) -> DiagramMap:
    """The diagram map out of the induced diagram matching a module map
    into the value at q under the adjunction."""
    q = _check_object(x.shape, q)
    val = x.value_at(q)
    if f.target.dims != val.dims:
        raise InputError("adjoint target does not match the value at the object")
    return induced_adjoint(q, f, x)


def counit_kernel(q: int, x: Diagram):
    """Kernel of the counit at q, as a monomorphism into the induced
    diagram on the value."""
    z, incl = counit(_check_object(x.shape, q), x).kernel()
    return z, incl


def homology(q: int, i: int, x: Diagram) -> Module:
    """Degree-indexed homology at an object, as a base-algebra module.

    Degrees walk the two-periodic ladder of the one-point diagram at q:
    odd degrees 2j+1 read the amplitude N-1 subquotient at q-1-jN, even
    degrees 2j read the amplitude 1 subquotient at q-jN.
    """
    if i < 1:
        raise InputError("homology degree must be at least 1")
    shape = x.shape
    q = _check_object(shape, q)
    n = shape.nilpotency
    if i % 2:
        j = (i - 1) // 2
        return homology_space(x, q - 1 - j * n, n - 1).module
    j = i // 2
    return homology_space(x, q - j * n, 1).module


def hom_space(x: Diagram, y: Diagram):
    """Basis of the space of diagram maps."""
    return diagram_hom_basis(x, y)


def hom_mod_injectives(x: Diagram, y: Diagram):
    """Dimension and coset representatives of the maps x -> y modulo
    those factoring through an injective object.

    A map vanishes in the quotient iff it extends along the injective
    envelope of the underlying module of x, so the quotient is Hom(x, y)
    by the span of {g . envelope} over g from the envelope target to y.
    """
    basis = hom_basis(x.module, y.module)
    if not basis:
        return 0, []
    iota = injective_envelope(x.module)
    post = hom_basis(iota.target, y.module)
    cols = [hom_coords(basis, g @ iota) for g in post]
    if not cols:
        return len(basis), [DiagramMap(x, y, f) for f in basis]
    sub = Matrix.hstack(cols)
    field = x.base.field
    full = Matrix.hstack([sub, Matrix.identity(field, len(basis))])
    _r, piv = full.rref()
    reps = [DiagramMap(x, y, basis[p - sub.cols]) for p in piv if p >= sub.cols]
    return len(reps), reps


def is_injective_object(x: Diagram) -> bool:
    """Injective objects are exactly the exact semiinjective diagrams."""
    if not is_exact(x):
        return False
    from .resolve import is_semiinjective
    return is_semiinjective(x)


def hom_in_derived(x: Diagram, y: Diagram):
    """Dimension and representatives of the maps x -> y in the derived
    category: resolve y semiinjectively, then take homs modulo injective
    objects into the resolution."""
    from .resolve import resolve_min
    if not y.base.is_hereditary:
        raise UnsupportedError(
            "non-hereditary-base", "derived homs need a hereditary base algebra"
        )
    res = resolve_min(y)
    return hom_mod_injectives(x, res.target)
