"""Finite-dimensional quotients of path algebras and their representations.

An algebra is presented by a quiver plus relations. Paths are stored as
(source vertex, tuple of arrow names) with arrows listed in application
order: the path (a, b) applies a first, then b. The product x * y applies
y first, matching composition of functions.

Relations must be linear combinations of parallel paths of one common
length >= 2. That keeps the quotient graded by path length, so the path
basis is computed one length at a time by row reduction, and finite
dimensionality has a sound certificate: the first length whose quotient
vanishes kills every longer length.

Modules are representations: a dimension per vertex and a matrix per
arrow, with every relation checked to act as zero. Module maps are
vertex-indexed blocks satisfying the intertwining equations.
"""

from __future__ import annotations

import numpy as np
from fractions import Fraction

from .errors import CertificateFailure, InputError, UnsupportedError
from .fields import FieldSpec
from .matrix import Matrix, kron, quotient_map

MAX_BASIS_LENGTH = 64

Path = tuple  # (source_vertex, tuple_of_arrow_names)


def trivial_path(v) -> Path:
    return (v, ())


class QuiverAlgebra:
    """kQ/I for a finite quiver Q and admissible homogeneous relations I."""

    def __init__(self, field: FieldSpec, vertices, arrows, relations=()):
        self.field = field
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        self.arrows = tuple((str(n), s, t) for (n, s, t) in arrows)
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        vset = set(self.vertices)
        for n, s, t in self.arrows:
            if s not in vset or t not in vset:
                raise InputError(f"arrow {n} endpoints {s!r}->{t!r} not in vertex set")
        self.arrow_source = {n: s for n, s, t in self.arrows}
        self.arrow_target = {n: t for n, s, t in self.arrows}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.relations = self._canonical_relations(relations)
        self._build_basis()

    # relations: iterable of [(coeff, [arrow names...]), ...]
    def _canonical_relations(self, relations):
        out = []
        for rel in relations:
            terms = []
            sig = None
            for coeff, arrows in rel:
                arrows = tuple(str(a) for a in arrows)
                if len(arrows) < 2:
                    raise InputError("relation paths must have length >= 2")
                for a in arrows:
                    if a not in self.arrow_source:
                        raise InputError(f"relation uses unknown arrow {a!r}")
                for x, y in zip(arrows, arrows[1:]):
                    if self.arrow_target[x] != self.arrow_source[y]:
                        raise InputError(f"non-composable relation path {arrows}")
                src = self.arrow_source[arrows[0]]
                tgt = self.arrow_target[arrows[-1]]
                this_sig = (len(arrows), src, tgt)
                if sig is None:
                    sig = this_sig
                elif sig != this_sig:
                    raise InputError(
                        "relation terms must be parallel paths of one common length"
                    )
                c = self.field.coerce(coeff)
                if c != self.field.zero():
                    terms.append((c, arrows))
            if terms:
                out.append(tuple(terms))
        return tuple(out)

    def _build_basis(self):
        field = self.field
        by_source = {}
        for n, s, t in self.arrows:
            by_source.setdefault(s, []).append(n)
        for v in by_source:
            by_source[v].sort()

        free_prev = sorted((trivial_path(v) for v in self.vertices),
                           key=lambda p: self.vertex_index[p[0]])
        free_by_len = [tuple(free_prev)]
        basis_by_len = [tuple(free_prev)]
        nf = {p: ((field.one(), p),) for p in free_prev}
        length = 0
        while True:
            length += 1
            if length > MAX_BASIS_LENGTH:
                raise InputError(
                    f"path basis did not close by length {MAX_BASIS_LENGTH}; "
                    "algebra is not visibly finite dimensional"
                )
            free = []
            for src, arrs in free_prev:
                tail = self.arrow_target[arrs[-1]] if arrs else src
                for a in by_source.get(tail, ()):
                    free.append((src, arrs + (a,)))
            free.sort(key=lambda p: p[1])
            if not free:
                break
            free_by_len.append(tuple(free))
            rows = self._relation_rows(free, free_by_len, length)
            if rows:
                r, piv = Matrix.from_rows(field, rows).rref()
                pivset = set(piv)
            else:
                r, piv, pivset = None, (), set()
            surviving = [p for j, p in enumerate(free) if j not in pivset]
            free_idx = [j for j in range(len(free)) if j not in pivset]
            for i, pc in enumerate(piv):
                combo = []
                for k, j in enumerate(free_idx):
                    c = r.data[i, j]
                    if c != field.zero():
                        combo.append((field.neg(c), free[j]))
                nf[free[pc]] = tuple(combo)
            for p in surviving:
                nf[p] = ((field.one(), p),)
            if not surviving:
                break
            basis_by_len.append(tuple(surviving))
            free_prev = free

        self.basis_by_length = tuple(basis_by_len)
        self.max_path_length = len(basis_by_len) - 1
        self.basis = tuple(p for level in basis_by_len for p in level)
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self._nf = nf
        self.dim = len(self.basis)

    def _relation_rows(self, free, free_by_len, length):
        index = {p: j for j, p in enumerate(free)}
        paths_into = {}    # keyed by (target vertex, length)
        paths_out_of = {}  # keyed by (source vertex, length)
        for lvl, level in enumerate(free_by_len):
            for p in level:
                tail = self.arrow_target[p[1][-1]] if p[1] else p[0]
                paths_into.setdefault((tail, lvl), []).append(p)
                paths_out_of.setdefault((p[0], lvl), []).append(p)
        rows = []
        zero = self.field.zero()
        for rel in self.relations:
            lr = len(rel[0][1])
            if lr > length:
                continue
            src_r = self.arrow_source[rel[0][1][0]]
            tgt_r = self.arrow_target[rel[0][1][-1]]
            for lv in range(0, length - lr + 1):
                lu = length - lr - lv
                for v in paths_into.get((src_r, lv), ()):
                    for u in paths_out_of.get((tgt_r, lu), ()):
                        row = [zero] * len(free)
                        for c, arrs in rel:
                            full = (v[0], v[1] + arrs + u[1])
                            row[index[full]] = self.field.add(row[index[full]], c)
                        rows.append(row)
        return rows

    # -- path calculus ----------------------------------------------------

    def path_source(self, p: Path):
        return p[0]

    def path_target(self, p: Path):
        src, arrs = p
        return self.arrow_target[arrs[-1]] if arrs else src

    def normal_form(self, p: Path):
        """Image of a free path in the basis, as ((coeff, basis path), ...)."""
        if len(p[1]) > self.max_path_length:
            return ()
        return self._nf.get(p, ())

    def compose(self, second: Path, first: Path) -> Path:
        if self.path_target(first) != self.path_source(second):
            raise InputError("paths do not compose")
        return (first[0], first[1] + second[1])

    def paths_from(self, v):
        return [p for p in self.basis if p[0] == v]

    def paths_between(self, v, w):
        return [p for p in self.basis if p[0] == v and self.path_target(p) == w]

    def is_acyclic(self) -> bool:
        color = {v: 0 for v in self.vertices}
        adj = {}
        for n, s, t in self.arrows:
            adj.setdefault(s, []).append(t)

        def visit(v):
            color[v] = 1
            for w in adj.get(v, ()):
                if color[w] == 1:
                    return False
                if color[w] == 0 and not visit(w):
                    return False
            color[v] = 2
            return True

        return all(visit(v) for v in self.vertices if color[v] == 0)

    @property
    def is_hereditary(self) -> bool:
        return not self.relations

    def opposite(self) -> "QuiverAlgebra":
        arrows = [(n, t, s) for (n, s, t) in self.arrows]
        relations = [
            [(c, tuple(reversed(arrs))) for c, arrs in rel] for rel in self.relations
        ]
        return QuiverAlgebra(self.field, self.vertices, arrows, relations)

    def _key(self):
        return (self.field, self.vertices, self.arrows, self.relations)

    def __eq__(self, other):
        return isinstance(other, QuiverAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"QuiverAlgebra({self.field}, {len(self.vertices)} vertices, "
            f"{len(self.arrows)} arrows, dim {self.dim})"
        )


# ---------------------------------------------------------------------------


class Module:
    """Representation of a QuiverAlgebra: dims per vertex, matrix per arrow."""

    def __init__(self, algebra: QuiverAlgebra, dims, maps, check=True):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        self.maps = {}
        for n, s, t in algebra.arrows:
            m = maps.get(n)
            if m is None:
                m = Matrix.zeros(algebra.field, self.dims[t], self.dims[s])
            self.maps[n] = m
        if check:
            self.validate()

    def validate(self):
        alg = self.algebra
        for v, d in self.dims.items():
            if d < 0:
                raise InputError(f"negative dimension at vertex {v!r}")
        for n, s, t in alg.arrows:
            m = self.maps[n]
            if m.field != alg.field or (m.rows, m.cols) != (self.dims[t], self.dims[s]):
                raise InputError(
                    f"arrow {n}: matrix is {m.rows}x{m.cols}, expected "
                    f"{self.dims[t]}x{self.dims[s]}"
                )
        for rel in alg.relations:
            src = alg.arrow_source[rel[0][1][0]]
            tgt = alg.arrow_target[rel[0][1][-1]]
            acc = Matrix.zeros(alg.field, self.dims[tgt], self.dims[src])
            for c, arrs in rel:
                acc = acc + self.path_matrix((src, arrs)).scale(c)
            if not acc.is_zero():
                raise InputError("a relation does not act as zero on this module")

    @classmethod
    def zero(cls, algebra: QuiverAlgebra) -> "Module":
        return cls(algebra, {}, {}, check=False)

    def path_matrix(self, p: Path) -> Matrix:
        src, arrs = p
        out = Matrix.identity(self.algebra.field, self.dims[src])
        for a in arrs:
            out = self.maps[a] @ out
        return out

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def __repr__(self):
        return f"Module(dims={self.dim_vector()})"


class ModuleMap:
    """Morphism of representations: one block per vertex, intertwining."""

    def __init__(self, source: Module, target: Module, blocks, check=True):
        if source.algebra != target.algebra:
            raise InputError("module map across different algebras")
        self.source = source
        self.target = target
        self.blocks = {}
        field = source.algebra.field
        for v in source.algebra.vertices:
            b = blocks.get(v)
            if b is None:
                b = Matrix.zeros(field, target.dims[v], source.dims[v])
            self.blocks[v] = b
        if check:
            self.validate()

    def validate(self):
        alg = self.source.algebra
        for v in alg.vertices:
            b = self.blocks[v]
            if (b.rows, b.cols) != (self.target.dims[v], self.source.dims[v]):
                raise InputError(
                    f"block at {v!r} is {b.rows}x{b.cols}, expected "
                    f"{self.target.dims[v]}x{self.source.dims[v]}"
                )
        for n, s, t in alg.arrows:
            if self.target.maps[n] @ self.blocks[s] != self.blocks[t] @ self.source.maps[n]:
                raise InputError(f"map does not intertwine arrow {n}")

    @classmethod
    def identity(cls, m: Module) -> "ModuleMap":
        blocks = {v: Matrix.identity(m.algebra.field, m.dims[v]) for v in m.algebra.vertices}
        return cls(m, m, blocks, check=False)

    @classmethod
    def zero_map(cls, source: Module, target: Module) -> "ModuleMap":
        return cls(source, target, {}, check=False)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target.dims != self.source.dims:
            raise InputError("composition mismatch")
        blocks = {v: self.blocks[v] @ other.blocks[v] for v in self.blocks}
        return ModuleMap(other.source, self.target, blocks, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        blocks = {v: self.blocks[v] + other.blocks[v] for v in self.blocks}
        return ModuleMap(self.source, self.target, blocks, check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        blocks = {v: self.blocks[v] - other.blocks[v] for v in self.blocks}
        return ModuleMap(self.source, self.target, blocks, check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(
            self.source, self.target,
            {v: b.scale(c) for v, b in self.blocks.items()}, check=False,
        )

    def is_injective(self) -> bool:
        return all(b.is_injective_map() for b in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(b.is_surjective_map() for b in self.blocks.values())

    def is_iso(self) -> bool:
        return all(b.is_invertible() for b in self.blocks.values())

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def inverse(self) -> "ModuleMap":
        inv = {}
        for v, b in self.blocks.items():
            bi = b.inverse()
            if bi is None:
                raise InputError("map is not invertible")
            inv[v] = bi
        return ModuleMap(self.target, self.source, inv, check=False)

    def kernel(self) -> tuple[Module, "ModuleMap"]:
        bases = {v: self.blocks[v].kernel_basis() for v in self.source.algebra.vertices}
        return _span_submodule(self.source, bases)

    def image(self) -> tuple[Module, "ModuleMap"]:
        bases = {v: self.blocks[v].column_space() for v in self.source.algebra.vertices}
        return _span_submodule(self.target, bases)

    def cokernel(self) -> tuple[Module, "ModuleMap"]:
        img, incl = self.image()
        return quotient_by(incl)

    def __repr__(self):
        return f"ModuleMap({self.source.dim_vector()} -> {self.target.dim_vector()})"


def _span_submodule(ambient: Module, bases) -> tuple[Module, ModuleMap]:
    """Submodule on the given per-vertex column spans (must be arrow-stable)."""
    alg = ambient.algebra
    dims = {v: bases[v].cols for v in alg.vertices}
    maps = {}
    for n, s, t in alg.arrows:
        pushed = ambient.maps[n] @ bases[s]
        coords = bases[t].solve(pushed)
        if coords is None:
            raise InputError(f"spans are not stable under arrow {n}")
        maps[n] = coords
    sub = Module(alg, dims, maps, check=False)
    incl = ModuleMap(sub, ambient, dict(bases), check=False)
    return sub, incl


def submodule_from_spans(ambient: Module, spans) -> tuple[Module, ModuleMap]:
    field = ambient.algebra.field
    bases = {
        v: spans.get(v, Matrix.zeros(field, ambient.dims[v], 0)).column_space()
        for v in ambient.algebra.vertices
    }
    return _span_submodule(ambient, bases)


def submodule_generated(ambient: Module, spans) -> tuple[Module, ModuleMap]:
    """Smallest submodule containing the given per-vertex columns: close
    the spans under all arrows, then cut out the span submodule."""
    alg = ambient.algebra
    field = alg.field
    cur = {
        v: spans.get(v, Matrix.zeros(field, ambient.dims[v], 0)).column_space()
        for v in alg.vertices
    }
    changed = True
    while changed:
        changed = False
        for n, s, t in alg.arrows:
            if cur[s].cols == 0:
                continue
            pushed = ambient.maps[n] @ cur[s]
            union = Matrix.hstack([cur[t], pushed]).column_space()
            if union.cols > cur[t].cols:
                cur[t] = union
                changed = True
    return _span_submodule(ambient, cur)


def quotient_by(incl: ModuleMap) -> tuple[Module, ModuleMap]:
    """Quotient of incl.target by the image of incl (blocks must be injective).

    The returned projection carries per-vertex sections in ._sections.
    """
    ambient = incl.target
    alg = ambient.algebra
    projs, sections, dims = {}, {}, {}
    for v in alg.vertices:
        q, s = quotient_map(incl.blocks[v])
        projs[v], sections[v] = q, s
        dims[v] = q.rows
    maps = {}
    for n, s_, t in alg.arrows:
        maps[n] = projs[t] @ ambient.maps[n] @ sections[s_]
    quot = Module(alg, dims, maps, check=False)
    proj = ModuleMap(ambient, quot, projs, check=False)
    proj._sections = sections
    return quot, proj


def subquotient(k_incl: ModuleMap, b_incl: ModuleMap) -> tuple[Module, ModuleMap]:
    """K/B for submodules B <= K of one ambient module; returns (H, K ->> H)."""
    ambient = k_incl.target
    if b_incl.target.dims != ambient.dims:
        raise InputError("subquotient inclusions must share their ambient module")
    alg = ambient.algebra
    inner = {}
    for v in alg.vertices:
        c = k_incl.blocks[v].solve(b_incl.blocks[v])
        if c is None:
            raise InputError("second submodule is not contained in the first")
        inner[v] = c
    inner_map = ModuleMap(b_incl.source, k_incl.source, inner, check=False)
    return quotient_by(inner_map)


def restrict_map(f: ModuleMap, src_incl: ModuleMap, tgt_incl: ModuleMap) -> ModuleMap:
    """The unique g with tgt_incl . g = f . src_incl; requires f to carry
    the first submodule into the second."""
    blocks = {}
    for v in f.source.algebra.vertices:
        sol = tgt_incl.blocks[v].solve(f.blocks[v] @ src_incl.blocks[v])
        if sol is None:
            raise InputError("map does not carry the submodule into the target one")
        blocks[v] = sol
    return ModuleMap(src_incl.source, tgt_incl.source, blocks)


def descend_map(comp: ModuleMap, src_proj: ModuleMap) -> ModuleMap:
    """Given comp defined on the total space that kills ker(src_proj),
    the induced map on the quotient. Certified by recomposition."""
    sections = src_proj._sections
    blocks = {v: comp.blocks[v] @ sections[v] for v in comp.blocks}
    out = ModuleMap(src_proj.target, comp.target, blocks)
    for v in comp.blocks:
        if out.blocks[v] @ src_proj.blocks[v] != comp.blocks[v]:
            raise InputError("map does not descend to the quotient")
    return out


def direct_sum(mods) -> tuple[Module, list[ModuleMap], list[ModuleMap]]:
    mods = list(mods)
    if not mods:
        raise InputError("direct sum of nothing")
    alg = mods[0].algebra
    field = alg.field
    dims = {v: sum(m.dims[v] for m in mods) for v in alg.vertices}
    maps = {n: Matrix.block_diag(field, [m.maps[n] for m in mods]) for n, _, _ in alg.arrows}
    total = Module(alg, dims, maps, check=False)
    incls, projs = [], []
    offset = {v: 0 for v in alg.vertices}
    for m in mods:
        ib, pb = {}, {}
        for v in alg.vertices:
            o, d, td = offset[v], m.dims[v], dims[v]
            inc = Matrix.zeros(field, td, d).copy_data()
            prj = Matrix.zeros(field, d, td).copy_data()
            for i in range(d):
                inc[o + i, i] = field.one()
                prj[i, o + i] = field.one()
            ib[v] = Matrix(field, inc)
            pb[v] = Matrix(field, prj)
            offset[v] = o + d
        incls.append(ModuleMap(m, total, ib, check=False))
        projs.append(ModuleMap(total, m, pb, check=False))
    return total, incls, projs


# -- hom spaces -------------------------------------------------------------


def _vec(f: ModuleMap) -> Matrix:
    alg = f.source.algebra
    cols = []
    for v in alg.vertices:
        b = f.blocks[v]
        cols.extend(b.data[i, j] for i in range(b.rows) for j in range(b.cols))
    return Matrix.column(alg.field, cols)


def _unvec(source: Module, target: Module, col) -> ModuleMap:
    alg = source.algebra
    field = alg.field
    blocks = {}
    pos = 0
    for v in alg.vertices:
        r, c = target.dims[v], source.dims[v]
        block = Matrix.zeros(field, r, c).copy_data()
        for i in range(r):
            for j in range(c):
                block[i, j] = col[pos]
                pos += 1
        blocks[v] = Matrix(field, block)
    return ModuleMap(source, target, blocks, check=False)


def hom_system(source: Module, target: Module) -> Matrix:
    """Intertwiner equations as one matrix over row-major blockwise unknowns.

    Unknown layout: blocks f_v in vertex order, each flattened row-major.
    Equation block per arrow a from s to t:
        (T_a kron I) f_s - (I kron S_a^T) f_t = 0
    using the row-major identity vec(A X B) = (A kron B^T) vec(X).
    """
    alg = source.algebra
    if alg != target.algebra:
        raise InputError("hom across different algebras")
    field = alg.field
    sizes = {v: target.dims[v] * source.dims[v] for v in alg.vertices}
    offs = {}
    pos = 0
    for v in alg.vertices:
        offs[v] = pos
        pos += sizes[v]
    nvars = pos
    nrows = sum(target.dims[t] * source.dims[s] for n, s, t in alg.arrows)
    if field.is_prime_field:
        big = np.zeros((nrows, nvars), dtype=np.int64)
    else:
        big = np.full((nrows, nvars), Fraction(0), dtype=object)
    r0 = 0
    for n, s, t in alg.arrows:
        rblk = target.dims[t] * source.dims[s]
        if rblk:
            if sizes[s]:
                k1 = kron(target.maps[n], Matrix.identity(field, source.dims[s]))
                big[r0:r0 + rblk, offs[s]:offs[s] + sizes[s]] += k1.data
            if sizes[t]:
                k2 = kron(Matrix.identity(field, target.dims[t]),
                          source.maps[n].transpose())
                big[r0:r0 + rblk, offs[t]:offs[t] + sizes[t]] -= k2.data
        r0 += rblk
    if field.is_prime_field:
        big %= field.p
    return Matrix(field, big)


def hom_basis(source: Module, target: Module) -> list[ModuleMap]:
    """Canonical basis of Hom(source, target)."""
    ker = hom_system(source, target).kernel_basis()
    out = []
    for j in range(ker.cols):
        col = [ker.data[i, j] for i in range(ker.rows)]
        out.append(_unvec(source, target, col))
    return out


def hom_dim(source: Module, target: Module) -> int:
    sys_mat = hom_system(source, target)
    return sys_mat.cols - sys_mat.rank()


def hom_coords(basis: list[ModuleMap], f: ModuleMap) -> Matrix:
    """Coordinates of f in a hom basis (solves the stacked linear system)."""
    field = f.source.algebra.field
    if not basis:
        if f.is_zero():
            return Matrix.zeros(field, 0, 1)
        raise InputError("map is not in the span of the empty basis")
    mat = Matrix.hstack([_vec(b) for b in basis])
    sol = mat.solve(_vec(f))
    if sol is None:
        raise InputError("map is not in the span of the given basis")
    return sol


# -- structural modules -----------------------------------------------------


def simple(alg: QuiverAlgebra, v) -> Module:
    return Module(alg, {v: 1}, {}, check=False)


def projective(alg: QuiverAlgebra, v) -> Module:
    """Paths out of v, with arrows acting by postcomposition."""
    basis = {w: alg.paths_between(v, w) for w in alg.vertices}
    index = {w: {p: i for i, p in enumerate(basis[w])} for w in alg.vertices}
    dims = {w: len(basis[w]) for w in alg.vertices}
    field = alg.field
    maps = {}
    for n, s, t in alg.arrows:
        m = Matrix.zeros(field, dims[t], dims[s]).copy_data()
        for j, p in enumerate(basis[s]):
            for c, q in alg.normal_form((p[0], p[1] + (n,))):
                m[index[t][q], j] = field.add(m[index[t][q], j], c)
        maps[n] = Matrix(field, m)
    return Module(alg, dims, maps, check=False)


def path_right_multiplication(alg: QuiverAlgebra, x: Path) -> ModuleMap:
    """The map P(target of x) -> P(source of x) sending p to p after x."""
    v_new = alg.path_target(x)
    v_old = alg.path_source(x)
    src = projective(alg, v_new)
    tgt = projective(alg, v_old)
    field = alg.field
    blocks = {}
    for w in alg.vertices:
        tgt_paths = alg.paths_between(v_old, w)
        tgt_index = {p: i for i, p in enumerate(tgt_paths)}
        src_paths = alg.paths_between(v_new, w)
        b = Matrix.zeros(field, len(tgt_paths), len(src_paths)).copy_data()
        for j, p in enumerate(src_paths):
            for c, q in alg.normal_form((v_old, x[1] + p[1])):
                b[tgt_index[q], j] = field.add(b[tgt_index[q], j], c)
        blocks[w] = Matrix(field, b)
    return ModuleMap(src, tgt, blocks)


def dual_module(m: Module) -> Module:
    """Vector-space dual, a module over the opposite algebra."""
    op = m.algebra.opposite()
    maps = {n: m.maps[n].transpose() for n, _, _ in m.algebra.arrows}
    return Module(op, dict(m.dims), maps, check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(
        dual_module(f.target),
        dual_module(f.source),
        {v: b.transpose() for v, b in f.blocks.items()},
        check=False,
    )


def injective(alg: QuiverAlgebra, v) -> Module:
    """Dual of the opposite-algebra projective at v."""
    return dual_module(projective(alg.opposite(), v))


def radical(m: Module) -> tuple[Module, ModuleMap]:
    """Joint image of all arrows."""
    alg = m.algebra
    field = alg.field
    spans = {}
    for v in alg.vertices:
        incoming = [m.maps[n] for n, s, t in alg.arrows if t == v]
        if incoming:
            spans[v] = Matrix.hstack(incoming).column_space()
        else:
            spans[v] = Matrix.zeros(field, m.dims[v], 0)
    return _span_submodule(m, spans)


def socle(m: Module) -> tuple[Module, ModuleMap]:
    """Joint kernel of all arrows."""
    alg = m.algebra
    field = alg.field
    spans = {}
    for v in alg.vertices:
        outgoing = [m.maps[n] for n, s, t in alg.arrows if s == v]
        if outgoing:
            spans[v] = Matrix.vstack(outgoing).kernel_basis()
        else:
            spans[v] = Matrix.identity(field, m.dims[v])
    return _span_submodule(m, spans)


def top(m: Module) -> tuple[Module, ModuleMap]:
    rad, incl = radical(m)
    return quotient_by(incl)


def projective_cover(m: Module) -> ModuleMap:
    """Surjection from a projective inducing an isomorphism on tops.

    Generators are lifted along a section of the quotient onto the top, so
    this works whether or not the quiver is acyclic.
    """
    alg = m.algebra
    field = alg.field
    _t, proj = top(m)
    gen_vertices, lifts = [], []
    for v in alg.vertices:
        section = proj._sections[v]
        for j in range(section.cols):
            gen_vertices.append(v)
            lifts.append(section.col(j))
    if not gen_vertices:
        return ModuleMap(Module.zero(alg), m, {}, check=False)
    summands = [projective(alg, v) for v in gen_vertices]
    total, _incls, _projs = direct_sum(summands)
    blocks = {}
    for w in alg.vertices:
        cols = []
        for v, lift in zip(gen_vertices, lifts):
            for p in alg.paths_between(v, w):
                cols.append(m.path_matrix(p) @ lift)
        blocks[w] = Matrix.hstack(cols) if cols else Matrix.zeros(field, m.dims[w], 0)
    cover = ModuleMap(total, m, blocks)
    if not cover.is_surjective():
        raise CertificateFailure("projective cover failed to surject")
    return cover


def injective_envelope(m: Module) -> ModuleMap:
    """Essential embedding into an injective, via opposite-algebra covers."""
    cover = projective_cover(dual_module(m))
    emb_dual = dual_map(cover)
    # the double dual is literally m again, so rebase the source
    emb = ModuleMap(m, emb_dual.target, emb_dual.blocks)
    if not emb.is_injective():
        raise CertificateFailure("envelope embedding is not injective")
    if not is_essential_image(emb):
        raise CertificateFailure("envelope embedding is not essential")
    return emb


def is_essential_image(incl: ModuleMap) -> bool:
    """A submodule is essential iff it contains the socle of the ambient."""
    soc, soc_incl = socle(incl.target)
    for v in incl.target.algebra.vertices:
        if soc.dims[v] == 0:
            continue
        if incl.blocks[v].solve(soc_incl.blocks[v]) is None:
            return False
    return True


def is_injective_module(m: Module) -> bool:
    """Injective iff the envelope adds nothing."""
    if m.is_zero():
        return True
    env = injective_envelope(m)
    return env.target.total_dim() == m.total_dim()


def is_projective_module(m: Module) -> bool:
    if m.is_zero():
        return True
    cover = projective_cover(m)
    return cover.source.total_dim() == m.total_dim()


def min_injective_resolution(m: Module, max_steps=None) -> list[ModuleMap]:
    """Chain m -> I0 -> I1 -> ... built from iterated envelopes.

    Requires an acyclic quiver so the iteration terminates.
    """
    alg = m.algebra
    if not alg.is_acyclic():
        raise UnsupportedError(
            "non-acyclic-quiver", "injective resolutions need an acyclic quiver"
        )
    if max_steps is None:
        max_steps = m.total_dim() * max(alg.dim, 1) + len(alg.vertices) + 4
    chain = []
    cur_env = injective_envelope(m)
    chain.append(cur_env)
    steps = 0
    while True:
        cok, proj = cur_env.cokernel()
        if cok.is_zero():
            break
        steps += 1
        if steps > max_steps:
            raise CertificateFailure("injective resolution failed to terminate")
        nxt = injective_envelope(cok)
        chain.append(nxt @ proj)
        cur_env = nxt
    return chain


def min_projective_resolution(m: Module, length: int):
    """(cover P0 -> m, [P1 -> P0, ..., P_length -> P_{length-1}])."""
    aug = projective_cover(m)
    diffs = []
    cur = aug
    for _ in range(length):
        ker, incl = cur.kernel()
        cov = projective_cover(ker)
        diffs.append(incl @ cov)
        cur = cov
    return aug, diffs


def ext_dim(m: Module, n: Module, i: int) -> int:
    """dim Ext^i(m, n) from a minimal projective resolution of m."""
    if i < 0:
        raise InputError("ext degree must be >= 0")
    if m.is_zero() or n.is_zero():
        return 0
    if i == 0:
        return hom_dim(m, n)
    aug, diffs = min_projective_resolution(m, i + 1)
    projectives = [aug.source] + [d.source for d in diffs]
    homs = [hom_basis(p, n) for p in projectives]

    def delta(j):
        # Hom(P_j, n) -> Hom(P_{j+1}, n), f -> f composed with d_{j+1}
        src_basis, tgt_basis = homs[j], homs[j + 1]
        field = m.algebra.field
        if not src_basis or not tgt_basis:
            return Matrix.zeros(field, len(tgt_basis), len(src_basis))
        return Matrix.hstack([hom_coords(tgt_basis, f @ diffs[j]) for f in src_basis])

    ker_dim = len(homs[i]) - delta(i).rank()
    return ker_dim - delta(i - 1).rank()
