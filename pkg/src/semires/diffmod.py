"""Differential modules: a module with a square-zero endomorphism, the
cycles/boundaries/homology data, the monic quasi-isomorphism from homology
when the cycle sequence splits, minimal resolutions over hereditary bases,
and the bijection between modules and minimal differential modules.

Everything here is the one-object specialization of the diagram machinery;
certified conversions in both directions keep the two views interchangeable.
"""

from dataclasses import dataclass

from .algebra import (
    Module,
    ModuleMap,
    descend_map,
    hom_basis,
    hom_coords,
    is_injective_module,
    quotient_by,
    restrict_map,
    socle,
)
from .diagrams import (
    Diagram,
    DiagramMap,
)
from .errors import (
    CertificateFailure,
    DoesNotSplit,
    InputError,
    UnsupportedError,
)
from .matrix import Matrix
from .resolve import (
    Resolution,
    is_minimal_semiinjective,
    is_semiinjective,
    resolve_min,
)
from .shape import Shape


@dataclass
class DifferentialModule:
    """A module together with a square-zero module endomorphism."""

    underlying: Module
    differential: ModuleMap

    def __post_init__(self):
        d = self.differential
        if d.source is not self.underlying or d.target is not self.underlying:
            if d.source.dims != self.underlying.dims:
                raise InputError("differential must be an endomorphism of the module")
        if not (d @ d).is_zero():
            raise InputError("differential must square to zero")

    @classmethod
    def zero_differential(cls, m: Module) -> "DifferentialModule":
        return cls(m, ModuleMap.zero_map(m, m))

    @classmethod
    def zero(cls, alg) -> "DifferentialModule":
        return cls.zero_differential(Module.zero(alg))

    def total_dim(self) -> int:
        return self.underlying.total_dim()

    def __repr__(self):
        return f"DifferentialModule(dims={self.underlying.dim_vector()})"


LOOP = Shape.loop()


def to_diagram(d: DifferentialModule) -> Diagram:
    return Diagram.from_values(
        LOOP, d.underlying.algebra, {0: d.underlying}, {0: d.differential}
    )


def from_diagram(x: Diagram) -> DifferentialModule:
    if not x.shape.is_loop:
        raise InputError("only one-object diagrams convert to differential modules")
    return DifferentialModule(x.value_at(0), x.step_map(0))


def is_morphism(f: ModuleMap, d: DifferentialModule, dp: DifferentialModule) -> bool:
    """A module map is a morphism when it intertwines the differentials."""
    return ((dp.differential @ f) - (f @ d.differential)).is_zero()


def morphism_to_diagram_map(
    f: ModuleMap, d: DifferentialModule, dp: DifferentialModule
) -> DiagramMap:
    if not is_morphism(f, d, dp):
        raise InputError("map does not intertwine the differentials")
    return DiagramMap.from_components(to_diagram(d), to_diagram(dp), {0: f})


@dataclass
class BZHData:
    """Cycles, boundaries inside them, and the homology quotient."""

    cycles_incl: ModuleMap      # Z -> underlying
    boundaries_incl: ModuleMap  # B -> Z
    homology: Module
    zeta: ModuleMap             # Z -> homology, surjective

    def validate(self):
        if not self.cycles_incl.is_injective():
            raise CertificateFailure("cycle inclusion must be monic")
        if not self.boundaries_incl.is_injective():
            raise CertificateFailure("boundary inclusion must be monic")
        if not self.zeta.is_surjective():
            raise CertificateFailure("homology quotient must be epic")
        if not (self.zeta @ self.boundaries_incl).is_zero():
            raise CertificateFailure("boundaries must die in homology")
        z = self.cycles_incl.source
        if (
            self.boundaries_incl.source.total_dim() + self.homology.total_dim()
            != z.total_dim()
        ):
            raise CertificateFailure("cycle sequence fails exactness by dimensions")


def bzh(d: DifferentialModule) -> BZHData:
    """Kernel, image-inside-kernel, and their quotient, with canonical bases."""
    z, z_incl = d.differential.kernel()
    _b_amb, b_into_m = d.differential.image()
    b_incl = restrict_map(ModuleMap.identity(d.underlying), b_into_m, z_incl)
    h, zeta = quotient_by(b_incl)
    out = BZHData(z_incl, b_incl, h, zeta)
    out.validate()
    return out


def homology_map(
    f: ModuleMap, d: DifferentialModule, dp: DifferentialModule
) -> ModuleMap:
    """The induced map on homology of a morphism of differential modules."""
    if not is_morphism(f, d, dp):
        raise InputError("map does not intertwine the differentials")
    a, b = bzh(d), bzh(dp)
    zf = restrict_map(f, a.cycles_incl, b.cycles_incl)
    return descend_map(b.zeta @ zf, a.zeta)


def canonical_sequence(d: DifferentialModule):
    """(cycles-with-zero, j, boundaries-with-zero, p): the exact sequence
    embedding the cycles and projecting onto the boundaries.

    j is the cycle inclusion viewed as a morphism from (Z, 0); p is the
    corestriction of the differential viewed as a morphism to (B, 0); the
    composite vanishes and exactness is verified.
    """
    data = bzh(d)
    z = data.cycles_incl.source
    zd = DifferentialModule.zero_differential(z)
    j = data.cycles_incl
    b_in_z = data.boundaries_incl
    b = b_in_z.source
    bd = DifferentialModule.zero_differential(b)
    # p: underlying -> B, with (Z -> underlying -> B) = 0 and
    # incl . p = differential
    full_b_incl = data.cycles_incl @ b_in_z
    blocks = {}
    for v in d.underlying.algebra.vertices:
        sol = full_b_incl.blocks[v].solve(d.differential.blocks[v])
        if sol is None:
            raise CertificateFailure("differential does not corestrict to boundaries")
        blocks[v] = sol
    p = ModuleMap(d.underlying, b, blocks)
    if not is_morphism(j, zd, d) or not is_morphism(p, d, bd):
        raise CertificateFailure("canonical sequence maps fail to be morphisms")
    if not p.is_surjective() or not j.is_injective():
        raise CertificateFailure("canonical sequence fails at an end")
    if not (p @ j).is_zero():
        raise CertificateFailure("canonical sequence composite is nonzero")
    if z.total_dim() + b.total_dim() != d.total_dim():
        raise CertificateFailure("canonical sequence fails exactness by dimensions")
    return zd, j, bd, p


def eta_embedding(d: DifferentialModule):
    """A monic quasi-isomorphism from (homology, 0) into d, built from a
    splitting of the boundaries-inside-cycles sequence.

    Needs a retraction of the boundary inclusion over the base; when none
    exists the hypothesis fails and this is reported as DoesNotSplit. The
    embedding is certified monic with invertible induced homology map, and
    its cokernel is certified exact.
    """
    data = bzh(d)
    z = data.cycles_incl.source
    b_in_z = data.boundaries_incl
    b = b_in_z.source
    basis = hom_basis(z, b)
    ident_b = ModuleMap.identity(b)
    if b.total_dim() == 0:
        retraction = ModuleMap.zero_map(z, b)
    else:
        frame = hom_basis(b, b)
        cols = Matrix.hstack([hom_coords(frame, g @ b_in_z) for g in basis]) if basis else None
        sol = cols.solve(hom_coords(frame, ident_b)) if cols is not None else None
        if sol is None:
            raise DoesNotSplit("the boundaries-in-cycles sequence does not split")
        retraction = ModuleMap.zero_map(z, b)
        for k, g in enumerate(basis):
            retraction = retraction + g.scale(sol.entry(k, 0))
    complement = ModuleMap.identity(z) - (b_in_z @ retraction)
    section = descend_map(complement, data.zeta)
    h = data.homology
    hd = DifferentialModule.zero_differential(h)
    eta = data.cycles_incl @ section
    if not eta.is_injective():
        raise CertificateFailure("homology embedding failed to be monic")
    if not is_morphism(eta, hd, d):
        raise CertificateFailure("homology embedding is not a morphism")
    if not homology_map(eta, hd, d).is_iso():
        raise CertificateFailure("homology embedding is not a quasi-isomorphism")
    cok, proj = eta.cokernel()
    dv = descend_map(proj @ d.differential, proj)
    v = DifferentialModule(cok, dv)
    if bzh(v).homology.total_dim() != 0:
        raise CertificateFailure("cokernel of the homology embedding is not exact")
    return hd, eta


def resolve_min_diff(d: DifferentialModule, seed: int = 0) -> Resolution:
    """A certified minimal resolution of a differential module.

    Requires a hereditary base. Besides the shared certificates (morphism,
    quasi-isomorphism, termwise injectivity, no exact indecomposable
    summand) the target's socle must lie in the kernel of its differential.
    """
    alg = d.underlying.algebra
    if not alg.is_hereditary:
        raise UnsupportedError(
            "non-hereditary-base",
            "minimal differential-module resolutions need a hereditary base",
        )
    r = resolve_min(to_diagram(d), seed=seed)
    val = r.target.value_at(0)
    _soc, soc_incl = socle(val)
    if not (r.target.step_map(0) @ soc_incl).is_zero():
        raise CertificateFailure("socle of the target escapes the differential kernel")
    return r


def is_gorenstein_injective_diff(d: DifferentialModule) -> bool:
    """Over an acyclic base this reduces to injectivity of the underlying
    module, whatever the differential."""
    if not d.underlying.algebra.is_acyclic():
        raise UnsupportedError(
            "non-acyclic-base",
            "the Gorenstein injectivity test needs an acyclic base quiver",
        )
    return is_injective_module(d.underlying)


def rz_H(d: DifferentialModule, seed: int = 0) -> Module:
    """The homology side of the bijection; input must be a certified
    minimal semiinjective differential module."""
    x = to_diagram(d)
    if not is_semiinjective(x) or not is_minimal_semiinjective(x, seed=seed):
        raise InputError(
            "the homology direction applies to minimal semiinjective inputs only"
        )
    return bzh(d).homology


def rz_K(m: Module, seed: int = 0) -> DifferentialModule:
    """The minimal-model side of the bijection: the resolution target of
    the zero-differential module on m."""
    if not m.algebra.is_hereditary:
        raise UnsupportedError(
            "non-hereditary-base", "the minimal-model direction needs a hereditary base"
        )
    r = resolve_min_diff(DifferentialModule.zero_differential(m), seed=seed)
    return from_diagram(r.target)


def null_homotopic_classical(
    f: ModuleMap, d: DifferentialModule, dp: DifferentialModule
) -> bool:
    """Whether f equals (differential of dp) s + s (differential of d) for
    some module map s. Exposed as an experimental comparison point; the
    envelope-factorization criterion is the operative relation."""
    if not is_morphism(f, d, dp):
        raise InputError("map does not intertwine the differentials")
    basis = hom_basis(d.underlying, dp.underlying)
    if not basis:
        return f.is_zero()
    frame = basis
    cols = Matrix.hstack(
        [
            hom_coords(frame, (dp.differential @ s) + (s @ d.differential))
            for s in basis
        ]
    )
    return cols.solve(hom_coords(frame, f)) is not None
