"""Semiinjective machinery: recognition, splitting off the injective-object
part, minimality certification, construction of minimal resolutions, and
comparison of two resolutions of the same diagram.

Every constructed resolution is re-verified from scratch before it is
returned; the certified flags on a Resolution are only ever set after the
corresponding predicate has passed. Searches take explicit seeds and all
linear solving uses the canonical zero-free-variable solver, so identical
inputs give identical outputs.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Module,
    ModuleMap,
    direct_sum,
    hom_basis,
    hom_coords,
    injective_envelope,
    is_injective_module,
)
from .decomp import indecomposables
from .diagrams import (
    Diagram,
    DiagramMap,
    coinduction_embedding,
    diagram_direct_sum,
    diagram_hom_basis,
    homology_space,
    is_exact,
    is_weak_equivalence,
)
from .errors import (
    CertificateFailure,
    InputError,
    NotFoundWithinBound,
    UnsupportedError,
)
from .matrix import Matrix

DEFAULT_BOUND = 3


@dataclass(frozen=True)
class CertifiedFlags:
    weq: bool
    semiinjective: bool
    minimal: bool


@dataclass
class Resolution:
    """A weak equivalence source -> target with verified certificates."""

    source: Diagram
    target: Diagram
    map: DiagramMap
    certified: CertifiedFlags


def _same_diagram(x: Diagram, y: Diagram) -> bool:
    if x.shape != y.shape or x.base != y.base:
        return False
    if x.module.dims != y.module.dims:
        return False
    return all(
        np.array_equal(x.module.maps[n].copy_data(), y.module.maps[n].copy_data())
        for n, _s, _t in x.module.algebra.arrows
    )


def _combine_module_maps(basis, coeffs, source: Module, target: Module) -> ModuleMap:
    out = ModuleMap.zero_map(source, target)
    for k, b in enumerate(basis):
        c = coeffs.entry(k, 0)
        if c != source.algebra.field.zero():
            out = out + b.scale(c)
    return out


def _extend_along_mono(j: ModuleMap, u: ModuleMap) -> ModuleMap:
    """The canonical f with f after j = u, for u into an injective module.

    j must be injective and u.target injective over the base; existence is
    then guaranteed, and its absence is reported as a broken certificate.
    """
    big, tgt = j.target, u.target
    basis = hom_basis(big, tgt)
    frame = hom_basis(j.source, tgt)
    if not frame:
        return ModuleMap.zero_map(big, tgt)
    if not basis:
        raise CertificateFailure("no maps available to extend along a monomorphism")
    cols = Matrix.hstack([hom_coords(frame, g @ j) for g in basis])
    sol = cols.solve(hom_coords(frame, u))
    if sol is None:
        raise CertificateFailure("extension along a monomorphism does not exist")
    return _combine_module_maps(basis, sol, big, tgt)


def _factor_through_surjection(psi: ModuleMap, sur: ModuleMap) -> ModuleMap:
    """The unique g with g after sur = psi, for psi killing ker(sur)."""
    blocks = {}
    for v in psi.source.algebra.vertices:
        sol = sur.blocks[v].solve_left(psi.blocks[v])
        if sol is None:
            raise CertificateFailure("map does not factor through the surjection")
        blocks[v] = sol
    return ModuleMap(sur.target, psi.target, blocks)


def _corestrict(f: ModuleMap):
    """(image, inclusion, surjection) with inclusion after surjection = f."""
    img, incl = f.image()
    blocks = {}
    for v in f.source.algebra.vertices:
        sol = incl.blocks[v].solve(f.blocks[v])
        if sol is None:
            raise CertificateFailure("image corestriction failed")
        blocks[v] = sol
    return img, incl, ModuleMap(f.source, img, blocks)


# -- recognition -------------------------------------------------------------


def is_semiinjective(x: Diagram) -> bool:
    """True when every value of the diagram is injective over the base."""
    if not x.base.is_acyclic():
        raise UnsupportedError(
            "non-acyclic-base",
            "the semiinjectivity test needs an acyclic base quiver",
        )
    return all(is_injective_module(x.value_at(q)) for q in x.shape.objects)


def _split_core(i: Diagram, seed: int):
    if not is_semiinjective(i):
        raise UnsupportedError(
            "not-semiinjective", "splitting applies to semiinjective diagrams only"
        )
    try:
        dec = indecomposables(i.module, seed=seed)
    except UnsupportedError as exc:
        raise UnsupportedError(
            "decomposition-unavailable",
            "splitting needs indecomposable decomposition: " + str(exc),
        ) from exc
    keep, drop = [], []
    for s, incl, proj in dec.summands:
        d = Diagram(i.shape, i.base, s)
        (drop if is_exact(d) else keep).append((d, incl, proj))

    def assemble(parts):
        if not parts:
            z = Diagram.zero(i.shape, i.base)
            return z, [], []
        total, incls, projs = diagram_direct_sum([d for d, _, _ in parts])
        return total, incls, projs

    ip, ip_incls, _ip_projs = assemble(keep)
    jp, jp_incls, _jp_projs = assemble(drop)
    total, (a, b), (pa, _pb) = diagram_direct_sum([ip, jp])
    iso = DiagramMap.zero_map(i, total)
    for (d, _incl, proj), sub_incl in zip(keep, ip_incls):
        iso = iso + ((a @ sub_incl) @ DiagramMap(i, d, proj))
    for (d, _incl, proj), sub_incl in zip(drop, jp_incls):
        iso = iso + ((b @ sub_incl) @ DiagramMap(i, d, proj))
    if not iso.is_iso():
        raise CertificateFailure("splitting witness failed to be an isomorphism")
    return ip, jp, iso, pa


def split_injective_part(i: Diagram, seed: int = 0):
    """(i', j', iso): i' keeps the non-exact indecomposable summands, j'
    collects the exact ones (an injective object), iso: i -> i' + j'."""
    ip, jp, iso, _pa = _split_core(i, seed)
    return ip, jp, iso


def is_minimal_semiinjective(i: Diagram, seed: int = 0) -> bool:
    """True when the injective-object part of the splitting is zero."""
    _ip, jp, _iso, _pa = _split_core(i, seed)
    return jp.total_dim() == 0


# -- construction ------------------------------------------------------------


def _certified(x: Diagram, target: Diagram, rmap: DiagramMap, seed: int) -> Resolution:
    failures = []
    if not is_weak_equivalence(rmap):
        failures.append("weak equivalence")
    if not is_semiinjective(target):
        failures.append("semiinjectivity")
        minimal = False
    else:
        minimal = is_minimal_semiinjective(target, seed=seed)
    if not minimal:
        failures.append("minimality")
    if failures:
        raise CertificateFailure(
            "resolution certificates failed: " + ", ".join(failures)
        )
    return Resolution(x, target, rmap, CertifiedFlags(True, True, True))


def _two_step_resolution(x: Diagram):
    """Direct construction for nilpotency-two shapes over a hereditary base.

    At each object take the injective envelope of the homology and its
    cokernel; the resolution value at q is envelope(q) + cokernel(q+1) with
    the step passing the envelope through the cokernel projection.
    """
    shape, base = x.shape, x.base
    m = shape.num_objects
    e0, e1, delta, f = {}, {}, {}, {}
    for q in shape.objects:
        hs = homology_space(x, q, 1)
        env = injective_envelope(hs.module)
        cok, cokp = env.cokernel()
        if not is_injective_module(cok):
            raise CertificateFailure(
                "envelope cokernel not injective; base is not hereditary"
            )
        e0[q], e1[q], delta[q] = env.target, cok, cokp
        # value map: kill boundaries, send a cycle to its class's envelope
        f[q] = _extend_along_mono(hs.cycles_incl, env @ hs.proj)
    g = {}
    for q in shape.objects:
        psi = delta[q] @ f[q]
        _b, b_incl, b_sur = _corestrict(x.step_map(q))
        g[q] = _extend_along_mono(b_incl, _factor_through_surjection(psi, b_sur))
    values, incl0, incl1, proj0 = {}, {}, {}, {}
    for q in shape.objects:
        tot, (i0, i1), (p0, _p1) = direct_sum([e0[q], e1[(q + 1) % m]])
        values[q], incl0[q], incl1[q], proj0[q] = tot, i0, i1, p0
    steps = {
        q: incl1[(q - 1) % m] @ delta[q] @ proj0[q] for q in shape.objects
    }
    target = Diagram.from_values(shape, base, values, steps)
    comps = {
        q: (incl0[q] @ f[q]) + (incl1[q] @ g[(q + 1) % m]) for q in shape.objects
    }
    rmap = DiagramMap.from_components(x, target, comps)
    return target, rmap


def _totalized(x: Diagram, stages, seed: int) -> Resolution:
    """Collapse a finite termwise-injective coresolution into one diagram.

    stages[s] = (embedding into the s-th injective object, projection onto
    the s-th cokernel); the last cokernel is zero. Only valid for
    nilpotency-two shapes, where the alternating-sign step squares to zero.
    """
    shape, base = x.shape, x.base
    m = shape.num_objects
    field = base.field
    cols = [emb.target for emb, _proj in stages]
    conn = [
        stages[s + 1][0] @ stages[s][1] for s in range(len(stages) - 1)
    ]
    incls, projs, values = {}, {}, {}
    for q in shape.objects:
        pieces = [cols[s].value_at((q + s) % m) for s in range(len(cols))]
        tot, ins, prs = direct_sum(pieces)
        values[q], incls[q], projs[q] = tot, ins, prs
    steps = {}
    for q in shape.objects:
        qm = (q - 1) % m
        step = ModuleMap.zero_map(values[q], values[qm])
        for s, col in enumerate(cols):
            o = (q + s) % m
            sign = field.one() if s % 2 == 0 else field.neg(field.one())
            step = step + (
                incls[qm][s] @ col.step_map(o).scale(sign) @ projs[q][s]
            )
            if s + 1 < len(cols):
                step = step + (
                    incls[qm][s + 1] @ conn[s].component_at(o) @ projs[q][s]
                )
        steps[q] = step
    total = Diagram.from_values(shape, base, values, steps)
    comps = {
        q: incls[q][0] @ stages[0][0].component_at(q) for q in shape.objects
    }
    into_total = DiagramMap.from_components(x, total, comps)
    if not is_weak_equivalence(into_total):
        raise CertificateFailure("collapsed coresolution is not a weak equivalence")
    ip, _jp, iso, pa = _split_core(total, seed)
    return _certified(x, ip, (pa @ iso) @ into_total, seed)


def _bounded_search(x: Diagram, seed: int, bound: int) -> Resolution:
    cur = x
    stages = []
    for _ in range(bound + 1):
        emb = coinduction_embedding(cur)
        cok, proj = emb.cokernel()
        stages.append((emb, proj))
        if cok.total_dim() == 0:
            if x.shape.nilpotency == 2:
                return _totalized(x, stages, seed)
            raise NotFoundWithinBound(
                "a finite injective-object coresolution exists, but only "
                "two-step shapes can be collapsed into a single resolution"
            )
        cur = cok
    raise NotFoundWithinBound(
        "no minimal semiinjective resolution found within %d coinduction steps"
        % bound
    )


def resolve_min(x: Diagram, seed: int = 0, bound: int = DEFAULT_BOUND) -> Resolution:
    """A certified minimal semiinjective resolution of x.

    Exact diagrams resolve to zero; semiinjective ones project onto their
    minimal part; nilpotency-two shapes over a hereditary base use the
    direct envelope construction; everything else falls back to a bounded
    coinduction search whose output is trusted only via its certificates.
    """
    if not x.base.is_acyclic():
        raise UnsupportedError(
            "non-acyclic-base", "minimal resolutions need an acyclic base quiver"
        )
    if is_exact(x):
        target = Diagram.zero(x.shape, x.base)
        return _certified(x, target, DiagramMap.zero_map(x, target), seed)
    if is_semiinjective(x):
        ip, _jp, iso, pa = _split_core(x, seed)
        return _certified(x, ip, pa @ iso, seed)
    if x.shape.nilpotency == 2 and x.base.is_hereditary:
        target, rmap = _two_step_resolution(x)
        return _certified(x, target, rmap, seed)
    return _bounded_search(x, seed, bound)


# -- comparison --------------------------------------------------------------


def comparison_iso(r: Resolution, rp: Resolution, seed: int = 0):
    """The canonical comparison map i: r.target -> rp.target together with
    the witness (envelope inclusion, h) for i after r.map ~ rp.map.

    Both resolutions must be certified minimal with the same source; the
    comparison map is then forced to be invertible, and any failure is a
    broken certificate rather than a negative verdict.
    """
    for res in (r, rp):
        if not (res.certified.weq and res.certified.semiinjective and res.certified.minimal):
            raise InputError("comparison needs two fully certified resolutions")
    if not _same_diagram(r.source, rp.source):
        raise InputError("comparison needs resolutions of the same diagram")
    x = r.source
    field = x.base.field
    iota = injective_envelope(x.module)
    ediag = Diagram(x.shape, x.base, iota.target)
    iota_dm = DiagramMap(x, ediag, iota)
    bi = diagram_hom_basis(r.target, rp.target)
    bh = diagram_hom_basis(ediag, rp.target)
    frame = hom_basis(x.module, rp.target.module)
    minus = field.neg(field.one())
    cols = [hom_coords(frame, g.module_map @ r.map.module_map) for g in bi] + [
        hom_coords(frame, (k.module_map @ iota).scale(minus)) for k in bh
    ]
    rhs = hom_coords(frame, rp.map.module_map)
    if not cols:
        if not rhs.is_zero():
            raise CertificateFailure(
                "comparison system admits no solution", code="no-solution"
            )
        sol = Matrix.zeros(field, 0, 1)
    else:
        sol = Matrix.hstack(cols).solve(rhs)
        if sol is None:
            raise CertificateFailure(
                "comparison system admits no solution", code="no-solution"
            )
    data = sol.copy_data()
    ci = _combine_module_maps(
        [g.module_map for g in bi],
        Matrix(field, data[: len(bi), :]),
        r.target.module,
        rp.target.module,
    )
    ch = _combine_module_maps(
        [k.module_map for k in bh],
        Matrix(field, data[len(bi):, :]),
        ediag.module,
        rp.target.module,
    )
    i = DiagramMap(r.target, rp.target, ci)
    h = DiagramMap(ediag, rp.target, ch)
    if not ((i @ r.map) - rp.map - (h @ iota_dm)).is_zero():
        raise CertificateFailure("comparison witness identity failed")
    if not i.is_iso():
        raise CertificateFailure(
            "comparison map is not invertible", code="not-invertible"
        )
    return i, (iota_dm, h)


def check_weq_splits(i: Diagram, f: DiagramMap, seed: int = 0):
    """A retraction g with g after f = identity, for a weak equivalence f
    out of a minimal semiinjective diagram."""
    if not _same_diagram(f.source, i):
        raise InputError("the map must start at the given diagram")
    if not is_minimal_semiinjective(i, seed=seed):
        raise InputError("retraction search needs a minimal semiinjective source")
    if not is_weak_equivalence(f):
        raise InputError("retraction search needs a weak equivalence")
    basis = diagram_hom_basis(f.target, i)
    frame = hom_basis(i.module, i.module)
    ident = ModuleMap.identity(i.module)
    if not frame:
        return DiagramMap.zero_map(f.target, i)
    if not basis:
        raise CertificateFailure(
            "no retraction exists for the weak equivalence", code="no-retraction"
        )
    cols = Matrix.hstack([hom_coords(frame, g.module_map @ f.module_map) for g in basis])
    sol = cols.solve(hom_coords(frame, ident))
    if sol is None:
        raise CertificateFailure(
            "no retraction exists for the weak equivalence", code="no-retraction"
        )
    g = DiagramMap(
        f.target, i, _combine_module_maps([g.module_map for g in basis], sol, f.target.module, i.module)
    )
    if not ((g @ f) - DiagramMap.identity(i)).is_zero():
        raise CertificateFailure("retraction identity failed to verify")
    return g
