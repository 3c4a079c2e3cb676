"""Tests for differential modules: cycle data, the homology embedding,
minimal resolutions, the module/minimal-model bijection, and the
experimental comparison between the two homotopy criteria.

The derived-hom dimension formula is cross-checked against the classical
hom-plus-first-ext count computed from projective resolutions, which is an
independent route through entirely different code.
"""

import numpy as np
import pytest

from semires.algebra import (
    Module,
    ModuleMap,
    direct_sum,
    ext_dim,
    hom_dim,
    injective,
    projective,
    simple,
    socle,
)
from semires.decomp import is_isomorphic
from semires.diagrams import (
    DiagramMap,
    diagram_hom_dim,
    factors_through_injectives,
    hom_in_derived,
    hom_space,
    homology_dims,
    stalk,
)
from semires.diffmod import (
    BZHData,
    DifferentialModule,
    bzh,
    canonical_sequence,
    eta_embedding,
    from_diagram,
    homology_map,
    is_gorenstein_injective_diff,
    is_morphism,
    morphism_to_diagram_map,
    null_homotopic_classical,
    resolve_min_diff,
    rz_H,
    rz_K,
    to_diagram,
)
from semires.errors import DoesNotSplit, InputError, UnsupportedError
from semires.fields import FieldSpec
from semires.generators import rand_graded_diagram, rand_module, standard_bases
from semires.matrix import Matrix
from semires.resolve import is_minimal_semiinjective, is_semiinjective
from semires.shape import Shape, TRIVIAL_VERTEX, trivial_algebra

F5 = FieldSpec.prime(5)
LOOP = Shape.loop()


def one(d, field=F5):
    return Module(trivial_algebra(field), {TRIVIAL_VERTEX: d}, {})


def endo(m, rows):
    return ModuleMap(
        m, m, {TRIVIAL_VERTEX: Matrix.from_rows(m.algebra.field, rows)}
    )


def k3_chain():
    m = one(3)
    return DifferentialModule(m, endo(m, [[0, 0, 0], [1, 0, 0], [0, 0, 0]]))


def shift2():
    m = one(2)
    return DifferentialModule(m, endo(m, [[0, 0], [1, 0]]))


def rand_diff(alg, rng):
    return from_diagram(rand_graded_diagram(LOOP, alg, rng, gens=1, cut_cols=2))


# -- type and conversions ----------------------------------------------------


def test_differential_must_square_to_zero():
    m = one(2)
    with pytest.raises(InputError):
        DifferentialModule(m, endo(m, [[0, 1], [1, 0]]))
    d = shift2()
    assert d.total_dim() == 2


def test_conversion_round_trip_exact():
    rng = np.random.default_rng(3)
    alg = standard_bases(F5)["a2"]
    hit = 0
    for _ in range(12):
        x = rand_graded_diagram(LOOP, alg, rng, gens=2, cut_cols=2)
        d = from_diagram(x)
        back = to_diagram(d)
        assert back.module.dims == x.module.dims
        assert homology_dims(back, 0, 1) == homology_dims(x, 0, 1)
        data = bzh(d)
        assert sum(data.homology.dim_vector()) == sum(homology_dims(x, 0, 1))
        if d.total_dim() > 0:
            hit += 1
    assert hit >= 6
    sh = Shape.cyclic(2, 2)
    with pytest.raises(InputError):
        from_diagram(stalk(sh, alg, 0, simple(alg, 1)))


def test_morphism_check_and_wrap():
    d = shift2()
    ident = ModuleMap.identity(d.underlying)
    assert is_morphism(ident, d, d)
    bad = endo(d.underlying, [[0, 1], [0, 0]])
    assert not is_morphism(bad, d, d)
    with pytest.raises(InputError):
        morphism_to_diagram_map(bad, d, d)
    dm = morphism_to_diagram_map(ident, d, d)
    assert dm.is_iso()


# -- cycle data --------------------------------------------------------------


def test_bzh_frozen():
    m = one(4)
    flat = DifferentialModule.zero_differential(m)
    data = bzh(flat)
    assert data.cycles_incl.source.total_dim() == 4
    assert data.boundaries_incl.source.total_dim() == 0
    assert data.homology.total_dim() == 4

    data = bzh(shift2())
    assert data.cycles_incl.source.total_dim() == 1
    assert data.boundaries_incl.source.total_dim() == 1
    assert data.homology.total_dim() == 0

    data = bzh(k3_chain())
    assert data.cycles_incl.source.total_dim() == 2
    assert data.boundaries_incl.source.total_dim() == 1
    assert data.homology.total_dim() == 1
    data.validate()


def test_bzh_naturality():
    rng = np.random.default_rng(11)
    alg = standard_bases(F5)["a2"]
    checked = 0
    for k in range(20):
        x = rand_graded_diagram(LOOP, alg, rng, gens=2, cut_cols=2)
        # endomorphism spaces are never empty, so alternate with them
        y = x if k % 2 else rand_graded_diagram(LOOP, alg, rng, gens=2, cut_cols=2)
        d, dp = from_diagram(x), from_diagram(y)
        basis = hom_space(x, y)
        if not basis:
            continue
        coeffs = rng.integers(0, 5, len(basis))
        f = basis[0].module_map.scale(int(coeffs[0]))
        for b, c in zip(basis[1:], coeffs[1:]):
            f = f + b.module_map.scale(int(c))
        f = ModuleMap(
            d.underlying, dp.underlying,
            {v: f.blocks[(0, v)] for v in alg.vertices},
        )
        assert is_morphism(f, d, dp)
        a, b = bzh(d), bzh(dp)
        # f carries cycles to cycles and boundaries to boundaries, and the
        # square with the quotients commutes
        from semires.algebra import restrict_map
        zf = restrict_map(f, a.cycles_incl, b.cycles_incl)
        assert ((f @ a.cycles_incl) - (b.cycles_incl @ zf)).is_zero()
        bf = restrict_map(
            zf, a.boundaries_incl, b.boundaries_incl
        )
        assert ((zf @ a.boundaries_incl) - (b.boundaries_incl @ bf)).is_zero()
        hf = homology_map(f, d, dp)
        assert ((hf @ a.zeta) - (b.zeta @ zf)).is_zero()
        checked += 1
    assert checked >= 5


# -- canonical sequence ------------------------------------------------------


def test_canonical_sequence_frozen():
    m = one(3)
    flat = DifferentialModule.zero_differential(m)
    zd, j, bd, p = canonical_sequence(flat)
    assert j.is_iso() and bd.total_dim() == 0

    zd, j, bd, p = canonical_sequence(shift2())
    assert zd.total_dim() == 1 and bd.total_dim() == 1

    d = k3_chain()
    zd, j, bd, p = canonical_sequence(d)
    hj = homology_map(j, zd, d)
    zeta = bzh(d).zeta
    assert all(
        np.array_equal(hj.blocks[v].copy_data(), zeta.blocks[v].copy_data())
        for v in d.underlying.algebra.vertices
    )


def test_canonical_sequence_random_exactness():
    rng = np.random.default_rng(17)
    alg = standard_bases(F5)["a3"]
    for _ in range(8):
        d = rand_diff(alg, rng)
        zd, j, bd, p = canonical_sequence(d)
        assert j.is_injective() and p.is_surjective()
        assert (p @ j).is_zero()
        assert zd.total_dim() + bd.total_dim() == d.total_dim()


# -- the homology embedding --------------------------------------------------


def test_eta_embedding_frozen():
    m = one(3)
    hd, eta = eta_embedding(DifferentialModule.zero_differential(m))
    assert eta.is_iso()

    hd, eta = eta_embedding(shift2())
    assert hd.total_dim() == 0

    d = k3_chain()
    hd, eta = eta_embedding(d)
    assert eta.blocks[TRIVIAL_VERTEX].copy_data().tolist() == [[0], [0], [1]]
    assert eta.is_injective()
    assert homology_map(eta, hd, d).is_iso()


def test_eta_embedding_does_not_split():
    alg = standard_bases(F5)["a2"]
    p1 = projective(alg, 1)
    tot, (i_p, i_s), (p_p, p_s) = direct_sum([p1, simple(alg, 2)])
    _soc, soc_incl = socle(p1)
    dmat = i_p @ soc_incl @ p_s
    d = DifferentialModule(tot, dmat)
    with pytest.raises(DoesNotSplit) as exc:
        eta_embedding(d)
    assert exc.value.code == "sequence-does-not-split"


def test_eta_embedding_random_invariant():
    rng = np.random.default_rng(23)
    split_count, nonsplit_count = 0, 0
    for name in ("a2", "a3"):
        alg = standard_bases(F5)[name]
        for _ in range(50):
            d = rand_diff(alg, rng)
            try:
                hd, eta = eta_embedding(d)
            except DoesNotSplit:
                nonsplit_count += 1
                continue
            split_count += 1
            assert eta.is_injective()
            assert homology_map(eta, hd, d).is_iso()
    assert split_count + nonsplit_count == 100
    assert split_count >= 40


# -- minimal resolutions -----------------------------------------------------


def test_resolve_min_diff_frozen():
    alg = standard_bases(F5)["a2"]
    r = resolve_min_diff(DifferentialModule.zero_differential(simple(alg, 2)))
    assert r.target.value_at(0).dim_vector() == (2, 1)
    assert sum(homology_dims(r.target, 0, 1)) == 1

    ex = shift2()
    r = resolve_min_diff(ex)
    assert r.target.total_dim() == 0

    e = injective(alg, 2)
    r = resolve_min_diff(DifferentialModule.zero_differential(e))
    assert r.map.is_iso()
    assert r.target.value_at(0).dim_vector() == e.dim_vector()


def test_resolve_min_diff_needs_hereditary():
    from semires.algebra import QuiverAlgebra
    rel = [[(1, ["a", "b"])]]
    nh = QuiverAlgebra(F5, [1, 2, 3], [("a", 1, 2), ("b", 2, 3)], rel)
    d = DifferentialModule.zero_differential(simple(nh, 3))
    with pytest.raises(UnsupportedError) as exc:
        resolve_min_diff(d)
    assert exc.value.code == "non-hereditary-base"


def test_resolve_min_diff_certificates_random():
    rng = np.random.default_rng(29)
    for name in ("a2", "a3"):
        alg = standard_bases(F5)[name]
        for k in range(100):
            d = rand_diff(alg, rng)
            r = resolve_min_diff(d, seed=k)
            # independent re-verification of all five certificates
            from semires.diagrams import is_weak_equivalence
            assert is_weak_equivalence(r.map)
            assert is_semiinjective(r.target)
            assert is_minimal_semiinjective(r.target, seed=k + 1)
            val = r.target.value_at(0)
            _soc, soc_incl = socle(val)
            assert (r.target.step_map(0) @ soc_incl).is_zero()
            assert homology_dims(r.target, 0, 1) == homology_dims(
                to_diagram(d), 0, 1
            )


# -- the module/minimal-model bijection --------------------------------------


def test_rz_round_trip_h_after_k():
    rng = np.random.default_rng(31)
    for name in ("a2", "a3"):
        alg = standard_bases(F5)[name]
        for k in range(25):
            m = rand_module(alg, rng)
            j = rz_K(m, seed=k)
            h = rz_H(j, seed=k)
            assert is_isomorphic(h, m, seed=k) is not None


def test_rz_round_trip_k_after_h():
    rng = np.random.default_rng(37)
    for name in ("a2", "a3"):
        alg = standard_bases(F5)[name]
        for k in range(25):
            m = rand_module(alg, rng)
            j = rz_K(m, seed=k)
            back = rz_K(rz_H(j, seed=k), seed=k + 1)
            a = to_diagram(j).module
            b = to_diagram(back).module
            assert is_isomorphic(a, b, seed=k) is not None


def test_rz_edges_and_gates():
    alg = standard_bases(F5)["a2"]
    z = rz_K(Module.zero(alg))
    assert z.total_dim() == 0
    with pytest.raises(InputError):
        rz_H(DifferentialModule.zero_differential(simple(alg, 2)))
    from semires.algebra import QuiverAlgebra
    rel = [[(1, ["a", "b"])]]
    nh = QuiverAlgebra(F5, [1, 2, 3], [("a", 1, 2), ("b", 2, 3)], rel)
    with pytest.raises(UnsupportedError) as exc:
        rz_K(simple(nh, 1))
    assert exc.value.code == "non-hereditary-base"
    # the (2,1)-dimensional minimal object round-trips through its homology
    j = rz_K(simple(alg, 2))
    back = rz_K(rz_H(j))
    assert is_isomorphic(to_diagram(j).module, to_diagram(back).module, seed=1) is not None


# -- Gorenstein injectivity --------------------------------------------------


def test_is_gorenstein_injective_frozen():
    alg = standard_bases(F5)["a2"]
    e = injective(alg, 2)
    assert is_gorenstein_injective_diff(DifferentialModule.zero_differential(e))
    assert not is_gorenstein_injective_diff(
        DifferentialModule.zero_differential(simple(alg, 2))
    )
    assert is_gorenstein_injective_diff(DifferentialModule.zero(alg))
    # injectivity of the underlying module decides, whatever the differential
    tot, _i, _p = direct_sum([e, e])
    blocks = {1: Matrix.from_rows(F5, [[0, 0], [1, 0]]),
              2: Matrix.from_rows(F5, [[0, 0], [1, 0]])}
    d = DifferentialModule(tot, ModuleMap(tot, tot, blocks))
    assert is_gorenstein_injective_diff(d)


def test_is_gorenstein_injective_needs_acyclic():
    from semires.algebra import QuiverAlgebra
    rel = [[(1, ["t", "t"])]]
    cyc = QuiverAlgebra(F5, [1], [("t", 1, 1)], rel)
    d = DifferentialModule.zero_differential(simple(cyc, 1))
    with pytest.raises(UnsupportedError) as exc:
        is_gorenstein_injective_diff(d)
    assert exc.value.code == "non-acyclic-base"


# -- homotopy criteria -------------------------------------------------------


def test_null_homotopy_classical_frozen():
    sh = shift2()
    assert null_homotopic_classical(ModuleMap.identity(sh.underlying), sh, sh)
    flat = DifferentialModule.zero_differential(one(1))
    assert not null_homotopic_classical(
        ModuleMap.identity(flat.underlying), flat, flat
    )
    assert null_homotopic_classical(
        ModuleMap.zero_map(flat.underlying, flat.underlying), flat, flat
    )


def test_envelope_factorization_implies_classical_homotopy():
    # one containment is structural: factoring through a coinduced
    # injective object forces a classical homotopy witness; the converse
    # is measured, divergences are allowed only in that one direction
    rng = np.random.default_rng(41)
    alg = standard_bases(F5)["a2"]
    checked, divergent = 0, 0
    for k in range(64):
        x = rand_graded_diagram(LOOP, alg, rng, gens=2, cut_cols=2)
        y = x if k % 3 == 0 else rand_graded_diagram(LOOP, alg, rng, gens=2, cut_cols=2)
        basis = hom_space(x, y)
        if not basis:
            continue
        coeffs = rng.integers(0, 5, len(basis))
        dm = basis[0].scale(int(coeffs[0]))
        for b, c in zip(basis[1:], coeffs[1:]):
            dm = dm + b.scale(int(c))
        d, dp = from_diagram(x), from_diagram(y)
        f = ModuleMap(
            d.underlying, dp.underlying,
            {v: dm.module_map.blocks[(0, v)] for v in alg.vertices},
        )
        envelope_zero = factors_through_injectives(dm)
        classical = null_homotopic_classical(f, d, dp)
        if envelope_zero:
            assert classical
        if classical and not envelope_zero:
            divergent += 1
        checked += 1
    assert checked >= 20
    # divergence, when it happens, must be one-sided; no assertion on count


# -- consistency with the derived-hom dimension formula ----------------------


def test_derived_hom_dimension_formula():
    rng = np.random.default_rng(43)
    for name in ("a2", "a3"):
        alg = standard_bases(F5)[name]
        pairs = [
            (simple(alg, 1), simple(alg, 1)),
            (simple(alg, 1), simple(alg, 2)),
            (simple(alg, 2), simple(alg, 1)),
            (projective(alg, 1), simple(alg, 2)),
            (injective(alg, 2), projective(alg, 1)),
        ]
        pairs += [
            (rand_module(alg, rng, gens=1, cut_cols=1),
             rand_module(alg, rng, gens=1, cut_cols=1))
            for _ in range(10)
        ]
        checked = 0
        for m, n in pairs:
            x = to_diagram(DifferentialModule.zero_differential(m))
            y = to_diagram(DifferentialModule.zero_differential(n))
            dim, _reps = hom_in_derived(x, y)
            expected = hom_dim(m, n) + ext_dim(m, n, 1)
            assert dim == expected
            if expected > 0:
                checked += 1
        assert checked >= 3
