"""Endomorphism analysis: Fitting splits, decomposition into summands
with local endomorphism rings, and isomorphism testing.

Everything here is driven by minimal polynomials of endomorphisms. A
minimal polynomial with two coprime factors hands us a nontrivial
Fitting split; when no candidate endomorphism splits, locality of the
endomorphism ring is certified directly, never assumed. Polynomial
factorization is implemented for prime fields only, so decomposition
over the rationals is deliberately refused rather than approximated.

Polynomials are plain coefficient lists in ascending degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iter_product

import numpy as np

from .algebra import (
    Module,
    ModuleMap,
    direct_sum,
    hom_basis,
    hom_coords,
    hom_dim,
)
from .errors import (
    CertificateFailure,
    Inconclusive,
    InputError,
    UnsupportedError,
)
from .matrix import Matrix

RETRY_BUDGET = 64
EXHAUSTIVE_LIMIT = 1 << 16


# -- polynomial arithmetic over a field spec --------------------------------


def poly_trim(field, c):
    c = list(c)
    while c and c[-1] == field.zero():
        c.pop()
    return c


def poly_deg(c) -> int:
    return len(c) - 1


def poly_add(field, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero()
        y = b[i] if i < len(b) else field.zero()
        out.append(field.add(x, y))
    return poly_trim(field, out)


def poly_sub(field, a, b):
    return poly_add(field, a, [field.neg(x) for x in b])


def poly_scale(field, a, s):
    return poly_trim(field, [field.mul(s, x) for x in a])


def poly_mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == field.zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return poly_trim(field, out)


def poly_divmod(field, a, b):
    b = poly_trim(field, b)
    if not b:
        raise InputError("polynomial division by zero")
    a = poly_trim(field, a)
    inv_lead = field.inv(b[-1])
    quot = [field.zero()] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b) and rem:
        c = field.mul(rem[-1], inv_lead)
        k = len(rem) - len(b)
        quot[k] = c
        for i, y in enumerate(b):
            rem[k + i] = field.sub(rem[k + i], field.mul(c, y))
        rem = poly_trim(field, rem)
    return poly_trim(field, quot), rem


def poly_mod(field, a, b):
    return poly_divmod(field, a, b)[1]


def poly_monic(field, a):
    a = poly_trim(field, a)
    if not a:
        return a
    return poly_scale(field, a, field.inv(a[-1]))


def poly_gcd(field, a, b):
    a, b = poly_trim(field, a), poly_trim(field, b)
    while b:
        a, b = b, poly_mod(field, a, b)
    return poly_monic(field, a)


def poly_lcm(field, a, b):
    a, b = poly_trim(field, a), poly_trim(field, b)
    if not a or not b:
        return []
    g = poly_gcd(field, a, b)
    q, _ = poly_divmod(field, poly_mul(field, a, b), g)
    return poly_monic(field, q)


def poly_pow_mod(field, base, e, mod):
    out = [field.one()]
    base = poly_mod(field, base, mod)
    while e > 0:
        if e & 1:
            out = poly_mod(field, poly_mul(field, out, base), mod)
        e >>= 1
        if e:
            base = poly_mod(field, poly_mul(field, base, base), mod)
    return out


def poly_derivative(field, a):
    return poly_trim(
        field,
        [field.mul(field.coerce(i), a[i]) for i in range(1, len(a))],
    )


# -- factorization over prime fields ----------------------------------------


def _require_prime(field):
    if not field.is_prime_field:
        raise UnsupportedError(
            "rationals-unsupported",
            "polynomial factorization is only available over prime fields",
        )


def squarefree_decomposition(field, f):
    """Monic squarefree parts with multiplicities, product recovering f."""
    _require_prime(field)
    p = field.p
    out = []

    def run(f, scale):
        f = poly_monic(field, f)
        if poly_deg(f) <= 0:
            return
        fp = poly_derivative(field, f)
        if not fp:
            # f is a p-th power: peel one Frobenius layer
            run([f[i] for i in range(0, len(f), p)], scale * p)
            return
        g = poly_gcd(field, f, fp)
        w, _ = poly_divmod(field, f, g)
        i = 1
        while poly_deg(w) > 0:
            y = poly_gcd(field, w, g)
            z, _ = poly_divmod(field, w, y)
            if poly_deg(z) > 0:
                out.append((poly_monic(field, z), i * scale))
            g, _ = poly_divmod(field, g, y)
            w = y
            i += 1
        if poly_deg(g) > 0:
            # leftover multiplicities are all divisible by p, so g is a
            # p-th power; recurse on its root
            run([g[i] for i in range(0, len(g), p)], scale * p)

    run(f, 1)
    return out


def _distinct_degree(field, f):
    """Split a monic squarefree polynomial into (product, degree) chunks."""
    p = field.p
    out = []
    h = poly_mod(field, [field.zero(), field.one()], f)
    d = 0
    while poly_deg(f) >= 2 * (d + 1):
        d += 1
        h = poly_pow_mod(field, h, p, f)
        u = poly_gcd(field, poly_sub(field, h, [field.zero(), field.one()]), f)
        if poly_deg(u) > 0:
            out.append((u, d))
            f, _ = poly_divmod(field, f, u)
            h = poly_mod(field, h, f)
    if poly_deg(f) > 0:
        out.append((f, poly_deg(f)))
    return out


def _equal_degree(field, f, d, rng):
    """Factor a product of distinct irreducibles of one known degree."""
    n = poly_deg(f)
    if n == d:
        return [f]
    p = field.p
    while True:
        a = poly_trim(field, [int(c) for c in rng.integers(0, p, size=n)])
        if poly_deg(a) < 1:
            continue
        g = poly_gcd(field, a, f)
        if 0 < poly_deg(g) < n:
            break
        if p == 2:
            acc, t = a, a
            for _ in range(d - 1):
                t = poly_pow_mod(field, t, 2, f)
                acc = poly_add(field, acc, t)
            g = poly_gcd(field, acc, f)
        else:
            t = poly_pow_mod(field, a, (p ** d - 1) // 2, f)
            g = poly_gcd(field, poly_sub(field, t, [field.one()]), f)
        if 0 < poly_deg(g) < n:
            break
    rest, _ = poly_divmod(field, f, g)
    return _equal_degree(field, g, d, rng) + _equal_degree(field, rest, d, rng)


def factor_poly(field, f, rng):
    """Full factorization into monic irreducibles with multiplicities,
    sorted by degree then coefficients."""
    _require_prime(field)
    f = poly_trim(field, f)
    out = []
    for g, mult in squarefree_decomposition(field, f):
        for u, d in _distinct_degree(field, g):
            for irr in _equal_degree(field, u, d, rng):
                out.append((tuple(poly_monic(field, irr)), mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def is_irreducible(field, f) -> bool:
    """Deterministic irreducibility test over a prime field."""
    _require_prime(field)
    f = poly_monic(field, f)
    n = poly_deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    p = field.p
    x = [field.zero(), field.one()]
    # table[k] = X^(p^k) mod f
    table = [poly_mod(field, x, f)]
    for _ in range(n):
        table.append(poly_pow_mod(field, table[-1], p, f))
    if poly_trim(field, poly_sub(field, table[n], table[0])):
        return False
    q = n
    divisors = set()
    k = 2
    while k * k <= q:
        if q % k == 0:
            divisors.add(k)
            while q % k == 0:
                q //= k
        k += 1
    if q > 1:
        divisors.add(q)
    for prime_div in divisors:
        diff = poly_sub(field, table[n // prime_div], table[0])
        if poly_deg(poly_gcd(field, diff, f)) > 0:
            return False
    return True


# -- minimal polynomials of endomorphisms -----------------------------------


def total_matrix(f: ModuleMap) -> Matrix:
    """One square matrix for an endomorphism, blocks in vertex order."""
    alg = f.source.algebra
    return Matrix.block_diag(alg.field, [f.blocks[v] for v in alg.vertices])


def min_poly(f: ModuleMap):
    """Monic minimal polynomial, via per-vector dependency chains."""
    if f.source.dims != f.target.dims:
        raise InputError("minimal polynomial needs an endomorphism")
    field = f.source.algebra.field
    a = total_matrix(f)
    n = a.rows
    if n == 0:
        return [field.one()]
    acc = [field.one()]
    for j in range(n):
        if poly_deg(acc) == n:
            break
        e = Matrix.zeros(field, n, 1).copy_data()
        e[j, 0] = field.one()
        cols = [Matrix(field, e)]
        for _ in range(n):
            cols.append(a @ cols[-1])
        k = Matrix.hstack(cols)
        piv = set(k.rref()[1])
        d = next(i for i in range(n + 1) if i not in piv)
        sol = k.take_columns(list(range(d))).solve(k.col(d))
        local = [field.neg(field.coerce(sol.entry(i, 0))) for i in range(d)]
        local.append(field.one())
        acc = poly_lcm(field, acc, local)
    return acc


def apply_poly(coeffs, f: ModuleMap) -> ModuleMap:
    """Evaluate a polynomial on an endomorphism."""
    m = f.source
    out = ModuleMap.zero_map(m, m)
    ident = ModuleMap.identity(m)
    for c in reversed(list(coeffs)):
        out = (out @ f) + ident.scale(c)
    return out


def map_power(f: ModuleMap, e: int) -> ModuleMap:
    out = ModuleMap.identity(f.source)
    base = f
    while e > 0:
        if e & 1:
            out = out @ base
        e >>= 1
        if e:
            base = base @ base
    return out


def _is_nilpotent_matrix(a: Matrix, n: int) -> bool:
    if a.rows == 0:
        return True
    b, e = a, 1
    while True:
        if b.is_zero():
            return True
        if e >= n:
            return False
        b = b @ b
        e *= 2


# -- Fitting splits ----------------------------------------------------------


def end_ring_basis(m: Module):
    """Basis of the endomorphism ring."""
    return hom_basis(m, m)


def fitting_split(m: Module, f: ModuleMap):
    """Split m as (ker f^n) + (im f^n) with n the total dimension.

    Returns two (module, inclusion, projection) triples; the projections
    are read off the inverse of the assembled column basis, so inclusion
    and projection witness the direct sum exactly.
    """
    if f.source.dims != m.dims or f.target.dims != m.dims:
        raise InputError("fitting split needs an endomorphism of the module")
    field = m.algebra.field
    n = m.total_dim()
    g = map_power(f, max(n, 1))
    ker, ki = g.kernel()
    img, ii = g.image()
    kb, ib = {}, {}
    for v in m.algebra.vertices:
        cat = Matrix.hstack([ki.blocks[v], ii.blocks[v]])
        inv = cat.inverse()
        if inv is None:
            raise CertificateFailure(
                "fitting split: kernel and image fail to span"
            )
        dimk = ker.dims[v]
        data = inv.copy_data()
        kb[v] = Matrix(field, data[:dimk, :])
        ib[v] = Matrix(field, data[dimk:, :])
    kp = ModuleMap(m, ker, kb)
    ip = ModuleMap(m, img, ib)
    return (ker, ki, kp), (img, ii, ip)


# -- decomposition into summands with local endomorphism rings ---------------


@dataclass
class Decomposition:
    """Summands with inclusion/projection witnesses and the assembled
    isomorphism from their direct sum back to the original module."""

    summands: list
    witness: ModuleMap

    def validate(self, original: Module):
        ident = ModuleMap.identity(original)
        total = ModuleMap.zero_map(original, original)
        for sub, incl, proj in self.summands:
            if not ((proj @ incl) - ModuleMap.identity(sub)).is_zero():
                raise CertificateFailure("summand projection is not a retraction")
            total = total + (incl @ proj)
        if not (total - ident).is_zero():
            raise CertificateFailure("summand system does not sum to the identity")
        if not self.witness.is_iso():
            raise CertificateFailure("assembled decomposition witness is not invertible")


def _independent_maps(basis, maps):
    cols = [hom_coords(basis, f) for f in maps]
    if not cols:
        return []
    piv = Matrix.hstack(cols).rref()[1]
    return [maps[j] for j in piv]


def _local_certificate(m: Module, basis, factored) -> bool:
    """Certify that the endomorphism ring is local.

    With every basis minimal polynomial a power of one irreducible: if
    all those irreducibles are linear, the span of (b - eigenvalue) must
    be a codimension-one nil system; otherwise fall back to exhausting
    the finite ring when small enough.
    """
    field = m.algebra.field
    r = len(basis)
    if r == 1:
        return True
    if any(len(fac) != 1 for fac in factored):
        return False
    linear = all(len(fac[0][0]) == 2 for fac in factored)
    if linear:
        gens = []
        for b, fac in zip(basis, factored):
            lam = field.neg(fac[0][0][0])
            gens.append(b - ModuleMap.identity(m).scale(lam))
        gens = [g for g in gens if not g.is_zero()]
        cols = [hom_coords(basis, g) for g in gens]
        ident_col = hom_coords(basis, ModuleMap.identity(m))
        if not cols:
            return r == 1
        w = Matrix.hstack(cols)
        if w.rank() != r - 1:
            return False
        if Matrix.hstack([w, ident_col]).rank() != r:
            return False
        w_basis = _independent_maps(basis, gens)
        level = list(w_basis)
        for _ in range(r + 1):
            if not level:
                return True
            products = [g @ x for g in w_basis for x in level]
            level = _independent_maps(basis, [f for f in products if not f.is_zero()])
        return False
    # residue field may be an extension: exhaust the finite ring
    p = field.p
    if p ** r > EXHAUSTIVE_LIMIT:
        return False
    n = m.total_dim()
    for coeffs in _iter_product(range(p), repeat=r):
        f = ModuleMap.zero_map(m, m)
        for c, b in zip(coeffs, basis):
            if c:
                f = f + b.scale(c)
        a = total_matrix(f)
        if a.inverse() is None and not _is_nilpotent_matrix(a, n):
            return False
    return True


def _decompose_piece(m: Module, rng, budget):
    """Recursive worker returning (module, inclusion, projection) triples."""
    if m.total_dim() == 0:
        return []
    field = m.algebra.field
    basis = end_ring_basis(m)
    r = len(basis)
    ident = ModuleMap.identity(m)
    if r == 1:
        return [(m, ident, ident)]

    def split_with(f):
        fac = factor_poly(field, min_poly(f), rng)
        if len(fac) < 2:
            return None
        h = apply_poly(list(fac[0][0]), f)
        (ker, ki, kp), (img, ii, ip) = fitting_split(m, h)
        if ker.total_dim() == 0 or img.total_dim() == 0:
            raise CertificateFailure("coprime factor split came back trivial")
        out = []
        for sub, si, sp in _decompose_piece(ker, rng, budget):
            out.append((sub, ki @ si, sp @ kp))
        for sub, si, sp in _decompose_piece(img, rng, budget):
            out.append((sub, ii @ si, sp @ ip))
        return out

    factored = []
    for b in basis:
        fac = factor_poly(field, min_poly(b), rng)
        if len(fac) >= 2:
            return split_with(b)
        factored.append(fac)
    if _local_certificate(m, basis, factored):
        return [(m, ident, ident)]
    # not certified local, so a split should exist: hunt with random combos
    p = field.p
    while budget[0] > 0:
        budget[0] -= 1
        coeffs = rng.integers(0, p, size=r)
        if not coeffs.any():
            continue
        f = ModuleMap.zero_map(m, m)
        for c, b in zip(coeffs, basis):
            if c:
                f = f + b.scale(int(c))
        out = split_with(f)
        if out is not None:
            return out
    raise CertificateFailure(
        "certification-failure: retry budget exhausted without a split "
        "or a locality certificate"
    )


def indecomposables(m: Module, seed: int, budget: int = RETRY_BUDGET) -> Decomposition:
    """Decompose into summands with certified local endomorphism rings."""
    if not m.algebra.field.is_prime_field:
        raise UnsupportedError(
            "rationals-unsupported",
            "decomposition needs a prime field",
        )
    rng = np.random.default_rng(seed)
    parts = _decompose_piece(m, rng, [budget])
    if parts:
        total, _incls, projs = direct_sum([p[0] for p in parts])
        witness = ModuleMap.zero_map(total, m)
        for (sub, incl, _proj), tproj in zip(parts, projs):
            witness = witness + (incl @ tproj)
    else:
        witness = ModuleMap.zero_map(Module.zero(m.algebra), m)
    dec = Decomposition(parts, witness)
    dec.validate(m)
    return dec


# -- isomorphism testing -----------------------------------------------------


def _rand_combo(basis, rng, field):
    if field.is_prime_field:
        coeffs = [int(c) for c in rng.integers(0, field.p, size=len(basis))]
    else:
        coeffs = [int(c) for c in rng.integers(-3, 4, size=len(basis))]
    f = ModuleMap.zero_map(basis[0].source, basis[0].target)
    for c, b in zip(coeffs, basis):
        if c:
            f = f + b.scale(field.coerce(c))
    return f


def is_isomorphic(m: Module, n: Module, seed: int, budget: int = RETRY_BUDGET):
    """Explicit isomorphism, or None with a certificate that none exists.

    Definite no comes from dimension vectors, hom-rank obstructions, or
    an exhausted exhaustive search over a small prime field; when the
    randomized search runs out at larger sizes the answer is reported as
    unknown by raising, never as a silent no.
    """
    if m.algebra != n.algebra:
        raise InputError("isomorphism test needs modules over one algebra")
    if m.dims != n.dims:
        return None
    if m.total_dim() == 0:
        return ModuleMap.zero_map(m, n)
    field = m.algebra.field
    basis = hom_basis(m, n)
    if not basis:
        return None
    ends = hom_dim(m, m)
    if hom_dim(n, n) != ends or len(basis) != ends or hom_dim(n, m) != ends:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        f = _rand_combo(basis, rng, field)
        if f.is_iso():
            return f
    h = len(basis)
    if field.is_prime_field and m.total_dim() <= 10 and field.p ** h <= EXHAUSTIVE_LIMIT:
        for coeffs in _iter_product(range(field.p), repeat=h):
            f = ModuleMap.zero_map(m, n)
            for c, b in zip(coeffs, basis):
                if c:
                    f = f + b.scale(c)
            if f.is_iso():
                return f
        return None
    raise Inconclusive(
        "isomorphism search budget exhausted; no certificate either way"
    )
