"""Property checks shared by the hypothesis suites and the acceptance runner.

Each ``check_*`` takes a case seed, draws its inputs from a fixed-seed
generator and raises ``AssertionError`` on failure.
"""
from __future__ import annotations

import numpy as np

from hopfcx.homolog import (block_cut, carlson_module, cohomology_ring, complexity_estimate,
                            random_class, resolve)
from hopfcx.hopf import restrict_module, tensor_module
from hopfcx.modrep import (is_projective, projective_indecomposable, projective_multiplicities,
                           regular_module)
from hopfcx.presets import preset, shipped_embeddings

from support import SMALL, cx_of, k_trace, module_from_key, random_key, trace_of

RING_PRESETS = ("taft_l3", "taft_l3_x_z3", "uqplus_sl2_a_l3", "qea_r2_l3", "uqplus_sl3_a_l3")
RING_DEGREE = 8
_rings = {}
_embeddings = {}


def _pick(seq, g):
    return seq[int(g.integers(len(seq)))]


def ring(name):
    if name not in _rings:
        _rings[name] = cohomology_ring(k_trace(name, RING_DEGREE), RING_DEGREE)
    return _rings[name]


def embeddings():
    if not _embeddings:
        _embeddings.update(shipped_embeddings(3))
    return _embeddings


# -- resolutions ---------------------------------------------------------------------

def check_resolution_invariants(seed):
    g = np.random.default_rng(seed)
    name = _pick(SMALL, g)
    key = random_key(name, g)
    tr = trace_of(name, key, 4)
    assert tr.check_exactness(), (name, key)
    assert tr.check_minimality(), (name, key)
    assert tr.check_dimensions(), (name, key)


def check_betti_additivity(seed):
    g = np.random.default_rng(seed)
    name = _pick(SMALL, g)
    a = random_key(name, g, allow_compound=False)
    b = random_key(name, g, allow_compound=False)
    s = trace_of(name, ("+", a, b), 4).betti_table.rows
    assert np.array_equal(s, trace_of(name, a, 4).betti_table.rows + trace_of(name, b, 4).betti_table.rows), \
        (name, a, b)


# -- cohomology rings -------------------------------------------------------------------

def check_graded_commutativity(seed):
    g = np.random.default_rng(seed)
    r = ring(_pick(RING_PRESETS, g))
    a = int(g.integers(0, RING_DEGREE + 1))
    b = int(g.integers(0, RING_DEGREE - a + 1))
    x = g.integers(0, r.p, size=r.dims[a])
    y = g.integers(0, r.p, size=r.dims[b])
    xy = r.multiply(a, x, b, y)
    yx = r.multiply(b, y, a, x)
    sign = -1 if (a * b) % 2 else 1
    assert np.array_equal(xy % r.p, sign * yx % r.p), (a, b)
    if a % 2 and 2 * a <= RING_DEGREE:
        assert not r.multiply(a, x, a, x).any()
    c = int(g.integers(0, RING_DEGREE - a - b + 1))
    z = g.integers(0, r.p, size=r.dims[c])
    left = r.multiply(a + b, xy, c, z)
    right = r.multiply(a, x, b + c, r.multiply(b, y, c, z))
    assert np.array_equal(left, right), (a, b, c)


def ring_structure_failures():
    """Exhaustive basis checks in every ring: returns the failure lists."""
    out = {}
    for name in RING_PRESETS:
        r = ring(name)
        out[name] = (r.graded_commutativity(), r.odd_squares_vanish())
    return out


# -- tensor products ----------------------------------------------------------------------

def check_tensor_with_projective(seed):
    g = np.random.default_rng(seed)
    name = _pick(SMALL, g)
    alg = preset(name)
    m = module_from_key(name, random_key(name, g, max_dim=12))
    j = int(g.integers(alg.grouplike.order))
    use_regular = g.random() < 0.2 and alg.dim <= 27
    proj = regular_module(alg) if use_regular else projective_indecomposable(alg, j)
    left = tensor_module(alg, m, proj, check=False)
    right = tensor_module(alg, proj, m, check=False)
    assert is_projective(left) and is_projective(right), (name, j)


def check_tensor_complexity(seed):
    g = np.random.default_rng(seed)
    name = _pick(SMALL, g)
    a = random_key(name, g, allow_compound=False)
    b = random_key(name, g, allow_compound=False)
    ca, cb = cx_of(name, a), cx_of(name, b)
    cab = cx_of(name, ("T", a, b))
    assert cab <= min(ca, cb), (name, a, b, ca, cb, cab)


# -- short exact sequences ------------------------------------------------------------------

def _max_ineq(c):
    return all(c[i] <= max(c[j] for j in range(3) if j != i) for i in range(3))


def check_ses_syzygy(seed):
    """``0 -> Omega^(n+1) M -> P_n -> Omega^n M -> 0``."""
    g = np.random.default_rng(seed)
    name = _pick(SMALL, g)
    key = random_key(name, g, allow_compound=False)
    n = int(g.integers(0, 3))
    tr = trace_of(name, key, n + 8)
    cx = []
    for mod in (tr.syzygies[n + 1], tr.projective(n), tr.syzygies[n]):
        t = resolve(mod, 8)
        cx.append(complexity_estimate(t.betti_table.totals).complexity)
    assert cx[1] == 0
    assert _max_ineq(cx), (name, key, n, cx)


def check_ses_carlson(seed):
    """``0 -> L_zeta -> Omega^2 k -> k -> 0`` for a random degree-2 class."""
    g = np.random.default_rng(seed)
    name = _pick(("taft_l3", "taft_l3_x_z3", "uqplus_sl2_a_l3", "qea_r2_l3"), g)
    tr = k_trace(name, 10)
    lz = carlson_module(tr, random_class(tr, 2, int(g.integers(1 << 30))))
    cx_l = complexity_estimate(resolve(lz.module, 8).betti_table.totals).complexity
    cx_o = complexity_estimate(tr.betti_table.totals[2:]).complexity
    cx_k = complexity_estimate(tr.betti_table.totals).complexity
    assert _max_ineq([cx_l, cx_o, cx_k]), (name, cx_l, cx_o, cx_k)


# -- embeddings ------------------------------------------------------------------------------

def check_free_restriction(seed):
    """A projective module of the big algebra restricts to a projective of the small one,
    with multiplicities ``index * (multiplicities of the regular module)`` for regular modules."""
    g = np.random.default_rng(seed)
    names = sorted(embeddings())
    emb = embeddings()[_pick(names, g)]
    big = emb.target
    if g.random() < 0.1 and big.dim <= 81:
        res = restrict_module(emb, regular_module(big), check=False)
        mult = projective_multiplicities(res)
        assert np.all(mult == emb.index()), mult
        return
    j = int(g.integers(big.grouplike.order))
    res = restrict_module(emb, projective_indecomposable(big, j), check=False)
    mult = projective_multiplicities(res)
    pim_dims = [projective_indecomposable(emb.source, b).dim for b in range(len(mult))]
    assert int(np.dot(mult, pim_dims)) == res.dim, (j, mult)


def check_nichols_zoeller_all():
    """Regular module of every target is free over the source, rank = index."""
    out = {}
    for name, emb in embeddings().items():
        res = restrict_module(emb, regular_module(emb.target), check=False)
        mult = projective_multiplicities(res)
        # the source's regular module contains every PIM exactly once (basic algebra)
        out[name] = bool(np.all(mult == emb.index()))
    return out


def restriction_inequality_cases(depth=8):
    """``(cx of res M over the rank one Borel, cx of M over the rank two Borel)`` for a few ``M``."""
    from hopfcx.modrep import simple_module

    emb = embeddings()["uqplus_sl2_in_uqplus_sl3"]
    big = preset("uqplus_sl3_a_l3")
    tr = k_trace("uqplus_sl3_a_l3", depth)
    mods = {"k": tr.syzygies[0], "Omega1": tr.syzygies[1], "Omega2": tr.syzygies[2],
            "S1": simple_module(big, 1), "S4": simple_module(big, 4)}
    out = {}
    for label, m in mods.items():
        cbig = complexity_estimate(resolve(m, depth).betti_table.totals).complexity
        small = restrict_module(emb, m, check=False)
        csmall = complexity_estimate(resolve(small, depth).betti_table.totals).complexity
        out[label] = (csmall, cbig)
    return out


# -- Carlson runs and blocks ---------------------------------------------------------------------

def check_carlson_block(seed):
    g = np.random.default_rng(seed)
    name = _pick(("taft_l3", "taft_l3_x_z3", "uqplus_sl2_a_l3", "qea_r2_l3"), g)
    alg = preset(name)
    tr = k_trace(name, 10)
    lz = carlson_module(tr, random_class(tr, 2, int(g.integers(1 << 30))))
    key = random_key(name, g, allow_compound=False)
    m = module_from_key(name, key)
    blocks = alg.blocks()
    p = alg.p
    # block idempotent axioms
    total = np.sum(blocks.idempotents, axis=0) % p
    assert np.array_equal(total, alg.one)
    for i, e in enumerate(blocks.idempotents):
        assert np.array_equal(alg.mul(e, e), e)
        for x in alg.generators.values():
            assert np.array_equal(alg.mul(e, x), alg.mul(x, e))
        for f in blocks.idempotents[i + 1:]:
            assert not alg.mul(e, f).any()
    try:
        cut = block_cut(alg, m, lz, blocks=blocks)
    except Exception as exc:            # M spread over several blocks
        assert "single block" in str(exc), exc
        return
    assert cut.bound_ok, (name, key, cut.module.dim, cut.bound)
    assert cut.complement_projective, (name, key)
    assert cut.module.dim + cut.complement.dim == m.dim * lz.module.dim
