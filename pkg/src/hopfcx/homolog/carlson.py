"""Carlson modules ``L_zeta``, block cuts ``N_zeta`` and the complexity checks built on them."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import ffield as ff
from ..exceptions import ValidationError, ZeroClass
from ..hopf import tensor_module, trivial_module
from ..modrep import (ModuleRep, direct_sum, equivariant_kernel, hom_dim, is_projective,
                      restrict_to_subspace)
from .cohomology import CohomologyClass, class_from_basis, class_positions
from .complexity import complexity_estimate
from .resolution import resolve


@dataclass
class CarlsonModule:
    """``0 -> L_zeta -> Omega^n(k) -> k -> 0``; ``inclusion`` rows embed ``L`` in ``Omega^n``."""

    zeta: CohomologyClass
    module: ModuleRep
    omega: ModuleRep
    zeta_hat: np.ndarray
    inclusion: np.ndarray

    @property
    def degree(self):
        return self.zeta.degree


def random_class(trace, n, seed=0):
    """A nonzero class of ``H^n`` with fixed-seed uniform coordinates."""
    dim = len(class_positions(trace, n))
    if dim == 0:
        raise ZeroClass(f"H^{n} is zero")
    rng = np.random.default_rng(seed)
    while True:
        v = rng.integers(0, trace.p, size=dim)
        if v.any():
            return class_from_basis(trace, n, v)


def zeta_hat(trace, zeta):
    """The functional ``Omega^n(k) -> k`` induced by ``zeta: P_n -> k``.

    It is ``zeta(e_j)`` on the top basis vectors and is extended by zero on
    ``rad Omega^n``.
    """
    n = zeta.degree
    p = trace.p
    cover = trace.covers[n]
    omega = trace.syzygies[n]
    out = np.zeros(omega.dim, dtype=np.int64)
    c = np.asarray(zeta.coeffs, dtype=np.int64) % p
    out[cover.tops] = c
    rad = cover.radical
    if rad is not None and rad.shape[0]:
        piv = [int(np.flatnonzero(r)[0]) for r in rad]
        out[piv] = (-ff.matmul(rad[:, cover.tops], c, p)) % p
    return out


def carlson_module(trace, zeta):
    """``L_zeta = ker(zeta_hat)`` together with its defining sequence (re-verified)."""
    if zeta.is_zero():
        raise ZeroClass("zeta is zero")
    p = trace.p
    alg = trace.algebra
    trace.extend(zeta.degree)
    omega = trace.syzygies[zeta.degree]
    zh = zeta_hat(trace, zeta)
    eps = trivial_module(alg)
    for g in range(len(alg.presentation.generators)):
        lhs = ff.matmul(zh, omega.matrix(g), p)
        if not np.array_equal(lhs, int(eps.matrix(g)[0, 0]) * zh % p):
            raise ValidationError("zeta_hat is not a module map")
    if not zh.any():
        raise ZeroClass("zeta_hat vanishes")
    triv = np.array([alg.trivial_character_index], dtype=np.int64)
    rows = equivariant_kernel(zh.reshape(1, -1), omega.weights, triv, p)
    lmod = restrict_to_subspace(omega, rows)
    if lmod.dim != omega.dim - 1:
        raise ValidationError("dim L_zeta != dim Omega^n(k) - 1")
    if rows.shape[0] and ff.matmul(rows, zh, p).any():
        raise ValidationError("L_zeta is not contained in ker zeta_hat")
    return CarlsonModule(zeta, lmod, omega, zh, rows)


def _cx(module, depth):
    tr = resolve(module, depth)
    return complexity_estimate(tr.betti_table.totals), tr


@dataclass
class TensorTheoremReport:
    cx_m: int
    cx_l: int
    cx_ml: int
    dim_ml: int
    drop_ok: bool
    min_ok: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.drop_ok and self.min_ok

    def as_dict(self):
        return {"cx_M": self.cx_m, "cx_L": self.cx_l, "cx_M_tensor_L": self.cx_ml,
                "dim_M_tensor_L": self.dim_ml, "drop_in_range": self.drop_ok,
                "at_most_min": self.min_ok, "ok": self.ok, **self.details}


def tensor_theorem_check(hopf, m, carlson, depth=10):
    """Complexities of ``M``, ``L_zeta`` and ``M (x) L_zeta`` and the dimension consequences."""
    ml = tensor_module(hopf, m, carlson.module)
    cm, _ = _cx(m, depth)
    cl, _ = _cx(carlson.module, depth)
    cml, _ = _cx(ml, depth)
    drop = cml.complexity in (cm.complexity, cm.complexity - 1) or (cm.complexity == 0 and cml.complexity == 0)
    return TensorTheoremReport(cm.complexity, cl.complexity, cml.complexity, ml.dim, drop,
                               cml.complexity <= min(cm.complexity, cl.complexity),
                               {"residuals": [cm.residual, cl.residual, cml.residual]})


@dataclass
class BlockCut:
    module: ModuleRep
    complement: ModuleRep
    idempotent: np.ndarray
    bound: int
    bound_ok: bool
    complement_projective: bool

    def as_dict(self):
        return {"dim_N": self.module.dim, "dim_complement": self.complement.dim,
                "bound": self.bound, "bound_ok": self.bound_ok,
                "complement_projective": self.complement_projective}


def block_of(algebra, m, blocks=None):
    """Index of the block idempotent acting as the identity on ``M``."""
    blocks = algebra.blocks() if blocks is None else blocks
    for i, e in enumerate(blocks.idempotents):
        if np.array_equal(m.element_matrix(e), np.eye(m.dim, dtype=np.int64)):
            return i, blocks
    raise ValidationError("module is not contained in a single block")


def block_cut(hopf, m, carlson, trace_k=None, blocks=None):
    """``N_zeta = e (M (x) L_zeta)`` for the block idempotent ``e`` of ``M``."""
    if carlson.degree % 2:
        raise ValidationError("block cuts use classes of even degree")
    p = hopf.p
    idx, blocks = block_of(hopf, m, blocks)
    e = blocks.idempotents[idx]
    ml = tensor_module(hopf, m, carlson.module, check=False)
    proj = ml.element_matrix(e)
    img = ff.row_basis(proj.T, p) if ml.dim else np.zeros((0, 0), np.int64)
    comp_op = (np.eye(ml.dim, dtype=np.int64) - proj) % p
    comp = ff.row_basis(comp_op.T, p) if ml.dim else np.zeros((0, 0), np.int64)
    n_mod = restrict_to_subspace(ml, img) if img.shape[0] else _zero_like(hopf)
    c_mod = restrict_to_subspace(ml, comp) if comp.shape[0] else _zero_like(hopf)
    bound = m.dim * carlson.omega.dim
    return BlockCut(n_mod, c_mod, e, bound, n_mod.dim <= bound, is_projective(c_mod))


def _zero_like(alg):
    from ..modrep import zero_module

    return zero_module(alg)


def realize_variety(hopf, carlsons, depth=10):
    """``L_zeta_1 (x) ... (x) L_zeta_t`` and its complexity estimate (``t = 0`` gives ``k``)."""
    out = trivial_module(hopf)
    for c in carlsons:
        out = tensor_module(hopf, out, c.module, check=False)
    out.validate()
    est, _ = _cx(out, depth)
    return out, est


def ses_complexity_check(m1, m2, m3, depth=10):
    """Complexities of ``0 -> M1 -> M2 -> M3 -> 0`` and the three max-inequalities."""
    cx = [_cx(m, depth)[0].complexity for m in (m1, m2, m3)]
    checks = [cx[i] <= max(cx[j] for j in range(3) if j != i) for i in range(3)]
    return {"complexities": cx, "inequalities": checks, "ok": all(checks)}


def fg_truncated_check(ring, trace_m):
    """Degree-truncated finite generation evidence (never conclusive).

    Reports the generator degrees of ``H^*`` and of its even part found
    through the truncation degree, and tests the growth of
    ``b_n(M) = sum_S dim Ext^n(M, S)`` against the Hilbert function of a
    polynomial ring on the even generators: the ratio
    ``b_n / dim k[gens]_(<= n)`` must not increase on the second half of the
    window.
    """
    D = min(ring.max_degree, trace_m.depth)
    gens = ring.generator_degrees()
    even = ring.generator_degrees(even_only=True)
    degs = [d for d, k in even.items() for _ in range(k)]
    hilb = _hilbert_upto(degs, D)
    betti = trace_m.betti_table.totals[:D + 1]
    ratios = [float(betti[n]) / hilb[n] for n in range(D + 1)]
    half = D // 2
    bounded = all(ratios[n] <= max(ratios[:half + 1]) + 1e-12 for n in range(half + 1, D + 1))
    new_gen_late = any(d > half for d in gens)
    return {"truncation": D, "generator_degrees": sorted(gens), "even_generator_degrees": sorted(even),
            "betti": betti.tolist(), "bounded_by_polynomial_ring": bounded,
            "generators_stabilised": not new_gen_late, "conclusive": False}


def _hilbert_upto(degs, n_max):
    """``dim k[x_1..x_s]_(<= n)`` for generators of the given degrees."""
    h = np.zeros(n_max + 1, dtype=np.int64)
    h[0] = 1
    for d in degs:
        for n in range(d, n_max + 1):
            h[n] += h[n - d]
    return np.cumsum(h)


def carlson_family(hopf, trace_k, m, degree, samples=3, seed=0):
    """Block cuts ``N_zeta_s`` for fixed-seed classes ``zeta_s`` with non-isomorphism witnesses.

    ``N_s`` and ``N_t`` are certified non-isomorphic when
    ``dim Hom(N_s, N_t) != dim End(N_s)`` or their dimensions differ.
    """
    cuts = []
    for s in range(samples):
        zeta = random_class(trace_k, degree, seed + s)
        lz = carlson_module(trace_k, zeta)
        cuts.append(block_cut(hopf, m, lz))
    ends = [hom_dim(c.module, c.module) for c in cuts]
    pairs = {}
    for i in range(samples):
        for j in range(i + 1, samples):
            a, b = cuts[i].module, cuts[j].module
            distinct = a.dim != b.dim or hom_dim(a, b) != ends[i]
            pairs[f"{i},{j}"] = distinct
    return {"dims": [c.module.dim for c in cuts], "end_dims": ends, "distinct_pairs": pairs}


def split_sequence_check(m, n, depth=10):
    """Betti additivity for ``M (+) N`` and the split-sequence complexity inequalities."""
    tm, tn, ts = (resolve(x, depth) for x in (m, n, direct_sum(m, n)))
    add = np.array_equal(tm.betti_table.rows + tn.betti_table.rows, ts.betti_table.rows)
    return {"betti_additive": bool(add), **ses_complexity_check(m, direct_sum(m, n), n, depth)}
