"""Minimal projective resolutions, Betti tables and Ext dimensions."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .. import ffield as ff
from ..exceptions import InsufficientDepth, ResourceBudgetExceeded, ValidationError
from ..modrep import projective_cover, syzygy_of_cover

DEFAULT_DIM_CAP = 6000


@dataclass
class BettiTable:
    """``rows[n][chi]`` = multiplicity of ``A e_chi`` in ``P_n``."""

    rows: np.ndarray
    pim_dims: np.ndarray

    @property
    def depth(self):
        return self.rows.shape[0] - 1

    @property
    def totals(self):
        """Total Betti numbers ``b_n`` (number of indecomposable summands)."""
        return self.rows.sum(axis=1)

    @property
    def dims(self):
        """``dim P_n``."""
        return self.rows @ self.pim_dims

    def __add__(self, other):
        n = min(self.rows.shape[0], other.rows.shape[0])
        return BettiTable(self.rows[:n] + other.rows[:n], self.pim_dims)

    def as_dict(self):
        return {"rows": self.rows.tolist(), "totals": self.totals.tolist(),
                "dims": self.dims.tolist()}


def equivariant_rank(mat, src_weights, dst_weights, p):
    total = 0
    for b in np.unique(src_weights):
        cols = np.flatnonzero(src_weights == b)
        rows = np.flatnonzero(dst_weights == b)
        if rows.size and cols.size:
            total += ff.rank(mat[np.ix_(rows, cols)], p)
    return total


class ResolutionTrace:
    """Data of ``... -> P_1 -> P_0 -> M -> 0``.

    ``syzygies[n]`` is ``Omega^n(M)`` (``syzygies[0]`` is ``M`` in a weight
    basis), ``covers[n]`` its projective cover ``P_n -> Omega^n(M)`` and
    ``kernels[n]`` the basis of ``Omega^(n+1)(M)`` inside ``P_n``.
    """

    def __init__(self, module, depth, dim_cap=DEFAULT_DIM_CAP):
        self.algebra = module.algebra
        self.p = module.p
        self.original = module
        m, self.basis_change = module.weighted()
        self.dim_cap = dim_cap
        self.syzygies = [m]
        self.covers = []
        self.kernels = []
        self.extend(depth)

    @property
    def module(self):
        return self.syzygies[0]

    @property
    def depth(self):
        return len(self.covers) - 1

    def extend(self, depth):
        """Compute covers up to ``P_depth``."""
        while len(self.covers) <= depth:
            m = self.syzygies[-1]
            cover = projective_cover(m)
            omega, rows = syzygy_of_cover(cover)
            if omega.dim > self.dim_cap:
                raise ResourceBudgetExceeded(
                    f"dim Omega^{len(self.covers) + 1} = {omega.dim} exceeds the cap {self.dim_cap}")
            self.covers.append(cover)
            self.kernels.append(rows)
            self.syzygies.append(omega)
        return self

    def projective(self, n):
        return self.covers[n].projective

    def differential(self, n):
        """``d_n: P_n -> P_(n-1)``; ``d_0`` is the augmentation ``P_0 -> M``."""
        if n == 0:
            return self.covers[0].matrix
        return ff.matmul(self.kernels[n - 1].T, self.covers[n].matrix, self.p)

    def top_images(self, n):
        """``d_n(e_j)`` for the summand generators of ``P_n`` (columns, ``n >= 1``)."""
        return self.kernels[n - 1][self.covers[n].tops].T

    @property
    def betti_table(self):
        order = self.algebra.grouplike.order
        rows = np.array([c.betti for c in self.covers], dtype=np.int64).reshape(-1, order)
        from ..modrep import pim_data

        pdims = np.array([pim_data(self.algebra, b).dim for b in range(order)], dtype=np.int64)
        return BettiTable(rows, pdims)

    def syzygy_dims(self):
        return [s.dim for s in self.syzygies]

    # -- invariants ----------------------------------------------------------
    def check_exactness(self):
        """``d_n d_(n+1) = 0`` and ``rank d_(n+1) = dim ker d_n`` at every degree."""
        p = self.p
        prev_rank = self.module.dim        # rank of the augmentation
        prev = self.differential(0)
        for n in range(1, self.depth + 1):
            d = self.differential(n)
            pn, pm = self.projective(n), self.projective(n - 1)
            if prev.size and d.size and ff.matmul(prev, d, p).any():
                raise ValidationError(f"d_{n - 1} d_{n} != 0")
            r = equivariant_rank(d, pn.weights, pm.weights, p)
            if r != pm.dim - prev_rank:
                raise ValidationError(f"resolution is not exact at P_{n - 1}")
            prev_rank, prev = r, d
        # the last kernel is Omega^(depth+1); its dimension closes the sequence
        if self.syzygies[-1].dim != self.projective(self.depth).dim - prev_rank:
            raise ValidationError(f"resolution is not exact at P_{self.depth}")
        return True

    def check_minimality(self):
        """``im d_(n+1)`` lies in ``rad P_n``: every column has zero top coefficients."""
        p = self.p
        for n in range(self.depth):
            proj = self.projective(n)
            k = self.kernels[n]
            for j, pd in enumerate(proj.pims):
                blk = k[:, proj.summand_slice(j)]
                if ff.matmul(blk, pd.top_functional, p).any():
                    raise ValidationError(f"image of d_{n + 1} is not in rad P_{n}")
        return True

    def check_dimensions(self):
        dims = self.betti_table.dims
        for n in range(self.depth + 1):
            if dims[n] != self.projective(n).dim:
                raise ValidationError(f"dim P_{n} disagrees with its Betti vector")
        return True

    def check(self):
        return self.check_exactness() and self.check_minimality() and self.check_dimensions()


def resolve(module, depth, dim_cap=DEFAULT_DIM_CAP):
    return ResolutionTrace(module, depth, dim_cap)


class MinimalResolution(BaseEstimator):
    """Estimator wrapper: ``MinimalResolution(depth=10).fit(M)``.

    Fitted attributes: ``trace_``, ``betti_table_``, ``betti_``,
    ``syzygy_dims_``.
    """

    def __init__(self, depth=10, dim_cap=DEFAULT_DIM_CAP, check=True):
        self.depth = depth
        self.dim_cap = dim_cap
        self.check = check

    def fit(self, module, y=None):
        self.trace_ = resolve(module, self.depth, self.dim_cap)
        if self.check:
            self.trace_.check()
        self.betti_table_ = self.trace_.betti_table
        self.betti_ = self.betti_table_.totals
        self.syzygy_dims_ = self.trace_.syzygy_dims()
        return self


# -- Ext -------------------------------------------------------------------------

@dataclass
class _HomData:
    """Word images of ``N`` needed to evaluate maps ``P -> N`` on arbitrary vectors."""

    blocks: list            # N-weight indices for each summand
    offsets: np.ndarray
    images: list = field(default_factory=list)   # per summand: (s, dim N, |block|)


def _hom_data(proj, n_mod):
    blocks = [n_mod.weight_indices(c) for c in proj.characters]
    offs = np.concatenate([[0], np.cumsum([b.size for b in blocks])]).astype(int)
    cache = {}
    images = []
    for j, pd in enumerate(proj.pims):
        c = proj.characters[j]
        if c not in cache:
            cols = np.zeros((n_mod.dim, blocks[j].size), dtype=np.int64)
            cols[blocks[j], np.arange(blocks[j].size)] = 1
            memo = {}
            cache[c] = np.stack([n_mod.apply_word(w, cols, memo) for w in pd.words]) \
                if blocks[j].size else np.zeros((pd.dim, n_mod.dim, 0), dtype=np.int64)
        images.append(cache[c])
    return _HomData(blocks, offs, images)


def _evaluate(proj, hd, vectors, p):
    """For columns ``v`` of ``vectors``: the matrix ``Y -> f_Y(v)`` (``dim N x nunk``) per column."""
    nunk = int(hd.offsets[-1])
    nv = vectors.shape[1]
    dim_n = hd.images[0].shape[1] if hd.images else 0
    out = np.zeros((nv, dim_n, nunk), dtype=np.int64)
    for j in range(len(proj.pims)):
        w = hd.blocks[j].size
        if w == 0:
            continue
        seg = vectors[proj.summand_slice(j)]                 # (s, nv)
        if not seg.any():
            continue
        img = hd.images[j]                                   # (s, dimN, w)
        s = img.shape[0]
        prod = ff.matmul(seg.T, img.reshape(s, -1), p).reshape(nv, dim_n, w)
        out[:, :, hd.offsets[j]:hd.offsets[j + 1]] = (out[:, :, hd.offsets[j]:hd.offsets[j + 1]] + prod) % p
    return out


def cochain_matrix(trace, n_mod, n, hd_cache=None):
    """``delta^n: Hom(P_n, N) -> Hom(P_(n+1), N)`` in the coordinates ``y_j in N_chi_j``."""
    p = trace.p
    src = trace.projective(n)
    dst = trace.projective(n + 1)
    hd = _hom_data(src, n_mod) if hd_cache is None else hd_cache(n)
    dst_blocks = [n_mod.weight_indices(c) for c in dst.characters]
    nunk = int(hd.offsets[-1])
    tops = trace.top_images(n + 1)
    if tops.shape[1] == 0 or nunk == 0:
        return np.zeros((sum(b.size for b in dst_blocks), nunk), dtype=np.int64)
    vals = _evaluate(src, hd, tops, p)          # (b_{n+1}, dimN, nunk)
    rows = [vals[k][dst_blocks[k]] for k in range(len(dst_blocks))]
    return np.vstack(rows) if rows else np.zeros((0, nunk), dtype=np.int64)


def ext_dims(trace, n_mod, max_n=None):
    """``[dim Ext^n(M, N) for n = 0..max_n]`` from the cochain complex ``Hom(P_., N)``.

    Needs ``P_(max_n + 1)``; the trace is extended if necessary.
    """
    p = trace.p
    nw, _ = n_mod.weighted()
    max_n = trace.depth - 1 if max_n is None else max_n
    trace.extend(max_n + 1)
    cache = {}

    def hd(n):
        if n not in cache:
            cache[n] = _hom_data(trace.projective(n), nw)
        return cache[n]

    out = []
    prev_rank = 0
    for n in range(max_n + 1):
        delta = cochain_matrix(trace, nw, n, hd)
        nunk = delta.shape[1]
        r = ff.rank(delta, p) if delta.size else 0
        out.append(nunk - r - prev_rank)
        prev_rank = r
    return out


def ext_dim(trace, n_mod, n):
    """``dim Ext^n(M, N)``; for one-dimensional ``N`` this is a Betti number (minimal resolution)."""
    if n_mod.dim == 1:
        nw, _ = n_mod.weighted()
        trace.extend(n)
        return int(trace.covers[n].betti[int(nw.weights[0])])
    return ext_dims(trace, n_mod, n)[n]


def ext_dims_via_dual(k_trace, hopf, m, n_mod, max_n):
    """Cross-check: ``Ext^n(M, N) = Ext^n(k, M* (x) N)``."""
    from ..hopf import dual_module, tensor_module

    target = tensor_module(hopf, dual_module(hopf, m), n_mod)
    return ext_dims(k_trace, target, max_n)


def require_depth(trace, n):
    if trace.depth < n:
        raise InsufficientDepth(f"resolution depth {trace.depth} < {n}")
