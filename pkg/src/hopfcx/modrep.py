"""Finite dimensional modules given by generator actions.

Vectors are columns; ``M.matrix(g) @ v`` is the action of generator ``g``.
Modules over character-split algebras are handled in weight bases: every
basis vector is a simultaneous eigenvector of the group-likes, so tops,
radicals and kernels of equivariant maps split into per-character blocks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import ffield as ff
from .algebra import weight_data
from .exceptions import NotCharacterSplit, NotIdempotent, RelationViolation

# above this dimension relations are checked on random vectors
EXACT_RELATION_DIM = 200
FREIVALDS_VECTORS = 8


class ModuleRep:
    """Left module over ``algebra`` given by one matrix per generator."""

    def __init__(self, algebra, actions, check=True, weights=None):
        self.algebra = algebra
        self.p = algebra.p
        acts = np.asarray(actions, dtype=np.int64)
        ngens = len(algebra.presentation.generators)
        if acts.ndim != 3 or acts.shape[0] != ngens or acts.shape[1] != acts.shape[2]:
            raise ValueError(f"expected {ngens} square action matrices")
        self._actions = acts % self.p
        self.dim = acts.shape[1]
        self._word_cache = {}
        if weights is not None:
            self.__dict__["weights"] = np.asarray(weights, dtype=np.int64)
        if check:
            self.validate()

    # -- actions -------------------------------------------------------------
    @property
    def actions(self):
        return self._actions

    def matrix(self, g):
        return self.actions[g]

    def act(self, g, x):
        """``rho(g) @ x`` for a block of column vectors."""
        return ff.matmul(self.matrix(g), x, self.p)

    def act_rows(self, g, x):
        """``x @ rho(g).T``: act on row vectors."""
        return ff.matmul(x, self.matrix(g).T, self.p)

    def word_action(self, word):
        """Dense matrix of a word (cached)."""
        word = tuple(word)
        if word not in self._word_cache:
            if not word:
                self._word_cache[word] = np.eye(self.dim, dtype=np.int64)
            else:
                self._word_cache[word] = ff.matmul(self.matrix(word[0]),
                                                   self.word_action(word[1:]), self.p)
        return self._word_cache[word]

    def apply_word(self, word, x, memo=None):
        """``rho(word) @ x`` by successive generator actions; ``memo`` is keyed by suffix."""
        word = tuple(word)
        if memo is None:
            memo = {}
        if word in memo:
            return memo[word]
        if not word:
            out = np.asarray(x, dtype=np.int64) % self.p
        else:
            out = self.act(word[0], self.apply_word(word[1:], x, memo))
        memo[word] = out
        return out

    def apply_element(self, a, x, memo=None):
        """``rho(a) @ x`` for an algebra element ``a`` given in basis coordinates."""
        words = self.algebra.basis_words
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros((self.dim,) + x.shape[1:], dtype=np.int64)
        if memo is None:
            memo = {}
        for i in np.flatnonzero(a):
            out = (out + int(a[i]) * self.apply_word(words[i], x, memo)) % self.p
        return out

    def element_matrix(self, a):
        return self.apply_element(a, np.eye(self.dim, dtype=np.int64))

    # -- validation --------------------------------------------------------
    def validate(self):
        """Every rewrite rule holds as a matrix identity.

        Exact for small modules; above ``EXACT_RELATION_DIM`` both sides are
        applied to a fixed-seed random block (false acceptance <= p**-8).
        """
        pres = self.algebra.presentation
        if self.dim == 0:
            return
        if self.dim <= EXACT_RELATION_DIM:
            x = np.eye(self.dim, dtype=np.int64)
        else:
            rng = np.random.default_rng(0)
            x = rng.integers(0, self.p, size=(self.dim, FREIVALDS_VECTORS))
        memo = {}
        for rule in pres.rules:
            lhs = self.apply_word(rule.lhs, x, memo)
            rhs = np.zeros_like(lhs)
            for w, c in rule.rhs.items():
                rhs = (rhs + c * self.apply_word(w, x, memo)) % self.p
            if not np.array_equal(lhs, rhs):
                raise RelationViolation(
                    f"relation {pres.format_word(rule.lhs)} -> ... fails on the module")

    # -- weights -----------------------------------------------------------
    @cached_property
    def weights(self):
        """Character index of every basis vector, or ``None`` if not a weight basis."""
        alg = self.algebra
        if alg.grouplike is None:
            return None
        wd = weight_data(alg)
        names = alg.presentation.generators
        gl = alg.grouplike
        exps = np.zeros((self.dim, len(gl.generators)), dtype=np.int64)
        for col, kname in enumerate(gl.generators):
            m = self.matrix(names.index(kname))
            diag = np.diag(m).copy()
            if np.count_nonzero(m - np.diag(diag)):
                return None
            log = wd.logs[col]
            for i, lam in enumerate(diag):
                if int(lam) not in log:
                    return None
                exps[i, col] = log[int(lam)]
        return np.array([wd.char_of(tuple(e)) for e in exps], dtype=np.int64)

    def weighted(self):
        """``(M', C)`` with ``M'`` in a weight basis and ``C`` its basis as columns in ``M``.

        ``C`` is ``None`` when ``M`` already has a weight basis.
        """
        if self.weights is not None:
            return self, None
        alg = self.algebra
        idems = alg.primitive_idempotents
        cols, wts = [], []
        eye = np.eye(self.dim, dtype=np.int64)
        memo = {}                   # group-element matrices are shared by all idempotents
        for b, e in enumerate(idems):
            img = ff.row_basis(self.apply_element(e, eye, memo).T, self.p)
            cols.append(img.T)
            wts.extend([b] * img.shape[0])
        c = np.hstack(cols) if cols else np.zeros((self.dim, 0), dtype=np.int64)
        if c.shape[1] != self.dim:
            raise NotCharacterSplit("group-likes do not act diagonalisably on the module")
        cinv = ff.solve(c, np.eye(self.dim, dtype=np.int64), self.p)
        acts = np.stack([ff.matmul(cinv, ff.matmul(a, c, self.p), self.p) for a in self.actions]) \
            if self.dim else self.actions
        return ModuleRep(alg, acts, check=False, weights=wts), c

    def weight_indices(self, b):
        return np.flatnonzero(self.weights == b)

    def __repr__(self):
        return f"ModuleRep(dim={self.dim})"


class ProjectiveModule(ModuleRep):
    """Direct sum of indecomposable projectives ``A e_chi``, one per entry of ``characters``.

    Generator actions are applied blockwise; the dense matrices are only
    assembled when requested.
    """

    def __init__(self, algebra, characters):
        self.algebra = algebra
        self.p = algebra.p
        self.characters = [int(c) for c in characters]
        self.pims = [pim_data(algebra, c) for c in self.characters]
        sizes = [pd.dim for pd in self.pims]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int) if sizes else np.array([0])
        self.dim = int(self.offsets[-1])
        self._word_cache = {}
        groups = {}
        for j, c in enumerate(self.characters):
            groups.setdefault(c, []).append(j)
        self._groups = []
        for c, js in sorted(groups.items()):
            s = pim_data(algebra, c).dim
            rows = np.array([np.arange(self.offsets[j], self.offsets[j] + s) for j in js])
            self._groups.append((c, rows))
        self.__dict__["weights"] = (np.concatenate([pd.weights for pd in self.pims])
                                    if self.pims else np.zeros(0, dtype=np.int64))

    @cached_property
    def actions(self):
        ngens = len(self.algebra.presentation.generators)
        acts = np.zeros((ngens, self.dim, self.dim), dtype=np.int64)
        for j, pd in enumerate(self.pims):
            sl = slice(self.offsets[j], self.offsets[j + 1])
            acts[:, sl, sl] = pd.actions
        return acts

    def act(self, g, x):
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros_like(x)
        for c, rows in self._groups:
            a = pim_data(self.algebra, c).actions[g]
            out[rows] = ff.matmul(a, x[rows], self.p) if x.ndim == 1 else \
                np.stack([ff.matmul(a, blk, self.p) for blk in x[rows]])
        return out

    def act_rows(self, g, x):
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros_like(x)
        for c, rows in self._groups:
            a = pim_data(self.algebra, c).actions[g]
            blk = x[:, rows]                       # (r, m, s)
            r, m, s = blk.shape
            res = ff.matmul(blk.reshape(r * m, s), a.T, self.p)
            out[:, rows] = res.reshape(r, m, s)
        return out

    def summand_slice(self, j):
        return slice(int(self.offsets[j]), int(self.offsets[j + 1]))

    def top_positions(self):
        """Coordinates of the generators ``e_chi`` of the summands."""
        return np.array([self.offsets[j] + pd.unit_pos for j, pd in enumerate(self.pims)],
                        dtype=np.int64)

    def __repr__(self):
        return f"ProjectiveModule(characters={self.characters})"


@dataclass
class PIMData:
    """Basis ``b_i e_chi`` of ``A e_chi`` for pivot basis words ``b_i``."""

    character: int
    words: list            # basis-word tuples
    word_indices: list     # indices into the algebra basis
    basis: np.ndarray      # dim A x s, columns b_i e_chi
    actions: np.ndarray    # ngens x s x s
    weights: np.ndarray
    top_functional: np.ndarray   # the A-map A e_chi -> S_chi
    unit_pos: int

    @property
    def dim(self):
        return len(self.words)


def pim_data(algebra, b) -> PIMData:
    cache = algebra.__dict__.setdefault("_pim_cache", {})
    if b in cache:
        return cache[b]
    p = algebra.p
    e = algebra.primitive_idempotents[b]
    r = algebra.right_mult_operator(e)
    _, piv, _ = ff.rref(r, p)
    basis = r[:, piv]
    words = [algebra.basis_words[i] for i in piv]
    acts = []
    for name in algebra.presentation.generators:
        img = ff.matmul(algebra.left_mult_operator(algebra.generators[name]), basis, p)
        acts.append(ff.solve(basis, img, p))
    wd = weight_data(algebra)
    chi_exp = algebra.grouplike.exponents[b]
    weights = np.array([wd.char_of(wd.add(wd.word_weight(w), chi_exp)) for w in words],
                       dtype=np.int64)
    chars = algebra.simple_characters
    data = PIMData(b, words, list(piv), basis, np.stack(acts), weights,
                   chars[b][list(piv)] % p, words.index(()))
    cache[b] = data
    return data


@dataclass
class ModuleMap:
    source: ModuleRep
    target: ModuleRep
    matrix: np.ndarray

    def check(self):
        p = self.source.p
        for g in range(len(self.source.algebra.presentation.generators)):
            left = ff.matmul(self.matrix, self.source.matrix(g), p)
            right = ff.matmul(self.target.matrix(g), self.matrix, p)
            if not np.array_equal(left, right):
                return False
        return True


# -- constructors -------------------------------------------------------------

def zero_module(algebra):
    ngens = len(algebra.presentation.generators)
    return ModuleRep(algebra, np.zeros((ngens, 0, 0), dtype=np.int64), check=False,
                     weights=np.zeros(0, dtype=np.int64))


def regular_module(algebra):
    acts = [algebra.left_mult_operator(algebra.generators[n])
            for n in algebra.presentation.generators]
    return ModuleRep(algebra, np.stack(acts))


def simple_module(algebra, b):
    """One-dimensional module of character ``b``."""
    chi = algebra.simple_characters[b]
    acts = [[[int(chi @ algebra.generators[n] % algebra.p)]]
            for n in algebra.presentation.generators]
    return ModuleRep(algebra, np.array(acts, dtype=np.int64))


def projective_indecomposable(algebra, b):
    return ProjectiveModule(algebra, [b])


def direct_sum(m, n):
    d1, d2 = m.dim, n.dim
    acts = np.zeros((m.actions.shape[0], d1 + d2, d1 + d2), dtype=np.int64)
    acts[:, :d1, :d1] = m.actions
    acts[:, d1:, d1:] = n.actions
    wts = None
    if m.weights is not None and n.weights is not None:
        wts = np.concatenate([m.weights, n.weights])
    return ModuleRep(m.algebra, acts, check=False, weights=wts)


def submodule(m, vectors):
    """Smallest submodule containing the given row vectors.

    Returns ``(S, basis)`` where ``basis`` (RREF rows in ``M`` coordinates)
    spans ``S``.
    """
    p = m.p
    basis = ff.row_basis(np.asarray(vectors, dtype=np.int64).reshape(-1, m.dim), p)
    ngens = m.actions.shape[0]
    while True:
        imgs = [m.act_rows(g, basis) for g in range(ngens)]
        new = ff.row_basis(np.vstack([basis] + imgs), p)
        if new.shape[0] == basis.shape[0]:
            break
        basis = new
    return restrict_to_subspace(m, basis), basis


def restrict_to_subspace(m, basis):
    """Module structure on an invariant subspace given by RREF rows."""
    p = m.p
    if basis.shape[0] == 0:
        return zero_module(m.algebra)
    piv = [int(np.flatnonzero(r)[0]) for r in basis]
    acts = np.stack([m.act_rows(g, basis)[:, piv].T for g in range(m.actions.shape[0])])
    wts = None
    if m.weights is not None:
        wts = _row_weights(basis, m.weights)
    return ModuleRep(m.algebra, acts % p, check=False, weights=wts)


def _row_weights(rows, weights):
    out = []
    for r in rows:
        ws = set(weights[np.flatnonzero(r)].tolist())
        if len(ws) != 1:
            return None
        out.append(ws.pop())
    return np.array(out, dtype=np.int64)


def quotient_module(m, sub_basis):
    """``M / S`` for ``S`` spanned by RREF rows; basis = complementary unit vectors."""
    p = m.p
    sub_basis = ff.row_basis(sub_basis, p) if len(sub_basis) else np.zeros((0, m.dim), np.int64)
    piv = [int(np.flatnonzero(r)[0]) for r in sub_basis]
    comp = [i for i in range(m.dim) if i not in set(piv)]
    acts = []
    for g in range(m.actions.shape[0]):
        img = m.matrix(g)[:, comp].T.copy()       # rows = images of complement vectors
        if len(piv):
            img = (img - ff.matmul(img[:, piv], sub_basis, p)) % p
        acts.append(img[:, comp].T)
    wts = None if m.weights is None else m.weights[comp]
    return ModuleRep(m.algebra, np.stack(acts) % p if comp else
                     np.zeros((m.actions.shape[0], 0, 0), np.int64), check=False, weights=wts)


# -- radical, tops, covers ------------------------------------------------------

def module_radical(m):
    """RREF rows spanning ``rad(A) M``, closed under the action."""
    p = m.p
    if m.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    gens = m.algebra.radical_generators
    if not gens:
        return np.zeros((0, m.dim), dtype=np.int64)
    images = [m.element_matrix(w).T for w in gens] if not _are_generators(m.algebra, gens) \
        else [m.matrix(_generator_index(m.algebra, w)).T for w in gens]
    rows = np.vstack(images)
    rows = rows[np.any(rows, axis=1)]
    if m.weights is not None:
        basis = _rowspace_by_weight(rows, m.weights, p)
    else:
        basis = ff.row_basis(rows, p) if len(rows) else np.zeros((0, m.dim), np.int64)
    # close under the generators
    ngens = m.actions.shape[0]
    while True:
        piv = [int(np.flatnonzero(r)[0]) for r in basis]
        extra = []
        for g in range(ngens):
            img = m.act_rows(g, basis) if len(basis) else basis
            if len(piv):
                img = (img - ff.matmul(img[:, piv], basis, p)) % p
            img = img[np.any(img, axis=1)]
            if len(img):
                extra.append(img)
        if not extra:
            return basis
        more = np.vstack([basis] + extra)
        basis = _rowspace_by_weight(more, m.weights, p) if m.weights is not None \
            else ff.row_basis(more, p)


def _rowspace_by_weight(rows, weights, p):
    """Row space of a G-stable span, computed weight block by weight block."""
    dim = rows.shape[1]
    out = []
    for b in np.unique(weights):
        idx = np.flatnonzero(weights == b)
        blk = rows[:, idx]
        blk = blk[np.any(blk, axis=1)]
        if not len(blk):
            continue
        rb = ff.row_basis(blk, p)
        full = np.zeros((rb.shape[0], dim), dtype=np.int64)
        full[:, idx] = rb
        out.append(full)
    if not out:
        return np.zeros((0, dim), dtype=np.int64)
    basis = np.vstack(out)
    order = np.argsort([int(np.flatnonzero(r)[0]) for r in basis])
    return basis[order]


def _are_generators(alg, elems):
    return all(_generator_index(alg, w) is not None for w in elems)


def _generator_index(alg, w):
    for i, name in enumerate(alg.presentation.generators):
        if np.array_equal(alg.generators[name] % alg.p, np.asarray(w) % alg.p):
            return i
    return None


@dataclass
class ProjectiveCover:
    """``cover: P -> M`` with ``P = sum A e_chi``; ``tops`` are coordinates in ``M``."""

    module: ModuleRep
    projective: ProjectiveModule
    matrix: np.ndarray           # dim M x dim P
    tops: list
    betti: np.ndarray            # multiplicity per character
    radical: np.ndarray = field(repr=False, default=None)


def projective_cover(m):
    """Minimal projective cover of a module in a weight basis.

    The top is spanned by the basis vectors that are not pivots of the
    radical; each is a weight vector and generates a copy of ``A e_chi``.
    """
    alg = m.algebra
    if m.weights is None:
        raise NotCharacterSplit("projective_cover needs a weight basis; use M.weighted()")
    p = m.p
    rad = module_radical(m)
    piv = set(int(np.flatnonzero(r)[0]) for r in rad)
    tops = [i for i in range(m.dim) if i not in piv]
    tops.sort(key=lambda i: (int(m.weights[i]), i))
    chars = [int(m.weights[i]) for i in tops]
    proj = ProjectiveModule(alg, chars)
    mat = np.zeros((m.dim, proj.dim), dtype=np.int64)
    if tops:
        eye = np.zeros((m.dim, len(tops)), dtype=np.int64)
        eye[tops, np.arange(len(tops))] = 1
        memo = {}
        for j, pd in enumerate(proj.pims):
            sl = proj.summand_slice(j)
            cols = [m.apply_word(w, eye, memo)[:, j] for w in pd.words]
            mat[:, sl] = np.stack(cols, axis=1)
    betti = np.bincount(np.array(chars, dtype=np.int64),
                        minlength=alg.grouplike.order) if chars else \
        np.zeros(alg.grouplike.order, dtype=np.int64)
    return ProjectiveCover(m, proj, mat % p, tops, betti, rad)


def equivariant_kernel(mat, src_weights, dst_weights, p):
    """Kernel rows of a weight-preserving map (``dst x src`` matrix), block by block."""
    n = mat.shape[1]
    out = []
    for b in np.unique(src_weights):
        cols = np.flatnonzero(src_weights == b)
        rows = np.flatnonzero(dst_weights == b)
        blk = mat[np.ix_(rows, cols)]
        if rows.size == 0:
            k = np.eye(cols.size, dtype=np.int64)
        else:
            k = ff.row_basis(ff.kernel_basis(blk, p), p)
        if k.shape[0]:
            full = np.zeros((k.shape[0], n), dtype=np.int64)
            full[:, cols] = k
            out.append(full)
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    basis = np.vstack(out)
    order = np.argsort([int(np.flatnonzero(r)[0]) for r in basis])
    return basis[order]


def syzygy_of_cover(cover):
    """``(Omega M, rows)`` with ``rows`` the kernel basis in ``P`` coordinates."""
    m, proj = cover.module, cover.projective
    rows = equivariant_kernel(cover.matrix, proj.weights, m.weights, m.p)
    if proj.dim - rows.shape[0] != m.dim:
        raise RelationViolation("projective cover is not surjective")
    return restrict_to_subspace(proj, rows), rows


def syzygy(m):
    mw, _ = m.weighted()
    return syzygy_of_cover(projective_cover(mw))[0]


def is_projective(m):
    mw, _ = m.weighted()
    cover = projective_cover(mw)
    return cover.projective.dim == mw.dim


# -- homomorphisms ---------------------------------------------------------------

def hom_space(m, n):
    """Basis of ``Hom_A(M, N)`` as ``dim N x dim M`` matrices.

    Uses the presentation ``Omega(M) -> P_0 -> M -> 0``: a map is determined
    by weight vectors ``y_j`` of ``N`` (images of the top generators) that
    kill the generators of ``Omega(M)``.
    """
    p = m.p
    mw, cm = m.weighted()
    nw, cn = n.weighted()
    if mw.dim == 0 or nw.dim == 0:
        return []
    cover = projective_cover(mw)
    omega, rows = syzygy_of_cover(cover)
    proj = cover.projective
    # generators of Omega(M) as vectors of P_0
    if omega.dim:
        ocover = projective_cover(omega)
        gens = np.stack([rows[t] for t in ocover.tops]) if ocover.tops else np.zeros((0, proj.dim), np.int64)
    else:
        gens = np.zeros((0, proj.dim), dtype=np.int64)
    # unknown blocks: y_j in N_{chi_j}
    blocks = [nw.weight_indices(c) for c in proj.characters]
    offs = np.concatenate([[0], np.cumsum([b.size for b in blocks])]).astype(int)
    nunk = int(offs[-1])
    if nunk == 0:
        return []
    # images rho_N(b_i) restricted to columns of N_{chi_j}, per summand
    memo_cache = {}
    word_imgs = []
    for j, pd in enumerate(proj.pims):
        c = proj.characters[j]
        if c not in memo_cache:
            cols = np.zeros((nw.dim, blocks[j].size), dtype=np.int64)
            cols[blocks[j], np.arange(blocks[j].size)] = 1
            memo = {}
            memo_cache[c] = [nw.apply_word(w, cols, memo) for w in pd.words]
        word_imgs.append(memo_cache[c])
    # f~(v) for v in P_0 is sum_j sum_i v[j, i] * rho_N(b_i) y_j  -> linear in Y
    def ftilde_matrix(v):
        out = np.zeros((nw.dim, nunk), dtype=np.int64)
        for j in range(len(proj.pims)):
            seg = v[proj.summand_slice(j)]
            for i in np.flatnonzero(seg):
                out[:, offs[j]:offs[j + 1]] = (out[:, offs[j]:offs[j + 1]]
                                               + int(seg[i]) * word_imgs[j][i]) % p
        return out

    if len(gens):
        system = np.vstack([ftilde_matrix(g) for g in gens])
        sols = ff.kernel_basis(system, p)
    else:
        sols = np.eye(nunk, dtype=np.int64)
    # f = f~ o section of the cover
    section = ff.solve(cover.matrix, np.eye(mw.dim, dtype=np.int64), p)   # dim P x dim M
    out = []
    basis_imgs = [ftilde_matrix(np.eye(proj.dim, dtype=np.int64)[k]) for k in range(proj.dim)]
    stacked = np.stack(basis_imgs, axis=1)                                 # dim N x dim P x nunk
    for y in sols:
        ft = ff.matmul(stacked.reshape(-1, nunk), y.reshape(-1, 1), p).reshape(nw.dim, proj.dim)
        f = ff.matmul(ft, section, p)
        if cn is not None:
            f = ff.matmul(cn, f, p)
        if cm is not None:
            f = ff.matmul(f, ff.solve(cm, np.eye(m.dim, dtype=np.int64), p), p)
        out.append(f)
    return out


def hom_dim(m, n):
    return len(hom_space(m, n))


def projective_multiplicities(m):
    """Multiplicity of each ``A e_chi`` as a direct summand of ``M``.

    The rank of the pairing ``Hom(P_chi, M) x Hom(M, P_chi) -> End(P_chi)/rad``
    counts the summands.
    """
    alg = m.algebra
    p = m.p
    mw, _ = m.weighted()
    out = np.zeros(alg.grouplike.order, dtype=np.int64)
    if mw.dim == 0:
        return out
    for b in range(alg.grouplike.order):
        idx = mw.weight_indices(b)
        if idx.size == 0:
            continue
        pchi = projective_indecomposable(alg, b)
        back = hom_space(mw, pchi)
        if not back:
            continue
        pd = pchi.pims[0]
        # a map P_chi -> M is e_chi -> v for v in M_chi; compose and read the top coefficient
        pair = np.zeros((idx.size, len(back)), dtype=np.int64)
        for a, i in enumerate(idx):
            for c, g in enumerate(back):
                pair[a, c] = g[pd.unit_pos, i]
        # the unit coordinate of g(v) is its image in the top of P_chi
        out[b] = ff.rank(pair, p)
    return out


def stable_dim(m):
    """Dimension of ``M`` after removing a maximal projective summand."""
    mult = projective_multiplicities(m)
    alg = m.algebra
    proj = sum(int(k) * pim_data(alg, b).dim for b, k in enumerate(mult))
    return m.dim - proj


# -- summands -----------------------------------------------------------------------

def split_summand(m, idem):
    """``(image, kernel)`` of an idempotent endomorphism, both as modules."""
    p = m.p
    e = np.asarray(idem.matrix if isinstance(idem, ModuleMap) else idem, dtype=np.int64) % p
    if not np.array_equal(ff.matmul(e, e, p), e):
        raise NotIdempotent("endomorphism is not idempotent")
    img = ff.row_basis(e.T, p)
    ker = ff.row_basis(ff.kernel_basis(e, p), p)
    return restrict_to_subspace(m, img), restrict_to_subspace(m, ker)


@dataclass
class IdempotentSearch:
    idempotent: np.ndarray | None
    trials: int
    seed: int
    heuristic: bool = True

    @property
    def indecomposable(self):
        return self.idempotent is None


def find_idempotent(m, trials=32, seed=0):
    """Randomised search for a nontrivial idempotent in ``End_A(M)``.

    Each trial draws a random endomorphism, factors its characteristic
    polynomial into coprime parts ``a*b`` and projects onto ``ker a(phi)``
    along ``ker b(phi)``. No split after ``trials`` attempts is reported as
    (heuristically) indecomposable.
    """
    p = m.p
    if m.dim <= 1:
        return IdempotentSearch(None, 0, seed)
    ends = hom_space(m, m)
    rng = np.random.default_rng(seed)
    for t in range(trials):
        coeffs = rng.integers(0, p, size=len(ends))
        phi = np.zeros((m.dim, m.dim), dtype=np.int64)
        for c, f in zip(coeffs, ends):
            phi = (phi + int(c) * f) % p
        e = _coprime_split_projection(phi, p)
        if e is not None:
            return IdempotentSearch(e, t + 1, seed)
    return IdempotentSearch(None, trials, seed)


def _coprime_split_projection(phi, p):
    f = ff.charpoly(phi, p)
    sq = ff.poly_gcd(f, _derivative(f, p), p) if len(f) > 1 else [1]
    rad = ff.poly_divmod(f, sq, p)[0] if len(sq) > 1 else f
    # an irreducible-ish factor: linear factors first, otherwise a gcd split
    roots = ff.poly_roots(rad, p)
    if roots and len(rad) > 2:
        g = [(-roots[0]) % p, 1]
    else:
        return None
    a, h = [1], list(f)
    while True:
        c = ff.poly_gcd(h, g, p)
        if len(c) <= 1:
            break
        a = ff.poly_mul(a, c, p)
        h = ff.poly_divmod(h, c, p)[0]
    b = h
    if len(a) <= 1 or len(b) <= 1:
        return None
    _, s, t = ff.poly_ext_gcd(a, b, p)
    # s*a + t*b = 1; t*b(phi) projects onto ker a(phi)
    return ff.matmul(ff.poly_eval_matrix(t, phi, p), ff.poly_eval_matrix(b, phi, p), p)


def _derivative(f, p):
    return ff.poly_trim([(i * c) % p for i, c in enumerate(f)][1:])
