"""Hopf structure on a presented algebra: coproduct, counit, antipode.

Coproducts are stored sparsely as ``{(i, j): c}`` over pairs of basis
indices, given on generators and extended multiplicatively to basis words.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ffield as ff
from .algebra import FiniteDimAlgebra
from .exceptions import RelationViolation, ValidationError
from .modrep import ModuleRep

# above this dimension Hopf axioms are checked against random functionals
EXACT_AXIOM_DIM = 100
AXIOM_TRIALS = 6


def _sparse_add(acc, key, c, p):
    v = (acc.get(key, 0) + c) % p
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class HopfAlgebra(FiniteDimAlgebra):
    """A :class:`FiniteDimAlgebra` with ``Delta``, ``epsilon`` and ``S`` on generators."""

    coproduct_gens: dict = None
    counit_gens: dict = None
    antipode_gens: dict = None

    @classmethod
    def from_data(cls, presentation, field, grouplike, coproduct, counit, antipode, check=True):
        """Build and validate.

        ``coproduct[name]`` is a list of ``(coeff, left_word, right_word)``,
        ``counit[name]`` a scalar and ``antipode[name]`` a list of
        ``(coeff, word)``; words are tuples of generator indices.
        """
        alg = cls.from_presentation(presentation, field, grouplike=grouplike, check=check)
        alg._set_hopf(coproduct, counit, antipode)
        if check:
            alg.validate_hopf()
        return alg

    def _set_hopf(self, coproduct, counit, antipode):
        p = self.p
        index = {w: i for i, w in enumerate(self.basis_words)}
        pres = self.presentation
        self.coproduct_gens, self.counit_gens, self.antipode_gens = {}, {}, {}
        for name in pres.generators:
            if name not in coproduct or name not in counit or name not in antipode:
                raise ValidationError(f"Hopf data missing for generator {name}")
            delta = {}
            for c, left, right in coproduct[name]:
                lv = pres.to_vector(tuple(left), index, self.dim)
                rv = pres.to_vector(tuple(right), index, self.dim)
                for i in np.flatnonzero(lv):
                    for j in np.flatnonzero(rv):
                        _sparse_add(delta, (int(i), int(j)), c * int(lv[i]) * int(rv[j]), p)
            self.coproduct_gens[name] = delta
            self.counit_gens[name] = int(counit[name]) % p
            s = np.zeros(self.dim, dtype=np.int64)
            for c, w in antipode[name]:
                s = (s + c * pres.to_vector(tuple(w), index, self.dim)) % p
            self.antipode_gens[name] = s
        self._delta_cache = {(): {(self.unit, self.unit): 1}}
        self._antipode_cache = {(): self.one}

    # -- structure maps on basis words ------------------------------------------------
    def _tensor_mul(self, x, y):
        """Product of two sparse elements of ``A (x) A``."""
        p = self.p
        t = self.table
        out = {}
        for (i, j), a in x.items():
            for (k, l), b in y.items():
                left = t[i, k]
                right = t[j, l]
                li = np.flatnonzero(left)
                ri = np.flatnonzero(right)
                for u in li:
                    cu = a * b * int(left[u]) % p
                    for v in ri:
                        _sparse_add(out, (int(u), int(v)), cu * int(right[v]), p)
        return out

    def coproduct_word(self, word):
        word = tuple(word)
        cache = self._delta_cache
        if word not in cache:
            names = self.presentation.generators
            cache[word] = self._tensor_mul(self.coproduct_word(word[:-1]),
                                           self.coproduct_gens[names[word[-1]]])
        return cache[word]

    def coproduct(self, i):
        """``Delta(b_i)`` as ``{(j, k): c}``."""
        return self.coproduct_word(self.basis_words[i])

    def counit_word(self, word):
        names = self.presentation.generators
        v = 1
        for g in word:
            v = v * self.counit_gens[names[g]] % self.p
        return v

    @property
    def counit_vector(self):
        return np.array([self.counit_word(w) for w in self.basis_words], dtype=np.int64)

    def antipode_word(self, word):
        word = tuple(word)
        cache = self._antipode_cache
        if word not in cache:
            names = self.presentation.generators
            # S is an anti-homomorphism: S(w g) = S(g) S(w)
            cache[word] = self.mul(self.antipode_gens[names[word[-1]]],
                                   self.antipode_word(word[:-1]))
        return cache[word]

    @property
    def antipode_matrix(self):
        """Columns ``S(b_i)``."""
        return np.stack([self.antipode_word(w) for w in self.basis_words], axis=1)

    # -- validation ------------------------------------------------------------------
    def check_relations(self):
        """``Delta``, ``epsilon`` respect every rewrite rule, ``S`` reverses them."""
        p = self.p
        pres = self.presentation
        index = {w: i for i, w in enumerate(self.basis_words)}
        for rule in pres.rules:
            words = [(1, rule.lhs)] + [(-c, w) for w, c in rule.rhs.items()]
            # coproduct: the images of both sides must agree in A (x) A
            total = {}
            for c, w in words:
                for key, v in self._delta_of_free_word(w).items():
                    _sparse_add(total, key, c * v, p)
            if total:
                raise RelationViolation(
                    f"coproduct does not respect relation {pres.format_word(rule.lhs)}")
            eps = sum(c * self.counit_word(w) for c, w in words) % p
            if eps:
                raise RelationViolation(
                    f"counit does not respect relation {pres.format_word(rule.lhs)}")
            s = np.zeros(self.dim, dtype=np.int64)
            for c, w in words:
                s = (s + c * self._antipode_of_free_word(w)) % p
            if s.any():
                raise RelationViolation(
                    f"antipode does not respect relation {pres.format_word(rule.lhs)}")
        del index

    def _delta_of_free_word(self, word):
        names = self.presentation.generators
        out = {(self.unit, self.unit): 1}
        for g in word:
            out = self._tensor_mul(out, self.coproduct_gens[names[g]])
        return out

    def _antipode_of_free_word(self, word):
        names = self.presentation.generators
        out = self.one
        for g in word:
            out = self.mul(self.antipode_gens[names[g]], out)
        return out

    def validate_hopf(self, seed=0):
        self.check_relations()
        self.check_counit()
        self.check_antipode()
        self.check_coassociativity(seed)
        if self.grouplike is not None:
            for a in self.grouplike.elements:
                if self.coproduct(a) != {(a, a): 1}:
                    raise ValidationError(f"{self.labels[a]} is not group-like")
        return True

    def check_counit(self):
        p = self.p
        eps = self.counit_vector
        for i in range(self.dim):
            left = np.zeros(self.dim, dtype=np.int64)
            right = np.zeros(self.dim, dtype=np.int64)
            for (j, k), c in self.coproduct(i).items():
                left[k] = (left[k] + c * eps[j]) % p
                right[j] = (right[j] + c * eps[k]) % p
            target = self.basis_vector(i)
            if not (np.array_equal(left, target) and np.array_equal(right, target)):
                raise ValidationError(f"counit axiom fails on {self.labels[i]}")

    def check_antipode(self):
        p = self.p
        eps = self.counit_vector
        smat = self.antipode_matrix
        for i in range(self.dim):
            left = np.zeros(self.dim, dtype=np.int64)
            right = np.zeros(self.dim, dtype=np.int64)
            for (j, k), c in self.coproduct(i).items():
                # S(b_j) b_k and b_j S(b_k)
                left = (left + c * ff.matmul(smat[:, j], self.table[:, k, :].astype(np.int64), p)) % p
                right = (right + c * ff.matmul(smat[:, k], self.table[j].astype(np.int64), p)) % p
            target = eps[i] * self.one % p
            if not (np.array_equal(left, target) and np.array_equal(right, target)):
                raise ValidationError(f"antipode axiom fails on {self.labels[i]}")

    def check_coassociativity(self, seed=0):
        """``(Delta (x) id) Delta = (id (x) Delta) Delta`` on every basis element.

        Exact up to ``EXACT_AXIOM_DIM``; above it both sides are paired with
        random product functionals ``f (x) g (x) h`` (``AXIOM_TRIALS`` draws).
        """
        p, d = self.p, self.dim
        deltas = [self.coproduct(i) for i in range(d)]
        if d <= EXACT_AXIOM_DIM:
            for i in range(d):
                left, right = {}, {}
                for (j, k), c in deltas[i].items():
                    for (u, v), e in deltas[j].items():
                        _sparse_add(left, (u, v, k), c * e, p)
                    for (u, v), e in deltas[k].items():
                        _sparse_add(right, (j, u, v), c * e, p)
                if left != right:
                    raise ValidationError(f"coassociativity fails on {self.labels[i]}")
            return
        rng = np.random.default_rng(seed)
        for _ in range(AXIOM_TRIALS):
            f, g, h = (rng.integers(0, p, size=d) for _ in range(3))
            fg = np.array([sum(c * int(f[u]) * int(g[v]) for (u, v), c in deltas[j].items()) % p
                           for j in range(d)])
            gh = np.array([sum(c * int(g[u]) * int(h[v]) for (u, v), c in deltas[j].items()) % p
                           for j in range(d)])
            for i in range(d):
                left = sum(c * int(fg[j]) * int(h[k]) for (j, k), c in deltas[i].items()) % p
                right = sum(c * int(f[j]) * int(gh[k]) for (j, k), c in deltas[i].items()) % p
                if left != right:
                    raise ValidationError(f"coassociativity fails on {self.labels[i]}")


# -- modules built from the Hopf structure -------------------------------------------

def trivial_module(h):
    acts = [[[h.counit_gens[n]]] for n in h.presentation.generators]
    return ModuleRep(h, np.array(acts, dtype=np.int64))


def tensor_module(h, m, n, check=True):
    """``M (x) N`` with ``a`` acting by ``sum a_(1)|_M (x) a_(2)|_N``; basis ``m_i (x) n_j`` at ``i*dim N + j``."""
    p = h.p
    words = h.basis_words
    acts = []
    for name in h.presentation.generators:
        total = np.zeros((m.dim * n.dim, m.dim * n.dim), dtype=np.int64)
        for (i, j), c in h.coproduct_gens[name].items():
            total = (total + c * np.kron(m.word_action(words[i]), n.word_action(words[j]))) % p
        acts.append(total)
    wts = None
    if m.weights is not None and n.weights is not None and h.grouplike is not None:
        from .algebra import weight_data
        wd = weight_data(h)
        ex = h.grouplike.exponents
        wts = np.array([wd.char_of(wd.add(ex[a], ex[b])) for a in m.weights for b in n.weights],
                       dtype=np.int64).reshape(-1)
        if not _grouplikes_diagonal(h, acts):
            wts = None
    if not acts or m.dim * n.dim == 0:
        return ModuleRep(h, np.zeros((len(h.presentation.generators), 0, 0), np.int64),
                         check=False, weights=np.zeros(0, np.int64))
    return ModuleRep(h, np.stack(acts), check=check, weights=wts)


def _grouplikes_diagonal(h, acts):
    names = h.presentation.generators
    for k in h.grouplike.generators:
        a = acts[names.index(k)]
        if np.count_nonzero(a - np.diag(np.diag(a))):
            return False
    return True


def dual_module(h, m, check=True):
    """``M*`` with ``(a f)(x) = f(S(a) x)`` in the dual basis."""
    acts = [m.element_matrix(h.antipode_gens[n]).T.copy() for n in h.presentation.generators]
    if m.dim == 0:
        return m
    return ModuleRep(h, np.stack(acts), check=check)


# -- Hopf subalgebras --------------------------------------------------------------

@dataclass
class SubalgebraEmbedding:
    """``iota: H -> A`` given by images of the generators of ``H``."""

    source: FiniteDimAlgebra
    target: FiniteDimAlgebra
    images: dict        # generator name of H -> element of A

    def image_of_word(self, word):
        a = self.target
        names = self.source.presentation.generators
        out = a.one
        for g in word:
            out = a.mul(out, self.images[names[g]])
        return out

    @property
    def matrix(self):
        """Columns ``iota(b_i)`` for the basis words of ``H``."""
        return np.stack([self.image_of_word(w) for w in self.source.basis_words], axis=1)

    def validate(self):
        src, tgt = self.source, self.target
        if src.p != tgt.p:
            raise ValidationError("embedding between algebras over different fields")
        p = src.p
        pres = src.presentation
        for rule in pres.rules:
            val = self.image_of_word(rule.lhs)
            for w, c in rule.rhs.items():
                val = (val - c * self.image_of_word(w)) % p
            if val.any():
                raise ValidationError(
                    f"image of relation {pres.format_word(rule.lhs)} does not hold in the target")
        if ff.rank(self.matrix, p) != src.dim:
            raise ValidationError("embedding is not injective")
        if isinstance(src, HopfAlgebra) and isinstance(tgt, HopfAlgebra):
            self._check_hopf()
        return True

    def _check_hopf(self):
        src, tgt, p = self.source, self.target, self.source.p
        mat = self.matrix
        for name in src.presentation.generators:
            img = self.images[name]
            # Delta_A(iota g) vs (iota (x) iota) Delta_H(g)
            lhs = {}
            for i in np.flatnonzero(img):
                for key, c in tgt.coproduct(int(i)).items():
                    _sparse_add(lhs, key, c * int(img[i]), p)
            rhs = {}
            for (i, j), c in src.coproduct_gens[name].items():
                for u in np.flatnonzero(mat[:, i]):
                    for v in np.flatnonzero(mat[:, j]):
                        _sparse_add(rhs, (int(u), int(v)), c * int(mat[u, i]) * int(mat[v, j]), p)
            if lhs != rhs:
                raise ValidationError(f"embedding does not intertwine the coproduct on {name}")
            if int(tgt.counit_vector @ img % p) != src.counit_gens[name]:
                raise ValidationError(f"embedding does not intertwine the counit on {name}")
            s_img = ff.matmul(tgt.antipode_matrix, img, p)
            s_src = ff.matmul(mat, src.antipode_gens[name], p)
            if not np.array_equal(s_img, s_src):
                raise ValidationError(f"embedding does not intertwine the antipode on {name}")

    def index(self):
        """``dim A / dim H``; raises if it is not an integer."""
        q, r = divmod(self.target.dim, self.source.dim)
        if r:
            raise ValidationError("dim H does not divide dim A")
        return q


def restrict_module(emb, m, check=True):
    acts = [m.element_matrix(emb.images[n]) for n in emb.source.presentation.generators]
    if m.dim == 0:
        return ModuleRep(emb.source, np.zeros((len(acts), 0, 0), np.int64), check=False)
    return ModuleRep(emb.source, np.stack(acts), check=check)
