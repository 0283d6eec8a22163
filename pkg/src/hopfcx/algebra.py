"""Finite dimensional associative algebras given by structure constants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import ffield as ff
from .exceptions import (CenterNotSplit, NotCharacterSplit, RadicalNotNilpotent,
                         ValidationError)
from .rewrite import format_word

FULL_ASSOCIATIVITY_DIM = 100


@dataclass(frozen=True)
class GroupLikeData:
    """An abelian group of group-likes ``G = Z/n_1 x ... x Z/n_r`` inside the algebra.

    ``elements[a]`` is the basis index of the group element with exponent
    vector ``exponents[a]``; ``table[b, a]`` is the value of character ``b``
    on element ``a``.
    """

    generators: tuple
    orders: tuple
    exponents: tuple
    elements: tuple
    table: np.ndarray

    @property
    def order(self):
        return len(self.elements)

    def inverse_index(self, a):
        inv = tuple((-x) % n for x, n in zip(self.exponents[a], self.orders))
        return self.exponents.index(inv)


@dataclass
class BlockDecomposition:
    idempotents: list
    dims: list

    def __len__(self):
        return len(self.idempotents)


class FiniteDimAlgebra:
    """Associative unital algebra over F_p with basis ``labels``.

    ``table[i, j, k]`` is the coefficient of ``b_k`` in ``b_i * b_j``.
    Derived data (radical, center, idempotents, blocks) is computed lazily
    and cached.
    """

    def __init__(self, field, labels, table, unit=0, generators=None, grouplike=None,
                 presentation=None, basis_words=None, check=True):
        self.field = field
        self.p = field.p
        self.labels = list(labels)
        self.table = np.asarray(table)
        self.dim = len(self.labels)
        self.unit = unit
        # generator name -> element vector
        self.generators = dict(generators or {})
        self.grouplike = grouplike
        self.presentation = presentation
        self.basis_words = basis_words
        if check:
            self.validate()

    @classmethod
    def from_presentation(cls, presentation, field, grouplike=None, check=True):
        """Compile a confluent presentation into structure constants.

        ``grouplike`` is ``(generator names, orders)`` or ``None``.
        """
        from .exceptions import ConfluenceError

        bad = presentation.check_local_confluence()
        if bad:
            raise ConfluenceError(bad)
        basis = presentation.enumerate_basis()
        table = presentation.structure_constants(basis)
        labels = [format_word(w, presentation.generators) for w in basis]
        index = {w: i for i, w in enumerate(basis)}
        gens = {}
        for g, name in enumerate(presentation.generators):
            gens[name] = presentation.to_vector((g,), index, len(basis))
        alg = cls(field, labels, table, unit=index[()], generators=gens,
                  presentation=presentation, basis_words=basis, check=False)
        if grouplike is not None:
            alg.grouplike = alg._build_grouplike(*grouplike)
        if check:
            alg.validate()
        return alg

    # -- elements ------------------------------------------------------------
    def basis_vector(self, i):
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    @property
    def one(self):
        return self.basis_vector(self.unit)

    def element(self, text):
        """Element from a word string such as ``"g^2 x"``."""
        pres = self.presentation
        index = {w: i for i, w in enumerate(self.basis_words)}
        return pres.to_vector(pres.word(text), index, self.dim)

    def mul(self, x, y):
        d = self.dim
        x = np.asarray(x, dtype=np.int64)
        nz = np.flatnonzero(x)
        if len(nz) * 8 < d:
            # sparse left factor: sum_i x_i (y @ T[i])
            tf = self._table_float
            yf = (np.asarray(y, dtype=np.int64) % self.p).astype(np.float64)
            out = np.zeros(d, dtype=np.int64)
            for i in nz:
                out = (out + int(x[i]) * ff.matmul(yf, tf[i], self.p)) % self.p
            return out
        xy = np.outer(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)) % self.p
        return ff.matmul(xy.reshape(1, d * d), self._table_float.reshape(d * d, d), self.p)[0]

    @cached_property
    def _table_float(self):
        return self.table.astype(np.float64)

    @cached_property
    def _table_float_right(self):
        d = self.dim
        return np.ascontiguousarray(self._table_float.transpose(1, 0, 2)).reshape(d, d * d)

    def left_mult_operator(self, a):
        """Matrix of ``x -> a*x`` acting on coordinate columns."""
        d = self.dim
        flat = self._table_float.reshape(d, d * d)
        m = ff.matmul(np.asarray(a, dtype=np.int64).reshape(1, d), flat, self.p)
        return m.reshape(d, d).T.copy()

    def right_mult_operator(self, a):
        """Matrix of ``x -> x*a``."""
        d = self.dim
        flat = self._table_float_right
        m = ff.matmul(np.asarray(a, dtype=np.int64).reshape(1, d), flat, self.p)
        return m.reshape(d, d).T.copy()

    def power(self, a, n):
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    # -- validation ------------------------------------------------------------
    def validate(self, rng_seed=0, samples=200):
        p, d = self.p, self.dim
        if p <= d:
            raise ValidationError(
                f"field characteristic p = {p} must exceed dim A = {d} (trace-form radical)")
        t = self.table
        if not (np.array_equal(t[self.unit], np.eye(d, dtype=t.dtype))
                and np.array_equal(t[:, self.unit, :], np.eye(d, dtype=t.dtype))):
            raise ValidationError("unit does not act as the identity")
        self.check_associativity(rng_seed, samples)
        if self.grouplike is not None:
            self._check_grouplike()

    def check_associativity(self, rng_seed=0, samples=200):
        """All triples up to dimension 100, random triples above."""
        d, p = self.dim, self.p
        t = self.table.astype(np.int64)
        flat = t.reshape(d * d, d)
        if d <= FULL_ASSOCIATIVITY_DIM:
            for i in range(d):
                left = ff.matmul(t[i], t.reshape(d, d * d), p).reshape(d, d, d)
                right = ff.matmul(flat, t[i], p).reshape(d, d, d)
                if not np.array_equal(left, right):
                    raise ValidationError(f"associativity fails for triples starting at b_{i}")
            return
        rng = np.random.default_rng(rng_seed)
        for i, j, k in rng.integers(0, d, size=(samples, 3)):
            ab = t[i, j]
            left = ff.matmul(ab.reshape(1, d), t[:, k, :], p)[0]
            bc = t[j, k]
            right = ff.matmul(bc.reshape(1, d), t[i, :, :], p)[0]
            if not np.array_equal(left, right):
                raise ValidationError(f"associativity fails on (b_{i}, b_{j}, b_{k})")

    def _build_grouplike(self, names, orders):
        field = self.field
        orders = tuple(int(n) for n in orders)
        exps = tuple(itertools.product(*[range(n) for n in orders]))
        elements = []
        for e in exps:
            v = self.one
            for name, k in zip(names, e):
                v = self.mul(v, self.power(self.generators[name], k))
            nz = np.flatnonzero(v)
            if len(nz) != 1 or v[nz[0]] != 1:
                raise ValidationError("group-like products are not basis elements")
            elements.append(int(nz[0]))
        roots = [field.root_of_unity(n) for n in orders]
        table = np.zeros((len(exps), len(exps)), dtype=np.int64)
        for b, eb in enumerate(exps):
            for a, ea in enumerate(exps):
                val = 1
                for r, x, y in zip(roots, ea, eb):
                    val = val * pow(r, x * y, field.p) % field.p
                table[b, a] = val
        return GroupLikeData(tuple(names), orders, exps, tuple(elements), table)

    def _check_grouplike(self):
        g = self.grouplike
        p = self.p
        idx = {e: a for a, e in enumerate(g.exponents)}
        for a, ea in enumerate(g.exponents):
            for b, eb in enumerate(g.exponents):
                prod = self.table[g.elements[a], g.elements[b]]
                c = idx[tuple((x + y) % n for x, y, n in zip(ea, eb, g.orders))]
                if prod[g.elements[c]] != 1 or np.count_nonzero(prod) != 1:
                    raise ValidationError("group-like elements are not closed under multiplication")
        n = g.order
        inv = [g.inverse_index(a) for a in range(n)]
        gram = (g.table.astype(np.int64) @ g.table[:, inv].T.astype(np.int64)) % p
        if not np.array_equal(gram, (n % p) * np.eye(n, dtype=np.int64)):
            raise ValidationError("character table fails the orthogonality relations")

    # -- radical ------------------------------------------------------------
    @cached_property
    def trace_form(self):
        d = self.dim
        t = self.table.astype(np.int64)
        traces = np.array([int(np.trace(t[k].T) % self.p) for k in range(d)], dtype=np.int64)
        return ff.matmul(t.reshape(d * d, d), traces.reshape(d, 1), self.p).reshape(d, d)

    @cached_property
    def radical(self):
        """Basis (rows, RREF) of the Jacobson radical, via the trace form."""
        if self.p <= self.dim:
            raise RadicalNotNilpotent("trace form needs p > dim A")
        rad = ff.row_basis(ff.kernel_basis(self.trace_form, self.p), self.p)
        self._check_radical(rad)
        return rad

    def _check_radical(self, rad):
        p = self.p
        if rad.shape[0] == 0:
            return
        gens = self._left_ideal_generators(rad)
        power = rad
        for _ in range(self.dim + 1):
            if power.shape[0] == 0:
                break
            prods = np.vstack([ff.matmul(power, self.right_mult_operator(w).T, p) for w in gens])
            power = ff.row_basis(prods, p)
        else:
            raise RadicalNotNilpotent("trace-form radical is not nilpotent")
        if power.shape[0]:
            raise RadicalNotNilpotent("trace-form radical is not nilpotent")
        for g in self._algebra_generators():
            for op in (self.left_mult_operator(g), self.right_mult_operator(g)):
                img = ff.matmul(rad, op.T, p)
                if ff.rank(np.vstack([rad, img]), p) != rad.shape[0]:
                    raise ValidationError("radical is not a two-sided ideal")

    def _algebra_generators(self):
        if self.generators:
            return list(self.generators.values())
        return [self.basis_vector(i) for i in range(self.dim)]

    def _left_ideal_generators(self, rad):
        """Elements ``W`` of ``rad`` with ``A*W = rad``, preferring generators and basis words."""
        p = self.p
        target = rad.shape[0]
        piv = _pivots(rad)
        candidates = []
        for g in self.generators.values():
            if ff.in_row_space(rad, piv, g, p):
                candidates.append(g)
        for i in range(self.dim):
            v = self.basis_vector(i)
            if ff.in_row_space(rad, piv, v, p):
                candidates.append(v)
        candidates.extend(list(rad))
        chosen, span = [], np.zeros((0, self.dim), dtype=np.int64)
        for w in candidates:
            ideal = ff.matmul(self.right_mult_operator(w), np.eye(self.dim, dtype=np.int64), p).T
            trial = ff.row_basis(np.vstack([span, ideal]), p)
            if trial.shape[0] > span.shape[0]:
                chosen.append(w)
                span = trial
                if span.shape[0] == target:
                    break
        return chosen

    @cached_property
    def radical_generators(self):
        """Left-ideal generators of the radical; ``rad(M) = A * span(W M)``."""
        rad = self.radical
        if rad.shape[0] == 0:
            return []
        return self._left_ideal_generators(rad)

    def quotient_by_radical(self):
        """Structure constants of ``A / rad A`` on a complement of basis elements."""
        p = self.p
        rad = self.radical
        comp = ff.complement_rows(rad, np.eye(self.dim, dtype=np.int64), p)
        basis = np.vstack([np.eye(self.dim, dtype=np.int64)[comp], rad])
        k = len(comp)
        table = np.zeros((k, k, k), dtype=np.int64)
        for a, i in enumerate(comp):
            for b, j in enumerate(comp):
                coords = ff.solve(basis.T, self.table[i, j].astype(np.int64), p)
                table[a, b] = coords[:k]
        return comp, table

    def check_semisimple_quotient(self):
        comp, table = self.quotient_by_radical()
        k = len(comp)
        traces = np.array([int(np.trace(table[m].T) % self.p) for m in range(k)], dtype=np.int64)
        form = (table.reshape(k * k, k) @ traces).reshape(k, k) % self.p
        if ff.rank(form, self.p) != k:
            raise ValidationError("A / rad A is not semisimple")
        return True

    # -- characters and idempotents ------------------------------------------
    def _require_grouplike(self):
        if self.grouplike is None:
            raise NotCharacterSplit("no group-like data declared")
        return self.grouplike

    @cached_property
    def simple_characters(self):
        """Algebra maps A -> F_p, one row per character of the group-likes.

        Requires ``A / rad A`` to be spanned by the images of the group-likes
        (the character-split case).
        """
        g = self._require_grouplike()
        p = self.p
        rad = self.radical
        if self.dim - rad.shape[0] != g.order:
            raise NotCharacterSplit(
                f"dim A/rad A = {self.dim - rad.shape[0]} differs from |G| = {g.order}")
        group = np.eye(self.dim, dtype=np.int64)[list(g.elements)]
        basis = np.vstack([group, rad])
        if ff.rank(basis, p) != self.dim:
            raise NotCharacterSplit("group-likes do not span A / rad A")
        coords = ff.solve(basis.T, np.eye(self.dim, dtype=np.int64), p)[:g.order]
        chars = ff.matmul(g.table, coords, p)
        self._check_characters(chars)
        return chars

    def _check_characters(self, chars):
        p = self.p
        d = self.dim
        t = self.table.astype(np.int64)
        if d <= FULL_ASSOCIATIVITY_DIM:
            pairs = list(itertools.product(range(d), repeat=2))
        else:
            rng = np.random.default_rng(1)
            pairs = [tuple(x) for x in rng.integers(0, d, size=(300, 2))]
        for chi in chars:
            for i, j in pairs:
                if (t[i, j] @ chi - chi[i] * chi[j]) % p:
                    raise NotCharacterSplit("A / rad A is not commutative and split")

    @cached_property
    def trivial_character_index(self):
        """Index of the character that is 1 on every group-like."""
        g = self._require_grouplike()
        for b in range(g.order):
            if np.all(g.table[b] == 1):
                return b
        raise ValidationError("no trivial character")

    @cached_property
    def primitive_idempotents(self):
        """``e_chi = |G|^-1 sum_g chi(g^-1) g`` for every character."""
        g = self._require_grouplike()
        p = self.p
        n = g.order
        inv_n = pow(n, p - 2, p)
        out = []
        for b in range(n):
            e = np.zeros(self.dim, dtype=np.int64)
            for a in range(n):
                e[g.elements[a]] = g.table[b, g.inverse_index(a)] * inv_n % p
            out.append(e)
        total = np.sum(out, axis=0) % p
        if not np.array_equal(total, self.one):
            raise ValidationError("idempotents do not sum to 1")
        return out

    def idempotent_for(self, chi_values):
        """Primitive idempotent whose character takes ``chi_values`` on the group-likes."""
        g = self._require_grouplike()
        for b in range(g.order):
            if np.array_equal(g.table[b] % self.p, np.asarray(chi_values) % self.p):
                return b
        raise ValidationError("no such character")

    # -- center and blocks --------------------------------------------------------
    @cached_property
    def center(self):
        """Basis of ``{z : z b = b z}`` for all algebra generators."""
        p = self.p
        rows = [(self.right_mult_operator(g) - self.left_mult_operator(g)) % p
                for g in self._algebra_generators()]
        return ff.row_basis(ff.kernel_basis(np.vstack(rows), p), p)

    def blocks(self, max_trials=64, seed=0):
        """Central primitive idempotents via splitting the center.

        A random central element separates the points of the split quotient
        ``Z / rad Z``; Lagrange interpolation gives idempotents modulo
        ``rad Z`` which are lifted by ``e <- 3e^2 - 2e^3``.
        """
        p = self.p
        z = self.center
        nz = z.shape[0]
        # structure constants of Z in its own basis
        piv = _pivots(z)
        zt = np.zeros((nz, nz, nz), dtype=np.int64)
        for a in range(nz):
            la = self.left_mult_operator(z[a])
            prods = ff.matmul(z, la.T, p)
            zt[a] = prods[:, piv]
        traces = np.array([int(np.trace(zt[m].T) % p) for m in range(nz)], dtype=np.int64)
        form = (zt.reshape(nz * nz, nz) @ traces).reshape(nz, nz) % p
        radz = ff.kernel_basis(form, p)
        nblocks = nz - radz.shape[0]
        if nblocks == 1:
            idems = [self.one]
        else:
            comp = ff.complement_rows(radz, np.eye(nz, dtype=np.int64), p)
            rng = np.random.default_rng(seed)
            idems = None
            for _ in range(max_trials):
                c = rng.integers(0, p, size=nz)
                # multiplication by c on Z / rad Z
                lc = np.tensordot(c, zt, axes=(0, 0)).T % p
                basis_q = np.vstack([np.eye(nz, dtype=np.int64)[comp], radz])
                op = np.zeros((nblocks, nblocks), dtype=np.int64)
                for col, i in enumerate(comp):
                    coords = ff.solve(basis_q.T, lc[:, i], p)
                    op[:, col] = coords[:nblocks]
                roots = ff.poly_roots(ff.charpoly(op, p), p)
                if len(roots) == nblocks:
                    idems = self._lagrange_idempotents(z[:].T @ c % p, roots)
                    break
            if idems is None:
                raise CenterNotSplit(
                    "Z / rad Z is not a product of copies of F_p (or no separating element found)")
        idems = [self._lift_idempotent(e) for e in idems]
        self._check_blocks(idems)
        dims = [ff.rank(ff.matmul(self.left_mult_operator(e), np.eye(self.dim, dtype=np.int64), p), p)
                for e in idems]
        return BlockDecomposition(idems, dims)

    def _lagrange_idempotents(self, c, roots):
        p = self.p
        out = []
        for i, li in enumerate(roots):
            e = self.one
            for j, lj in enumerate(roots):
                if i != j:
                    factor = (c - lj * self.one) % p * pow((li - lj) % p, p - 2, p) % p
                    e = self.mul(e, factor)
            out.append(e)
        return out

    def _lift_idempotent(self, e):
        p = self.p
        for _ in range(self.dim + 1):
            e2 = self.mul(e, e)
            if np.array_equal(e2, e):
                return e
            e3 = self.mul(e2, e)
            e = (3 * e2 - 2 * e3) % p
        raise CenterNotSplit("idempotent lifting did not stabilise")

    def _check_blocks(self, idems):
        p = self.p
        total = np.sum(idems, axis=0) % p
        if not np.array_equal(total, self.one):
            raise ValidationError("block idempotents do not sum to 1")
        for i, e in enumerate(idems):
            for j, f in enumerate(idems):
                prod = self.mul(e, f)
                expect = e if i == j else np.zeros_like(e)
                if not np.array_equal(prod, expect):
                    raise ValidationError("block idempotents are not orthogonal")
            for g in self._algebra_generators():
                if not np.array_equal(self.mul(e, g), self.mul(g, e)):
                    raise ValidationError("block idempotent is not central")


def _pivots(rref_rows):
    out = []
    for row in rref_rows:
        nz = np.flatnonzero(row)
        out.append(int(nz[0]))
    return out


class WeightData:
    """Conjugation weights of the generators under the group-likes.

    Weights are exponent vectors ``c`` with ``K_i x K_i^-1 = zeta_i^c_i x``;
    characters are indexed by the same exponent vectors as group elements.
    """

    def __init__(self, algebra):
        g = algebra.grouplike
        self.algebra = algebra
        self.orders = g.orders
        self.exponents = g.exponents
        self.index = {e: a for a, e in enumerate(g.exponents)}
        p = algebra.p
        self.roots = [algebra.field.root_of_unity(n) for n in g.orders]
        # discrete logs of eigenvalues, per group generator
        self.logs = []
        for r, n in zip(self.roots, g.orders):
            self.logs.append({pow(r, k, p): k for k in range(n)})
        names = list(algebra.presentation.generators)
        self.generator_weights = []
        for name in names:
            x = algebra.generators[name]
            c = []
            for kname, n, log in zip(g.generators, g.orders, self.logs):
                k = algebra.generators[kname]
                kinv = algebra.power(k, n - 1)
                conj = algebra.mul(algebra.mul(k, x), kinv)
                lam = _scalar_multiple(conj, x, p)
                if lam is None or lam not in log:
                    raise NotCharacterSplit(
                        f"generator {name} is not homogeneous under conjugation by {kname}")
                c.append(log[lam])
            self.generator_weights.append(tuple(c))

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def word_weight(self, word):
        w = tuple(0 for _ in self.orders)
        for g in word:
            w = self.add(w, self.generator_weights[g])
        return w

    def char_of(self, exps):
        return self.index[tuple(exps)]


def _scalar_multiple(u, v, p):
    """``lam`` with ``u = lam * v`` or ``None``."""
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return None
    lam = int(u[nz[0]]) * pow(int(v[nz[0]]), p - 2, p) % p
    if np.array_equal(u % p, lam * v % p):
        return lam
    return None


def weight_data(algebra) -> WeightData:
    wd = algebra.__dict__.get("_weight_data")
    if wd is None:
        algebra._require_grouplike()
        wd = WeightData(algebra)
        algebra.__dict__["_weight_data"] = wd
    return wd
