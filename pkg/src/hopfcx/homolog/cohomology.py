"""Degree-truncated cohomology rings ``H^*(A, k)`` via chain-map lifting."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .. import ffield as ff
from ..exceptions import InsufficientDepth, LiftFailure, NoSolution, ValidationError


@dataclass
class CohomologyClass:
    """A class in ``H^n(A, k) = Hom_A(P_n, k)``: one coefficient per summand of ``P_n``."""

    degree: int
    coeffs: np.ndarray

    def is_zero(self):
        return not np.any(self.coeffs)


def class_positions(trace, n):
    """Indices of the summands of ``P_n`` isomorphic to ``A e_eps``."""
    eps = trace.algebra.trivial_character_index
    return [j for j, c in enumerate(trace.projective(n).characters) if c == eps]


def class_from_basis(trace, n, vector):
    """Class of degree ``n`` with the given coordinates on the ``H^n`` basis."""
    pos = class_positions(trace, n)
    coeffs = np.zeros(len(trace.projective(n).characters), dtype=np.int64)
    coeffs[pos] = np.asarray(vector, dtype=np.int64) % trace.p
    return CohomologyClass(n, coeffs)


def evaluate_class(trace, m, coeffs, vectors):
    """``eta(v)`` for ``eta in Hom(P_m, k)`` given by summand coefficients; ``vectors`` are columns."""
    p = trace.p
    proj = trace.projective(m)
    out = np.zeros(vectors.shape[1:], dtype=np.int64)
    for j, pd in enumerate(proj.pims):
        if coeffs[j] % p:
            seg = vectors[proj.summand_slice(j)]
            out = (out + int(coeffs[j]) * ff.matmul(pd.top_functional, seg, p)) % p
    return out


class ChainLift:
    """Lifts of a batch of degree-``n`` classes to chain maps ``zeta_i: P_(n+i) -> P_i``.

    ``tops[i]`` has shape ``(batch, dim P_i, b_(n+i))``: the images of the
    summand generators of ``P_(n+i)``. Each lifting system is solved per
    weight space and the canonical RREF solution (free variables zero) is
    taken.
    """

    def __init__(self, trace, n, coeff_matrix):
        self.trace = trace
        self.n = n
        self.coeffs = np.asarray(coeff_matrix, dtype=np.int64) % trace.p     # (batch, b_n)
        self.tops = []
        self._full = []

    def extend(self, upto):
        tr = self.trace
        p = tr.p
        if tr.depth < self.n + upto:
            raise InsufficientDepth(f"lifting to P_{self.n + upto} needs resolution depth {self.n + upto}")
        while len(self.tops) <= upto:
            i = len(self.tops)
            if i == 0:
                # targets in M = k: zeta(e_j)
                targets = self.coeffs[:, None, :] * np.ones((1, tr.module.dim, 1), dtype=np.int64)
                targets = targets % p
            else:
                full = self.full_map(i - 1)                       # (batch, dim P_(i-1), dim P_(n+i-1))
                imgs = tr.top_images(self.n + i)                  # (dim P_(n+i-1), b_(n+i))
                targets = np.stack([ff.matmul(f, imgs, p) for f in full]) if len(full) else \
                    np.zeros((0, tr.projective(i - 1).dim, imgs.shape[1]), dtype=np.int64)
            self.tops.append(self._solve(i, targets))
        return self

    def _solve(self, i, targets):
        """``y`` with ``d_i y = target`` column by column, weight space by weight space."""
        tr = self.trace
        p = tr.p
        d = tr.differential(i)
        src_w = tr.projective(i).weights
        dst_w = tr.module.weights if i == 0 else tr.projective(i - 1).weights
        chars = tr.projective(self.n + i).characters
        batch, _, ncols = targets.shape
        out = np.zeros((batch, d.shape[1], ncols), dtype=np.int64)
        for c in sorted(set(chars)):
            cols_j = [j for j, x in enumerate(chars) if x == c]
            src = np.flatnonzero(src_w == c)
            dst = np.flatnonzero(dst_w == c)
            rhs = targets[:, :, cols_j]
            if src.size == 0 or dst.size == 0:
                if dst.size and rhs[:, dst, :].any():
                    raise LiftFailure(f"no lift into P_{i}: empty weight space")
                continue
            block = d[np.ix_(dst, src)]
            other = np.setdiff1d(np.arange(targets.shape[1]), dst)
            if other.size and rhs[:, other, :].any():
                raise LiftFailure("lifting target is not a weight vector")
            stacked = rhs[:, dst, :].transpose(1, 0, 2).reshape(dst.size, -1)
            try:
                sol = ff.solve(block, stacked, p)
            except NoSolution:
                raise LiftFailure(f"lifting system at P_{i} is inconsistent") from None
            sol = sol.reshape(src.size, batch, len(cols_j)).transpose(1, 0, 2)
            out[np.ix_(np.arange(batch), src, cols_j)] = sol
        return out

    def full_map(self, i):
        """``zeta_i`` as matrices ``(batch, dim P_i, dim P_(n+i))``."""
        while len(self._full) <= i:
            k = len(self._full)
            self._full.append(self._expand(k))
        return self._full[i]

    def _expand(self, i):
        tr = self.trace
        p = tr.p
        tgt = tr.projective(i)
        src = tr.projective(self.n + i)
        y = self.tops[i]                              # (batch, dim P_i, b)
        batch = y.shape[0]
        out = np.zeros((batch, tgt.dim, src.dim), dtype=np.int64)
        if batch == 0 or src.dim == 0:
            return out
        # columns rho(b_k) y_j for every summand j and PIM word b_k
        flat = y.transpose(1, 0, 2).reshape(tgt.dim, -1)            # (dim P_i, batch*b)
        memo = {}
        for j, pd in enumerate(src.pims):
            sl = src.summand_slice(j)
            for k, w in enumerate(pd.words):
                img = tgt.apply_word(w, flat, memo).reshape(tgt.dim, batch, -1)
                out[:, :, sl.start + k] = img[:, :, j].T
        return out % p


class TruncatedCohomologyRing:
    """``H^n(A, k)`` for ``n <= D`` with all products landing in degree ``<= D``.

    ``table[(a, b)][i, j]`` holds the coordinates of ``x^a_i * x^b_j`` where the
    product is Yoneda composition ``x^a_i o (x^b_j)_a``.
    """

    def __init__(self, trace, max_degree):
        if trace.module.dim != 1 or trace.module.weights[0] != trace.algebra.trivial_character_index:
            raise ValidationError("cohomology ring needs the resolution of the trivial module")
        if trace.depth < max_degree:
            raise InsufficientDepth(f"resolution depth {trace.depth} < {max_degree}")
        self.trace = trace
        self.p = trace.p
        self.max_degree = max_degree
        self.positions = [class_positions(trace, n) for n in range(max_degree + 1)]
        self.dims = [len(x) for x in self.positions]
        self.table = {}
        self.lifts = {}
        self._compute()

    def _compute(self):
        tr = self.trace
        p = self.p
        D = self.max_degree
        for b in range(D + 1):
            hb = self.dims[b]
            coeffs = np.zeros((hb, len(tr.projective(b).characters)), dtype=np.int64)
            coeffs[np.arange(hb), self.positions[b]] = 1
            lift = ChainLift(tr, b, coeffs).extend(D - b)
            self.lifts[b] = lift
            for a in range(D - b + 1):
                ha = self.dims[a]
                tops = lift.tops[a]                          # (hb, dim P_a, b_(a+b))
                prod = np.zeros((ha, hb, self.dims[a + b]), dtype=np.int64)
                pos = self.positions[a + b]
                for i in range(ha):
                    eta = np.zeros(len(tr.projective(a).characters), dtype=np.int64)
                    eta[self.positions[a][i]] = 1
                    for j in range(hb):
                        vals = evaluate_class(tr, a, eta, tops[j])
                        prod[i, j] = vals[pos] % p
                self.table[(a, b)] = prod

    # -- arithmetic ----------------------------------------------------------
    def multiply(self, a, x, b, y):
        """Product of ``x`` in degree ``a`` and ``y`` in degree ``b`` (basis coordinates)."""
        if a + b > self.max_degree:
            raise InsufficientDepth("product beyond the truncation degree")
        t = self.table[(a, b)]
        return np.einsum("i,j,ijk->k", np.asarray(x, np.int64), np.asarray(y, np.int64), t) % self.p

    def basis(self, n):
        return np.eye(self.dims[n], dtype=np.int64)

    def unit_check(self):
        one = np.ones(1, dtype=np.int64)
        for n in range(self.max_degree + 1):
            for x in self.basis(n):
                if not (np.array_equal(self.multiply(0, one, n, x), x)
                        and np.array_equal(self.multiply(n, x, 0, one), x)):
                    return False
        return True

    def graded_commutativity(self):
        """``x y = (-1)^(|x||y|) y x`` on all basis pairs; returns the list of failures."""
        bad = []
        p = self.p
        for a in range(self.max_degree + 1):
            for b in range(a, self.max_degree + 1 - a):
                ab = self.table[(a, b)]
                ba = self.table[(b, a)].transpose(1, 0, 2)
                sign = -1 if (a * b) % 2 else 1
                if not np.array_equal(ab % p, (sign * ba) % p):
                    bad.append((a, b))
        return bad

    def odd_squares_vanish(self):
        bad = []
        for a in range(1, self.max_degree // 2 + 1, 2):
            for x in self.basis(a):
                if self.multiply(a, x, a, x).any():
                    bad.append(a)
                    break
        return bad

    def associativity(self, max_triples=None):
        bad = []
        D = self.max_degree
        count = 0
        for a, b, c in itertools.product(range(1, D + 1), repeat=3):
            if a + b + c > D:
                continue
            for x, y, z in itertools.product(self.basis(a), self.basis(b), self.basis(c)):
                left = self.multiply(a + b, self.multiply(a, x, b, y), c, z)
                right = self.multiply(a, x, b + c, self.multiply(b, y, c, z))
                if not np.array_equal(left, right):
                    bad.append((a, b, c))
                    break
                count += 1
                if max_triples and count >= max_triples:
                    return bad
        return bad

    # -- generators ---------------------------------------------------------------
    def _decomposable_rank(self, n, degrees):
        """Rank of the span of products ``H^a H^(n-a)`` with both factors in ``degrees``."""
        rows = []
        for a in range(1, n):
            if a in degrees and (n - a) in degrees:
                t = self.table[(a, n - a)]
                rows.append(t.reshape(-1, self.dims[n]))
        if not rows:
            return 0
        return ff.rank(np.vstack(rows), self.p)

    def generator_degrees(self, even_only=False):
        """``{n: number of new generators in degree n}`` (positive degrees)."""
        out = {}
        allowed = set(range(0, self.max_degree + 1, 2 if even_only else 1))
        for n in range(1, self.max_degree + 1):
            if n not in allowed or self.dims[n] == 0:
                continue
            new = self.dims[n] - self._decomposable_rank(n, allowed)
            if new:
                out[n] = new
        return out

    def power_nonzero(self, n, x, upto):
        """Whether ``x^k != 0`` for every ``k`` with ``k n <= upto``."""
        cur, deg = np.asarray(x, dtype=np.int64), n
        while deg + n <= upto:
            cur = self.multiply(deg, cur, n, x)
            deg += n
            if not cur.any():
                return False
        return True

    def as_dict(self):
        return {"max_degree": self.max_degree, "dims": self.dims,
                "generators": {str(k): v for k, v in self.generator_degrees().items()},
                "even_generators": {str(k): v for k, v in self.generator_degrees(True).items()}}


def cohomology_ring(trace, max_degree):
    return TruncatedCohomologyRing(trace, max_degree)


class CohomologyRing(BaseEstimator):
    """``CohomologyRing(max_degree=8).fit(k)`` resolves ``k`` and builds the truncated ring."""

    def __init__(self, max_degree=8):
        self.max_degree = max_degree

    def fit(self, module_or_trace, y=None):
        from .resolution import ResolutionTrace, resolve

        tr = module_or_trace if isinstance(module_or_trace, ResolutionTrace) \
            else resolve(module_or_trace, self.max_degree)
        tr.extend(self.max_degree)
        self.ring_ = TruncatedCohomologyRing(tr, self.max_degree)
        self.dims_ = self.ring_.dims
        self.generators_ = self.ring_.generator_degrees()
        self.even_generators_ = self.ring_.generator_degrees(even_only=True)
        return self
