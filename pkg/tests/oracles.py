"""Independent reference computations used to cross-check the toolkit.

Nothing here touches the resolution, PIM or weight machinery: the bar
complex works directly with structure constants, the naive resolution works
over a local algebra by brute-force linear algebra, and Hom spaces come from
the intertwining equations.
"""
from __future__ import annotations

import numpy as np
import sympy

from hopfcx import ffield as ff


def gf_rank(m, p):
    m = np.asarray(m, dtype=np.int64) % p
    if m.size == 0:
        return 0
    dm = sympy.polys.matrices.DomainMatrix.from_list_sympy(
        m.shape[0], m.shape[1], m.tolist()).convert_to(sympy.GF(p))
    return dm.rank()


def gf_charpoly(m, p):
    """Characteristic polynomial over GF(p), lowest degree first."""
    m = np.asarray(m, dtype=np.int64) % p
    x = sympy.Symbol("x")
    poly = sympy.Matrix(m.tolist()).charpoly(x)
    coeffs = [int(c) % p for c in reversed(sympy.Poly(poly.as_expr(), x, modulus=p).all_coeffs())]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def brute_hom_dim(m, n):
    """``dim Hom_A(M, N)`` from ``F rho_M(g) = rho_N(g) F`` for every generator."""
    p = m.p
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return 0
    rows = []
    for g in range(m.actions.shape[0]):
        a, b = m.matrix(g), n.matrix(g)
        rows.append((np.kron(np.eye(dn, dtype=np.int64), a.T)
                     - np.kron(b, np.eye(dm, dtype=np.int64))) % p)
    return dn * dm - ff.rank(np.vstack(rows), p)


# -- bar complex ---------------------------------------------------------------

def _augmentation_ideal(alg):
    """Structure constants of ``I = ker(eps)`` in the basis ``b_w - eps(w) 1`` (``w != 1``)."""
    p, d, u = alg.p, alg.dim, alg.unit
    eps = alg.counit_vector
    t = alg.table.astype(np.int64)
    idx = [i for i in range(d) if i != u]
    m = len(idx)
    basis = np.zeros((m, d), dtype=np.int64)
    for a, i in enumerate(idx):
        basis[a, i] = 1
        basis[a, u] = (-eps[i]) % p
    mu = np.einsum("ai,bj,ijk->abk", basis, basis, t) % p
    return basis, mu[:, :, idx] % p, idx


def bar_ext_dims(alg, chi, max_n):
    """``dim Ext^n_A(k, k_chi)`` for ``n <= max_n`` from the normalized bar complex.

    Cochains are functions on ``I^(x n)``; the coboundary is
    ``(df)(a_1..a_(n+1)) = chi(a_1) f(a_2..) + sum_i (-1)^i f(.. a_i a_(i+1) ..)``.
    ``chi`` is the character as a vector of values on the algebra basis.
    """
    p = alg.p
    basis, mu, _ = _augmentation_ideal(alg)
    m = basis.shape[0]
    chi_i = (basis @ np.asarray(chi, dtype=np.int64)) % p           # values on the basis of I
    mult = mu.reshape(m * m, m)

    def delta(n):
        if n == 0:
            return chi_i.reshape(m, 1) % p
        out = np.kron(chi_i.reshape(m, 1), np.eye(m ** n, dtype=np.int64))
        for i in range(1, n + 1):
            op = np.kron(np.kron(np.eye(m ** (i - 1), dtype=np.int64), mult),
                         np.eye(m ** (n - i), dtype=np.int64))
            out = (out + (-1) ** i * op) % p
        return out % p

    ranks = [0] + [ff.rank(delta(n), p) for n in range(max_n + 1)]
    return [m ** n - ranks[n + 1] - ranks[n] for n in range(max_n + 1)]


# -- naive minimal resolution over a local algebra -------------------------------------

def local_subalgebra(alg, exclude):
    """Structure constants of the span of basis words avoiding the generators ``exclude``.

    For the presets this is the nilpotent part (Taft: ``x``; QEA and Borels:
    the ``E``/``x`` generators), a local algebra.
    """
    names = alg.presentation.generators
    bad = {names.index(g) for g in exclude}
    idx = [i for i, w in enumerate(alg.basis_words) if not bad & set(w)]
    t = alg.table.astype(np.int64)[np.ix_(idx, idx, idx)]
    gens = [idx.index(i) for i, w in enumerate(alg.basis_words) if len(w) == 1 and w[0] not in bad]
    return t, idx.index(alg.unit), gens


def naive_local_betti(table, unit, gens, p, max_n):
    """``dim Tor_n^B(k, k)`` by repeatedly taking minimal generators of kernels.

    ``B`` is local with maximal ideal generated by ``gens``. Free modules are
    ``B^m`` with coordinates ``(summand, basis element)``; a submodule ``K``
    is a row space and ``dim K / rad(B) K`` counts its minimal generators.
    """
    d = table.shape[0]
    left = [table[w].T.copy() for w in range(d)]          # x -> b_w x on coordinate columns

    def act(w, rows, m):
        # rows: vectors of B^m as (r, m*d); apply b_w summandwise
        r = rows.reshape(-1, m, d)
        return (r @ left[w].T % p).reshape(-1, m * d)

    # Omega^1(k) = maximal ideal inside B^1
    kernel = np.eye(d, dtype=np.int64)[[i for i in range(d) if i != unit]]
    m = 1
    betti = [1]
    for _ in range(max_n):
        k = ff.row_basis(kernel, p)
        if k.shape[0] == 0:
            betti.append(0)
            m = 0
            kernel = np.zeros((0, 0), dtype=np.int64)
            continue
        radk = ff.row_basis(np.vstack([act(g, k, m) for g in gens]), p)
        rr, piv, _ = ff.rref(radk, p)
        rr = rr[:len(piv)]
        residues = (k - ff.matmul(k[:, piv], rr, p)) % p if len(piv) else k
        gens_rows = ff.row_basis(residues, p)
        nb = gens_rows.shape[0]
        assert nb == k.shape[0] - radk.shape[0]
        betti.append(nb)
        # map B^nb -> B^m, e_j b_w -> b_w v_j ; columns indexed by (j, w)
        cols = np.zeros((m * d, nb * d), dtype=np.int64)
        for j in range(nb):
            for w in range(d):
                cols[:, j * d + w] = act(w, gens_rows[j:j + 1], m)[0]
        kernel = ff.kernel_basis(cols, p)
        m = nb
    return betti
