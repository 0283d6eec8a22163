"""Prime field arithmetic and dense linear algebra mod p.

Matrices are plain ``numpy`` int64 arrays whose entries are kept in
``[0, p)``; every routine takes the modulus explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import isprime, primitive_root

from .exceptions import NoSolution, ValidationError

# float64 holds integers exactly up to 2**53
_EXACT_FLOAT = 2 ** 53


@dataclass(frozen=True)
class PrimeField:
    """The field F_p together with a chosen element ``q`` of order ``ell``."""

    p: int
    ell: int = 1
    q: int = 1

    def __post_init__(self):
        if not isprime(self.p):
            raise ValidationError(f"p = {self.p} is not prime")
        if self.ell < 1 or (self.p - 1) % self.ell:
            raise ValidationError(f"p = {self.p} is not 1 mod ell = {self.ell}")
        if multiplicative_order(self.q % self.p, self.p) != self.ell:
            raise ValidationError(
                f"q = {self.q} does not have multiplicative order exactly {self.ell} mod {self.p}")

    @classmethod
    def for_algebra(cls, ell: int, dim: int, p: int | None = None) -> "PrimeField":
        """Smallest prime ``p = 1 (mod ell)`` with ``p > dim`` unless ``p`` is given.

        ``q`` is ``g**((p-1)/ell)`` for the smallest primitive root ``g``.
        """
        if p is None:
            p = ell + 1
            while not (p > dim and isprime(p)):
                p += ell
        if (p - 1) % ell:
            raise ValidationError(f"p = {p} is not 1 mod ell = {ell}")
        g = int(primitive_root(p))
        return cls(p, ell, pow(g, (p - 1) // ell, p))

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def qpow(self, k: int) -> int:
        """``q**k`` for any integer ``k``."""
        return pow(self.q, k % self.ell, self.p)

    def root_of_unity(self, n: int) -> int:
        """A primitive ``n``-th root of unity in F_p (``n`` must divide ``p - 1``)."""
        if (self.p - 1) % n:
            raise ValidationError(f"F_{self.p} has no primitive {n}-th root of unity")
        if n == self.ell:
            return self.q
        g = int(primitive_root(self.p))
        return pow(g, (self.p - 1) // n, self.p)

    def as_dict(self) -> dict:
        return {"p": self.p, "ell": self.ell, "q": self.q}


def multiplicative_order(a: int, p: int) -> int:
    if a % p == 0:
        return 0
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def asmatrix(m, p: int) -> np.ndarray:
    a = np.asarray(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact ``a @ b mod p``.

    Uses BLAS in float64 whenever the partial sums stay below 2**53, splitting
    the inner dimension into chunks otherwise.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    chunk = max(1, _EXACT_FLOAT // ((p - 1) ** 2 + 1))
    if chunk >= inner:
        out = np.matmul(_as_float(a), _as_float(b))
        return np.remainder(out, p).astype(np.int64)
    if chunk < 2:
        # p too large for float products; fall back to object-free int64 path
        return _matmul_int(a, b, p)
    af = _as_float(a)
    bf = _as_float(b)
    acc = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for s in range(0, inner, chunk):
        part = np.matmul(af[..., s:s + chunk], bf[s:s + chunk])
        acc = (acc + np.remainder(part, p).astype(np.int64)) % p
    return acc


def _as_float(a):
    return a if a.dtype == np.float64 else a.astype(np.float64)


def _matmul_int(a, b, p):
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        acc = (acc + np.outer(a[:, k], b[k]) % p) % p
    return acc


def rref(m, p: int):
    """Reduced row echelon form over F_p.

    Returns ``(R, pivots, rank)`` with ``R`` the same shape as ``m``.
    """
    a = asmatrix(m, p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r, c:] = a[r, c:] * pow(piv, p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m, p: int) -> int:
    a = asmatrix(m, p)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return rref(a, p)[2]


def row_basis(m, p: int) -> np.ndarray:
    """Rows of the RREF spanning the row space of ``m``."""
    a = asmatrix(m, p)
    if a.shape[0] == 0:
        return a.copy()
    r, _, k = rref(a, p)
    return r[:k]


def kernel_basis(m, p: int) -> np.ndarray:
    """Rows form a basis of ``{v : m @ v = 0}``."""
    a = asmatrix(m, p)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv, k = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    if free:
        out[np.arange(len(free)), free] = 1
        if k:
            out[:, piv] = (-r[:k][:, free].T) % p
    return out


def solve(m, b, p: int) -> np.ndarray:
    """A solution ``x`` of ``m @ x = b``; raises :class:`NoSolution` otherwise.

    ``b`` may be a vector or a matrix of right-hand-side columns. Free
    variables are set to zero, so the answer is canonical for fixed input.
    """
    a = asmatrix(m, p)
    rhs = np.asarray(b, dtype=np.int64) % p
    vec = rhs.ndim == 1
    if vec:
        rhs = rhs.reshape(-1, 1)
    rows, cols = a.shape
    if rhs.shape[0] != rows:
        raise ValueError("incompatible dimensions")
    if rows == 0:
        x = np.zeros((cols, rhs.shape[1]), dtype=np.int64)
        return x[:, 0] if vec else x
    r, piv, k = rref(np.hstack([a, rhs]), p)
    if any(c >= cols for c in piv):
        raise NoSolution("right-hand side is not in the column space")
    x = np.zeros((cols, rhs.shape[1]), dtype=np.int64)
    x[piv] = r[:k, cols:]
    return x[:, 0] if vec else x


def in_row_space(basis_rref: np.ndarray, pivots, v: np.ndarray, p: int) -> bool:
    """Membership test against a basis already in RREF with the given pivots."""
    v = np.asarray(v, dtype=np.int64) % p
    if basis_rref.shape[0] == 0:
        return not v.any()
    resid = (v - matmul(v[..., pivots], basis_rref, p)) % p
    return not resid.any()


def complement_rows(sub: np.ndarray, vectors: np.ndarray, p: int) -> list[int]:
    """Greedy indices of ``vectors`` independent modulo the row space of ``sub``."""
    basis = row_basis(sub, p) if len(sub) else np.zeros((0, vectors.shape[1]), np.int64)
    chosen: list[int] = []
    current = basis
    rk = current.shape[0]
    for i, v in enumerate(vectors):
        trial = np.vstack([current, v[None, :] % p])
        new = rank(trial, p)
        if new > rk:
            chosen.append(i)
            current = row_basis(trial, p)
            rk = new
    return chosen


# --- univariate polynomials, coefficient lists lowest degree first -------------

def poly_trim(f):
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return poly_trim(out)


def poly_divmod(f, g, p):
    f = poly_trim([c % p for c in f])
    g = poly_trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], p - 2, p)
    quot = [0] * max(0, len(f) - len(g) + 1)
    rem = f[:]
    while len(rem) >= len(g):
        c = rem[-1] * inv % p
        shift = len(rem) - len(g)
        quot[shift] = c
        for i, b in enumerate(g):
            rem[shift + i] = (rem[shift + i] - c * b) % p
        rem = poly_trim(rem)
    return poly_trim(quot), rem


def poly_gcd(f, g, p):
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def poly_ext_gcd(f, g, p):
    """``(d, s, t)`` with ``s*f + t*g = d`` monic."""
    r0, r1 = poly_trim(f), poly_trim(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


def poly_sub(f, g, p):
    n = max(len(f), len(g))
    return poly_trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                      for i in range(n)])


def poly_powmod(base, e, mod, p):
    result = [1]
    base = poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def poly_eval_matrix(f, m: np.ndarray, p: int) -> np.ndarray:
    """Horner evaluation of ``f`` at a square matrix."""
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(f):
        out = (matmul(out, m, p) + c * eye) % p
    return out


def charpoly(m: np.ndarray, p: int):
    """Characteristic polynomial via reduction to Hessenberg form."""
    h = asmatrix(m, p).copy()
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1:, j])
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1]] = h[[j + 1, i]]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for k in range(j + 2, n):
            c = h[k, j] * inv % p
            if c:
                h[k] = (h[k] - c * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + c * h[:, k]) % p
    # Hessenberg recurrence for det(xI - H)
    polys = [[1]]
    for k in range(n):
        pk = poly_mul([(-h[k, k]) % p, 1], polys[k], p)
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * h[i + 1, i] % p
            if prod == 0:
                break
            coeff = prod * h[i, k] % p
            pk = poly_sub(pk, [c * coeff % p for c in polys[i]], p)
        polys.append(pk)
    return polys[n]


def poly_roots(f, p: int) -> list[int]:
    """Distinct roots of ``f`` in F_p."""
    f = poly_trim([c % p for c in f])
    if len(f) <= 1:
        return []
    xp = poly_powmod([0, 1], p, f, p)
    g = poly_gcd(f, poly_sub(xp, [0, 1], p), p)
    roots: list[int] = []
    _split_linear(g, p, roots, seed=1)
    return sorted(roots)


def _split_linear(g, p, out, seed):
    # g is a product of distinct linear factors
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append((-g[0]) * pow(g[1], p - 2, p) % p)
        return
    delta = seed
    while True:
        h = poly_powmod([delta % p, 1], (p - 1) // 2, g, p)
        d = poly_gcd(g, poly_sub(h, [1], p), p)
        if 1 < len(d) < len(g):
            _split_linear(d, p, out, delta + 1)
            _split_linear(poly_divmod(g, d, p)[0], p, out, delta + 1)
            return
        delta += 1
