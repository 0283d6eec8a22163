"""Root systems, the sets Phi_0^+ and Phi_0, complexity lower bounds and wildness verdicts."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .exceptions import InvalidParameters, UnknownType

HYPOTHESIS = "ell must be an odd integer > 1, not divisible by 3 when the type is G2"

_RANK_RULES = {"A": lambda r: r >= 1, "B": lambda r: r >= 2, "C": lambda r: r >= 2,
               "D": lambda r: r >= 4, "E": lambda r: r in (6, 7, 8), "F": lambda r: r == 4,
               "G": lambda r: r == 2}


def _chain(r):
    c = [[0] * r for _ in range(r)]
    for i in range(r):
        c[i][i] = 2
        if i + 1 < r:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def cartan_matrix(kind, r):
    """Cartan matrix ``C[i][j] = <alpha_i, alpha_j^vee>`` in Bourbaki numbering."""
    if kind == "A":
        return _chain(r)
    if kind == "B":
        c = _chain(r)
        c[r - 2][r - 1] = -2          # alpha_r short
        return c
    if kind == "C":
        c = _chain(r)
        c[r - 1][r - 2] = -2          # alpha_r long
        return c
    if kind == "D":
        c = _chain(r)
        c[r - 2][r - 1] = c[r - 1][r - 2] = 0
        c[r - 3][r - 1] = c[r - 1][r - 3] = -1
        return c
    if kind == "E":
        c = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        edges = [(0, 2), (2, 3), (1, 3)] + [(k, k + 1) for k in range(3, r - 1)]
        for i, j in edges:
            c[i][j] = c[j][i] = -1
        return c
    if kind == "F":
        c = _chain(4)
        c[1][2] = -2
        return c
    if kind == "G":
        return [[2, -1], [-3, 2]]
    raise UnknownType(f"unknown root system type {kind!r}")


def parse_type(label, rank=None):
    """``"B2"`` or ``("B", 2)`` -> ``("B", 2)``."""
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d*)\s*", str(label))
    if not m:
        raise UnknownType(f"unknown root system type {label!r}")
    kind = m.group(1).upper()
    if m.group(2) and rank is not None and int(m.group(2)) != int(rank):
        raise UnknownType(f"type {label!r} conflicts with rank {rank}")
    r = int(m.group(2)) if m.group(2) else rank
    if r is None:
        raise UnknownType(f"type {label!r} needs a rank")
    r = int(r)
    if not _RANK_RULES[kind](r):
        raise UnknownType(f"no root system of type {kind}{r}")
    return kind, r


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: tuple
    norms: tuple             # (alpha_i, alpha_i), shortest simple root normalised to 1
    positive: tuple          # positive roots in the simple-root basis, sorted by height
    coroots: tuple           # alpha^vee in the simple-coroot basis

    @property
    def label(self):
        return f"{self.kind}{self.rank}"

    @property
    def negative(self):
        return tuple(tuple(-x for x in a) for a in self.positive)

    @property
    def roots(self):
        return self.positive + self.negative

    @cached_property
    def rho(self):
        """Half the sum of the positive roots (simple-root coordinates)."""
        return tuple(Fraction(sum(a[i] for a in self.positive), 2) for i in range(self.rank))

    def form(self, a, b):
        """Invariant symmetric form ``(a, b)``."""
        return sum(Fraction(a[i] * b[j] * self.cartan[i][j] * self.norms[j], 2)
                   for i in range(self.rank) for j in range(self.rank))

    def pairing(self, a, b):
        """``<a, b^vee> = 2 (a, b) / (b, b)``."""
        return 2 * self.form(a, b) / self.form(b, b)

    @cached_property
    def _rho_cache(self):
        return {}

    def rho_pairing(self, alpha):
        alpha = tuple(alpha)
        if alpha not in self._rho_cache:
            v = self.pairing(self.rho, alpha)
            assert v.denominator == 1
            self._rho_cache[alpha] = int(v)
        return self._rho_cache[alpha]

    @cached_property
    def coxeter_number(self):
        return max(self.rho_pairing(a) for a in self.positive) + 1

    @property
    def h(self):
        return self.coxeter_number

    def a2_pairs(self):
        """Pairs of simple roots spanning a subsystem of type A2."""
        return [(i, j) for i in range(self.rank) for j in range(i + 1, self.rank)
                if self.cartan[i][j] == self.cartan[j][i] == -1]


def _symmetriser(c):
    r = len(c)
    norms = [None] * r
    norms[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(r):
            if c[i][j] and norms[j] is None:
                # C[i][j] (a_j, a_j) = C[j][i] (a_i, a_i)
                norms[j] = norms[i] * c[j][i] / c[i][j]
                stack.append(j)
    low = min(norms)
    return tuple(n / low for n in norms)


def build_root_system(label, rank=None):
    """Positive roots by closure of the simple roots under simple reflections."""
    kind, r = parse_type(label, rank)
    c = cartan_matrix(kind, r)
    norms = _symmetriser(c)
    simple = [tuple(int(i == k) for k in range(r)) for i in range(r)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                k = sum(beta[j] * c[j][i] for j in range(r))     # <beta, alpha_i^vee>
                img = tuple(beta[j] - (k if j == i else 0) for j in range(r))
                if all(x >= 0 for x in img) and any(img) and img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    pos = tuple(sorted(found, key=lambda a: (sum(a), tuple(-x for x in a))))
    co = []
    for a in pos:
        na = sum(Fraction(a[i] * a[j] * c[i][j] * norms[j], 2) for i in range(r) for j in range(r))
        v = tuple(a[j] * norms[j] / na for j in range(r))
        assert all(x.denominator == 1 for x in v)
        co.append(tuple(int(x) for x in v))
    return RootSystem(kind, r, tuple(tuple(row) for row in c), norms, pos, tuple(co))


def validate_parameters(rs, ell):
    """Refuse parameters outside the standing hypothesis on ``ell``."""
    if not isinstance(ell, int) or ell <= 1:
        raise InvalidParameters(f"ell = {ell!r} violates the hypothesis: {HYPOTHESIS}")
    if ell % 2 == 0:
        raise InvalidParameters(f"ell = {ell} is even; hypothesis: {HYPOTHESIS}")
    if rs.kind == "G" and ell % 3 == 0:
        raise InvalidParameters(f"ell = {ell} is divisible by 3 for type G2; hypothesis: {HYPOTHESIS}")


def phi_zero_plus(rs, ell):
    """Positive roots with ``<rho, alpha^vee>`` divisible by ``ell``."""
    validate_parameters(rs, ell)
    return tuple(a for a in rs.positive if rs.rho_pairing(a) % ell == 0)


def phi_zero(rs, ell):
    """The same condition over all of ``Phi``."""
    validate_parameters(rs, ell)
    return tuple(a for a in rs.roots if rs.rho_pairing(a) % ell == 0)


def complexity_lower_bound(rs, ell):
    """``|Phi^+| - |Phi_0^+|``, a lower bound for the complexity of the trivial module over the Borel part."""
    return len(rs.positive) - len(phi_zero_plus(rs, ell))


@dataclass
class Verdict:
    verdict: str                # wild | tame | representation-finite
    scope: str                  # "algebra" or "principal block"
    target: str
    branch: str
    bound: int | None           # complexity bound that justified the verdict
    trace: list = field(default_factory=list)

    def as_dict(self):
        return {"verdict": self.verdict, "scope": self.scope, "target": self.target,
                "branch": self.branch, "bound": self.bound, "trace": self.trace}


def _borel_verdict(rs, ell):
    h = rs.coxeter_number
    trace = [{"step": "parameters", "ell": ell, "h": h, "rank": rs.rank, "type": rs.label}]
    if rs.rank == 1:
        trace.append({"step": "rank-one", "statement": "the rank one Borel part is representation-finite"})
        return Verdict("representation-finite", "algebra", "borel", "rank-one", None, trace)
    root_bound = complexity_lower_bound(rs, ell)
    if ell >= h:
        trace.append({"step": "ell>=h", "phi0plus": 0, "bound": root_bound,
                      "statement": "Phi_0^+ is empty, so cx(k) >= |Phi^+| >= 3"})
        branch, bound = "ell>=h", root_bound
    elif rs.a2_pairs():
        i, j = rs.a2_pairs()[0]
        trace.append({"step": "sl3-subalgebra", "simple_roots": [i + 1, j + 1],
                      "statement": "the Borel part of sl3 embeds as a Hopf subalgebra; its ell >= 3 = h(A2) "
                                   "gives cx >= 3 there, and restriction cannot increase complexity",
                      "root_bound": root_bound})
        branch, bound = "sl3-subalgebra", 3
    elif rs.kind in ("B", "C"):
        # B2 = C2
        trace.append({"step": "B2,ell=3", "phi0plus": len(phi_zero_plus(rs, ell)), "bound": root_bound})
        branch, bound = "B2,ell=3", root_bound
    else:
        trace.append({"step": "G2,ell=5", "phi0plus": len(phi_zero_plus(rs, ell)), "bound": root_bound})
        branch, bound = "G2,ell=5", root_bound
    trace.append({"step": "wildness-criterion", "statement": f"a module of complexity >= 3 (here {bound}) forces wildness"})
    assert bound >= 3
    return Verdict("wild", "algebra", "borel", branch, bound, trace)


def wildness_verdict(rs, ell, target="borel"):
    """Replay the case analysis for the Borel part (``borel``) or the full small quantum group (``full``)."""
    validate_parameters(rs, ell)
    if target not in ("borel", "full"):
        raise InvalidParameters(f"target must be 'borel' or 'full', not {target!r}")
    b = _borel_verdict(rs, ell)
    if target == "borel":
        return b
    if rs.rank == 1:
        trace = b.trace[:1] + [{"step": "rank-one", "statement": "the rank one small quantum group is tame"}]
        return Verdict("tame", "algebra", "full", "rank-one", None, trace)
    trace = b.trace[:-1] + [
        {"step": "restriction", "statement": f"cx over u_q(g) >= cx over the Borel part >= {b.bound}"},
        {"step": "wildness-criterion", "statement": "the trivial module lies in the principal block, which is therefore wild"},
    ]
    return Verdict("wild", "principal block", "full", b.branch, b.bound, trace)


def roots_report(label, rank, ell, target="borel"):
    """Everything the ``roots`` command prints."""
    rs = build_root_system(label, rank)
    v = wildness_verdict(rs, ell, target)
    z = phi_zero_plus(rs, ell)
    out = {"type": rs.label, "rank": rs.rank, "ell": ell, "h": rs.coxeter_number,
           "cartan": [list(r) for r in rs.cartan],
           "positive_roots": [list(a) for a in rs.positive],
           "coroots": [list(a) for a in rs.coroots],
           "rho_pairings": [rs.rho_pairing(a) for a in rs.positive],
           "num_positive": len(rs.positive),
           "phi0plus": len(z), "phi0plus_roots": [list(a) for a in z],
           "bound": complexity_lower_bound(rs, ell),
           **{("verdict_bound" if k == "bound" else k): x for k, x in v.as_dict().items()}}
    if target == "full":
        out["phi0"] = len(phi_zero(rs, ell))
        out["phi0_roots"] = [list(a) for a in phi_zero(rs, ell)]
    return out
