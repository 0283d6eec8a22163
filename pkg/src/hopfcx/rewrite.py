"""Rewriting presentations: normal forms, Diamond-lemma overlap checks, PBW bases.

A word is a tuple of generator indices. Generators are listed in ascending
precedence; words are compared degree-lexicographically, so the sort key of
a word ``w`` is simply ``(len(w), w)``.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field

import numpy as np

from .exceptions import BasisOverflow, DegreeOverflow, ValidationError

Word = tuple

DEFAULT_DEGREE_CAP = 64
DEFAULT_BASIS_CAP = 4096


def word_key(w: Word):
    return (len(w), w)


@dataclass(frozen=True)
class RewriteRule:
    """``lhs -> sum(c * word for word, c in rhs.items())``."""

    lhs: Word
    rhs: dict = field(default_factory=dict)


class Presentation:
    """Generators, degree-lex order and rewrite rules over F_p.

    Parameters
    ----------
    generators : list of str
        Generator names, lowest precedence first.
    rules : list of RewriteRule
    p : int
        Characteristic; rule coefficients are residues mod ``p``.
    """

    def __init__(self, generators, rules, p, degree_cap=DEFAULT_DEGREE_CAP,
                 basis_cap=DEFAULT_BASIS_CAP):
        self.generators = list(generators)
        self.p = p
        self.degree_cap = degree_cap
        self.basis_cap = basis_cap
        self.rules = []
        seen = set()
        n = len(self.generators)
        for rule in rules:
            lhs = tuple(rule.lhs)
            if not lhs:
                raise ValidationError("rule with empty left-hand side")
            if lhs in seen:
                raise ValidationError(f"two rules share the left-hand side {self.format_word(lhs)}")
            seen.add(lhs)
            rhs = {}
            for w, c in rule.rhs.items():
                w = tuple(w)
                if any(not 0 <= x < n for x in lhs + w):
                    raise ValidationError("generator index out of range in rule")
                c %= p
                if c == 0:
                    continue
                if word_key(w) >= word_key(lhs):
                    raise ValidationError(
                        f"rule {self.format_word(lhs)} -> ... is not order-decreasing "
                        f"(term {self.format_word(w)})")
                rhs[w] = (rhs.get(w, 0) + c) % p
            self.rules.append(RewriteRule(lhs, {w: c for w, c in rhs.items() if c}))
        self._by_lhs = {r.lhs: r for r in self.rules}
        self._lengths = sorted({len(r.lhs) for r in self.rules})

    # -- words -------------------------------------------------------------
    def word(self, text: str) -> Word:
        """Parse ``"g^2 x"`` (or ``"1"`` / ``""`` for the empty word)."""
        return parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        return format_word(w, self.generators)

    def find_lhs(self, w: Word, strategy="leftmost"):
        """Position and rule of a left-hand-side occurrence in ``w`` or ``(None, None)``."""
        positions = range(len(w))
        if strategy == "rightmost":
            positions = reversed(positions)
        for i in positions:
            for length in self._lengths:
                rule = self._by_lhs.get(w[i:i + length]) if i + length <= len(w) else None
                if rule is not None:
                    return i, rule
        return None, None

    def is_normal(self, w: Word) -> bool:
        return self.find_lhs(w)[0] is None

    # -- reduction ---------------------------------------------------------
    def apply_rule(self, w: Word, pos: int, rule: RewriteRule) -> dict:
        head, tail = w[:pos], w[pos + len(rule.lhs):]
        return {head + u + tail: c for u, c in rule.rhs.items()}

    def normal_form(self, comb, strategy="leftmost") -> dict:
        """Normal form of a linear combination ``{word: coeff}`` (or a single word).

        Terms are processed largest-first; every rewrite strictly lowers the
        order, so each word is visited once.
        """
        if isinstance(comb, tuple):
            comb = {comb: 1}
        p = self.p
        pending: dict = {}
        heap: list = []

        def push(w, c):
            if len(w) > self.degree_cap:
                raise DegreeOverflow(
                    f"word of length {len(w)} exceeds the degree cap {self.degree_cap}")
            if w in pending:
                pending[w] = (pending[w] + c) % p
            else:
                pending[w] = c % p
                heapq.heappush(heap, (-len(w), tuple(-x for x in w), w))

        for w, c in comb.items():
            if c % p:
                push(tuple(w), c)
        out = {}
        while heap:
            _, _, w = heapq.heappop(heap)
            c = pending.pop(w)
            if c == 0:
                continue
            pos, rule = self.find_lhs(w, strategy)
            if rule is None:
                out[w] = c
                continue
            for u, d in self.apply_rule(w, pos, rule).items():
                push(u, c * d)
        return {w: c for w, c in sorted(out.items(), key=lambda t: word_key(t[0])) if c}

    # -- Diamond lemma -----------------------------------------------------
    def overlaps(self):
        """All overlap and inclusion ambiguities as ``(word, (pos1, rule1), (pos2, rule2))``."""
        out = []
        for r1 in self.rules:
            a = r1.lhs
            for r2 in self.rules:
                b = r2.lhs
                for k in range(1, min(len(a), len(b))):
                    if a[-k:] == b[:k]:
                        out.append((a + b[k:], (0, r1), (len(a) - k, r2)))
                if r1 is not r2 and len(b) <= len(a):
                    for i in range(len(a) - len(b) + 1):
                        if a[i:i + len(b)] == b:
                            out.append((a, (0, r1), (i, r2)))
        return out

    def check_local_confluence(self):
        """Unresolved ambiguities ``(word, nf_one_way, nf_other_way)``; empty iff locally confluent."""
        bad = []
        for w, (i, r1), (j, r2) in self.overlaps():
            left = self.normal_form(self.apply_rule(w, i, r1))
            right = self.normal_form(self.apply_rule(w, j, r2))
            if left != right:
                bad.append((w, left, right))
        return bad

    def enumerate_basis(self):
        """All normal-form words in degree-lex order."""
        basis = [()]
        layer = [()]
        n = len(self.generators)
        maxlen = max(self._lengths, default=1)
        while layer:
            nxt = []
            for w in layer:
                for g in range(n):
                    u = w + (g,)
                    if self._ends_normal(u, maxlen):
                        nxt.append(u)
            if nxt and len(nxt[0]) > self.degree_cap:
                raise BasisOverflow(f"normal forms exist beyond the degree cap {self.degree_cap}")
            basis.extend(nxt)
            if len(basis) > self.basis_cap:
                raise BasisOverflow(
                    f"more than {self.basis_cap} normal-form words; presentation is not "
                    f"finite dimensional within the cap")
            layer = nxt
        basis.sort(key=word_key)
        return basis

    def _ends_normal(self, u, maxlen):
        # u[:-1] is already normal; only subwords ending at the last letter matter
        for length in self._lengths:
            if length <= len(u) and u[len(u) - length:] in self._by_lhs:
                return False
        return True

    def structure_constants(self, basis):
        """Array ``T`` of shape ``(d, d, d)`` with ``b_i * b_j = sum_k T[i, j, k] b_k``.

        Built from right multiplication by generators, ``R_{b_j}`` being the
        product of generator operators along the letters of ``b_j``.
        """
        d = len(basis)
        index = {w: i for i, w in enumerate(basis)}
        p = self.p
        right_gen = []
        for g in range(len(self.generators)):
            r = np.zeros((d, d), dtype=np.int64)
            for i, w in enumerate(basis):
                for u, c in self.normal_form(w + (g,)).items():
                    r[index[u], i] = c
            right_gen.append(r)
        from .ffield import matmul

        table = np.zeros((d, d, d), dtype=np.int32)
        right_word = {(): np.eye(d, dtype=np.int64)}
        for j, w in enumerate(basis):
            if w:
                prefix = w[:-1]
                if prefix not in right_word:
                    raise ValidationError("basis is not closed under prefixes")
                right_word[w] = matmul(right_gen[w[-1]], right_word[prefix], p)
            table[:, j, :] = right_word[w].T
        return table

    def to_vector(self, comb, basis_index, dim):
        v = np.zeros(dim, dtype=np.int64)
        for w, c in self.normal_form(comb).items():
            v[basis_index[w]] = (v[basis_index[w]] + c) % self.p
        return v


_TOKEN = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?")


def parse_word(text: str, generators) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    names = {g: i for i, g in enumerate(generators)}
    out = []
    for tok in re.split(r"[\s*]+", text):
        if not tok:
            continue
        m = _TOKEN.fullmatch(tok)
        if not m or m.group(1) not in names:
            raise ValidationError(f"unknown generator token {tok!r} in word {text!r}")
        out.extend([names[m.group(1)]] * int(m.group(2) or 1))
    return tuple(out)


def format_word(w: Word, generators) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = generators[w[i]]
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return " ".join(parts)
