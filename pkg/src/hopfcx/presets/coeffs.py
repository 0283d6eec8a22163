"""Integer polynomials in ``q`` (negative exponents allowed), e.g. ``"1 - q^-2"``."""
from __future__ import annotations

import re

from ..exceptions import PresentationParseError

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*(q(?:\s*\^\s*(-?\d+))?)?\s*")


def parse_coefficient(text) -> dict:
    """``{exponent: integer}`` for a polynomial in ``q``."""
    if isinstance(text, int):
        return {0: text} if text else {}
    s = str(text).strip()
    if not s:
        raise PresentationParseError("empty coefficient")
    out: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, qpart, exp = m.groups()
        if m.end() == pos or (num is None and qpart is None):
            raise PresentationParseError(f"cannot parse coefficient {text!r} at offset {pos}")
        if sign is None and not first:
            raise PresentationParseError(f"missing operator in coefficient {text!r}")
        if star and (num is None or qpart is None):
            raise PresentationParseError(f"dangling '*' in coefficient {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp is not None else 1) if qpart else 0
        out[k] = out.get(k, 0) + c
        pos = m.end()
        first = False
    return {k: c for k, c in out.items() if c}


def evaluate(text, field) -> int:
    return sum(c * field.qpow(k) for k, c in parse_coefficient(text).items()) % field.p


def format_coefficient(poly: dict) -> str:
    """Inverse of :func:`parse_coefficient` (terms by increasing exponent)."""
    parts = []
    for k in sorted(poly):
        c = poly[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            qs = "q" if k == 1 else f"q^{k}"
            body = qs if mag == 1 else f"{mag}*{qs}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])
