"""Reading and writing presentation files (TOML)."""
from __future__ import annotations

import re
from pathlib import Path

import tomli
import tomli_w

from ..exceptions import PresentationParseError, ValidationError
from ..ffield import PrimeField
from ..hopf import HopfAlgebra
from ..rewrite import Presentation, RewriteRule, parse_word
from .coeffs import evaluate

_LOC = re.compile(r"\(at line (\d+), column (\d+)\)")


def dumps(doc) -> str:
    return tomli_w.dumps(doc)


def write(doc, path):
    Path(path).write_text(dumps(doc), encoding="utf-8")


def parse_text(text):
    try:
        return tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = _LOC.search(str(exc))
        line, col = (int(m.group(1)), int(m.group(2))) if m else (None, None)
        raise PresentationParseError(_LOC.sub("", str(exc)).strip(), line, col) from None


def load(path, p=None, check=True):
    """Load and fully validate a presentation file."""
    return from_document(parse_text(Path(path).read_text(encoding="utf-8")), p=p, check=check)


def _get(doc, *keys):
    cur = doc
    path = []
    for k in keys:
        path.append(k)
        if not isinstance(cur, dict) or k not in cur:
            raise PresentationParseError(f"missing key {'.'.join(path)}")
        cur = cur[k]
    return cur


def _word(text, gens, where):
    try:
        return parse_word(str(text), gens)
    except ValidationError as exc:
        raise PresentationParseError(f"{where}: {exc}") from None


def _coeff(text, field, where):
    try:
        return evaluate(text, field)
    except PresentationParseError as exc:
        raise PresentationParseError(f"{where}: {exc}") from None


def _field(doc, p):
    fdoc = _get(doc, "field")
    ell = int(_get(fdoc, "ell"))
    p = p if p is not None else fdoc.get("p")
    dim = int(doc.get("metadata", {}).get("expected_dim", 0))
    if p is None and not dim:
        raise PresentationParseError("field.p or metadata.expected_dim is required")
    field = PrimeField.for_algebra(ell, dim, p)
    if "q" in fdoc:
        field = PrimeField(field.p, ell, int(fdoc["q"]) % field.p)
    if field.p <= dim:
        raise ValidationError(f"p = {field.p} must exceed the algebra dimension {dim}")
    return field


def from_document(doc, p=None, check=True):
    field = _field(doc, p)
    gens = [str(g) for g in _get(doc, "presentation", "generators")]
    if len(set(gens)) != len(gens):
        raise PresentationParseError("duplicate generator names")
    rules = []
    for n, r in enumerate(_get(doc, "presentation", "rules")):
        where = f"presentation.rules[{n}]"
        lhs = _word(_get(r, "lhs"), gens, where)
        rhs = {}
        for t in r.get("rhs", []):
            w = _word(_get(t, "word"), gens, where)
            rhs[w] = (rhs.get(w, 0) + _coeff(_get(t, "coeff"), field, where)) % field.p
        rules.append(RewriteRule(lhs, rhs))
    pres = Presentation(gens, rules, field.p)
    gl = doc.get("grouplike")
    grouplike = None
    if gl:
        grouplike = ([str(x) for x in gl["generators"]], [int(x) for x in gl["orders"]])
        for name in grouplike[0]:
            if name not in gens:
                raise PresentationParseError(f"grouplike generator {name} is not a generator")
    hopf = _get(doc, "hopf")
    coproduct, counit, antipode = {}, {}, {}
    for name in gens:
        where = f"hopf.coproduct.{name}"
        coproduct[name] = [(_coeff(_get(t, "coeff"), field, where),
                            _word(_get(t, "left"), gens, where),
                            _word(_get(t, "right"), gens, where))
                           for t in _get(hopf, "coproduct", name)]
        counit[name] = _coeff(_get(hopf, "counit", name), field, f"hopf.counit.{name}")
        where = f"hopf.antipode.{name}"
        antipode[name] = [(_coeff(_get(t, "coeff"), field, where), _word(_get(t, "word"), gens, where))
                          for t in _get(hopf, "antipode", name)]
    alg = HopfAlgebra.from_data(pres, field, grouplike, coproduct, counit, antipode, check=check)
    meta = dict(doc.get("metadata", {}))
    alg.metadata = meta
    alg.name = meta.get("name", "algebra")
    expected = meta.get("expected_dim")
    if expected is not None and int(expected) != alg.dim:
        raise ValidationError(f"expected dimension {expected}, found {alg.dim} normal-form words")
    return alg
