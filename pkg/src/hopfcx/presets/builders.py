"""Programmatic builders for the shipped presentations.

Each builder returns the document (a plain dict) that is serialised to the
TOML presentation format; :func:`hopfcx.presets.loader.from_document` turns
it into a validated Hopf algebra.
"""
from __future__ import annotations

from ..exceptions import InvalidParameters


def _check_ell(ell):
    if not isinstance(ell, int) or ell <= 1 or ell % 2 == 0:
        raise InvalidParameters(f"ell must be an odd integer > 1 (got {ell})")


def _q(k):
    """Coefficient string ``q^k``."""
    if k == 0:
        return "1"
    return "q" if k == 1 else f"q^{k}"


def _neg(s):
    return s[1:] if s.startswith("-") else "-" + s


def _pow(name, k):
    return "1" if k == 0 else (name if k == 1 else f"{name}^{k}")


def _rule(lhs, *terms):
    return {"lhs": lhs, "rhs": [{"coeff": c, "word": w} for c, w in terms]}


def _doc(name, ell, generators, rules, grouplike, coproduct, counit, antipode,
         expected_dim, conventions, p=None):
    field = {"ell": ell}
    if p is not None:
        field["p"] = p
    return {
        "metadata": {"name": name, "expected_dim": expected_dim, "conventions": conventions},
        "field": field,
        "presentation": {"generators": generators, "rules": rules},
        "grouplike": grouplike,
        "hopf": {"coproduct": coproduct, "counit": counit, "antipode": antipode},
    }


def _delta(*terms):
    return [{"coeff": c, "left": a, "right": b} for c, a, b in terms]


def _grouplike_rules(names, orders):
    rules = []
    for k, n in zip(names, orders):
        rules.append(_rule(_pow(k, n), ("1", "1")))
    for i in range(len(names)):
        for j in range(i):
            rules.append(_rule(f"{names[i]} {names[j]}", ("1", f"{names[j]} {names[i]}")))
    return rules


def _grouplike_hopf(names, orders):
    co = {k: _delta(("1", k, k)) for k in names}
    eps = {k: "1" for k in names}
    s = {k: [{"coeff": "1", "word": _pow(k, n - 1)}] for k, n in zip(names, orders)}
    return co, eps, s


def builder_group_algebra(r, ell, p=None):
    """``k[(Z/ell)^r]`` with generators ``g1 .. gr``."""
    _check_ell(ell)
    names = [f"g{i + 1}" for i in range(r)] if r > 1 else ["g"]
    orders = [ell] * r
    co, eps, s = _grouplike_hopf(names, orders)
    return _doc(f"group_r{r}_l{ell}", ell, names, _grouplike_rules(names, orders),
                {"generators": names, "orders": orders}, co, eps, s, ell ** r,
                "commutative group algebra", p)


def builder_taft(ell, p=None):
    """Taft algebra: ``x g = q^-1 g x``, ``Delta(x) = x (x) 1 + g (x) x``."""
    _check_ell(ell)
    rules = [_rule(_pow("g", ell), ("1", "1")),
             _rule("x g", (_q(-1), "g x")),
             _rule(_pow("x", ell))]
    co = {"g": _delta(("1", "g", "g")), "x": _delta(("1", "x", "1"), ("1", "g", "x"))}
    eps = {"g": "1", "x": "0"}
    s = {"g": [{"coeff": "1", "word": _pow("g", ell - 1)}],
         "x": [{"coeff": "-1", "word": f"{_pow('g', ell - 1)} x"}]}
    return _doc(f"taft_l{ell}", ell, ["g", "x"], rules, {"generators": ["g"], "orders": [ell]},
                co, eps, s, ell * ell, "g x g^-1 = q x; Delta(x) = x (x) 1 + g (x) x", p)


def builder_uqplus_sl2(ell, convention="A", p=None):
    """Rank-one Borel ``u_q^+(sl_2)``: ``K E K^-1 = q^2 E``.

    Convention ``A``: ``Delta(E) = E (x) 1 + K (x) E``.
    Convention ``B``: ``Delta(E) = E (x) K^-1 + 1 (x) E``.
    """
    _check_ell(ell)
    kinv = _pow("K", ell - 1)
    rules = [_rule("K E", (_q(2), "E K")), _rule(_pow("E", ell)), _rule(_pow("K", ell), ("1", "1"))]
    if convention == "A":
        de = _delta(("1", "E", "1"), ("1", "K", "E"))
        se = [{"coeff": "-1", "word": f"{kinv} E"}]
        text = "Delta(E) = E (x) 1 + K (x) E; S(E) = -K^-1 E"
    elif convention == "B":
        de = _delta(("1", "E", kinv), ("1", "1", "E"))
        se = [{"coeff": "-1", "word": "E K"}]
        text = "Delta(E) = E (x) K^-1 + 1 (x) E; S(E) = -E K"
    else:
        raise InvalidParameters(f"unknown coproduct convention {convention!r}")
    co = {"E": de, "K": _delta(("1", "K", "K"))}
    eps = {"E": "0", "K": "1"}
    s = {"E": se, "K": [{"coeff": "1", "word": kinv}]}
    return _doc(f"uqplus_sl2_{convention.lower()}_l{ell}", ell, ["E", "K"], rules,
                {"generators": ["K"], "orders": [ell]}, co, eps, s, ell * ell, text, p)


def builder_qea(r, ell, p=None):
    """Quantum elementary abelian algebra of rank ``r``.

    ``x_j x_i = q x_i x_j`` for ``i < j``, ``x_i^ell = 0``; ``g_k x_i g_k^-1``
    is ``q x_i`` for ``k >= i`` and ``q^-1 x_i`` for ``k < i``;
    ``Delta(x_i) = x_i (x) 1 + g_i (x) x_i``.
    """
    _check_ell(ell)
    xs = [f"x{i + 1}" for i in range(r)]
    gs = [f"g{i + 1}" for i in range(r)]
    orders = [ell] * r
    rules = _grouplike_rules(gs, orders)
    for i, x in enumerate(xs):
        rules.append(_rule(_pow(x, ell)))
        for j in range(i):
            rules.append(_rule(f"{x} {xs[j]}", (_q(1), f"{xs[j]} {x}")))
    for k, g in enumerate(gs):
        for i, x in enumerate(xs):
            e = 1 if k >= i else -1
            # g x = q^e x g
            rules.append(_rule(f"{g} {x}", (_q(e), f"{x} {g}")))
    co, eps, s = _grouplike_hopf(gs, orders)
    for x, g in zip(xs, gs):
        co[x] = _delta(("1", x, "1"), ("1", g, x))
        eps[x] = "0"
        s[x] = [{"coeff": "-1", "word": f"{_pow(g, ell - 1)} {x}"}]
    return _doc(f"qea_r{r}_l{ell}", ell, xs + gs, rules, {"generators": gs, "orders": orders},
                co, eps, s, ell ** (2 * r),
                "x_j x_i = q x_i x_j (i < j); Delta(x_i) = x_i (x) 1 + g_i (x) x_i", p)


_SL3_CARTAN = ((2, -1), (-1, 2))


def builder_uqplus_sl3(ell, convention="A", p=None):
    """Borel ``u_q^+(sl_3)`` on ``E1 < E12 < E2 < K1 < K2``.

    Convention ``A``: ``E12 = E1 E2 - q^-1 E2 E1``.
    Convention ``B``: ``E12 = E1 E2 - q E2 E1``.
    Both use ``K_i E_j K_i^-1 = q^(a_ij) E_j`` and
    ``Delta(E_i) = E_i (x) 1 + K_i (x) E_i``.
    """
    _check_ell(ell)
    a = _SL3_CARTAN
    gens = ["E1", "E12", "E2", "K1", "K2"]
    k1inv, k2inv = _pow("K1", ell - 1), _pow("K2", ell - 1)
    if convention == "A":
        c = -1          # E12 = E1 E2 - q^c E2 E1
        rules = [_rule("E2 E1", (_q(1), "E1 E2"), ("-q", "E12")),
                 _rule("E12 E1", (_q(-1), "E1 E12")),
                 _rule("E2 E12", (_q(-1), "E12 E2"))]
        d12 = _delta(("1", "E12", "1"), ("1 - q^-2", "E1 K2", "E2"), ("1", "K1 K2", "E12"))
        text = "E12 = E1 E2 - q^-1 E2 E1"
    elif convention == "B":
        c = 1
        rules = [_rule("E2 E1", (_q(-1), "E1 E2"), ("-q^-1", "E12")),
                 _rule("E12 E1", (_q(1), "E1 E12")),
                 _rule("E2 E12", (_q(1), "E12 E2"))]
        d12 = _delta(("1", "E12", "1"), ("q^-1 - q", "E2 K1", "E1"), ("1", "K1 K2", "E12"))
        text = "E12 = E1 E2 - q E2 E1"
    else:
        raise InvalidParameters(f"unknown PBW convention {convention!r}")
    rules += [_rule(_pow(e, ell)) for e in ("E1", "E12", "E2")]
    rules += _grouplike_rules(["K1", "K2"], [ell, ell])
    for i, k in enumerate(("K1", "K2")):
        rules.append(_rule(f"{k} E1", (_q(a[i][0]), f"E1 {k}")))
        rules.append(_rule(f"{k} E2", (_q(a[i][1]), f"E2 {k}")))
        rules.append(_rule(f"{k} E12", (_q(a[i][0] + a[i][1]), f"E12 {k}")))
    co = {"E1": _delta(("1", "E1", "1"), ("1", "K1", "E1")),
          "E12": d12,
          "E2": _delta(("1", "E2", "1"), ("1", "K2", "E2")),
          "K1": _delta(("1", "K1", "K1")),
          "K2": _delta(("1", "K2", "K2"))}
    eps = {"E1": "0", "E12": "0", "E2": "0", "K1": "1", "K2": "1"}
    s1 = f"{k1inv} E1"
    s2 = f"{k2inv} E2"
    # S(E12) = S(E2) S(E1) - q^c S(E1) S(E2)
    s = {"E1": [{"coeff": "-1", "word": s1}],
         "E2": [{"coeff": "-1", "word": s2}],
         "E12": [{"coeff": "1", "word": f"{s2} {s1}"},
                 {"coeff": _neg(_q(c)), "word": f"{s1} {s2}"}],
         "K1": [{"coeff": "1", "word": k1inv}],
         "K2": [{"coeff": "1", "word": k2inv}]}
    return _doc(f"uqplus_sl3_{convention.lower()}_l{ell}", ell, gens, rules,
                {"generators": ["K1", "K2"], "orders": [ell, ell]}, co, eps, s, ell ** 5,
                text + "; Delta(E_i) = E_i (x) 1 + K_i (x) E_i", p)


def builder_taft_times_group(ell, m=None, p=None):
    """``Taft(ell) (x) k[Z/m]``; the central group-like ``c`` splits it into ``m`` blocks."""
    _check_ell(ell)
    m = ell if m is None else m
    doc = builder_taft(ell, p)
    pres = doc["presentation"]
    pres["generators"] = ["g", "x", "c"]
    pres["rules"] += [_rule(_pow("c", m), ("1", "1")), _rule("c g", ("1", "g c")),
                      _rule("c x", ("1", "x c"))]
    doc["grouplike"] = {"generators": ["g", "c"], "orders": [ell, m]}
    doc["hopf"]["coproduct"]["c"] = _delta(("1", "c", "c"))
    doc["hopf"]["counit"]["c"] = "1"
    doc["hopf"]["antipode"]["c"] = [{"coeff": "1", "word": _pow("c", m - 1)}]
    doc["metadata"].update(name=f"taft_l{ell}_x_z{m}", expected_dim=ell * ell * m,
                           conventions=doc["metadata"]["conventions"] + "; c central of order m")
    return doc
