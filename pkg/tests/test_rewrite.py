import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfcx.algebra import FiniteDimAlgebra
from hopfcx.exceptions import BasisOverflow, ConfluenceError, ValidationError
from hopfcx.ffield import PrimeField
from hopfcx.presets import preset
from hopfcx.rewrite import Presentation, RewriteRule, format_word, parse_word, word_key

PROP = settings(max_examples=100, derandomize=True, deadline=None)

DIMS = {"taft_l3": 9, "qea_r2_l3": 81, "uqplus_sl2_a_l3": 9, "uqplus_sl2_b_l3": 9,
        "uqplus_sl3_a_l3": 243, "uqplus_sl3_b_l3": 243, "group_r2_l3": 9, "taft_l3_x_z3": 27}


def _pres(gens, rules, p=13):
    return Presentation(gens, [RewriteRule(parse_word(l, gens), {parse_word(w, gens): c for w, c in r})
                               for l, r in rules], p)


def test_parse_and_format_words():
    gens = ["K", "E", "F"]
    assert parse_word("K^2 E", gens) == (0, 0, 1)
    assert parse_word("1", gens) == ()
    assert parse_word("", gens) == ()
    assert parse_word("E*F K", gens) == (1, 2, 0)
    assert format_word((0, 0, 1, 2, 2, 2), gens) == "K^2 E F^3"
    assert format_word((), gens) == "1"
    with pytest.raises(ValidationError):
        parse_word("G", gens)


@PROP
@given(st.lists(st.integers(0, 2), max_size=8))
def test_word_roundtrip(w):
    gens = ["a", "b", "c"]
    assert parse_word(format_word(tuple(w), gens), gens) == tuple(w)


def test_rules_must_decrease():
    with pytest.raises(ValidationError):
        _pres(["a", "b"], [("a b", [("b a", 1)])])
    with pytest.raises(ValidationError):
        _pres(["a", "b"], [("a", [("1", 1)]), ("a", [])])


def test_non_confluent_detected():
    pres = _pres(["a", "b"], [("a b", [("a", 1)]), ("b a", [("b", 1)])])
    bad = pres.check_local_confluence()
    assert bad
    assert any(w == (0, 1, 0) for w, _, _ in bad)
    with pytest.raises(ConfluenceError):
        FiniteDimAlgebra.from_presentation(pres, PrimeField(13))


def test_infinite_basis_overflows():
    pres = Presentation(["x"], [], 13, basis_cap=50)
    with pytest.raises(BasisOverflow):
        pres.enumerate_basis()


@pytest.mark.parametrize("name", sorted(DIMS))
def test_basis_counts(name):
    alg = preset(name)
    assert alg.dim == DIMS[name]
    words = alg.basis_words
    assert words == sorted(words, key=word_key)
    assert all(alg.presentation.is_normal(w) for w in words)
    assert not alg.presentation.check_local_confluence()


@PROP
@given(st.sampled_from(sorted(DIMS)), st.integers(0, 2 ** 32 - 1))
def test_strategy_independence(name, seed):
    pres = preset(name).presentation
    g = np.random.default_rng(seed)
    w = tuple(int(x) for x in g.integers(0, len(pres.generators), size=int(g.integers(0, 9))))
    left = pres.normal_form(w, strategy="leftmost")
    right = pres.normal_form(w, strategy="rightmost")
    assert left == right
    assert all(pres.is_normal(u) for u in left)


@pytest.mark.parametrize("name", ["taft_l3", "uqplus_sl2_b_l3", "group_r2_l3"])
def test_structure_constants_match_concatenation(name):
    alg = preset(name)
    pres = alg.presentation
    index = {w: i for i, w in enumerate(alg.basis_words)}
    for i, u in enumerate(alg.basis_words):
        for j, v in enumerate(alg.basis_words):
            expect = pres.to_vector(u + v, index, alg.dim)
            assert np.array_equal(alg.table[i, j].astype(np.int64) % alg.p, expect)


def test_taft_relations_by_hand():
    alg = preset("taft_l3")
    q, p = alg.field.q, alg.p
    g, x = alg.generators["g"], alg.generators["x"]
    assert np.array_equal(alg.mul(x, g), q ** 2 * alg.mul(g, x) % p)      # x g = q^-1 g x
    assert not alg.power(x, 3).any()
    assert np.array_equal(alg.power(g, 3), alg.one)
