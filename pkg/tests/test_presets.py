import copy

import pytest
from hypothesis import given, settings, strategies as st

from hopfcx.exceptions import (BasisOverflow, ConfluenceError, InvalidParameters,
                               PresentationParseError, RelationViolation, ValidationError)
from hopfcx.ffield import PrimeField
from hopfcx.presets import (SHIPPED, builder_qea, builder_taft, builder_uqplus_sl2, dumps,
                            from_document, parse_text, preset, preset_path)
from hopfcx.presets.coeffs import evaluate, format_coefficient, parse_coefficient

PROP = settings(max_examples=100, derandomize=True, deadline=None)


@pytest.mark.parametrize("name", sorted(SHIPPED))
def test_builders_match_shipped_files(name):
    assert dumps(SHIPPED[name]()) == preset_path(name).read_text(encoding="utf-8")


@pytest.mark.parametrize("text,poly", [
    ("1", {0: 1}), ("0", {}), ("-1", {0: -1}), ("q", {1: 1}), ("q^-1", {-1: 1}),
    ("1 - q^-2", {0: 1, -2: -1}), ("2*q^3 + q", {3: 2, 1: 1}), ("-q^2 - 3", {2: -1, 0: -3}),
    ("q - q", {}), ("3 q", {1: 3}),
])
def test_coefficient_grammar(text, poly):
    assert parse_coefficient(text) == poly


@pytest.mark.parametrize("bad", ["", "q^", "2 3", "* q", "x", "1 +", "q^^2"])
def test_coefficient_rejects(bad):
    with pytest.raises(PresentationParseError):
        parse_coefficient(bad)


@PROP
@given(st.dictionaries(st.integers(-4, 4), st.integers(-20, 20), max_size=5))
def test_coefficient_roundtrip(poly):
    poly = {k: c for k, c in poly.items() if c}
    assert parse_coefficient(format_coefficient(poly)) == poly
    f = PrimeField.for_algebra(3, 9)
    expect = sum(c * pow(f.q, k % 3, f.p) for k, c in poly.items()) % f.p
    assert evaluate(format_coefficient(poly), f) == expect


def test_toml_error_has_line_and_column():
    text = preset_path("taft_l3").read_text().replace('lhs = "g^3"', 'lhs = "g^3', 1)
    with pytest.raises(PresentationParseError) as info:
        parse_text(text)
    assert info.value.line is not None and info.value.column is not None
    assert f"line {info.value.line}" in str(info.value)


def test_missing_key_named():
    doc = builder_taft(3)
    del doc["hopf"]["counit"]["x"]
    with pytest.raises(PresentationParseError, match="counit.x"):
        from_document(doc)


def test_unknown_generator_in_word():
    doc = builder_taft(3)
    doc["presentation"]["rules"][1]["rhs"][0]["word"] = "g y"
    with pytest.raises(PresentationParseError, match="rules\\[1\\]"):
        from_document(doc)


def test_expected_dim_mismatch():
    doc = builder_taft(3)
    doc["metadata"]["expected_dim"] = 10
    doc["field"]["p"] = 13
    with pytest.raises(ValidationError, match="expected dimension 10"):
        from_document(doc)


def test_field_derived_when_absent():
    assert preset("taft_l3").p == 13
    assert preset("qea_r2_l3").p == 97
    assert preset("taft_l3_x_z3").p == 31
    assert preset("uqplus_sl3_a_l3").p == 271
    alg = preset("taft_l3", p=31)
    assert alg.p == 31 and alg.dim == 9


def test_explicit_p_too_small():
    with pytest.raises(ValidationError):
        from_document(builder_taft(3), p=7)


def test_broken_relation_rejected():
    doc = builder_taft(3)
    # x g = q^-1 g x replaced by the commuting relation breaks the coproduct of x
    doc["presentation"]["rules"][1]["rhs"][0]["coeff"] = "1"
    with pytest.raises(RelationViolation):
        from_document(doc)


def test_infinite_presentation_rejected():
    doc = copy.deepcopy(builder_qea(2, 3))
    rules = doc["presentation"]["rules"]
    # without x2 x1 -> ... the nilpotent part is a free algebra
    doc["presentation"]["rules"] = [r for r in rules if r["lhs"] != "x2 x1"]
    assert len(doc["presentation"]["rules"]) == len(rules) - 1
    with pytest.raises(BasisOverflow):
        from_document(doc)


def test_non_confluent_file_rejected():
    doc = copy.deepcopy(builder_taft(3))
    # x^2 g contains x g, and the two reductions disagree
    doc["presentation"]["rules"].append({"lhs": "x^2 g", "rhs": [{"coeff": "1", "word": "g"}]})
    with pytest.raises(ConfluenceError):
        from_document(doc)


@pytest.mark.parametrize("ell", [0, 1, 2, 4, 6])
def test_invalid_ell(ell):
    with pytest.raises(InvalidParameters):
        builder_taft(ell)
    with pytest.raises(InvalidParameters):
        builder_qea(2, ell)


def test_unknown_convention():
    with pytest.raises(InvalidParameters):
        builder_uqplus_sl2(3, "C")


def test_other_ell_builds():
    alg = from_document(builder_taft(5))
    assert alg.dim == 25 and alg.p == 31


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("nope")
