"""Hopf subalgebra embeddings between presets (built over a common field)."""
from __future__ import annotations

from ..hopf import SubalgebraEmbedding
from .builders import (builder_group_algebra, builder_qea, builder_taft, builder_uqplus_sl2,
                       builder_uqplus_sl3)
from .loader import from_document


def _pair(small_doc, big_doc, mapping):
    big = from_document(big_doc)
    small = from_document(small_doc, p=big.p)
    if small.field.q != big.field.q:
        small = from_document(dict(small_doc, field=dict(small_doc["field"], p=big.p, q=big.field.q)))
    emb = SubalgebraEmbedding(small, big, {s: big.element(t) for s, t in mapping.items()})
    emb.validate()
    return emb


def subalgebra_uqplus_sl2_in_sl3(ell=3):
    """``E, K -> E1, K1``."""
    return _pair(builder_uqplus_sl2(ell, "A"), builder_uqplus_sl3(ell, "A"), {"E": "E1", "K": "K1"})


def group_in_taft(ell=3):
    return _pair(builder_group_algebra(1, ell), builder_taft(ell), {"g": "g"})


def group_in_qea(ell=3):
    return _pair(builder_group_algebra(2, ell), builder_qea(2, ell), {"g1": "g1", "g2": "g2"})


def group_in_sl3(ell=3):
    return _pair(builder_group_algebra(2, ell), builder_uqplus_sl3(ell, "A"), {"g1": "K1", "g2": "K2"})


def shipped_embeddings(ell=3):
    return {
        "uqplus_sl2_in_uqplus_sl3": subalgebra_uqplus_sl2_in_sl3(ell),
        "group_in_taft": group_in_taft(ell),
        "group_in_qea": group_in_qea(ell),
        "group_in_uqplus_sl3": group_in_sl3(ell),
    }
