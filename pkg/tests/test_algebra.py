import numpy as np
import pytest

from hopfcx import ffield as ff
from hopfcx.algebra import FiniteDimAlgebra
from hopfcx.exceptions import NotCharacterSplit
from hopfcx.ffield import PrimeField
from hopfcx.presets import preset
from oracles import gf_rank

# name -> (dim, radical dim, number of characters)
SHAPES = {
    "taft_l3": (9, 6, 3),
    "taft_l3_x_z3": (27, 18, 9),
    "uqplus_sl2_a_l3": (9, 6, 3),
    "qea_r2_l3": (81, 72, 9),
    "group_r2_l3": (9, 0, 9),
    "uqplus_sl3_a_l3": (243, 234, 9),
}
SMALLISH = ["taft_l3", "taft_l3_x_z3", "uqplus_sl2_a_l3", "qea_r2_l3", "group_r2_l3"]


def _component_count(adj):
    parent = list(range(len(adj)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(adj)):
        for j in range(len(adj)):
            if adj[i][j]:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(adj))})


@pytest.mark.parametrize("name", sorted(SHAPES))
def test_shapes(name):
    alg = preset(name)
    dim, rad, chars = SHAPES[name]
    assert alg.dim == dim
    assert alg.radical.shape[0] == rad
    assert alg.simple_characters.shape[0] == chars == alg.grouplike.order


@pytest.mark.parametrize("name", SMALLISH)
def test_radical_is_nilpotent_ideal(name):
    alg = preset(name)
    p = alg.p
    rad = alg.radical
    if rad.shape[0] == 0:
        return
    r, piv, k = ff.rref(rad, p)
    g = np.random.default_rng(0)
    for _ in range(20):
        a = g.integers(0, p, size=alg.dim)
        x = g.integers(0, p, size=rad.shape[0]) @ rad % p
        assert ff.in_row_space(r[:k], piv, alg.mul(a, x), p)
        assert ff.in_row_space(r[:k], piv, alg.mul(x, a), p)
    x = g.integers(0, p, size=rad.shape[0]) @ rad % p
    assert not alg.power(x, alg.dim).any()


@pytest.mark.parametrize("name", SMALLISH + ["uqplus_sl3_a_l3"])
def test_characters_are_algebra_maps(name):
    alg = preset(name)
    p = alg.p
    g = np.random.default_rng(1)
    for chi in alg.simple_characters:
        assert chi[alg.unit] == 1
        for _ in range(10):
            a, b = g.integers(0, p, size=(2, alg.dim))
            assert alg.mul(a, b) @ chi % p == (a @ chi) * (b @ chi) % p
    triv = alg.simple_characters[alg.trivial_character_index]
    assert np.array_equal(triv % p, alg.counit_vector % p)


@pytest.mark.parametrize("name", SMALLISH)
def test_primitive_idempotents(name):
    alg = preset(name)
    idems = alg.primitive_idempotents
    assert np.array_equal(np.sum(idems, axis=0) % alg.p, alg.one)
    for i, e in enumerate(idems):
        assert np.array_equal(alg.mul(e, e), e)
        chi = alg.simple_characters[i]
        assert e @ chi % alg.p == 1
        for f in idems[i + 1:]:
            assert not alg.mul(e, f).any()


@pytest.mark.parametrize("name", SMALLISH)
def test_center_matches_rank_oracle(name):
    alg = preset(name)
    p = alg.p
    rows = [(alg.right_mult_operator(alg.generators[g]) - alg.left_mult_operator(alg.generators[g])) % p
            for g in alg.generators]
    assert alg.center.shape[0] == alg.dim - gf_rank(np.vstack(rows), p)
    for z in alg.center:
        for x in alg.generators.values():
            assert np.array_equal(alg.mul(z, x), alg.mul(x, z))


@pytest.mark.parametrize("name", SMALLISH)
def test_blocks_match_idempotent_graph(name):
    """Blocks of a basic algebra are components of the graph ``e_i A e_j != 0``."""
    alg = preset(name)
    p = alg.p
    idems = alg.primitive_idempotents
    eye = np.eye(alg.dim, dtype=np.int64)
    pieces = []
    for e in idems:
        left = np.array([alg.mul(e, b) for b in eye])
        pieces.append([ff.rank(np.array([alg.mul(v, f) for v in left]), p) for f in idems])
    adj = [[pieces[i][j] or pieces[j][i] for j in range(len(idems))] for i in range(len(idems))]
    blocks = alg.blocks()
    assert len(blocks) == _component_count(adj)
    assert sum(blocks.dims) == alg.dim
    for e in blocks.idempotents:
        assert np.array_equal(alg.mul(e, e), e)


def test_group_algebra_is_semisimple_with_nine_blocks():
    alg = preset("group_r2_l3")
    assert len(alg.blocks()) == 9
    assert alg.blocks().dims == [1] * 9


def test_qea_has_single_block():
    assert len(preset("qea_r2_l3").blocks()) == 1
    assert len(preset("taft_l3").blocks()) == 1


def test_not_character_split():
    # F_p[x]/(x^2 + 1) over p = 7 is a field of dimension 2, with no group-likes declared
    p = 7
    t = np.zeros((2, 2, 2), dtype=np.int32)
    t[0, 0, 0] = t[0, 1, 1] = t[1, 0, 1] = 1
    t[1, 1, 0] = p - 1
    alg = FiniteDimAlgebra(PrimeField(p), ["1", "x"], t)
    assert alg.radical.shape[0] == 0
    with pytest.raises(NotCharacterSplit):
        alg.simple_characters
