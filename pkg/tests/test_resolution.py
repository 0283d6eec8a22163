import numpy as np
import pytest
from sklearn.base import clone

from hopfcx.exceptions import InsufficientDepth
from hopfcx.homolog import MinimalResolution, ext_dims, ext_dims_via_dual, resolve
from hopfcx.homolog.resolution import require_depth
from hopfcx.hopf import trivial_module
from hopfcx.modrep import projective_indecomposable, simple_module
from hopfcx.presets import preset
from oracles import bar_ext_dims, local_subalgebra, naive_local_betti
from support import k_trace, module_from_key

GROUPLIKE_GENS = {"taft_l3": ["g"], "uqplus_sl2_a_l3": ["K"], "qea_r2_l3": ["g1", "g2"],
                  "uqplus_sl3_a_l3": ["K1", "K2"]}


def test_taft_betti():
    tr = k_trace("taft_l3", 10)
    assert list(tr.betti_table.totals[:11]) == [1] * 11
    assert list(tr.betti_table.dims[:11]) == [3] * 11


def test_qea_betti():
    tr = k_trace("qea_r2_l3", 8)
    assert list(tr.betti_table.totals[:9]) == list(range(1, 10))


def test_sl3_betti():
    tr = k_trace("uqplus_sl3_a_l3", 8)
    assert list(tr.betti_table.totals[:9]) == [1, 2, 5, 7, 12, 15, 22, 26, 35]


def test_group_algebra_is_semisimple():
    tr = k_trace("group_r2_l3", 4)
    assert list(tr.betti_table.totals[:5]) == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("name,max_n", [("taft_l3", 3), ("uqplus_sl2_a_l3", 3), ("group_r2_l3", 2)])
def test_ext_matches_bar_complex(name, max_n):
    alg = preset(name)
    tr = k_trace(name, max_n + 1)
    for b, chi in enumerate(alg.simple_characters):
        expect = bar_ext_dims(alg, chi, max_n)
        assert ext_dims(tr, simple_module(alg, b), max_n) == expect
        assert list(tr.betti_table.rows[:max_n + 1, b]) == expect


def test_taft_bar_values():
    alg = preset("taft_l3")
    got = sorted(bar_ext_dims(alg, chi, 3) for chi in alg.simple_characters)
    assert got == [[0, 0, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0]]


@pytest.mark.parametrize("name,max_n", [("taft_l3", 6), ("qea_r2_l3", 5), ("uqplus_sl3_a_l3", 4)])
def test_betti_matches_naive_local_resolution(name, max_n):
    alg = preset(name)
    table, unit, gens = local_subalgebra(alg, GROUPLIKE_GENS[name])
    naive = naive_local_betti(table, unit, gens, alg.p, max_n)
    assert list(k_trace(name, max_n).betti_table.totals[:max_n + 1]) == naive


@pytest.mark.parametrize("name", ["taft_l3", "qea_r2_l3"])
def test_ext_via_dual_agrees(name):
    alg = preset(name)
    kt = k_trace(name, 4)
    g = np.random.default_rng(3)
    keys = [("S", 1), ("O", 0, 1), ("O", 2, 2), ("D", ("O", 1, 1))]
    for _ in range(3):
        m = module_from_key(name, keys[int(g.integers(len(keys)))])
        n = module_from_key(name, keys[int(g.integers(len(keys)))])
        direct = ext_dims(resolve(m, 4), n, 3)
        assert direct == ext_dims_via_dual(kt, alg, m, n, 3)


def test_projective_resolves_trivially():
    alg = preset("qea_r2_l3")
    tr = resolve(projective_indecomposable(alg, 4), 3)
    assert list(tr.betti_table.totals) == [1, 0, 0, 0]
    assert tr.check()


def test_trace_checks_and_extension():
    tr = resolve(trivial_module(preset("taft_l3")), 2)
    assert tr.check()
    tr.extend(5)
    assert tr.depth == 5 and tr.check()
    assert list(tr.syzygy_dims()) == [1, 2, 1, 2, 1, 2, 1]


def test_require_depth():
    tr = resolve(trivial_module(preset("taft_l3")), 2)
    with pytest.raises(InsufficientDepth):
        require_depth(tr, 3)


def test_estimator_api():
    est = MinimalResolution(depth=4)
    assert est.get_params() == {"depth": 4, "dim_cap": 6000, "check": True}
    fitted = est.fit(trivial_module(preset("qea_r2_l3")))
    assert fitted is est
    assert list(est.betti_) == [1, 2, 3, 4, 5]
    other = clone(est).set_params(depth=2)
    assert not hasattr(other, "trace_")
    assert list(other.fit(trivial_module(preset("qea_r2_l3"))).betti_) == [1, 2, 3]
