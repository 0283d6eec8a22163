"""Shared fixtures-as-functions: cached resolutions and a pool of small modules."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from hopfcx.homolog import complexity_estimate, resolve
from hopfcx.hopf import dual_module, tensor_module, trivial_module
from hopfcx.modrep import (direct_sum, projective_indecomposable, regular_module,
                           simple_module)
from hopfcx.presets import preset

SMALL = ("taft_l3", "taft_l3_x_z3", "uqplus_sl2_a_l3", "uqplus_sl2_b_l3", "qea_r2_l3")


@lru_cache(maxsize=None)
def k_trace(name, depth):
    return resolve(trivial_module(preset(name)), depth)


@lru_cache(maxsize=None)
def simple_trace(name, j, depth=4):
    return resolve(simple_module(preset(name), j), depth)


def syzygy_of_simple(name, j, n):
    return simple_trace(name, j, max(n, 1)).syzygies[n]


@lru_cache(maxsize=None)
def module_from_key(name, key):
    """Modules named by hashable keys so that expensive work can be cached.

    ``("k",)``, ``("S", j)``, ``("P", j)``, ``("O", j, n)``, ``("D", key)``,
    ``("T", key1, key2)``, ``("+", key1, key2)``, ``("R",)``.
    """
    alg = preset(name)
    tag = key[0]
    if tag == "k":
        return trivial_module(alg)
    if tag == "S":
        return simple_module(alg, key[1])
    if tag == "P":
        return projective_indecomposable(alg, key[1])
    if tag == "R":
        return regular_module(alg)
    if tag == "O":
        return syzygy_of_simple(name, key[1], key[2])
    if tag == "D":
        return dual_module(alg, module_from_key(name, key[1]))
    if tag == "T":
        return tensor_module(alg, module_from_key(name, key[1]), module_from_key(name, key[2]))
    if tag == "+":
        return direct_sum(module_from_key(name, key[1]), module_from_key(name, key[2]))
    raise KeyError(key)


def random_key(name, rng, allow_compound=True, max_dim=40):
    """A random module key for ``name``; compound keys stay below ``max_dim``."""
    alg = preset(name)
    n_chars = alg.grouplike.order
    j = int(rng.integers(n_chars))
    base = [("k",), ("S", j), ("O", j, int(rng.integers(1, 4))), ("P", j)]
    key = base[int(rng.integers(len(base)))]
    if rng.random() < 0.25:
        key = ("D", key)
    if allow_compound and rng.random() < 0.4:
        other = random_key(name, rng, allow_compound=False)
        tag = "T" if rng.random() < 0.5 else "+"
        cand = (tag, key, other)
        if module_from_key(name, cand).dim <= max_dim:
            key = cand
    return key


@lru_cache(maxsize=None)
def trace_of(name, key, depth):
    return resolve(module_from_key(name, key), depth)


@lru_cache(maxsize=None)
def cx_of(name, key, depth=8):
    tr = trace_of(name, key, depth)
    return complexity_estimate(tr.betti_table.totals).complexity


def rng(seed=0):
    return np.random.default_rng(seed)
