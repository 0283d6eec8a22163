from fractions import Fraction

import pytest
from sympy.liealgebras.cartan_matrix import CartanMatrix
from sympy.liealgebras.root_system import RootSystem as SympyRootSystem

from hopfcx.exceptions import InvalidParameters, UnknownType
from hopfcx.rootsys import (build_root_system, complexity_lower_bound, parse_type, phi_zero,
                            phi_zero_plus, roots_report, wildness_verdict)

COXETER = {"A": lambda r: r + 1, "B": lambda r: 2 * r, "C": lambda r: 2 * r,
           "D": lambda r: 2 * r - 2, "E": lambda r: {6: 12, 7: 18, 8: 30}[r],
           "F": lambda r: 12, "G": lambda r: 6}
NUM_POSITIVE = {"A": lambda r: r * (r + 1) // 2, "B": lambda r: r * r, "C": lambda r: r * r,
                "D": lambda r: r * (r - 1), "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
                "F": lambda r: 24, "G": lambda r: 6}
TYPES = ["A1", "A2", "A3", "A5", "B2", "B3", "B5", "C2", "C3", "C4", "D4", "D5", "D6",
         "E6", "E7", "E8", "F4", "G2"]
ODD_ELLS = [3, 5, 7, 9, 11, 13, 15, 31]


def _ells_for(label):
    return [l for l in ODD_ELLS if not (label == "G2" and l % 3 == 0)]


@pytest.mark.parametrize("label", TYPES)
def test_counts_and_coxeter_numbers(label):
    rs = build_root_system(label)
    kind, r = rs.kind, rs.rank
    assert len(rs.positive) == NUM_POSITIVE[kind](r)
    assert rs.coxeter_number == COXETER[kind](r)
    assert 2 * len(rs.positive) == rs.rank * rs.coxeter_number
    # sympy has no A1 or C2 Cartan data
    if label not in ("A1", "C2"):
        assert len(SympyRootSystem(label).all_roots()) == len(rs.roots)
        assert [list(row) for row in rs.cartan] == CartanMatrix(label).tolist()


@pytest.mark.parametrize("label", TYPES)
def test_coroots_and_rho(label):
    rs = build_root_system(label)
    simple = [tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)]
    for i, a in enumerate(simple):
        assert rs.rho_pairing(a) == 1
        for j, b in enumerate(simple):
            assert rs.pairing(b, a) == rs.cartan[j][i]
    for a, co in zip(rs.positive, rs.coroots):
        # <rho, alpha^vee> is the height of alpha^vee in the simple coroots
        assert rs.rho_pairing(a) == sum(co)
        assert rs.pairing(a, a) == 2
    assert max(rs.rho_pairing(a) for a in rs.positive) == rs.coxeter_number - 1
    assert all(isinstance(x, Fraction) for x in rs.rho)


def test_parse_type():
    assert parse_type("B2") == ("B", 2)
    assert parse_type("b", 3) == ("B", 3)
    assert parse_type("E_7") == ("E", 7)
    for bad, rank in [("H3", None), ("D3", None), ("E9", None), ("F3", None), ("G3", None),
                      ("A", None), ("A2", 3), ("B1", None)]:
        with pytest.raises(UnknownType):
            parse_type(bad, rank)


@pytest.mark.parametrize("label", TYPES)
def test_phi_zero(label):
    rs = build_root_system(label)
    for ell in _ells_for(label):
        z = phi_zero_plus(rs, ell)
        assert all(rs.rho_pairing(a) % ell == 0 for a in z)
        assert len(phi_zero(rs, ell)) == 2 * len(z)
        if ell >= rs.coxeter_number:
            assert z == ()
            assert complexity_lower_bound(rs, ell) == len(rs.positive)


@pytest.mark.parametrize("label,ell,count", [("A2", 3, 0), ("A3", 3, 1), ("B2", 3, 1),
                                             ("G2", 5, 1), ("B3", 3, 2), ("E8", 7, 14)])
def test_phi_zero_counts_by_hand(label, ell, count):
    rs = build_root_system(label)
    # independent count from the coroot heights; for E8 the roots of height k number
    # #{exponents >= k}, giving 7 + 4 + 2 + 1 for k = 7, 14, 21, 28
    assert sum(1 for co in rs.coroots if sum(co) % ell == 0) == count
    assert len(phi_zero_plus(rs, ell)) == count


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "E6"])
def test_bound_nondecreasing_in_ell(label):
    rs = build_root_system(label)
    ells = _ells_for(label)
    bounds = [complexity_lower_bound(rs, l) for l in ells]
    # once ell passes h the bound is maximal and constant
    big = [b for l, b in zip(ells, bounds) if l >= rs.coxeter_number]
    assert big and all(b == len(rs.positive) for b in big)
    assert max(bounds) == len(rs.positive)


def test_bound_grows_with_rank():
    for ell in (3, 5, 7):
        bounds = [complexity_lower_bound(build_root_system("A", r), ell) for r in range(1, 9)]
        assert bounds == sorted(bounds)


@pytest.mark.parametrize("ell", [0, 1, 2, 4, 10, -3])
def test_refuses_bad_ell(ell):
    rs = build_root_system("A2")
    with pytest.raises(InvalidParameters, match="odd"):
        wildness_verdict(rs, ell)
    with pytest.raises(InvalidParameters):
        phi_zero_plus(rs, ell)


@pytest.mark.parametrize("ell", [3, 9, 15])
def test_refuses_g2_multiples_of_three(ell):
    with pytest.raises(InvalidParameters, match="G2"):
        wildness_verdict(build_root_system("G2"), ell)


def test_refuses_unknown_target():
    with pytest.raises(InvalidParameters):
        wildness_verdict(build_root_system("A2"), 3, "other")


@pytest.mark.parametrize("label,ell,branch,bound", [
    ("A2", 3, "ell>=h", 3), ("A3", 3, "sl3-subalgebra", 3), ("A3", 5, "ell>=h", 6),
    ("B2", 3, "B2,ell=3", 3), ("C2", 3, "B2,ell=3", 3), ("B2", 5, "ell>=h", 4),
    ("G2", 5, "G2,ell=5", 5),
    ("G2", 7, "ell>=h", 6), ("B3", 3, "sl3-subalgebra", 3), ("C3", 5, "sl3-subalgebra", 3),
    ("E8", 29, "sl3-subalgebra", 3), ("E8", 31, "ell>=h", 120), ("F4", 11, "sl3-subalgebra", 3),
])
def test_verdict_table(label, ell, branch, bound):
    v = wildness_verdict(build_root_system(label), ell)
    assert (v.verdict, v.branch, v.bound) == ("wild", branch, bound)
    assert v.trace[0]["step"] == "parameters"
    assert v.trace[-1]["step"] == "wildness-criterion"


@pytest.mark.parametrize("label", TYPES)
def test_every_admissible_case_decided(label):
    rs = build_root_system(label)
    for ell in _ells_for(label):
        b = wildness_verdict(rs, ell, "borel")
        f = wildness_verdict(rs, ell, "full")
        if rs.rank == 1:
            assert b.verdict == "representation-finite" and f.verdict == "tame"
        else:
            assert b.verdict == f.verdict == "wild"
            assert b.bound >= 3 and f.bound == b.bound
            assert f.scope == "principal block"


def test_roots_report():
    out = roots_report("B2", None, 3, "full")
    assert out["h"] == 4 and out["num_positive"] == 4
    assert out["phi0plus"] == 1 and out["phi0"] == 2
    assert out["bound"] == 3 and out["verdict_bound"] == 3
    assert out["verdict"] == "wild" and out["target"] == "full"
    assert sorted(out["rho_pairings"]) == [1, 1, 2, 3]
