import numpy as np
import pytest

from demorgan import build, build_Ap, build_Bp, build_sugihara, classify, is_isomorphic
from demorgan.algebra import axiom_violations
from demorgan.catalog import DUNN, FAMILIES, NAMES, case_order, catalog, documented_class
from demorgan.errors import UnknownName

# sizes computed once from the constructions and frozen here
SIZES = {
    "two": 2, "S3": 3, "C4": 4, "D4": 4, "two_plus": 2, "S3_plus": 3, "C4_plus": 4, "C4_sharp": 6,
    "T5": 5, "T6": 6, "G1": 6, "G2": 8, "G3": 8, "G4": 10, "G5": 12, "G6": 14,
    "ext_C4_1": 5, "ext_C4_2": 6, "ext_C4_3": 6, "ext_C4_4": 6, "ext_C4_5": 6, "ext_C4_6": 6,
    "ext_D4_1": 6, "ext_D4_2": 6,
}


def test_names_and_sizes():
    assert set(NAMES) == set(SIZES)
    for name in NAMES:
        A = build(name)
        assert A.size == SIZES[name] and A.name == name


@pytest.mark.parametrize("name", NAMES)
def test_documented_class(name):
    A = build(name)
    cls = documented_class(name)
    assert not axiom_violations(A, cls)
    assert (A.neg is None) == (name in DUNN)


def test_catalog_mapping_is_lazy():
    c = catalog()
    assert set(c) == set(NAMES)
    assert c["C4"]() is build("C4")


def test_unknown_name():
    with pytest.raises(UnknownName):
        build("G7")
    with pytest.raises(UnknownName):
        build("ext_C4_7")


def test_family_patterns():
    assert FAMILIES == ("S_<n>", "A_<p>", "B_<p>")
    assert build("S_6") == build_sugihara(6)
    assert build("A_3") == build_Ap(3)
    assert build("B_2") == build_Bp(2)


@pytest.mark.parametrize("n", range(2, 10))
def test_sugihara_chains(n):
    S = build_sugihara(n)
    rep = classify(S)
    assert rep.is_sugihara and rep.is_totally_ordered and rep.is_si
    assert rep.is_odd == (n % 2 == 1)


def test_S3_is_sugihara_S_3():
    assert is_isomorphic(build("S3"), build_sugihara(3))
    assert is_isomorphic(build("two"), build_sugihara(2))


@pytest.mark.parametrize("p", range(1, 8))
def test_Ap_is_a_chain_of_size_p_plus_3(p):
    A = build_Ap(p)
    assert A.size == p + 3 and classify(A).is_totally_ordered and classify(A).is_dmm


@pytest.mark.parametrize("p", range(1, 6))
def test_Bp_is_a_ladder(p):
    B = build_Bp(p)
    assert B.size == 2 * p + 2
    assert classify(B).is_dmm and not classify(B).is_totally_ordered


def test_A1_is_C4_and_B1_is_D4():
    assert is_isomorphic(build_Ap(1), build("C4"))
    assert is_isomorphic(build_Bp(1), build("D4"))


def test_bad_family_parameters():
    for fn in (build_sugihara, build_Ap, build_Bp):
        with pytest.raises(ValueError):
            fn(0)


def test_supplied_arrows_are_residuals():
    for name in ("T5", "T6"):
        A = build(name)
        assert np.array_equal(np.array(A.arrow_supplied), A.np_arrow)


def test_T5_is_idempotent_and_T6_is_not():
    T5, T6 = build("T5"), build("T6")
    assert all(T5.fusion[a][a] == a for a in range(T5.size))
    c = T6.index("c")
    assert T6.fusion[c][c] == T6.index("top")


def test_case_order_names():
    with pytest.raises(UnknownName):
        case_order("V")
    assert case_order("IV").b_size == 6


def test_dunn_reducts():
    for name in ("two", "S3", "C4"):
        plus = build(name + "_plus")
        assert plus.neg is None and plus.meet == build(name).meet


def test_covers_are_reflections_and_skew_reflections():
    for g in ("G1", "G2", "G3", "G4", "G5", "G6"):
        A = build(g)
        assert A.names[-2:] == ("0", "1") or list(A.names[-2:]) == ["0", "1"]
        assert A.provenance["skew_reflection_of"]
