import pytest

from demorgan import build, classify
from demorgan.catalog import NAMES
from demorgan.classify import FLAGS, recheck_witness, si_by_order, simple_by_order


@pytest.mark.parametrize("name", NAMES)
def test_every_false_flag_has_a_valid_witness(name):
    A = build(name)
    rep = classify(A)
    assert set(rep.flags) == set(FLAGS)
    for flag, ok in rep.flags.items():
        if not ok:
            assert flag in rep.witnesses, flag
            assert recheck_witness(A, flag, rep.witnesses[flag]), (flag, rep.witnesses[flag])


@pytest.mark.parametrize("name", NAMES)
def test_si_agrees_with_order_criterion(name):
    A = build(name)
    rep = classify(A)
    if rep.is_square_increasing:
        assert rep.is_si == si_by_order(A)
        assert rep.is_simple == simple_by_order(A)


def test_small_flags():
    two, S3, C4, D4 = (build(n) for n in ("two", "S3", "C4", "D4"))
    assert classify(S3).is_sugihara and classify(S3).is_odd
    assert classify(two).is_sugihara and not classify(two).is_odd
    assert classify(C4).in_U and classify(C4).in_M and classify(C4).is_totally_ordered
    r = classify(D4)
    assert r.is_simple and not r.is_totally_ordered and not r.in_M
    assert r.witnesses["in_M"][0] == "identity-below-f"


def test_product_is_not_fsi():
    from demorgan import direct_product
    P = direct_product([build("C4"), build("C4")])
    rep = classify(P)
    assert rep.is_dmm and not rep.is_fsi and not rep.is_si
    assert recheck_witness(P, "is_fsi", rep.witnesses["is_fsi"])


def test_c4_sharp_outside_U_and_M():
    rep = classify(build("C4_sharp"))
    assert rep.is_rigorously_compact and not rep.in_U and not rep.in_M


def test_report_serialises():
    import json
    d = classify(build("G4")).to_dict()
    json.dumps(d)
    assert d["flags"]["is_si"] is True


def test_corrupted_witness_is_rejected():
    A = build("D4")
    rep = classify(A)
    tag, data = rep.witnesses["is_totally_ordered"]
    assert not recheck_witness(A, "is_totally_ordered", (tag, (A.e, A.e)))
