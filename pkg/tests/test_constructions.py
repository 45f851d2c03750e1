import pytest

from demorgan import build, classify, is_isomorphic
from demorgan.catalog import NAMES, case_order
from demorgan.constructions import (
    Congruence, DeductiveFilter, SkewOrderSpec, closure, congruence_of_filter, congruence_reflect, congruences,
    decompose_crystalline, deductive_filters, direct_product, filter_of_congruence, generated_congruence,
    is_deductive_filter, lower_bound_count, quotient, quotient_by_congruence, reflection, reflection_order,
    rigorous_extension, skew_order_from_downset, skew_order_violations, skew_reflection, subalgebra_generated,
)
from demorgan.errors import AxiomViolation, IllDefinedOperation, NotCrystalline, SignatureMismatch, SpecViolation


def test_filters_of_c4():
    A = build("C4")
    fs = deductive_filters(A)
    assert [len(G) for G in fs] == [3, 4]
    assert all(is_deductive_filter(A, G) for G in fs)


@pytest.mark.parametrize("name", ["C4", "G3", "T6", "ext_C4_2", "S3"])
def test_general_method_agrees(name):
    A = build(name)
    assert deductive_filters(A, "general") == deductive_filters(A, "square_increasing")


def test_filter_method_rejects_non_square_increasing():
    A = build("C4")
    with pytest.raises(ValueError):
        deductive_filters(A, "bogus")


def test_quotient_of_G3_is_C4():
    A = build("G3")
    fs = deductive_filters(A)
    sizes = [quotient(A, G).size for G in fs]
    assert sorted(sizes) == [1, 4, 8]
    mid = [quotient(A, G) for G in fs if quotient(A, G).size == 4][0]
    assert is_isomorphic(mid, build("C4"))
    assert mid.provenance["quotient_of"] == "G3"


def test_ill_defined_quotient_raises():
    A = build("C4")
    # gluing 0 with e but not their negations breaks negation
    th = Congruence.from_labels([0 if a in (A.bottom, A.e) else a + 1 for a in range(A.size)])
    with pytest.raises(IllDefinedOperation):
        quotient_by_congruence(A, th)


def test_generated_congruence_contains_pair_and_is_compatible():
    A = build("G2")
    th = generated_congruence(A, [(A.e, A.neg[A.e])])
    assert th.related(A.e, A.neg[A.e])
    quotient_by_congruence(A, th)  # no exception


def test_congruences_correspond_to_filters():
    for name in ("C4", "G1", "S_5", "T5"):
        A = build(name)
        fs = deductive_filters(A)
        cs = congruences(A)
        assert len(fs) == len(cs)
        assert {congruence_of_filter(A, G) for G in fs} == set(cs)
        for th in cs:
            assert congruence_of_filter(A, filter_of_congruence(A, th)) == th


def test_direct_product_order_and_names():
    A, B = build("two"), build("C4")
    P = direct_product([A, B])
    assert P.size == 8 and P.name == "twoxC4"
    assert P.names[0] == f"({A.label(0)},{B.label(0)})"
    assert P.provenance["coordinates"][5] == [1, 1]
    with pytest.raises(SignatureMismatch):
        direct_product([A, build("T5")])


def test_subalgebras():
    A = build("G6")
    core = subalgebra_generated(A, ())
    assert is_isomorphic(core.algebra, build("C4"))
    assert closure(A, [A.e]) == list(core.carrier)
    assert subalgebra_generated(A, [0]).algebra.size == A.size  # bottom of B generates


def test_reflection_of_trivial_is_C4():
    triv = subalgebra_generated(build("T5"), ()).algebra
    assert is_isomorphic(reflection(triv), build("C4"))


def test_reflection_layout():
    B = build("S3_plus")
    R = reflection(B)
    k = B.size
    assert R.size == 2 * k + 2
    assert R.names[-2:] == ["0", "1"] or list(R.names[-2:]) == ["0", "1"]
    assert all(R.leq(b, k + c) for b in range(k) for c in range(k))
    assert R.neg[R.e] == k + B.e


def test_reflection_is_skew_with_full_downset():
    B = build("C4_plus")
    assert reflection_order(B) == skew_order_from_downset(B, range(B.size))


@pytest.mark.parametrize("g, base, case", [("G3", "S3_plus", "I"), ("G4", "C4_plus", "II"),
                                           ("G5", "T5", "III"), ("G6", "T6", "IV")])
def test_case_orders_are_downset_orders(g, base, case):
    B = build(base)
    D = [b for b in range(B.size) if b != B.top]
    assert case_order(case) == skew_order_from_downset(B, D)
    assert not skew_order_violations(B, case_order(case))


def test_bad_skew_order_rejected():
    B = build("S3_plus")
    spec = case_order("I")
    rows = [list(r) for r in spec.order]
    k = B.size
    rows[k][0] = True  # b' below b
    with pytest.raises(SpecViolation):
        skew_reflection(B, SkewOrderSpec(k, tuple(map(tuple, rows))))
    with pytest.raises(SpecViolation):
        SkewOrderSpec(2, ((True,),))


def test_skew_reflection_needs_square_increasing():
    from demorgan.algebra import FiniteAlgebra, chain_order, lattice_from_order
    M, J = lattice_from_order(chain_order(3))
    luk3 = FiniteAlgebra(M, J, [[0, 0, 0], [0, 0, 1], [0, 1, 2]], 2)  # 3-element MV-chain, a*a = 0
    assert classify(luk3).is_rl and not classify(luk3).is_square_increasing
    with pytest.raises(AxiomViolation):
        skew_reflection(luk3, reflection_order(luk3))


def test_skew_order_round_trip_json():
    spec = case_order("III")
    assert SkewOrderSpec.from_dict(spec.to_dict()) == spec


def test_rigorous_extension():
    S = rigorous_extension(build("C4"))
    rep = classify(S)
    assert S.size == 6 and rep.is_rigorously_compact and rep.is_dmm
    top, bot = S.index("top"), S.index("bot")
    assert all(S.fusion[top][a] == top for a in range(S.size) if a != bot)


@pytest.mark.parametrize("name", ["C4", "G1", "G2", "G3", "G4", "G5", "G6"])
def test_decompose_round_trip(name):
    A = build(name)
    B, spec = decompose_crystalline(A)
    assert classify(B).is_dunn
    assert is_isomorphic(skew_reflection(B, spec), A)
    assert len(spec.carrier) == A.size


def test_decompose_rejects_non_crystalline():
    with pytest.raises(NotCrystalline):
        decompose_crystalline(build("D4"))
    with pytest.raises(NotCrystalline):
        decompose_crystalline(build("T5"))


def test_congruence_reflect_commutes_with_quotients():
    B = build("T6")
    R = reflection(B)
    for th in congruences(B):
        lifted = congruence_reflect(B, th)
        assert is_isomorphic(quotient_by_congruence(R, lifted), reflection(quotient_by_congruence(B, th)))


def test_lower_bound_count_rules():
    two, D4 = build("two"), build("D4")
    assert lower_bound_count(direct_product([two, D4])) == 4
    R = reflection(direct_product([build("two_plus")] * 4))
    assert lower_bound_count(R) == 17
    assert lower_bound_count(direct_product([two, D4, R])) == 68


def test_deductive_filter_rejects_non_filters():
    A = build("G1")
    assert not is_deductive_filter(A, DeductiveFilter(frozenset({A.top}), A.top))
    assert not is_deductive_filter(A, [A.e])


@pytest.mark.parametrize("name", NAMES)
def test_filters_are_deductive(name):
    A = build(name)
    assert all(is_deductive_filter(A, G) for G in deductive_filters(A))
