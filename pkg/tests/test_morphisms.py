import itertools

import pytest

from demorgan import build, build_sugihara, direct_product
from demorgan.errors import SignatureMismatch
from demorgan.morphisms import (
    Morphism, canonical_copy, canonical_form, find_embeddings, find_homomorphisms, find_isomorphism,
    is_crystalline, is_homomorphism, is_isomorphic, is_isomorphic_bruteforce, is_retract, proper_subalgebras,
    relabel, sole_proper_subalgebra, zero_generated_core,
)


def brute_homs(A, B):
    out = []
    for h in itertools.product(range(B.size), repeat=A.size):
        if is_homomorphism(A, B, h):
            out.append(h)
    return out


@pytest.mark.parametrize("a, b", [("C4", "C4"), ("G1", "C4"), ("S_5", "S_3"), ("S_4", "S_3"),
                                  ("ext_C4_1", "C4"), ("two", "S3"), ("D4", "two")])
def test_hom_search_matches_brute_force(a, b):
    A, B = build(a), build(b)
    got = [m.map for m in find_homomorphisms(A, B)]
    assert got == sorted(brute_homs(A, B))


def test_surjective_and_injective_filters():
    S5, S3 = build_sugihara(5), build_sugihara(3)
    surj = find_homomorphisms(S5, S3, surjective=True)
    assert len(surj) == 1 and surj[0].is_surjective
    assert find_embeddings(S3, S5)
    assert all(m.is_injective for m in find_embeddings(build("C4"), build("G6")))


def test_fixed_constraints():
    A = build("C4")
    f = A.neg[A.e]
    assert not find_homomorphisms(A, A, fixed={A.e: f})
    assert len(find_homomorphisms(A, A, fixed={f: f})) == 1


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        find_homomorphisms(build("C4"), build("T5"))


def test_g1_has_one_hom_to_c4():
    hs = find_homomorphisms(build("G1"), build("C4"))
    assert len(hs) == 1 and hs[0].verify() and hs[0].is_surjective


def test_composition():
    A, B, C = build("S_7"), build("S_5"), build("S_3")
    for g in find_homomorphisms(A, B):
        for h in find_homomorphisms(B, C):
            assert g.then(h).verify()
    with pytest.raises(ValueError):
        g.then(g)


def test_kernel_blocks():
    h = find_homomorphisms(build("G1"), build("C4"))[0]
    assert max(h.kernel_blocks()) == 3


@pytest.mark.parametrize("name", ["C4", "D4", "G2", "T5", "ext_C4_4", "ext_D4_1"])
def test_canonical_form_invariant_under_relabel(name):
    A = build(name)
    n = A.size
    for shift in range(1, min(n, 4)):
        perm = [(i + shift) % n for i in range(n)]
        B = relabel(A, perm)
        assert canonical_form(B) == canonical_form(A)
        assert is_isomorphic_bruteforce(A, B) if n <= 9 else True
        assert find_isomorphism(A, B) is not None


def test_canonical_copy_is_fixed_point():
    A = build("G4")
    C = canonical_copy(A)
    assert canonical_copy(C) == C


def test_non_isomorphic_pairs():
    names = ["ext_C4_2", "ext_C4_3", "ext_C4_4", "ext_C4_5", "ext_C4_6", "ext_D4_1", "ext_D4_2"]
    for a, b in itertools.combinations(names, 2):
        A, B = build(a), build(b)
        assert not is_isomorphic(A, B)
        assert not is_isomorphic_bruteforce(A, B)


def test_zero_generated_core():
    assert zero_generated_core(build("G5")).algebra.size == 4
    assert zero_generated_core(build("S3")).algebra.size == 1
    assert zero_generated_core(build("D4")).algebra.size == 4


def test_crystalline():
    assert is_crystalline(build("G3")) and is_crystalline(build("C4"))
    assert not is_crystalline(build("D4")) and not is_crystalline(build("T5"))


def test_retracts():
    C4 = build("C4")
    g, h = is_retract(C4, build("G2"))
    assert g.then(h).map == tuple(range(4))
    assert is_retract(build("D4"), build("C4")) is None
    P = direct_product([build("G1"), build("G3")])
    assert is_retract(build("G1"), P) is not None


def test_proper_subalgebras():
    subs = proper_subalgebras(build("G4"))
    assert len(subs) == 1 and sole_proper_subalgebra(build("G4"), build("C4"))
    assert not sole_proper_subalgebra(build("A_4"), build("C4"))


def test_morphism_to_dict():
    m = find_homomorphisms(build("G1"), build("C4"))[0]
    d = m.to_dict()
    assert d["source"] == "G1" and len(d["map"]) == 6
    assert isinstance(m, Morphism) and m(m.source.e) == m.target.e
