import pytest
from hypothesis import given
from hypothesis import strategies as st

from twoclosure import PermGroup, Permutation
from twoclosure.catalog import load_catalog
from twoclosure.constructions import (
    coprime_product_equivalence_witness,
    coset_action,
    cyclic_group,
    disjoint_direct_product,
    embed_in_sylow_tower,
    imprimitive_wreath,
    product_action_direct_product,
    sylow_tower_of_symmetric,
    universal_embedding_action,
)
from twoclosure.errors import (
    DegreeCapExceeded,
    NotAFactorization,
    NotAHomomorphism,
    NotASubgroup,
    NotCoprime,
    NotNormal,
    NotTransitive,
    UnfaithfulDeltaAction,
)
from twoclosure.families import dihedral_group, quaternion_group, symmetric_group
from twoclosure.groupspec import materialize
from twoclosure.groups import naive_closure
from twoclosure.structure import center, core, enumerate_subgroups

S3 = symmetric_group(3)
C2, C3 = cyclic_group(2), cyclic_group(3)
TRANSITIVE = load_catalog("transitive_le6")
SMALL = [e for e in load_catalog("groups_le24") if e.order <= 12]


def test_disjoint_examples():
    g = disjoint_direct_product(C2, C2)
    assert g.equals(PermGroup.from_cycles(4, "(0 1)", "(2 3)")) and g.order() == 4
    g = disjoint_direct_product(S3, PermGroup.trivial(1))
    assert g.degree == 4 and g.order() == 6 and g.orbit(3) == {3}
    g = disjoint_direct_product(S3, C2)
    assert (g.degree, g.order()) == (5, 12)
    assert g.label.kind == "disjoint_union" and g.label.degree == 5


def test_product_action_examples():
    v4 = product_action_direct_product(C2, C2)
    assert v4.order() == 4 and v4.is_transitive()
    c6 = product_action_direct_product(C3, C2)
    assert c6.order() == 6 and c6.is_transitive() and c6.is_abelian()
    g = product_action_direct_product(S3, C2)
    assert g.order() == 12 and g.is_transitive() and g.degree == 6
    with pytest.raises(NotTransitive):
        product_action_direct_product(PermGroup.trivial(2), C2)


def test_wreath_examples():
    d4 = imprimitive_wreath(C2, C2)
    assert d4.order() == 8
    assert d4.equals(sylow_tower_of_symmetric(2, 2))
    assert imprimitive_wreath(d4, C2).order() == 128
    w = imprimitive_wreath(C3, C2)
    # |C3|^2 * |C2|, confirmed by naive enumeration
    assert w.order() == 18 == len(naive_closure(6, [g.images for g in w.generators]))


def test_wreath_blocks():
    g = imprimitive_wreath(S3, C2)
    blocks = [{a * 2 + b for a in range(3)} for b in range(2)]
    for x in g.generators:
        for B in blocks:
            assert {x(a) for a in B} in blocks


@pytest.mark.parametrize("p, k, order", [(2, 2, 8), (2, 3, 128), (3, 2, 81)])
def test_sylow_tower(p, k, order):
    P = sylow_tower_of_symmetric(p, k)
    assert P.degree == p**k and P.order() == order == p ** ((p**k - 1) // (p - 1))


def test_sylow_tower_cap():
    with pytest.raises(DegreeCapExceeded):
        sylow_tower_of_symmetric(2, 7)


def test_sylow_tower_embedding():
    for spec in ["cyclic:8", "dihedral:4", "quaternion:8", "elab:2:3", "cyclic:9", "elab:3:2", "cyclic:4"]:
        G = materialize(spec)
        P, x = embed_in_sylow_tower(G)
        assert G.conjugate(x).is_subgroup_of(P)


def test_coset_action_natural():
    H = PermGroup.from_cycles(3, "(0 1)")
    act = coset_action(S3, H)
    assert act.degree == 3 and act.group.is_transitive()
    # coset H x corresponds to the point 2^x
    bij = [r[2] for r in act.representatives]
    for g, img in zip(S3.generators, act.images):
        assert all(bij[img(i)] == g(bij[i]) for i in range(3))


def test_coset_action_small_cases():
    A3 = PermGroup.from_cycles(3, "(0 1 2)")
    act = coset_action(S3, A3)
    assert act.degree == 2 and act.group.order() == 2
    assert all(act.image(g).is_identity() for g in A3.generators)
    assert coset_action(S3, S3).degree == 1
    with pytest.raises(NotASubgroup):
        coset_action(A3, PermGroup.from_cycles(3, "(0 1)"))


def test_coset_stabilizer_is_h():
    G = dihedral_group(5)
    for H in enumerate_subgroups(G).all_subgroups():
        act = coset_action(G, H)
        stab = [g for g in G.elements() if act.image(g)(0) == 0]
        assert len(stab) == H.order() and all(h in H for h in stab)


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_coset_kernel_is_core(entry):
    G = entry.group
    for H in enumerate_subgroups(G).all_subgroups():
        act = coset_action(G, H)
        assert G.order() // act.group.order() == core(G, H).order()


def test_order_formulas_on_transitive_pairs():
    for a in TRANSITIVE[:12]:
        for b in TRANSITIVE[:12]:
            G1, G2 = a.group, b.group
            assert product_action_direct_product(G1, G2).order() == G1.order() * G2.order()
            assert imprimitive_wreath(G1, G2).order() == G1.order() ** G2.degree * G2.order()


@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_disjoint_restriction_recovers_factors(a, b):
    G1, G2 = a.group, b.group
    D = disjoint_direct_product(G1, G2)
    d1 = G1.degree
    n1 = len(G1.generators)
    for g, x in zip(G1.generators, D.generators[:n1]):
        assert x.images[:d1] == g.images and x.images[d1:] == tuple(range(d1, D.degree))
    for g, x in zip(G2.generators, D.generators[n1:]):
        assert tuple(v - d1 for v in x.images[d1:]) == g.images
    assert D.order() == G1.order() * G2.order()


def test_universal_embedding_s3():
    A3 = PermGroup.from_cycles(3, "(0 1 2)")
    ue = universal_embedding_action(S3, A3, [Permutation((1, 2, 0))])
    assert ue.group.degree == 6 and ue.is_faithful()
    assert sorted(len(o) for o in ue.restriction_orbits()) == [3, 3]
    assert ue.check_restriction()


def test_universal_embedding_q8_center():
    Q8 = quaternion_group(8)
    Z = center(Q8)
    ue = universal_embedding_action(Q8, Z, [Permutation((1, 0))])
    assert ue.group.degree == 8 and ue.is_faithful() and ue.check_restriction()
    assert ue.group.order() == 8


def test_universal_embedding_errors():
    H = PermGroup.from_cycles(3, "(0 1)")
    with pytest.raises(NotNormal):
        universal_embedding_action(S3, H, [Permutation((1, 0))])
    A3 = PermGroup.from_cycles(3, "(0 1 2)")
    with pytest.raises(UnfaithfulDeltaAction):
        universal_embedding_action(S3, A3, [Permutation((0, 1, 2))])
    with pytest.raises(NotAHomomorphism):
        universal_embedding_action(S3, A3, [Permutation((1, 0))])


@pytest.mark.parametrize("entry", [e for e in SMALL if e.order > 1], ids=lambda e: e.name)
def test_universal_embedding_faithful_everywhere(entry):
    G = entry.group
    for N in enumerate_subgroups(G).normal_subgroups():
        if N.order() in (1, G.order()):
            continue
        ue = universal_embedding_action(G, N, list(N.generators))
        assert ue.is_faithful() and ue.check_restriction()
        sizes = sorted(len(o) for o in ue.restriction_orbits())
        expected = sorted(len(o) for o in N.orbits() for _ in range(ue.index))
        assert sizes == expected


@pytest.mark.parametrize("spec, m1, m2", [("cyclic:2 x cyclic:3 @product", 2, 3), ("cyclic:3 x cyclic:5 @product", 3, 5),
                                         ("cyclic:3 x quaternion:8 @product", 3, 8)])
def test_coprime_witness(spec, m1, m2):
    G = materialize(spec)
    left = spec.split(" x ")[0]
    k = len(materialize(left).generators)
    H, K = G.subgroup(G.generators[:k]), G.subgroup(G.generators[k:])
    w = coprime_product_equivalence_witness(G, H, K)
    assert sorted(w.values()) == list(range(m1 * m2))


def test_coprime_witness_regular_c6():
    G = cyclic_group(6)
    g = G.generators[0]
    H, K = G.subgroup([g**3]), G.subgroup([g**2])
    w = coprime_product_equivalence_witness(G, H, K)
    assert len(set(w.values())) == 6


def test_coprime_witness_errors():
    V = materialize("cyclic:2 x cyclic:2 @product")
    H, K = V.subgroup(V.generators[:1]), V.subgroup(V.generators[1:])
    with pytest.raises(NotCoprime):
        coprime_product_equivalence_witness(V, H, K)
    G = cyclic_group(6)
    g = G.generators[0]
    with pytest.raises(NotAFactorization):
        coprime_product_equivalence_witness(G, G.subgroup([g**3]), G.subgroup([]))
    with pytest.raises(NotTransitive):
        coprime_product_equivalence_witness(PermGroup.from_cycles(4, "(0 1)"), PermGroup.trivial(4), PermGroup.trivial(4))
