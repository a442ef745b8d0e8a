import pytest
from hypothesis import given

from twoclosure import PermGroup, structure_report
from twoclosure.errors import NotASubgroup, NotPrime, OrderCapExceeded
from twoclosure.families import dihedral_group, quaternion_group, symmetric_group
from twoclosure.constructions import coset_action, cyclic_group
from twoclosure.groupspec import materialize
from twoclosure.structure import (
    TAG_CYCLIC,
    TAG_ODD_GQ,
    TAG_OTHER,
    center,
    centralizer,
    core,
    enumerate_subgroups,
    fitting_subgroup,
    is_nilpotent_by_lcs,
    is_nilpotent_by_sylows,
    prime_divisors,
    sylow_and_o_p,
)

from strategies import groups

S3 = symmetric_group(3)
S4 = symmetric_group(4)
Q8 = quaternion_group(8)
D4 = dihedral_group(4)


def sub(G, *cycles):
    return PermGroup.from_cycles(G.degree, *cycles)


@pytest.mark.parametrize("group, subgroups, classes", [(S3, 6, 4), (cyclic_group(4), 3, 3), (Q8, 6, 6)])
def test_enumerate_subgroups(group, subgroups, classes):
    lat = enumerate_subgroups(group)
    assert len(lat.all_subgroups()) == subgroups
    assert len(lat.classes) == classes


def test_enumerate_subgroups_cap():
    with pytest.raises(OrderCapExceeded):
        enumerate_subgroups(symmetric_group(7))


def test_q8_subgroup_orders():
    orders = sorted(H.order() for H in enumerate_subgroups(Q8).all_subgroups())
    assert orders == [1, 2, 4, 4, 4, 8]


def test_core_examples():
    assert core(S3, sub(S3, "(0 1)")).order() == 1
    A3 = sub(S3, "(0 1 2)")
    assert core(S3, A3).equals(A3)
    assert core(D4, sub(D4, "(0 2)")).order() == 1
    with pytest.raises(NotASubgroup):
        core(sub(S4, "(0 1 2 3)"), sub(S4, "(0 1)"))


def test_center_and_centralizer():
    assert center(S3).order() == 1
    assert center(Q8).order() == 2
    rot = sub(D4, "(0 1 2 3)")
    assert centralizer(D4, rot).equals(rot)


def test_fitting_examples():
    assert fitting_subgroup(S3).order() == 3
    F = fitting_subgroup(S4)
    assert F.order() == 4 and F.equals(sub(S4, "(0 1)(2 3)", "(0 2)(1 3)"))
    assert fitting_subgroup(D4).equals(D4)


def test_sylow_and_o_p():
    P, O = sylow_and_o_p(S4, 2)
    assert P.order() == 8 and O.order() == 4
    P, O = sylow_and_o_p(S4, 3)
    assert P.order() == 3 and O.order() == 1
    with pytest.raises(NotPrime):
        sylow_and_o_p(S4, 4)


@pytest.mark.parametrize(
    "spec, tag",
    [
        ("quaternion:8", TAG_ODD_GQ),
        ("cyclic:6", TAG_CYCLIC),
        ("cyclic:3 x quaternion:8 @product", TAG_ODD_GQ),
        ("quaternion:16", TAG_ODD_GQ),
        ("sym:3", TAG_OTHER),
        ("elab:2:2", TAG_OTHER),
    ],
)
def test_classification_tag(spec, tag):
    assert structure_report(materialize(spec)).classification_tag == tag


def test_q8_report():
    r = structure_report(Q8)
    assert r.is_generalized_quaternion and r.order == 8 and r.center_order == 2


@given(groups(max_degree=6))
def test_report_implications(g):
    r = structure_report(g)
    assert not r.is_cyclic or r.is_abelian
    assert not r.is_abelian or r.is_nilpotent
    assert not r.is_nilpotent or r.is_soluble
    assert (r.classification_tag == TAG_CYCLIC) == r.is_cyclic
    if r.is_generalized_quaternion:
        assert r.order >= 8 and r.order & (r.order - 1) == 0
    assert is_nilpotent_by_lcs(g) == is_nilpotent_by_sylows(g) == r.is_nilpotent


@given(groups(max_degree=5))
def test_lagrange_and_core_kernel(g):
    lat = enumerate_subgroups(g)
    for H in lat.all_subgroups():
        assert g.order() % H.order() == 0
    for c in lat.classes:
        H = c.representative
        act = coset_action(g, H)
        kernel_order = g.order() // act.group.order()
        K = core(g, H)
        assert K.order() == kernel_order
        assert all(act.image(k).is_identity() for k in K.generators)


@given(groups(max_degree=6))
def test_fitting_contains_normal_nilpotent(g):
    F = fitting_subgroup(g)
    assert is_nilpotent_by_lcs(F) and g.normalizes(F)
    if g.order() <= 200:
        for N in enumerate_subgroups(g).normal_subgroups():
            if is_nilpotent_by_lcs(N):
                assert N.is_subgroup_of(F)


def test_prime_divisors():
    assert prime_divisors(360) == [2, 3, 5]
    assert prime_divisors(1) == []
