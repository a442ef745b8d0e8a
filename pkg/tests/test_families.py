import pytest

from twoclosure.errors import BadParameter
from twoclosure.families import (
    abelian_by_cyclic,
    alternating_group,
    dihedral_group,
    elementary_abelian,
    metacyclic_group,
    quaternion_group,
    sl2_3,
    symmetric_group,
)
from twoclosure.structure import involution_count, is_cyclic, is_generalized_quaternion, structure_report


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_symmetric_and_alternating(n):
    from math import factorial

    assert symmetric_group(n).order() == factorial(n)
    if n >= 2:
        assert alternating_group(n).order() == factorial(n) // 2


@pytest.mark.parametrize("n", [3, 4, 5, 6, 12])
def test_dihedral(n):
    D = dihedral_group(n)
    assert D.degree == n and D.order() == 2 * n and D.is_transitive()


@pytest.mark.parametrize("order", [8, 16, 32])
def test_quaternion(order):
    Q = quaternion_group(order)
    assert Q.order() == order == Q.degree
    assert is_generalized_quaternion(Q) and involution_count(Q) == 1


@pytest.mark.parametrize("order", [4, 12, 24, 6])
def test_quaternion_rejects(order):
    with pytest.raises(BadParameter):
        quaternion_group(order)


def test_elementary_abelian():
    E = elementary_abelian(3, 2)
    assert E.order() == 9 and E.is_abelian() and not is_cyclic(E)
    with pytest.raises(BadParameter):
        elementary_abelian(6, 1)


def test_metacyclic_dic3():
    G = metacyclic_group(6, 2, 5, 3)
    assert G.order() == 12 and involution_count(G) == 1 and not G.is_abelian()


def test_abelian_by_cyclic():
    # C3^2 : C2 with inversion
    G = abelian_by_cyclic([3, 3], 2, [[2, 0], [0, 2]])
    assert G.order() == 18 and not G.is_abelian()
    with pytest.raises(BadParameter):
        abelian_by_cyclic([3, 3], 2, [[1, 1], [0, 1]])


def test_sl2_3():
    G = sl2_3()
    r = structure_report(G)
    assert r.order == 24 and r.center_order == 2 and r.is_soluble and not r.is_nilpotent
    assert involution_count(G) == 1
