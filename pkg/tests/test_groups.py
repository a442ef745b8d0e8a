import random

import pytest
from hypothesis import given

from twoclosure import PermGroup, Permutation
from twoclosure.chain import mul
from twoclosure.errors import PointOutOfRange
from twoclosure.groups import naive_closure

from strategies import groups


def G(n, *cycles):
    return PermGroup.from_cycles(n, *cycles)


@pytest.mark.parametrize(
    "group, order",
    [
        (G(4, "(0 1 2 3)"), 4),
        (G(3, "(0 1)", "(0 1 2)"), 6),
        (G(5, "(0 1 2 3 4)", "(1 2 4 3)"), 20),
        (G(8, "(0 1 2 3 4 5 6 7)", "(0 1)"), 40320),
        (PermGroup.trivial(5), 1),
    ],
)
def test_order(group, order):
    assert group.order() == order


def test_orbit_examples():
    assert G(3, "(0 1 2)").orbit(0) == {0, 1, 2}
    assert PermGroup.trivial(4).orbit(2) == {2}
    assert G(5, "(0 1)(2 3 4)").orbit(2) == {2, 3, 4}
    with pytest.raises(PointOutOfRange):
        G(3, "(0 1 2)").orbit(3)


def test_point_stabilizer_examples():
    S = G(3, "(0 1)", "(0 1 2)").point_stabilizer(0)
    assert S.order() == 2 and Permutation((0, 2, 1)) in S
    assert G(4, "(0 1 2 3)").point_stabilizer(0).order() == 1
    H = G(5, "(0 1 2)", "(0 1)(3 4)").point_stabilizer(3)
    assert H.equals(G(5, "(0 1 2)"))
    with pytest.raises(PointOutOfRange):
        H.point_stabilizer(7)


@given(groups())
def test_chain_matches_naive_closure(g):
    elements = naive_closure(g.degree, [x.images for x in g.generators])
    assert g.order() == len(elements)
    assert set(g.raw_elements()) == elements
    assert all(x in g for x in g.generators)


@given(groups())
def test_orbit_stabilizer(g):
    for a in range(g.degree):
        S = g.point_stabilizer(a)
        assert g.order() == S.order() * len(g.orbit(a))
        assert all(x(a) == a for x in S.generators)


@given(groups(max_degree=6))
def test_membership_against_enumeration(g):
    rng = random.Random(g.degree)
    elements = set(g.raw_elements())
    for _ in range(100):
        img = list(range(g.degree))
        rng.shuffle(img)
        assert (Permutation(tuple(img)) in g) == (tuple(img) in elements)


@given(groups(max_degree=6))
def test_random_products_sift(g):
    rng = random.Random(0)
    gens = [x.images for x in g.generators] or [tuple(range(g.degree))]
    for _ in range(20):
        w = gens[rng.randrange(len(gens))]
        for _ in range(rng.randrange(3)):
            w = mul(w, gens[rng.randrange(len(gens))])
        assert g.chain.contains(w)
    from math import factorial

    assert factorial(g.degree) % g.order() == 0


def test_orbits_and_transitivity():
    g = G(6, "(0 1)(2 3 4)")
    assert g.orbits() == [[0, 1], [2, 3, 4], [5]]
    assert not g.is_transitive()
    assert G(4, "(0 1 2 3)").is_transitive()


def test_conjugate_and_restrict():
    g = G(5, "(0 1 2)", "(0 1)(3 4)")
    x = Permutation((4, 3, 2, 1, 0))
    h = g.conjugate(x)
    assert h.order() == 12 // 2
    assert h.orbits() == [[0, 1], [2, 3, 4]]
    assert g.restrict([0, 1, 2]).order() == 6


def test_regular_representation():
    g = G(4, "(0 1)", "(2 3)")
    r = g.regular_representation()
    assert r.degree == 4 and r.order() == 4
    assert all(len(r.point_stabilizer(a).generators) == 0 for a in range(4))
