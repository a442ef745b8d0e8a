import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoclosure import PermGroup, is_2closed, t2c_search, theorem_classifier, two_closure
from twoclosure.catalog import load_catalog
from twoclosure.constructions import cyclic_group, disjoint_direct_product
from twoclosure.errors import ContradictionWithTheorem, UnfaithfulSpec
from twoclosure.families import alternating_group, quaternion_group, symmetric_group
from twoclosure.groupspec import materialize
from twoclosure.structure import SubgroupLattice
from twoclosure.t2c import (
    NO_FAILURE,
    NOT_T2C,
    NOT_TOTALLY_CLOSED,
    OUT_OF_SCOPE,
    T2C,
    Prediction,
    RepBuilder,
    RepSpec,
    T2CVerdict,
    faithful_rep_specs,
    fitting_tag,
    iter_rep_specs,
    lift_witness,
    rep_action,
    theorem_d_lookup,
    theorem_d_table,
)

GROUPS = load_catalog("groups_le24")
SMALL = [e for e in GROUPS if 1 < e.order <= 12]
V4 = materialize("elab:2:2")
S3 = symmetric_group(3)


def shapes(G, bound):
    """Each spec as a sorted tuple of (stabilizer order, multiplicity)."""
    lat = SubgroupLattice(G)
    return [tuple(sorted((lat.classes[i].order, m) for i, m in s.stabilizers)) for s in iter_rep_specs(G, bound, lat)]


def oracle_specs(G, bound):
    """Independent count: multisets of proper subgroup classes, trivial core intersection."""
    lat = SubgroupLattice(G)
    n = G.order()
    proper = [i for i, c in enumerate(lat.classes) if c.order < n]
    everything = (1 << lat.table.n) - 1
    out = 0
    smallest = min(n // lat.classes[i].order for i in proper)
    for d in range(1, bound + 1):
        for k in range(1, d // smallest + 1):
            for combo in itertools.combinations_with_replacement(proper, k):
                if sum(n // lat.classes[i].order for i in combo) != d:
                    continue
                core = everything
                for i in combo:
                    core &= lat.classes[i].core_mask
                if core == 1 << lat.table.one:
                    out += 1
    return out


def test_c3_specs():
    specs = faithful_rep_specs(cyclic_group(3), 6)
    assert [(s.degree, s.stabilizers) for s in specs] == [(3, ((specs[0].stabilizers[0][0], 1),)), (6, ((specs[0].stabilizers[0][0], 2),))]


def test_v4_specs():
    got = Counter(shapes(V4, 6))
    assert got[((1, 1),)] == 1
    assert got[((2, 1), (2, 1))] == 3
    assert got[((2, 1), (2, 1), (2, 1))] == 1
    assert got[((1, 1), (2, 1))] == 3
    assert got[((2, 1), (2, 2))] == 6
    assert sum(got.values()) == oracle_specs(V4, 6)


def test_s3_specs():
    got = shapes(S3, 5)
    assert ((2, 1),) in got and ((2, 1), (3, 1)) in got


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_enumeration_complete_and_faithful(entry):
    G = entry.group
    bound = min(2 * G.order(), 12)
    specs = faithful_rep_specs(G, bound)
    assert len(specs) == oracle_specs(G, bound)
    assert len({s.stabilizers for s in specs}) == len(specs)
    assert [s.degree for s in specs] == sorted(s.degree for s in specs)
    builder = RepBuilder(specs[0].lattice) if specs else None
    for s in specs:
        A = builder.action(s)
        assert A.order() == G.order() and A.degree == s.degree


def test_rep_action_examples():
    lat = SubgroupLattice(S3)
    a3 = next(i for i, c in enumerate(lat.classes) if c.order == 3)
    tr = next(i for i, c in enumerate(lat.classes) if c.order == 2)
    A = rep_action(RepSpec(lat, ((tr, 1), (a3, 1)), 5))
    assert A.order() == 6 and sorted(map(len, A.orbits())) == [2, 3]
    assert two_closure(A).order == 12
    one = next(i for i, c in enumerate(lat.classes) if c.order == 1)
    R = rep_action(RepSpec(lat, ((one, 1),), 6))
    assert R.is_transitive() and R.point_stabilizer(0).order() == 1


def test_rep_action_v4_three_cosets():
    lat = SubgroupLattice(V4)
    twos = [(i, 1) for i, c in enumerate(lat.classes) if c.order == 2]
    A = rep_action(RepSpec(lat, tuple(twos), 6))
    assert A.order() == 4 and two_closure(A).order == 8


def test_rep_action_unfaithful():
    lat = SubgroupLattice(S3)
    a3 = next(i for i, c in enumerate(lat.classes) if c.order == 3)
    with pytest.raises(UnfaithfulSpec):
        rep_action(RepSpec(lat, ((a3, 1),), 2))


@pytest.mark.parametrize(
    "spec, verdict, rule",
    [("sym:3", NOT_T2C, "Theorem A"), ("quaternion:8", T2C, "Theorem A"), ("elab:2:2", NOT_T2C, "Theorem A"),
     ("cyclic:12", T2C, "Theorem A"), ("alt:5", NOT_T2C, "Theorem D"),
     ("alt:5 x elab:2:2 @disjoint", NOT_T2C, "Theorem 1"), ("sym:5", NOT_T2C, "Theorem D")],
)
def test_classifier(spec, verdict, rule):
    p = theorem_classifier(materialize(spec))
    assert (p.verdict, p.rule) == (verdict, rule)


def test_classifier_confirmations():
    assert "Theorem 2" in theorem_classifier(quaternion_group(8)).confirmations
    assert "Theorem 1" in theorem_classifier(V4).confirmations


def test_classifier_out_of_scope():
    # SL(2,5) style: insoluble with a nontrivial Fitting subgroup
    G = materialize("alt:5 x cyclic:3 @disjoint")
    assert theorem_classifier(G).verdict == OUT_OF_SCOPE


def test_theorem_d_table():
    table = theorem_d_table()
    assert len(table) == 47
    assert theorem_d_lookup(["J1"]) and theorem_d_lookup(["J1", "J3", "J4", "Th", "Ly"])
    assert not theorem_d_lookup(["Th", "M"])
    assert not theorem_d_lookup(["J1", "J1"])
    assert theorem_classifier(None, factor_names=["M11"]).verdict == NOT_T2C


def test_search_s3():
    v = t2c_search(S3, max_degree=6)
    assert v.outcome == NOT_TOTALLY_CLOSED and v.witness_degree == 5 and v.closure_order == 12
    assert str(v.prediction) == "Theorem A: NotT2C"


def test_search_v4():
    v = t2c_search(V4, max_degree=6)
    assert v.outcome == NOT_TOTALLY_CLOSED and v.witness_degree == 6 and v.closure_order == 8


def test_search_c5():
    v = t2c_search(cyclic_group(5), max_degree=10)
    assert v.outcome == NO_FAILURE and v.bound == 10 and v.prediction.verdict == T2C
    assert v.to_dict()["outcome"] == NO_FAILURE


def test_verdict_rules():
    with pytest.raises(ValueError):
        T2CVerdict("x", NOT_TOTALLY_CLOSED, 5, Prediction(NOT_T2C, "Theorem A"))
    lat = SubgroupLattice(S3)
    spec = next(s for s in iter_rep_specs(S3, 5, lat) if s.degree == 5)
    A = rep_action(spec)
    with pytest.raises(ContradictionWithTheorem):
        T2CVerdict("S3", NOT_TOTALLY_CLOSED, 5, Prediction(T2C, "made up"), witness=spec, witness_action=A)


@pytest.mark.parametrize("spec", ["sym:3", "elab:2:2", "cyclic:4", "dihedral:4", "quaternion:8", "cyclic:6",
                                  "alt:4", "dihedral:5", "cyclic:2 x cyclic:4 @product"])
def test_reduction_matches_full_search(spec):
    G = materialize(spec)
    bound = min(2 * G.order(), 12)
    fast = t2c_search(G, max_degree=bound)
    slow = t2c_search(G, max_degree=bound, full=True)
    assert fast.outcome == slow.outcome and fast.witness_degree == slow.witness_degree
    # every spec with repeats is 2-closed exactly when its reduced spec is
    lat = SubgroupLattice(G)
    builder = RepBuilder(lat)
    for s in iter_rep_specs(G, bound, lat):
        if all(m == 1 for _, m in s.stabilizers):
            continue
        reduced = tuple((i, 1) for i, _ in s.stabilizers)
        deg = sum(G.order() // lat.classes[i].order for i, _ in reduced)
        assert is_2closed(builder.action(s)) == is_2closed(builder.action(RepSpec(lat, reduced, deg)))


@settings(max_examples=15)
@given(st.sampled_from([e for e in GROUPS if 1 < e.order <= 8]), st.integers(0, 6))
def test_monotone_in_bound(entry, extra):
    G = entry.group
    v = t2c_search(G, max_degree=2 * G.order())
    if v.witness_degree is not None:
        w = t2c_search(G, max_degree=v.witness_degree + extra)
        assert w.witness_degree is not None and w.witness_degree <= v.witness_degree


@pytest.mark.parametrize("factor, cofactor", [("sym:3", "cyclic:5"), ("elab:2:2", "cyclic:3"), ("alt:4", "cyclic:2")])
def test_direct_factor_heredity(factor, cofactor):
    F, K = materialize(factor), materialize(cofactor)
    v = t2c_search(F)
    assert v.outcome == NOT_TOTALLY_CLOSED
    lifted = lift_witness(v.witness_action, K)
    assert lifted.order() == F.order() * K.order() and not is_2closed(lifted)
    product = disjoint_direct_product(F, K)
    assert theorem_classifier(product).verdict == NOT_T2C
    assert t2c_search(product, max_degree=lifted.degree).outcome == NOT_TOTALLY_CLOSED


@pytest.mark.parametrize("entry", GROUPS, ids=lambda e: e.name)
def test_theorem_b_fitting_shape(entry):
    if theorem_classifier(entry.group).verdict == T2C:
        assert fitting_tag(entry.group) in ("cyclic", "odd-cyclic-times-generalized-quaternion")
