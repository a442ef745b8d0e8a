"""Faithful representations of an abstract group and the totally-2-closed search.

A faithful action up to permutation isomorphism is a multiset of subgroup
conjugacy classes whose cores intersect trivially; the action is the
disjoint union of the corresponding coset spaces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from twoclosure.closure import two_closure
from twoclosure.config import NODE_BUDGET, SUBGROUP_CAP
from twoclosure.constructions import coset_action, disjoint_direct_product
from twoclosure.errors import ContradictionWithTheorem, UnfaithfulSpec, VerificationFailure
from twoclosure.groups import PermGroup
from twoclosure.perms import Permutation
from twoclosure.structure import (
    TAG_CYCLIC,
    TAG_ODD_GQ,
    SubgroupLattice,
    fitting_subgroup,
    structure_report,
)

log = logging.getLogger(__name__)

T2C = "T2C"
NOT_T2C = "NotT2C"
OUT_OF_SCOPE = "OutOfTheoremScope"

NOT_TOTALLY_CLOSED = "not_totally_2closed"
NO_FAILURE = "no_failure_up_to_degree"


# -- representation specs ----------------------------------------------------


@dataclass(frozen=True)
class RepSpec:
    """Stabilizer multiset: ((class index, multiplicity), ...) into `lattice.classes`."""

    lattice: SubgroupLattice = field(repr=False, compare=False, hash=False)
    stabilizers: tuple[tuple[int, int], ...]
    degree: int

    @property
    def group(self) -> PermGroup:
        return self.lattice.group

    def blocks(self) -> list[int]:
        """Class index for each orbit, in action order."""
        return [i for i, mult in self.stabilizers for _ in range(mult)]

    def describe(self) -> list[dict]:
        out = []
        for i, mult in self.stabilizers:
            c = self.lattice.classes[i]
            out.append(
                {
                    "class": i,
                    "subgroup_order": c.order,
                    "index": self.group.order() // c.order,
                    "multiplicity": mult,
                    "generators": [str(g) for g in c.representative.generators],
                }
            )
        return out

    def to_dict(self) -> dict:
        return {"degree": self.degree, "stabilizers": self.describe()}


def _class_indices(lattice: SubgroupLattice, include_whole_group: bool) -> list[int]:
    n = lattice.group.order()
    return [i for i, c in enumerate(lattice.classes) if include_whole_group or c.order < n]


def iter_rep_specs(
    G: PermGroup,
    max_degree: int,
    lattice: SubgroupLattice | None = None,
    include_whole_group: bool = False,
) -> Iterator[RepSpec]:
    """Faithful specs in ascending degree; within a degree, in class order.

    Fixed points (the whole group as a stabilizer) are left out by default:
    they never change whether the action is 2-closed.
    """
    if lattice is None:
        lattice = SubgroupLattice(G, SUBGROUP_CAP)
    t = lattice.table
    trivial = 1 << t.one
    everything = (1 << t.n) - 1
    n = G.order()
    idx = _class_indices(lattice, include_whole_group)
    sizes = [n // lattice.classes[i].order for i in idx]
    cores = [lattice.classes[i].core_mask for i in idx]

    def rec(pos, remaining, core, chosen):
        if remaining == 0:
            if core == trivial:
                yield tuple(chosen)
            return
        if pos == len(idx):
            return
        size = sizes[pos]
        # take `mult` copies of class idx[pos]
        for mult in range(remaining // size, -1, -1):
            if mult:
                chosen.append((idx[pos], mult))
                yield from rec(pos + 1, remaining - mult * size, core & cores[pos], chosen)
                chosen.pop()
            else:
                yield from rec(pos + 1, remaining, core, chosen)

    for d in range(1, max_degree + 1):
        for stab in rec(0, d, everything, []):
            yield RepSpec(lattice, stab, d)


def faithful_rep_specs(G: PermGroup, max_degree: int, **kw) -> list[RepSpec]:
    return list(iter_rep_specs(G, max_degree, **kw))


class RepBuilder:
    """Builds actions for specs, caching one coset action per class."""

    def __init__(self, lattice: SubgroupLattice):
        self.lattice = lattice
        self._cosets = {}

    def coset(self, i):
        if i not in self._cosets:
            G = self.lattice.group
            self._cosets[i] = coset_action(G, self.lattice.classes[i].representative)
        return self._cosets[i]

    def images(self, spec: RepSpec) -> list[Permutation]:
        """Images of G's generators in the spec's action."""
        G = self.lattice.group
        parts = [self.coset(i).generator_images() for i in spec.blocks()]
        out = []
        for j in range(len(G.generators)):
            imgs = []
            offset = 0
            for part in parts:
                imgs.extend(offset + a for a in part[j].images)
                offset += part[j].degree
            out.append(Permutation._trusted(imgs))
        return out

    def action(self, spec: RepSpec, check: bool = True) -> PermGroup:
        A = PermGroup(spec.degree, self.images(spec))
        if check and A.order() != self.lattice.group.order():
            raise UnfaithfulSpec(f"spec {spec.stabilizers} is not faithful")
        return A


def rep_action(spec: RepSpec, check: bool = True) -> PermGroup:
    return RepBuilder(spec.lattice).action(spec, check)


# -- theorem side -----------------------------------------------------------------

# Simple groups admissible as factors of a totally 2-closed group with trivial
# Fitting subgroup: all factors from one of these two lists, pairwise distinct.
THEOREM_D_FAMILIES = (
    frozenset({"J1", "J3", "J4", "Th", "Ly"}),
    frozenset({"J1", "J3", "J4", "Ly", "M"}),
)
J1_ORDER = 175560


def theorem_d_table() -> list[frozenset[str]]:
    """All admissible factor sets, sorted by size then name."""
    sets = set()
    for fam in THEOREM_D_FAMILIES:
        names = sorted(fam)
        for r in range(1, len(names) + 1):
            for combo in combinations(names, r):
                sets.add(frozenset(combo))
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def theorem_d_lookup(factors) -> bool:
    """True if the direct product of the named simple groups is totally 2-closed."""
    names = list(factors)
    if len(set(names)) != len(names):
        return False
    return frozenset(names) in set(theorem_d_table())


@dataclass(frozen=True)
class Prediction:
    verdict: str
    rule: str
    confirmations: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.rule}: {self.verdict}"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "rule": self.rule, "confirmations": list(self.confirmations)}


def theorem_classifier(G: PermGroup, factor_names=None) -> Prediction:
    """Decide total 2-closedness from structure alone, where a theorem applies.

    `factor_names` names the simple direct factors of a group with trivial
    Fitting subgroup; groups too large to build are handled only that way.
    """
    if factor_names is not None:
        return Prediction(T2C if theorem_d_lookup(factor_names) else NOT_T2C, "Theorem D")
    r = structure_report(G)
    extra = []
    if not r.center_is_cyclic:
        extra.append("Theorem 1")
    if r.is_soluble:
        good = r.classification_tag in (TAG_CYCLIC, TAG_ODD_GQ)
        if r.is_nilpotent:
            extra.append("Theorem 2")
        if r.order % 2 == 0 and r.sylow2_is_cyclic:
            extra.append("Corollary cyclic Sylow 2")
        return Prediction(T2C if good else NOT_T2C, "Theorem A", tuple(extra))
    if not r.center_is_cyclic:
        return Prediction(NOT_T2C, "Theorem 1")
    if r.fitting_order == 1:
        # every admissible product has a factor at least as large as J1
        if r.order < J1_ORDER:
            return Prediction(NOT_T2C, "Theorem D")
        return Prediction(OUT_OF_SCOPE, "Theorem D (unnamed group)")
    return Prediction(OUT_OF_SCOPE, "insoluble with nontrivial Fitting subgroup")


# -- search -----------------------------------------------------------------------


@dataclass
class T2CVerdict:
    group_id: str
    outcome: str
    bound: int
    prediction: Prediction
    witness: RepSpec | None = None
    witness_action: PermGroup | None = None
    closure_order: int | None = None
    specs_checked: int = 0
    specs_inherited: int = 0

    def __post_init__(self):
        if self.outcome == NOT_TOTALLY_CLOSED:
            if self.witness is None or self.witness_action is None:
                raise ValueError("a failure verdict needs a witness")
            res = two_closure(self.witness_action, max_degree=max(self.witness.degree, 1))
            if res.equals_input:
                raise VerificationFailure("witness action is 2-closed")
            self.closure_order = res.order
            if self.prediction.verdict == T2C:
                raise ContradictionWithTheorem(
                    f"{self.group_id}: predicted totally 2-closed ({self.prediction.rule}) "
                    f"but the degree-{self.witness.degree} action is not 2-closed"
                )

    @property
    def witness_degree(self) -> int | None:
        return self.witness.degree if self.witness is not None else None

    def to_dict(self) -> dict:
        d = {
            "group": self.group_id,
            "outcome": self.outcome,
            "max_degree": self.bound,
            "specs_checked": self.specs_checked,
            "specs_inherited": self.specs_inherited,
            "theorem": str(self.prediction),
            "prediction": self.prediction.to_dict(),
        }
        if self.witness is not None:
            d["witness_degree"] = self.witness.degree
            d["witness"] = self.witness.to_dict()
            d["witness_generators"] = [str(g) for g in self.witness_action.generators]
            d["closure_order"] = self.closure_order
        return d


def default_max_degree(G: PermGroup) -> int:
    return max(2 * G.order(), 16)


def t2c_search(
    G: PermGroup,
    max_degree: int | None = None,
    group_id: str | None = None,
    node_budget: int = NODE_BUDGET,
    lattice: SubgroupLattice | None = None,
    prediction: Prediction | None = None,
    full: bool = False,
) -> T2CVerdict:
    """Check every faithful action up to `max_degree`; stop at the first that is not 2-closed.

    A spec that repeats a stabilizer class has the same verdict as the spec
    with each class taken once: the closure keeps the orbital matching the
    two copies, so dropping one copy is an isomorphism of closures.  That
    smaller spec comes earlier in the order, so by default repeated specs
    inherit its (2-closed) verdict without a new search.  `full=True` runs
    the closure on every spec anyway.
    """
    if max_degree is None:
        max_degree = default_max_degree(G)
    if lattice is None:
        lattice = SubgroupLattice(G, SUBGROUP_CAP)
    if prediction is None:
        prediction = theorem_classifier(G)
    gid = group_id or G.name or f"group of order {G.order()}"
    builder = RepBuilder(lattice)
    checked = inherited = 0
    for spec in iter_rep_specs(G, max_degree, lattice):
        if not full and any(mult > 1 for _, mult in spec.stabilizers):
            inherited += 1
            continue
        A = builder.action(spec, check=False)
        checked += 1
        res = two_closure(A, max_degree=spec.degree, node_budget=node_budget)
        if res.extra["input_order"] != G.order():
            raise UnfaithfulSpec(f"spec {spec.stabilizers} is not faithful")
        if not res.equals_input:
            log.info("%s: degree-%d action %s is not 2-closed", gid, spec.degree, spec.stabilizers)
            return T2CVerdict(
                gid, NOT_TOTALLY_CLOSED, max_degree, prediction,
                witness=spec, witness_action=A, specs_checked=checked, specs_inherited=inherited,
            )
    return T2CVerdict(
        gid, NO_FAILURE, max_degree, prediction, specs_checked=checked, specs_inherited=inherited
    )


def fitting_tag(G: PermGroup) -> str:
    return structure_report(fitting_subgroup(G)).classification_tag


def lift_witness(witness_action: PermGroup, cofactor_action: PermGroup) -> PermGroup:
    """Factor witness on its own points, a faithful cofactor action on the rest."""
    return disjoint_direct_product(witness_action, cofactor_action)
