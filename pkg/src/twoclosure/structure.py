"""Subgroup lattice and the structural predicates used by the classifier.

Element-level algorithms: everything here enumerates the group, which is
fine at the sizes the caps allow and keeps each routine easy to audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from twoclosure import chain as ch
from twoclosure.config import ELEMENT_CAP, SUBGROUP_CAP
from twoclosure.errors import NotASubgroup, NotPrime, OrderCapExceeded
from twoclosure.groups import PermGroup, group_from_elements
from twoclosure.perms import Permutation


def _conjugate_set(elems, g):
    gi = ch.inv(g)
    return {ch.mul(ch.mul(gi, e), g) for e in elems}


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest subgroup of H normal in G."""
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")
    current = set(H.raw_elements())
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            nxt = current & _conjugate_set(current, g.images)
            if len(nxt) < len(current):
                current = nxt
                changed = True
    return group_from_elements(G.degree, current)


def centralizer(G: PermGroup, H: PermGroup, cap: int = ELEMENT_CAP) -> PermGroup:
    hs = [h.images for h in H.generators]
    keep = [g for g in G.raw_elements(cap) if all(ch.mul(g, h) == ch.mul(h, g) for h in hs)]
    return group_from_elements(G.degree, keep)


def center(G: PermGroup, cap: int = ELEMENT_CAP) -> PermGroup:
    return centralizer(G, G, cap)


def element_order(g) -> int:
    return Permutation._trusted(g).order()


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _is_power_of(n: int, p: int) -> bool:
    return _p_part(n, p) == n


def sylow_subgroup(G: PermGroup, p: int, cap: int = ELEMENT_CAP) -> PermGroup:
    """A Sylow p-subgroup, grown through normalizers of p-subgroups.

    While P is not Sylow, N_G(P)/P has an element of order p; some p-element
    of N_G(P) outside P therefore exists and extends P.
    """
    if not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")
    target = _p_part(G.order(), p)
    elems = G.raw_elements(cap)
    p_elems = [g for g in elems if _is_power_of(element_order(g), p)]
    P = PermGroup.trivial(G.degree)
    while P.order() < target:
        pset = set(P.raw_elements())
        for g in p_elems:
            if g in pset:
                continue
            if all(ch.mul(ch.mul(ch.inv(g), h.images), g) in pset for h in P.generators):
                P = PermGroup(G.degree, list(P.generators) + [Permutation._trusted(g)])
                break
        else:  # pragma: no cover - excluded by Sylow's theorem
            raise RuntimeError("Sylow extension failed")
    return P


def o_p(G: PermGroup, p: int, cap: int = ELEMENT_CAP) -> PermGroup:
    """Largest normal p-subgroup: the core of a Sylow p-subgroup."""
    return core(G, sylow_subgroup(G, p, cap))


def sylow_and_o_p(G: PermGroup, p: int, cap: int = ELEMENT_CAP):
    P = sylow_subgroup(G, p, cap)
    return P, core(G, P)


def prime_divisors(n: int) -> list[int]:
    return sorted(sympy.primefactors(n))


def fitting_subgroup(G: PermGroup, cap: int = ELEMENT_CAP) -> PermGroup:
    gens = []
    for p in prime_divisors(G.order()):
        gens.extend(o_p(G, p, cap).generators)
    return PermGroup(G.degree, gens)


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        D = series[-1].derived_subgroup()
        if D.order() == series[-1].order():
            return series
        series.append(D)
        if D.order() == 1:
            return series


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        cur = series[-1]
        comms = [a.inverse() * g.inverse() * a * g for a in cur.generators for g in G.generators]
        nxt = G.normal_closure(comms)
        if nxt.order() == cur.order():
            return series
        series.append(nxt)
        if nxt.order() == 1:
            return series


def is_soluble(G: PermGroup) -> bool:
    return derived_series(G)[-1].order() == 1


def is_nilpotent_by_sylows(G: PermGroup, cap: int = ELEMENT_CAP) -> bool:
    for p in prime_divisors(G.order()):
        P = sylow_subgroup(G, p, cap)
        if not G.normalizes(P):
            return False
    return True


def is_nilpotent_by_lcs(G: PermGroup) -> bool:
    return lower_central_series(G)[-1].order() == 1


def is_cyclic(G: PermGroup, cap: int = ELEMENT_CAP) -> bool:
    n = G.order()
    if n == 1:
        return True
    if not G.is_abelian():
        return False
    return any(element_order(g) == n for g in G.raw_elements(cap))


def involution_count(G: PermGroup, cap: int = ELEMENT_CAP) -> int:
    return sum(1 for g in G.raw_elements(cap) if element_order(g) == 2)


def is_generalized_quaternion(G: PermGroup, cap: int = ELEMENT_CAP) -> bool:
    n = G.order()
    return (
        n >= 8
        and _is_power_of(n, 2)
        and not is_cyclic(G, cap)
        and involution_count(G, cap) == 1
    )


def odd_part_subgroup(G: PermGroup, cap: int = ELEMENT_CAP) -> PermGroup | None:
    """The set of odd-order elements, if it is closed under products."""
    odd = [g for g in G.raw_elements(cap) if element_order(g) % 2 == 1]
    oset = set(odd)
    for a in odd:
        for b in odd:
            if ch.mul(a, b) not in oset:
                return None
    return group_from_elements(G.degree, odd)


# -- subgroup lattice --------------------------------------------------------


class _Table:
    """Multiplication table of a small group, subsets as bitmasks."""

    def __init__(self, G: PermGroup, cap: int):
        if G.order() > cap:
            raise OrderCapExceeded(f"|G| = {G.order()} exceeds subgroup-enumeration cap {cap}")
        self.elems = G.raw_elements(max(cap, ELEMENT_CAP))
        self.index = {e: i for i, e in enumerate(self.elems)}
        n = len(self.elems)
        idx = self.index
        self.mul = [[idx[ch.mul(a, b)] for b in self.elems] for a in self.elems]
        self.inv = [idx[ch.inv(a)] for a in self.elems]
        self.one = idx[ch.identity(G.degree)]
        self.n = n

    def closure(self, mask: int) -> int:
        """Subgroup generated by the elements in `mask`."""
        gens = [i for i in range(self.n) if mask >> i & 1]
        members = [self.one]
        seen = 1 << self.one
        for x in members:
            row = self.mul[x]
            for g in gens:
                y = row[g]
                if not seen >> y & 1:
                    seen |= 1 << y
                    members.append(y)
        return seen

    def conjugate(self, mask: int, g: int) -> int:
        gi = self.inv[g]
        out = 0
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            out |= 1 << self.mul[self.mul[gi][i]][g]
            m ^= low
        return out

    def members(self, mask: int) -> list[int]:
        return [i for i in range(self.n) if mask >> i & 1]

    def group(self, degree: int, mask: int) -> PermGroup:
        return group_from_elements(degree, [self.elems[i] for i in self.members(mask)])


@dataclass
class SubgroupClass:
    """A conjugacy class of subgroups with a chosen representative."""

    representative: PermGroup
    order: int
    conjugates: list[PermGroup]
    masks: list[int] = field(repr=False)
    core_mask: int = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.conjugates)

    @property
    def is_normal(self) -> bool:
        return len(self.conjugates) == 1


class SubgroupLattice:
    def __init__(self, G: PermGroup, cap: int = SUBGROUP_CAP):
        self.group = G
        self.table = _Table(G, cap)
        self.classes = self._build()

    def _build(self) -> list[SubgroupClass]:
        t = self.table
        cyclic = set()
        for i in range(t.n):
            cyclic.add(t.closure(1 << i))
        found = set(cyclic)
        layer = set(cyclic)
        while layer:
            nxt = set()
            for S in layer:
                for C in cyclic:
                    if C & ~S:
                        J = t.closure(S | C)
                        if J not in found:
                            found.add(J)
                            nxt.add(J)
            layer = nxt
        # classes under conjugation; deterministic order: by order, then smallest mask
        remaining = sorted(found, key=lambda m: (bin(m).count("1"), m))
        assigned = set()
        classes = []
        deg = self.group.degree
        for m in remaining:
            if m in assigned:
                continue
            conj = {m}
            for g in range(t.n):
                conj.add(t.conjugate(m, g))
            conj_sorted = sorted(conj)
            assigned.update(conj_sorted)
            core_mask = conj_sorted[0]
            for c in conj_sorted[1:]:
                core_mask &= c
            groups = [t.group(deg, c) for c in conj_sorted]
            rep_index = conj_sorted.index(m)
            classes.append(
                SubgroupClass(
                    representative=groups[rep_index],
                    order=bin(m).count("1"),
                    conjugates=groups,
                    masks=conj_sorted,
                    core_mask=core_mask,
                )
            )
        return classes

    def __len__(self):
        return sum(c.size for c in self.classes)

    def all_subgroups(self) -> list[PermGroup]:
        return [H for c in self.classes for H in c.conjugates]

    def normal_subgroups(self) -> list[PermGroup]:
        return [c.representative for c in self.classes if c.is_normal]

    def class_of(self, H: PermGroup) -> int:
        """Index of the conjugacy class containing H."""
        m = 0
        for e in H.raw_elements():
            m |= 1 << self.table.index[e]
        for i, c in enumerate(self.classes):
            if m in c.masks:
                return i
        raise NotASubgroup("H is not a subgroup of the lattice's group")


def enumerate_subgroups(G: PermGroup, cap: int = SUBGROUP_CAP) -> SubgroupLattice:
    return SubgroupLattice(G, cap)


# -- structure report ---------------------------------------------------------

TAG_CYCLIC = "cyclic"
TAG_ODD_GQ = "odd-cyclic-times-generalized-quaternion"
TAG_OTHER = "other"


@dataclass(frozen=True)
class StructureReport:
    order: int
    is_abelian: bool
    is_cyclic: bool
    is_p_group: bool
    p: int | None
    is_nilpotent: bool
    is_soluble: bool
    is_generalized_quaternion: bool
    center_order: int
    center_is_cyclic: bool
    fitting_order: int
    sylow2_is_cyclic: bool
    classification_tag: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def classification_tag(G: PermGroup, cap: int = ELEMENT_CAP) -> str:
    if is_cyclic(G, cap):
        return TAG_CYCLIC
    n = G.order()
    two = _p_part(n, 2)
    if two < 8:
        return TAG_OTHER
    P = sylow_subgroup(G, 2, cap)
    if not G.normalizes(P) or not is_generalized_quaternion(P, cap):
        return TAG_OTHER
    H = odd_part_subgroup(G, cap)
    if H is None or H.order() != n // two or not is_cyclic(H, cap) or not G.normalizes(H):
        return TAG_OTHER
    return TAG_ODD_GQ


def structure_report(G: PermGroup, cap: int = ELEMENT_CAP) -> StructureReport:
    n = G.order()
    if n > cap:
        raise OrderCapExceeded(f"|G| = {n} exceeds element cap {cap}")
    primes = prime_divisors(n)
    p = primes[0] if len(primes) == 1 else None
    Z = center(G, cap)
    nilpotent = is_nilpotent_by_sylows(G, cap)
    sylow2_cyclic = n % 2 == 1 or is_cyclic(sylow_subgroup(G, 2, cap), cap)
    return StructureReport(
        order=n,
        is_abelian=G.is_abelian(),
        is_cyclic=is_cyclic(G, cap),
        is_p_group=len(primes) == 1,
        p=p,
        is_nilpotent=nilpotent,
        is_soluble=is_soluble(G),
        is_generalized_quaternion=is_generalized_quaternion(G, cap),
        center_order=Z.order(),
        center_is_cyclic=is_cyclic(Z, cap),
        fitting_order=G.order() if nilpotent else fitting_subgroup(G, cap).order(),
        sylow2_is_cyclic=sylow2_cyclic,
        classification_tag=classification_tag(G, cap),
    )
