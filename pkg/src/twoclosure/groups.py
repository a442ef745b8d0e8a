"""Permutation groups backed by a lazily built stabilizer chain."""

from __future__ import annotations

from typing import Iterable, Sequence

from twoclosure import chain as ch
from twoclosure.config import ELEMENT_CAP
from twoclosure.errors import DegreeMismatch, OrderCapExceeded, PointOutOfRange
from twoclosure.perms import Permutation, parse_permutation


class PermGroup:
    """A subgroup of Sym(n) given by generators.

    Instances are treated as immutable.  The stabilizer chain is built on
    first use and cached.
    """

    def __init__(self, degree: int, generators: Iterable = (), name: str | None = None, label=None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(tuple(g))
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
            if not g.is_identity():
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self.label = label
        self._chain: ch.StabChain | None = None
        self._elements: list[tuple] | None = None

    @classmethod
    def from_cycles(cls, degree: int, *cycle_texts: str, name: str | None = None) -> PermGroup:
        return cls(degree, [parse_permutation(t, degree) for t in cycle_texts], name=name)

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls(degree, ())

    @classmethod
    def from_chain(cls, chain: ch.StabChain, name=None) -> PermGroup:
        G = cls(chain.degree, [Permutation._trusted(g) for g in chain.generators()], name=name)
        G._chain = chain
        return G

    # -- chain-backed basics ---------------------------------------------

    @property
    def chain(self) -> ch.StabChain:
        if self._chain is None:
            self._chain = ch.StabChain(self.degree, [g.images for g in self.generators])
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):
        return self.order()

    def __contains__(self, g) -> bool:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        if len(images) != self.degree:
            raise DegreeMismatch("membership test with wrong degree")
        return self.chain.contains(images)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def raw_elements(self, cap: int = ELEMENT_CAP) -> list[tuple]:
        """All elements as image tuples, sorted lexicographically."""
        if self._elements is None:
            if self.order() > cap:
                raise OrderCapExceeded(f"|G| = {self.order()} exceeds element cap {cap}")
            self._elements = sorted(self.chain.elements())
        return self._elements

    def elements(self, cap: int = ELEMENT_CAP) -> list[Permutation]:
        return [Permutation._trusted(e) for e in self.raw_elements(cap)]

    def is_trivial(self) -> bool:
        return not self.generators

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def equals(self, other: PermGroup) -> bool:
        """Group equality via mutual membership."""
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def with_base(self, base_prefix: Sequence[int]) -> ch.StabChain:
        """A fresh chain whose base starts with `base_prefix`."""
        return ch.StabChain(self.degree, [g.images for g in self.generators], base=base_prefix)

    # -- orbits and stabilizers -------------------------------------------

    def _check_point(self, a):
        if not 0 <= a < self.degree:
            raise PointOutOfRange(f"point {a} not in 0..{self.degree - 1}")

    def orbit(self, a: int) -> set[int]:
        self._check_point(a)
        seen = {a}
        queue = [a]
        for b in queue:
            for g in self.generators:
                c = g.images[b]
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return seen

    def orbits(self) -> list[list[int]]:
        """Orbits as sorted lists, ordered by smallest point."""
        done = set()
        out = []
        for a in range(self.degree):
            if a not in done:
                orb = sorted(self.orbit(a))
                done.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def point_stabilizer(self, a: int) -> PermGroup:
        self._check_point(a)
        c = self.with_base([a])
        return PermGroup(self.degree, [Permutation._trusted(g) for g in c.level_generators(1)])

    def pointwise_stabilizer(self, points: Sequence[int]) -> PermGroup:
        points = list(points)
        for a in points:
            self._check_point(a)
        c = self.with_base(points)
        return PermGroup(self.degree, [Permutation._trusted(g) for g in c.level_generators(len(points))])

    def setwise_image(self, points, g: Permutation):
        return {g.images[a] for a in points}

    # -- derived groups -----------------------------------------------------

    def subgroup(self, gens: Iterable) -> PermGroup:
        return PermGroup(self.degree, gens)

    def conjugate(self, x: Permutation) -> PermGroup:
        """The group x^-1 G x."""
        return PermGroup(self.degree, [g.conjugate(x) for g in self.generators])

    def restrict(self, points: Sequence[int]) -> PermGroup:
        """Action on an invariant subset, relabeled to 0..len(points)-1 in the given order."""
        points = list(points)
        index = {a: i for i, a in enumerate(points)}
        if len(index) != len(points):
            raise ValueError("repeated points")
        gens = []
        for g in self.generators:
            try:
                gens.append(Permutation._trusted([index[g.images[a]] for a in points]))
            except KeyError:
                raise ValueError("point set is not invariant") from None
        return PermGroup(len(points), gens)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1:])

    def normal_closure(self, gens: Iterable[Permutation]) -> PermGroup:
        """Smallest subgroup normal in self containing `gens`."""
        c = ch.StabChain(self.degree)
        queue = [g.images for g in gens]
        for g in queue:
            c.add_generator(g)
        pending = list(c.generators())
        while pending:
            h = pending.pop()
            for s in self.generators:
                conj = ch.mul(ch.mul(s.inverse().images, h), s.images)
                if c.add_generator(conj):
                    pending.append(conj)
        return PermGroup.from_chain(c)

    def derived_subgroup(self) -> PermGroup:
        gs = self.generators
        comms = []
        for i, a in enumerate(gs):
            for b in gs[i + 1:]:
                comms.append(commutator(a, b))
        return self.normal_closure(comms)

    def normalizes(self, H: PermGroup) -> bool:
        """True if every generator of self conjugates H into itself."""
        return all(h.conjugate(g) in H for g in self.generators for h in H.generators)

    def regular_representation(self, cap: int = ELEMENT_CAP) -> PermGroup:
        """Right-multiplication action on the element list."""
        elems = self.raw_elements(cap)
        index = {e: i for i, e in enumerate(elems)}
        gens = []
        for g in self.generators:
            gens.append(Permutation._trusted([index[ch.mul(e, g.images)] for e in elems]))
        return PermGroup(len(elems), gens)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} gens=[{', '.join(map(str, self.generators))}]>"


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def group_from_elements(degree: int, elements: Iterable[tuple]) -> PermGroup:
    """Generate a group from an element set known to be closed.

    Elements are scanned in sorted order and kept as generators only when they
    enlarge the group, so the result is deterministic.
    """
    elems = sorted(set(tuple(e) for e in elements))
    c = ch.StabChain(degree)
    target = len(elems)
    for e in elems:
        if c.order() == target:
            break
        c.add_generator(e)
    if c.order() != target:
        raise ValueError("element set is not a group")
    G = PermGroup.from_chain(c)
    G._elements = elems
    return G


def naive_closure(degree: int, gens: Iterable[tuple]) -> set[tuple]:
    """All products of generators by breadth-first search (oracle)."""
    gens = [tuple(g) for g in gens]
    e = ch.identity(degree)
    seen = {e}
    queue = [e]
    for x in queue:
        for g in gens:
            y = ch.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
