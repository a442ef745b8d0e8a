"""Group actions built from other actions.

Pairs are encoded globally as ``(a, b) -> a * deg2 + b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import sympy

from twoclosure import chain as ch
from twoclosure.config import COSET_DEGREE_CAP, ELEMENT_CAP, SYLOW_TOWER_DEGREE_CAP
from twoclosure.errors import (
    BadParameter,
    DegreeCapExceeded,
    NotAFactorization,
    NotAHomomorphism,
    NotASubgroup,
    NotCoprime,
    NotNormal,
    NotPrime,
    NotTransitive,
    UnfaithfulDeltaAction,
)
from twoclosure.groups import PermGroup
from twoclosure.perms import Permutation


@dataclass(frozen=True)
class ActionLabel:
    kind: str
    degree: int
    parts: tuple = ()

    def __str__(self):
        if not self.parts:
            return self.kind
        return f"{self.kind}({', '.join(map(str, self.parts))})"


def _label_of(G: PermGroup):
    return G.label if G.label is not None else ActionLabel("natural", G.degree)


def disjoint_direct_product(G1: PermGroup, G2: PermGroup) -> PermGroup:
    """G1 x G2 acting on the disjoint union, G2's points shifted by deg(G1)."""
    d1, d2 = G1.degree, G2.degree
    gens = []
    for g in G1.generators:
        gens.append(Permutation._trusted(list(g.images) + list(range(d1, d1 + d2))))
    for g in G2.generators:
        gens.append(Permutation._trusted(list(range(d1)) + [d1 + b for b in g.images]))
    label = ActionLabel("disjoint_union", d1 + d2, (_label_of(G1), _label_of(G2)))
    return PermGroup(d1 + d2, gens, label=label)


def product_action_direct_product(G1: PermGroup, G2: PermGroup) -> PermGroup:
    """G1 x G2 on Omega1 x Omega2, coordinatewise."""
    if not G1.is_transitive() or not G2.is_transitive():
        raise NotTransitive("product action requires transitive factors")
    d1, d2 = G1.degree, G2.degree
    gens = []
    for g in G1.generators:
        gens.append(Permutation._trusted([g.images[a] * d2 + b for a in range(d1) for b in range(d2)]))
    for h in G2.generators:
        gens.append(Permutation._trusted([a * d2 + h.images[b] for a in range(d1) for b in range(d2)]))
    label = ActionLabel("product", d1 * d2, (_label_of(G1), _label_of(G2)))
    return PermGroup(d1 * d2, gens, label=label)


def imprimitive_wreath(G1: PermGroup, G2: PermGroup) -> PermGroup:
    """G1 wr G2 on Omega1 x Omega2 with blocks Omega1 x {b}.

    Base generators act on one block at a time; top generators move blocks.
    """
    d1, d2 = G1.degree, G2.degree
    gens = []
    for block in range(d2):
        for g in G1.generators:
            gens.append(
                Permutation._trusted(
                    [(g.images[a] if b == block else a) * d2 + b for a in range(d1) for b in range(d2)]
                )
            )
    for h in G2.generators:
        gens.append(Permutation._trusted([a * d2 + h.images[b] for a in range(d1) for b in range(d2)]))
    label = ActionLabel("wreath_imprimitive", d1 * d2, (_label_of(G1), _label_of(G2)))
    return PermGroup(d1 * d2, gens, label=label)


def cyclic_group(n: int) -> PermGroup:
    """C_n acting regularly on n points."""
    if n < 1:
        raise BadParameter(f"cyclic needs n >= 1, got {n}")
    gens = [Permutation._trusted([(i + 1) % n for i in range(n)])] if n > 1 else []
    return PermGroup(n, gens, name=f"C{n}", label=ActionLabel("natural", n))


def sylow_tower_of_symmetric(p: int, k: int, max_degree: int = SYLOW_TOWER_DEGREE_CAP) -> PermGroup:
    """Iterated wreath C_p wr C_p wr ... wr C_p (k factors) on p**k points."""
    if not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    if p**k > max_degree:
        raise DegreeCapExceeded(f"p^k = {p**k} exceeds {max_degree}")
    C = cyclic_group(p)
    P = C
    for _ in range(k - 1):
        P = imprimitive_wreath(P, C)
    P.label = ActionLabel("sylow_tower", p**k, (p, k))
    return P


def _maximal_subgroup_containing(G: PermGroup, H: PermGroup) -> PermGroup:
    """Greedily enlarge H inside G while it stays proper."""
    order = G.order()
    M = H
    for g in G.elements():
        if g in M:
            continue
        bigger = PermGroup(G.degree, list(M.generators) + [g])
        if bigger.order() < order:
            M = bigger
    return M


def _tower_labels(G: PermGroup, points: list[int], p: int) -> dict[int, int]:
    """Labels 0..len(points)-1 putting the transitive p-group G^points inside the tower."""
    n = len(points)
    if n == 1:
        return {points[0]: 0}
    local = G.restrict(points)
    M = _maximal_subgroup_containing(local, local.point_stabilizer(0))
    blocks_local = []
    seen = set()
    for a in range(n):
        if a not in seen:
            orb = sorted(M.orbit(a))
            seen.update(orb)
            blocks_local.append(orb)
    if len(blocks_local) != p:  # pragma: no cover - index p in a p-group
        raise AssertionError("maximal subgroup does not give p blocks")
    # g outside M permutes the blocks cyclically
    g = next(x for x in local.generators if x not in M)
    block_of = {a: i for i, blk in enumerate(blocks_local) for a in blk}
    B0 = blocks_local[block_of[0]]
    sub = _tower_labels(M, B0, p)
    labels_local = {}
    gi = g.inverse()
    for a in range(n):
        # a lies in B0^(g^j); pull it back to B0
        j = 0
        x = a
        while block_of[x] != block_of[0]:
            x = gi.images[x]
            j += 1
        labels_local[a] = sub[x] * p + j
    return {points[a]: lab for a, lab in labels_local.items()}


def embed_in_sylow_tower(G: PermGroup) -> tuple[PermGroup, Permutation]:
    """For a transitive p-group G of degree p**k, return (P_k, x) with x^-1 G x <= P_k."""
    n = G.degree
    primes = sympy.primefactors(n)
    if len(primes) != 1 or not G.is_transitive():
        raise NotTransitive("need a transitive group of prime-power degree")
    p = primes[0]
    k = sympy.multiplicity(p, n)
    if sympy.primefactors(G.order()) not in ([p], []):
        raise ValueError("G is not a p-group")
    labels = _tower_labels(G, list(range(n)), p)
    x = Permutation._trusted([labels[a] for a in range(n)])
    return sylow_tower_of_symmetric(p, k, max_degree=max(n, SYLOW_TOWER_DEGREE_CAP)), x


# -- coset actions -------------------------------------------------------------


@dataclass
class CosetAction:
    group: PermGroup
    subgroup: PermGroup
    representatives: list[tuple]
    images: list[Permutation]
    _coset_of: dict = field(repr=False)

    @property
    def degree(self) -> int:
        return self.group.degree

    def image(self, g: Permutation) -> Permutation:
        """Image of an element of the source group in the coset action."""
        return Permutation._trusted([self._coset_of[ch.mul(r, g.images)] for r in self.representatives])

    def generator_images(self) -> list[Permutation]:
        """Images of the source group's generators, in order (identities kept)."""
        return list(self.images)


def right_cosets(G: PermGroup, H: PermGroup, cap: int = ELEMENT_CAP):
    """Right cosets Hx with minimal representatives, ordered by representative."""
    hs = H.raw_elements(cap)
    coset_of = {}
    reps = []
    for x in G.raw_elements(cap):
        if x in coset_of:
            continue
        i = len(reps)
        reps.append(x)
        for h in hs:
            coset_of[ch.mul(h, x)] = i
    return reps, coset_of


def coset_action(G: PermGroup, H: PermGroup, max_degree: int = COSET_DEGREE_CAP) -> CosetAction:
    """G acting on the right cosets of H by right multiplication; coset H is point 0."""
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > max_degree:
        raise DegreeCapExceeded(f"index {index} exceeds {max_degree}")
    reps, coset_of = right_cosets(G, H)
    gens = [Permutation._trusted([coset_of[ch.mul(r, g.images)] for r in reps]) for g in G.generators]
    action = PermGroup(index, gens, label=ActionLabel("coset", index, (H.order(),)))
    return CosetAction(action, H, reps, gens, coset_of)


# -- universal embedding -------------------------------------------------------


def _homomorphism_table(N: PermGroup, images: list[Permutation]) -> dict[tuple, tuple]:
    """Extend generator images to all of N; raise if inconsistent or not injective."""
    if len(images) != len(N.generators):
        raise NotAHomomorphism("one image per generator of N is required")
    dd = images[0].degree if images else 1
    table = {ch.identity(N.degree): ch.identity(dd)}
    queue = [ch.identity(N.degree)]
    for x in queue:
        fx = table[x]
        for g, d in zip(N.generators, images):
            y = ch.mul(x, g.images)
            fy = ch.mul(fx, d.images)
            if y in table:
                if table[y] != fy:
                    raise NotAHomomorphism("generator images do not define a homomorphism")
            else:
                table[y] = fy
                queue.append(y)
    if len(set(table.values())) != len(table):
        raise UnfaithfulDeltaAction("the Delta action of N is not faithful")
    return table


@dataclass
class UniversalEmbedding:
    group: PermGroup
    source: PermGroup
    normal: PermGroup
    delta_degree: int
    transversal: list[tuple]
    hom: dict = field(repr=False)
    coset_of: dict = field(repr=False, default_factory=dict)

    @property
    def index(self) -> int:
        return len(self.transversal)

    def point(self, delta: int, coset: int) -> int:
        return delta * self.index + coset

    def is_faithful(self) -> bool:
        return self.group.order() == self.source.order()

    def restriction_orbits(self) -> list[list[int]]:
        return self.group.subgroup(self.image_of_normal()).orbits()

    def image_of_normal(self) -> list[Permutation]:
        return [self.image(n) for n in self.normal.generators]

    def image(self, x: Permutation) -> Permutation:
        return _embed_element(x.images, self.transversal, self.coset_of, self.hom, self.delta_degree)

    def check_restriction(self) -> bool:
        """Each Delta x {u} is N-invariant and n acts there as t_u n t_u^-1 acts on Delta.

        So N's orbits are the orbits of the Delta action, copied into every block.
        """
        m = self.index
        orbit_sets = sorted(tuple(o) for o in self.restriction_orbits())
        delta = PermGroup(self.delta_degree, [Permutation._trusted(self.hom[n.images]) for n in self.normal.generators])
        expected = sorted(
            tuple(sorted(self.point(d, u) for d in orbit)) for orbit in delta.orbits() for u in range(m)
        )
        if orbit_sets != expected:
            return False
        for n in self.normal.generators:
            img = self.image(n)
            for u, t in enumerate(self.transversal):
                conj = ch.mul(ch.mul(t, n.images), ch.inv(t))
                want = self.hom[conj]
                for d in range(self.delta_degree):
                    if img.images[self.point(d, u)] != self.point(want[d], u):
                        return False
        return True


def _embed_element(x, transversal, coset_of, hom, dd):
    m = len(transversal)
    images = [0] * (dd * m)
    for u, t in enumerate(transversal):
        tx = ch.mul(t, x)
        v = coset_of[tx]
        f = ch.mul(tx, ch.inv(transversal[v]))
        fd = hom[f]
        for d in range(dd):
            images[d * m + u] = fd[d] * m + v
    return Permutation._trusted(images)


def universal_embedding_action(G: PermGroup, N: PermGroup, delta_images: list[Permutation]) -> UniversalEmbedding:
    """G acting on Delta x G/N by (d, u)^x = (d^{f_x(u)}, u psi(x))."""
    if not N.is_subgroup_of(G):
        raise NotASubgroup("N is not a subgroup of G")
    if not G.normalizes(N):
        raise NotNormal("N is not normal in G")
    hom = _homomorphism_table(N, list(delta_images))
    dd = delta_images[0].degree if delta_images else 1
    reps, coset_of = right_cosets(G, N)
    gens = [_embed_element(g.images, reps, coset_of, hom, dd) for g in G.generators]
    label = ActionLabel("universal_embedding", dd * len(reps), (N.order(), dd))
    action = PermGroup(dd * len(reps), gens, label=label)
    return UniversalEmbedding(action, G, N, dd, reps, hom, coset_of)


# -- coprime factorization -----------------------------------------------------


def coprime_product_equivalence_witness(
    G: PermGroup, H: PermGroup, K: PermGroup, alpha: int = 0
) -> dict[int, int]:
    """Bijection Omega -> alpha^H x alpha^K intertwining the two actions of G = H x K.

    Values are encoded as ``i * |alpha^K| + j`` with i, j positions in the
    sorted orbits.
    """
    if not G.is_transitive():
        raise NotTransitive("G must be transitive")
    if gcd(H.order(), K.order()) != 1:
        raise NotCoprime("|H| and |K| must be coprime")
    if not (H.is_subgroup_of(G) and K.is_subgroup_of(G)):
        raise NotAFactorization("H and K must lie in G")
    if H.order() * K.order() != G.order():
        raise NotAFactorization("|H||K| != |G|")
    if any(h * k != k * h for h in H.generators for k in K.generators):
        raise NotAFactorization("H and K do not commute")
    O1 = sorted(H.orbit(alpha))
    O2 = sorted(K.orbit(alpha))
    i1 = {a: i for i, a in enumerate(O1)}
    i2 = {a: i for i, a in enumerate(O2)}
    m2 = len(O2)
    hs = H.raw_elements()
    ks = K.raw_elements()
    decomp = {}
    witness: dict[int, int] = {}
    for h in hs:
        for k in ks:
            g = ch.mul(h, k)
            decomp[g] = (h, k)
            w = g[alpha]
            val = i1[h[alpha]] * m2 + i2[k[alpha]]
            if witness.setdefault(w, val) != val:
                raise NotAFactorization("point labels are not well defined")
    if len(witness) != G.degree or len(set(witness.values())) != G.degree:
        raise NotAFactorization("labels are not a bijection")
    # intertwining: (a^h, a^k)^(h1 k1) = (a^{h h1}, a^{k k1})
    for g in G.generators:
        h1, k1 = decomp[g.images]
        for h in hs:
            for k in ks:
                w = ch.mul(h, k)[alpha]
                target = i1[ch.mul(h, h1)[alpha]] * m2 + i2[ch.mul(k, k1)[alpha]]
                if witness[g.images[w]] != target:
                    raise NotAFactorization("bijection does not intertwine the actions")
    return witness
