"""2-closures by exhaustive scan and by color-preserving backtrack.

The exhaustive engine scans every element of Sym(n) and is the trusted
oracle for small degrees.  The backtrack engine builds the closure level by
level along the base 0, 1, ..., n-1: at level i it decides, for every
candidate image y of point i, whether some color-preserving permutation
fixes 0..i-1 and sends i to y.  Candidates already reached by the group
found so far are skipped, so the search starts from G itself.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np

from twoclosure.chain import StabChain
from twoclosure.config import BACKTRACK_DEGREE_CAP, BRUTE_DEGREE_CAP, ELEMENT_CAP, NODE_BUDGET
from twoclosure.errors import (
    DegreeCapExceeded,
    DegreeMismatch,
    NotInvariant,
    OrderCapExceeded,
    SearchBudgetExceeded,
)
from twoclosure.groups import PermGroup
from twoclosure.orbitals import OrbitalPartition, orbital_partition
from twoclosure.perms import Permutation


@dataclass
class ClosureResult:
    input: PermGroup
    closure: PermGroup
    equals_input: bool
    method: str
    nodes: int = 0
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.closure.order()

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "degree": self.input.degree,
            "order": self.input.order(),
            "closure_order": self.closure.order(),
            "equals": self.equals_input,
            "closure_generators": [str(g) for g in self.closure.generators],
            "nodes": self.nodes,
        }


# -- exhaustive ----------------------------------------------------------------


_TAIL = 8


@lru_cache(maxsize=4)
def _symmetric_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


def _scan_symmetric(C: np.ndarray):
    """Yield blocks of color-preserving permutations, in lexicographic order.

    Sym(n) is scanned in blocks that share the images of the first n - 8
    points; a block whose prefix already breaks a color is skipped whole.
    """
    n = C.shape[0]
    k = max(0, n - _TAIL)
    tail = _symmetric_table(n - k)
    Cl = C.tolist()
    for prefix in permutations(range(n), k):
        if any(Cl[prefix[i]][prefix[j]] != Cl[i][j] for i in range(k) for j in range(k)):
            continue
        rest = np.array(sorted(set(range(n)) - set(prefix)), dtype=np.intp)
        # allowed[b, v]: sending b to v respects every pair with a prefix point
        allowed = np.ones((n - k, n - k), dtype=bool)
        for i in range(k):
            allowed &= C[prefix[i]][rest][None, :] == C[i, k:][:, None]
        rows = tail
        for j in range(n - k):
            rows = rows[allowed[j, rows[:, j]]]
            if not len(rows):
                break
        if not len(rows):
            continue
        block = np.empty((len(rows), n), dtype=np.int8)
        block[:, :k] = prefix
        block[:, k:] = rest[rows]
        for a in range(k, n):
            ok = (C[block[:, a][:, None], block] == C[a][None, :]).all(axis=1)
            block = block[ok]
            if not len(block):
                break
        if len(block):
            yield block


def _group_from_rows(n: int, blocks) -> PermGroup:
    """The group formed by the rows; they are known to be closed under products."""
    rows = [b for b in blocks]
    total = sum(len(b) for b in rows)
    c = StabChain(n)
    for b in rows:
        for r in b.tolist():
            if c.order() == total:
                break
            c.add_generator(tuple(r))
    if c.order() != total:
        raise ValueError("scanned rows do not form a group")
    return PermGroup.from_chain(c)


def two_closure_bruteforce(G: PermGroup, max_degree: int = BRUTE_DEGREE_CAP) -> ClosureResult:
    """Keep every element of Sym(n) that preserves the orbital coloring."""
    n = G.degree
    if n > max_degree:
        raise DegreeCapExceeded(f"exhaustive closure limited to degree {max_degree}, got {n}")
    start = time.perf_counter()
    C = orbital_partition(G).colors
    closure = _group_from_rows(n, _scan_symmetric(C))
    return ClosureResult(
        input=G,
        closure=closure,
        equals_input=closure.order() == G.order(),
        method="bruteforce",
        nodes=factorial(n),
        elapsed=time.perf_counter() - start,
    )


# -- backtrack -------------------------------------------------------------------


class _Search:
    def __init__(self, P: OrbitalPartition, node_budget: int):
        n = P.degree
        self.n = n
        C = P.colors.astype(np.int64)
        # code[x][z] encodes the color pair (color(x, z), color(z, x))
        code = C * P.rank + C.T
        self.code = code.tolist()
        weights = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
        # pair_masks[b][k]: bitmask of points z with code[b][z] == k
        self.pair_masks = []
        for b in range(n):
            keys, inv = np.unique(code[b], return_inverse=True)
            sums = np.zeros(len(keys), dtype=np.uint64)
            np.add.at(sums, inv, weights)
            self.pair_masks.append(dict(zip(keys.tolist(), (int(v) for v in sums))))
        diag = np.diag(code)
        self.initial = [int(weights[diag == diag[x]].sum()) for x in range(n)]
        self.nodes = 0
        self.budget = node_budget

    def assign(self, cand, x, b):
        """Forward-check x -> b against every later point; None on a wipe-out."""
        row = self.code[x]
        masks = self.pair_masks[b]
        keep = ~(1 << b)
        out = list(cand)
        out[x] = 1 << b
        for z in range(x + 1, self.n):
            m = out[z] & keep & masks.get(row[z], 0)
            if not m:
                return None
            out[z] = m
        return out

    def fixed_prefixes(self):
        """Candidate tables after fixing points 0..i-1, for every i."""
        out = [list(self.initial)]
        for a in range(self.n):
            out.append(self.assign(out[-1], a, a))
        return out

    def extend(self, cand, x):
        """Depth-first completion of points x..n-1; returns images or None."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"backtrack exceeded {self.budget} nodes")
        if x == self.n:
            return [m.bit_length() - 1 for m in cand]
        m = cand[x]
        while m:
            low = m & -m
            m ^= low
            nxt = self.assign(cand, x, low.bit_length() - 1)
            if nxt is not None:
                found = self.extend(nxt, x + 1)
                if found is not None:
                    return found
        return None


def two_closure(
    G: PermGroup,
    max_degree: int = BACKTRACK_DEGREE_CAP,
    node_budget: int = NODE_BUDGET,
) -> ClosureResult:
    """Closure as the group of color-preserving permutations, via backtrack."""
    n = G.degree
    if n > max_degree:
        raise DegreeCapExceeded(f"backtrack closure limited to degree {max_degree}, got {n}")
    start = time.perf_counter()
    P = orbital_partition(G)
    search = _Search(P, node_budget)
    found = StabChain(n, [g.images for g in G.generators], base=range(n))
    input_order = found.order()
    prefixes = search.fixed_prefixes()
    for i in reversed(range(n)):
        cand = prefixes[i]
        m = cand[i] & ~(1 << i)
        while m:
            low = m & -m
            m ^= low
            y = low.bit_length() - 1
            if y in found.trans[i]:
                continue
            nxt = search.assign(cand, i, y)
            if nxt is None:
                continue
            images = search.extend(nxt, i + 1)
            if images is not None:
                found.add_generator(tuple(images))
    closure = PermGroup.from_chain(found)
    return ClosureResult(
        input=G,
        closure=closure,
        equals_input=closure.order() == input_order,
        method="backtrack",
        nodes=search.nodes,
        elapsed=time.perf_counter() - start,
        extra={"input_order": input_order},
    )


def closure_by(G: PermGroup, engine: str = "backtrack", **kw) -> ClosureResult:
    if engine == "bruteforce" or engine == "brute":
        return two_closure_bruteforce(G, **{k: v for k, v in kw.items() if k == "max_degree"})
    return two_closure(G, **kw)


def is_2closed(G: PermGroup, **kw) -> bool:
    return two_closure(G, **kw).equals_input


def preserves_orbitals(G: PermGroup, theta: Permutation) -> bool:
    """Membership in the closure via the orbital coloring."""
    if theta.degree != G.degree:
        raise DegreeMismatch("degree mismatch")
    return orbital_partition(G).preserved_by(theta.images)


def wielandt_membership(theta: Permutation, G: PermGroup, cap: int = ELEMENT_CAP) -> bool:
    """True iff every pair (a, b) is moved by theta the way some g in G moves it."""
    if theta.degree != G.degree:
        raise DegreeMismatch("degree mismatch")
    if G.order() > cap:
        raise OrderCapExceeded(f"|G| = {G.order()} exceeds element cap {cap}")
    E = np.array(G.raw_elements(cap), dtype=np.int16).reshape(-1, G.degree)
    t = theta.images
    for a in range(G.degree):
        sub = E[E[:, a] == t[a]]
        if len(sub) == 0:
            return False
        if not all((sub[:, b] == t[b]).any() for b in range(G.degree)):
            return False
    return True


# -- dissection -----------------------------------------------------------------


@dataclass(frozen=True)
class DissectionResult:
    closure_contains_product: bool
    factorization: bool
    transitivity: bool

    @property
    def agree(self) -> bool:
        return self.closure_contains_product == self.factorization == self.transitivity

    def to_dict(self) -> dict:
        return {
            "closure_contains_product": self.closure_contains_product,
            "factorization": self.factorization,
            "transitivity": self.transitivity,
            "agree": self.agree,
        }


def _block_action(g: Permutation, block: set[int]) -> Permutation:
    return Permutation._trusted([g.images[a] if a in block else a for a in range(g.degree)])


def dissection_check(G: PermGroup, gamma, delta=None, closure: PermGroup | None = None, **kw) -> DissectionResult:
    """Evaluate the three conditions of the dissection criterion for Omega = Gamma u Delta."""
    n = G.degree
    gamma = set(gamma)
    delta = set(range(n)) - gamma if delta is None else set(delta)
    if gamma & delta or gamma | delta != set(range(n)) or not gamma or not delta:
        raise NotInvariant("Gamma and Delta must partition the point set into nonempty parts")
    for g in G.generators:
        if any(g.images[a] not in gamma for a in gamma):
            raise NotInvariant("Gamma is not G-invariant")
    if closure is None:
        closure = two_closure(G, **kw).closure
    cond1 = all(
        _block_action(g, block) in closure for g in G.generators for block in (gamma, delta)
    )
    order = G.order()
    cond2 = True
    cond3 = True
    for d in sorted(delta):
        Gd = G.point_stabilizer(d)
        for c in sorted(gamma):
            Gc = G.point_stabilizer(c)
            both = G.pointwise_stabilizer([c, d]).order()
            if Gc.order() * Gd.order() != order * both:
                cond2 = False
            if Gd.orbit(c) != G.orbit(c):
                cond3 = False
    return DissectionResult(cond1, cond2, cond3)
