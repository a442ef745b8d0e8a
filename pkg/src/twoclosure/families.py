"""Standard families of permutation groups and small abstract constructions.

Abstract groups given by a multiplication rule are realized through their
right regular representation; the catalog tools then shrink them to a
minimal faithful action.
"""

from __future__ import annotations

from itertools import product

import numpy as np
import sympy

from twoclosure.constructions import ActionLabel, cyclic_group
from twoclosure.errors import BadParameter
from twoclosure.groups import PermGroup
from twoclosure.perms import Permutation


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise BadParameter("sym needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(Permutation(tuple(list(range(1, n)) + [0])))
        gens.append(Permutation(tuple([1, 0] + list(range(2, n)))))
    return PermGroup(n, gens, name=f"Sym({n})", label=ActionLabel("natural", n))


def alternating_group(n: int) -> PermGroup:
    if n < 1:
        raise BadParameter("alt needs n >= 1")
    # 3-cycles (0 1 i) generate Alt(n)
    gens = []
    for i in range(2, n):
        img = list(range(n))
        img[0], img[1], img[i] = 1, i, 0
        gens.append(Permutation(tuple(img)))
    return PermGroup(n, gens, name=f"Alt({n})", label=ActionLabel("natural", n))


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n, on its n vertices."""
    if n < 3:
        raise BadParameter("dihedral needs n >= 3 for a faithful action on n points")
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    ref = Permutation(tuple((-i) % n for i in range(n)))
    return PermGroup(n, [rot, ref], name=f"D{2 * n}", label=ActionLabel("natural", n))


def regular_from_rule(elements, mul, gen_elements, name=None) -> PermGroup:
    """Right regular representation of the group with multiplication `mul`."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    gens = []
    for g in gen_elements:
        gens.append(Permutation(tuple(index[mul(e, g)] for e in elements)))
    G = PermGroup(len(elements), gens, name=name, label=ActionLabel("regular", len(elements)))
    if G.order() != len(elements):
        raise BadParameter(f"multiplication rule does not define a group of order {len(elements)}")
    return G


def metacyclic_group(m: int, k: int, r: int, s: int = 0, name=None) -> PermGroup:
    """<a, b | a^m, b^k = a^s, b a b^-1 = a^r>, regular, elements a^i b^j."""
    if pow(r, k, m) != 1 % m or (r * s - s) % m or (m > 1 and np.gcd(r, m) != 1):
        raise BadParameter(f"no metacyclic group with m={m}, k={k}, r={r}, s={s}")

    def mul(x, y):
        i, j = x
        c, d = y
        e = i + c * pow(r, j, m)
        t = j + d
        if t >= k:
            t -= k
            e += s
        return (e % m, t)

    elems = list(product(range(m), range(k)))
    return regular_from_rule(elems, mul, [(1 % m, 0), (0, 1 % k)], name=name)


def quaternion_group(order: int) -> PermGroup:
    """Generalized quaternion group of the given 2-power order, regular."""
    if order < 8 or order & (order - 1):
        raise BadParameter(f"quaternion order must be a power of 2 and at least 8, got {order}")
    m = order // 2
    return metacyclic_group(m, 2, m - 1, m // 2, name=f"Q{order}")


def elementary_abelian(p: int, k: int) -> PermGroup:
    """C_p^k acting regularly on F_p^k by translations."""
    if not sympy.isprime(p):
        raise BadParameter(f"elab needs a prime, got {p}")
    if k < 1:
        raise BadParameter("elab needs k >= 1")
    vecs = list(product(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for i in range(k):
        gens.append(
            Permutation(
                tuple(index[tuple((v[j] + (j == i)) % p for j in range(k))] for v in vecs)
            )
        )
    return PermGroup(len(vecs), gens, name=f"C{p}^{k}", label=ActionLabel("regular", len(vecs)))


def abelian_by_cyclic(mods, k: int, matrix, name=None) -> PermGroup:
    """(Z_m1 x ... x Z_mr) : C_k, the generator of C_k acting by an integer matrix.

    Column j of the matrix is the image of the j-th basis vector.
    """
    mods = tuple(mods)
    M = np.array(matrix, dtype=np.int64).reshape(len(mods), len(mods))

    def act(v, times):
        for _ in range(times):
            v = tuple(int(sum(M[i][j] * v[j] for j in range(len(mods)))) % mods[i] for i in range(len(mods)))
        return v

    def mul(x, y):
        v, j = x
        w, d = y
        w = act(w, j)
        return (tuple((a + b) % q for a, b, q in zip(v, w, mods)), (j + d) % k)

    vecs = list(product(*[range(q) for q in mods]))
    # the matrix must give an automorphism of order dividing k
    for v in vecs:
        if act(v, k) != v:
            raise BadParameter("matrix action does not have order dividing k")
    if len({act(v, 1) for v in vecs}) != len(vecs):
        raise BadParameter("matrix action is not invertible")
    for v in vecs:
        for w in vecs:
            lhs = act(tuple((a + b) % q for a, b, q in zip(v, w, mods)), 1)
            rhs = tuple((a + b) % q for a, b, q in zip(act(v, 1), act(w, 1), mods))
            if lhs != rhs:
                raise BadParameter("matrix action is not additive for these moduli")
    elems = [(v, j) for v in vecs for j in range(k)]
    zero = tuple(0 for _ in mods)
    gens = []
    for i in range(len(mods)):
        e = tuple(1 if t == i else 0 for t in range(len(mods)))
        gens.append((e, 0))
    gens.append((zero, 1 % k))
    return regular_from_rule(elems, mul, gens, name=name)


def sl2_3() -> PermGroup:
    """SL(2, 3) acting on the eight nonzero vectors of F_3^2."""
    vecs = [v for v in product(range(3), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def perm(a, b, c, d):
        return Permutation(tuple(index[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs))

    G = PermGroup(8, [perm(1, 1, 0, 1), perm(0, 2, 1, 0)], name="SL(2,3)")
    return G


FAMILIES = {
    "cyclic": (1, lambda n: cyclic_group(n)),
    "dihedral": (1, dihedral_group),
    "quaternion": (1, quaternion_group),
    "sym": (1, symmetric_group),
    "alt": (1, alternating_group),
    "elab": (2, elementary_abelian),
}
