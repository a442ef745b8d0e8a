"""Deterministic Schreier-Sims on raw image tuples.

Everything here works on plain tuples for speed; `PermGroup` wraps the
results in `Permutation` objects.  A base may contain redundant points
(levels whose fundamental orbit is a single point); the closure search
relies on this to get one level per point.
"""

from __future__ import annotations

from itertools import product


def mul(p, q):
    """Apply p then q."""
    return tuple([q[a] for a in p])


def inv(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def identity(n):
    return tuple(range(n))


def is_identity(p):
    return all(i == v for i, v in enumerate(p))


def orbit_transversal(gens, point, n):
    """Breadth-first orbit of `point` with coset representatives.

    Returns ``{b: u}`` where ``u`` maps `point` to ``b``.
    """
    trans = {point: identity(n)}
    queue = [point]
    for b in queue:
        u = trans[b]
        for g in gens:
            c = g[b]
            if c not in trans:
                trans[c] = mul(u, g)
                queue.append(c)
    return trans


class StabChain:
    """Base and strong generating set with explicit transversals."""

    def __init__(self, degree, gens=(), base=()):
        self.degree = degree
        self.base = list(base)
        self.strong = [[] for _ in self.base]
        self.trans = [{b: identity(degree)} for b in self.base]
        self.trans_inv = [{b: identity(degree)} for b in self.base]
        for g in gens:
            self.add_generator(g)

    # -- queries ---------------------------------------------------------

    def sift(self, g, start=0):
        """Strip `g` through the levels from `start`; return (residue, level)."""
        base = self.base
        for i in range(start, len(base)):
            b = g[base[i]]
            if b == base[i]:
                continue
            ui = self.trans_inv[i].get(b)
            if ui is None:
                return g, i
            g = mul(g, ui)
        return g, len(self.base)

    def contains(self, g):
        h, j = self.sift(g)
        return j == len(self.base) and is_identity(h)

    def order(self):
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def orbit_lengths(self):
        return [len(t) for t in self.trans]

    def generators(self):
        """Strong generators, deduplicated, in insertion order."""
        seen = set()
        out = []
        for level in self.strong:
            for g in level:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def level_generators(self, i):
        return list(self.strong[i]) if i < len(self.strong) else []

    def elements(self):
        """Yield every element exactly once."""
        n = self.degree
        levels = [list(t.values()) for t in reversed(self.trans)]
        if not levels:
            yield identity(n)
            return
        for combo in product(*levels):
            g = combo[0]
            for u in combo[1:]:
                g = mul(g, u)
            yield g

    # -- construction ----------------------------------------------------

    def _new_level(self, point):
        n = self.degree
        self.base.append(point)
        self.strong.append([])
        self.trans.append({point: identity(n)})
        self.trans_inv.append({point: identity(n)})

    def _refresh(self, i):
        t = orbit_transversal(self.strong[i], self.base[i], self.degree)
        self.trans[i] = t
        self.trans_inv[i] = {b: inv(u) for b, u in t.items()}

    def _insert(self, h, upto):
        """Add `h` as a strong generator on levels 0..upto (h fixes base[:upto])."""
        if upto == len(self.base):
            moved = next(i for i, v in enumerate(h) if i != v)
            self._new_level(moved)
        for level in range(upto + 1):
            if all(h[self.base[k]] == self.base[k] for k in range(level)):
                self.strong[level].append(h)
                self._refresh(level)

    def add_generator(self, g):
        """Extend the group by `g` and restore the chain. Returns True if it grew."""
        g = tuple(g)
        h, j = self.sift(g)
        if j == len(self.base) and is_identity(h):
            return False
        self._insert(h, j)
        self._complete(j)
        return True

    def _complete(self, i):
        # Schreier generators at level i must sift through levels i+1..;
        # a failure inserts the residue and restarts at the failing level.
        while i >= 0:
            restart = None
            trans_i = self.trans[i]
            if len(trans_i) == 1:
                # generators here fix base[i] and were also stored one level down
                i -= 1
                continue
            inv_i = self.trans_inv[i]
            for beta, u in list(trans_i.items()):
                for s in self.strong[i]:
                    us = mul(u, s)
                    sg = mul(us, inv_i[us[self.base[i]]])
                    if is_identity(sg):
                        continue
                    h, j = self.sift(sg, i + 1)
                    if j < len(self.base) or not is_identity(h):
                        # h fixes base[:j]; add it to levels i+1..j
                        if j == len(self.base):
                            moved = next(a for a, v in enumerate(h) if a != v)
                            self._new_level(moved)
                        for level in range(i + 1, j + 1):
                            self.strong[level].append(h)
                            self._refresh(level)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1
