"""Orbitals: the coloring of ordered pairs by G-orbits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from twoclosure.config import ORBITAL_DEGREE_CAP
from twoclosure.errors import DegreeCapExceeded, UnknownColor
from twoclosure.groups import PermGroup


@dataclass(frozen=True, eq=False)
class OrbitalPartition:
    degree: int
    colors: np.ndarray  # (n, n) int32, colors[a, b] = orbital id of (a, b)
    rank: int
    representatives: tuple[tuple[int, int], ...]

    def color(self, a: int, b: int) -> int:
        return int(self.colors[a, b])

    def color_class(self, color: int) -> list[tuple[int, int]]:
        if not 0 <= color < self.rank:
            raise UnknownColor(f"color {color} not in 0..{self.rank - 1}")
        rows, cols = np.nonzero(self.colors == color)
        return [(int(a), int(b)) for a, b in zip(rows, cols)]

    def class_sizes(self) -> list[int]:
        return np.bincount(self.colors.ravel(), minlength=self.rank).tolist()

    def diagonal_colors(self) -> list[int]:
        return sorted(set(int(c) for c in np.diag(self.colors)))

    def paired_color(self, color: int) -> int:
        a, b = self.representatives[color]
        return int(self.colors[b, a])

    def preserved_by(self, images) -> bool:
        """True if the permutation maps every pair to a pair of the same color."""
        p = np.asarray(images)
        return bool(np.array_equal(self.colors[np.ix_(p, p)], self.colors))


def orbital_partition(G: PermGroup, max_degree: int = ORBITAL_DEGREE_CAP) -> OrbitalPartition:
    """Color Omega x Omega by G-orbits.

    Color ids follow first occurrence in row-major order of the pairs.
    """
    n = G.degree
    if n > max_degree:
        raise DegreeCapExceeded(f"degree {n} exceeds orbital cap {max_degree}")
    pairs = np.arange(n * n)
    src, dst = [], []
    for g in G.generators:
        img = np.asarray(g.images)
        src.append(pairs)
        dst.append((img[:, None] * n + img[None, :]).ravel())
    if src:
        src_a = np.concatenate(src)
        dst_a = np.concatenate(dst)
    else:
        src_a = dst_a = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src_a), dtype=np.int8), (src_a, dst_a)), shape=(n * n, n * n))
    _, comp = connected_components(graph, directed=True, connection="weak")
    # renumber components by first occurrence in row-major order
    _, first, inverse = np.unique(comp, return_index=True, return_inverse=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    colors = relabel[inverse].reshape(n, n).astype(np.int32)
    reps = tuple((int(f) // n, int(f) % n) for f in np.sort(first))
    colors.setflags(write=False)
    return OrbitalPartition(n, colors, len(reps), reps)


def rank(G: PermGroup) -> int:
    return orbital_partition(G).rank


def orbital_digraph(G_or_partition, color: int) -> list[tuple[int, int]]:
    P = G_or_partition if isinstance(G_or_partition, OrbitalPartition) else orbital_partition(G_or_partition)
    return P.color_class(color)


def export_dot(P: OrbitalPartition, name: str = "orbitals") -> str:
    """Graphviz text: diagonal colors as node attributes, other pairs as colored arcs."""
    lines = [f"digraph {name} {{"]
    for a in range(P.degree):
        lines.append(f"  {a} [color={P.color(a, a)}];")
    for a in range(P.degree):
        for b in range(P.degree):
            if a != b:
                lines.append(f"  {a} -> {b} [color={P.color(a, b)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
