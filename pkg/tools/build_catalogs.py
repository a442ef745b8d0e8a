"""Regenerate the bundled catalogs in src/twoclosure/data.

Groups of order <= 24 are built from named constructions and deduplicated
by isomorphism fingerprint; the run fails unless the number of classes per
order matches the known counts.  Each group is stored through a faithful
action of least degree.

Transitive groups of degree <= 6 come from all two-generator subgroups of
Sym(n) up to conjugacy (order and cycle-type census), again checked against
known counts.  Two-orbit actions come from pairs of stabilizer classes.
"""

from __future__ import annotations

import argparse
import logging
from collections import Counter
from itertools import product
from pathlib import Path

from twoclosure.catalog import CatalogEntry, fingerprint, minimal_faithful_action, write_catalog
from twoclosure.constructions import cyclic_group, disjoint_direct_product
from twoclosure.families import (
    abelian_by_cyclic,
    alternating_group,
    dihedral_group,
    elementary_abelian,
    metacyclic_group,
    quaternion_group,
    sl2_3,
    symmetric_group,
)
from twoclosure.groups import PermGroup
from twoclosure.perms import Permutation
from twoclosure.structure import SubgroupLattice
from twoclosure.t2c import RepBuilder, iter_rep_specs

log = logging.getLogger("build_catalogs")

GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
                13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15}
TRANSITIVE_COUNTS = {2: 1, 3: 2, 4: 5, 5: 5, 6: 16}
DATA = Path(__file__).resolve().parent.parent / "src" / "twoclosure" / "data"


def named_candidates():
    """(name, group) pairs; earlier names win when two are isomorphic."""
    yield "C1", cyclic_group(1)
    for n in range(2, 25):
        yield f"C{n}", cyclic_group(n)
    yield "S3", symmetric_group(3)
    for n in range(4, 13):
        yield f"D{2 * n}", dihedral_group(n)
    yield "C2^3", elementary_abelian(2, 3)
    yield "C2^4", elementary_abelian(2, 4)
    yield "Q8", quaternion_group(8)
    yield "Q16", quaternion_group(16)
    yield "A4", alternating_group(4)
    yield "S4", symmetric_group(4)
    yield "SL(2,3)", sl2_3()
    yield "Dic3", metacyclic_group(6, 2, 5, 3)
    yield "Dic5", metacyclic_group(10, 2, 9, 5)
    yield "Dic6", metacyclic_group(12, 2, 11, 6)
    yield "C7:C3", metacyclic_group(7, 3, 2)
    yield "F20", metacyclic_group(5, 4, 2)
    yield "C3:C8", metacyclic_group(3, 8, 2)
    yield "M16", metacyclic_group(8, 2, 5)
    yield "SD16", metacyclic_group(8, 2, 3)
    yield "C4:C4", metacyclic_group(4, 4, 3)
    yield "C3^2:C2", abelian_by_cyclic((3, 3), 2, [[2, 0], [0, 2]])
    yield "C2^2:C4", abelian_by_cyclic((2, 2), 4, [[0, 1], [1, 0]])
    yield "C4oD8", abelian_by_cyclic((4, 2), 2, [[1, 2], [0, 1]])
    yield "C3:D8", abelian_by_cyclic((3, 2, 2), 2, [[2, 0, 0], [0, 0, 1], [0, 1, 0]])


def build_groups():
    classes = {}  # fingerprint -> (name, group)
    by_order = {}

    def offer(name, G):
        if G.order() > 24:
            return
        fp = fingerprint(G)
        if fp not in classes:
            classes[fp] = (name, G)
            by_order.setdefault(G.order(), []).append(fp)

    for name, G in named_candidates():
        offer(name, G)
    # direct products of what we have so far, to a fixed point
    grew = True
    while grew:
        grew = False
        current = sorted(classes.values(), key=lambda t: (t[1].order(), t[0]))
        for (na, A), (nb, B) in product(current, current):
            if A.order() < 2 or B.order() < 2 or A.order() * B.order() > 24:
                continue
            if (A.order(), na) > (B.order(), nb):
                continue
            before = len(classes)
            offer(f"{na}x{nb}", disjoint_direct_product(A, B))
            grew |= len(classes) > before
    counts = {n: len(v) for n, v in by_order.items()}
    if counts != GROUP_COUNTS:
        missing = {n: (counts.get(n, 0), GROUP_COUNTS[n]) for n in GROUP_COUNTS if counts.get(n, 0) != GROUP_COUNTS[n]}
        raise SystemExit(f"group counts differ (found, expected): {missing}")
    entries = []
    for n in sorted(by_order):
        for fp in sorted(by_order[n], key=lambda f: classes[f][0]):
            name, G = classes[fp]
            A = minimal_faithful_action(G)
            gens = ",".join(str(g) for g in A.generators)
            entries.append(CatalogEntry(name, f"perm:{A.degree}:[{gens}]", G.order()))
            log.info("%-10s order %2d degree %2d", name, G.order(), A.degree)
    return entries


def _cycle_census(G: PermGroup) -> tuple:
    return tuple(sorted(Counter(tuple(sorted(len(c) for c in Permutation._trusted(e).cycles())) for e in G.raw_elements()).items()))


def _class_reps(n):
    """One permutation per cycle type of Sym(n)."""
    seen = {}
    for e in symmetric_group(n).raw_elements():
        key = tuple(sorted(len(c) for c in Permutation._trusted(e).cycles()))
        seen.setdefault(key, e)
    return [seen[k] for k in sorted(seen)]


def build_transitive():
    entries = []
    for n in sorted(TRANSITIVE_COUNTS):
        S = symmetric_group(n).raw_elements()
        found = {}
        for a in _class_reps(n):
            for b in S:
                G = PermGroup(n, [Permutation._trusted(a), Permutation._trusted(b)])
                if not G.is_transitive():
                    continue
                key = (G.order(), _cycle_census(G))
                found.setdefault(key, G)
        if len(found) != TRANSITIVE_COUNTS[n]:
            raise SystemExit(f"degree {n}: found {len(found)} transitive classes, expected {TRANSITIVE_COUNTS[n]}")
        letters = Counter()
        for key in sorted(found):
            G = found[key]
            suffix = "abcdefgh"[letters[G.order()]]
            letters[G.order()] += 1
            gens = ",".join(str(g) for g in G.generators)
            entries.append(CatalogEntry(f"trans{n}_{G.order()}{suffix}", f"perm:{n}:[{gens}]", G.order()))
    return entries


def build_two_orbit(groups, max_degree=10):
    entries = []
    seen = set()
    for e in groups:
        G = e.group
        if G.order() == 1:
            continue
        lat = SubgroupLattice(G)
        builder = RepBuilder(lat)
        for spec in iter_rep_specs(G, max_degree, lat, include_whole_group=True):
            if sum(m for _, m in spec.stabilizers) != 2:
                continue
            A = builder.action(spec)
            key = tuple(sorted(g.images for g in A.generators))
            if key in seen:
                continue
            seen.add(key)
            orders = "+".join(str(G.order() // lat.classes[i].order) for i in spec.blocks())
            gens = ",".join(str(g) for g in A.generators)
            entries.append(CatalogEntry(f"{e.name} on {orders}", f"perm:{A.degree}:[{gens}]", G.order()))
    return entries


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA)
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    args.out.mkdir(parents=True, exist_ok=True)
    groups = build_groups()
    write_catalog(args.out / "groups_le24.jsonl", groups)
    print(f"groups_le24: {len(groups)} groups")
    trans = build_transitive()
    write_catalog(args.out / "transitive_le6.jsonl", trans)
    print(f"transitive_le6: {len(trans)} groups")
    two = build_two_orbit(groups)
    write_catalog(args.out / "intransitive_le10.jsonl", two)
    print(f"intransitive_le10: {len(two)} actions")


if __name__ == "__main__":
    main()
