"""Group catalogs shipped as JSON lines, plus isomorphism fingerprints."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path

from twoclosure.errors import CatalogIOError, InputError
from twoclosure.groups import PermGroup
from twoclosure.structure import SubgroupLattice, center, element_order

BUNDLED = ("groups_le24", "transitive_le6", "intransitive_le10")
# every group of order <= 24 is soluble, so the soluble list is the full one
ALIASES = {"soluble_le24": "groups_le24", "transitive_pairs": "transitive_le6"}


@dataclass
class CatalogEntry:
    name: str
    spec: str
    order: int | None = None
    extra: dict | None = None

    @cached_property
    def group(self) -> PermGroup:
        from twoclosure.groupspec import materialize

        G = materialize(self.spec)
        G.name = self.name
        return G

    def to_dict(self) -> dict:
        d = {"name": self.name, "spec": self.spec}
        if self.order is not None:
            d["order"] = self.order
        if self.extra:
            d.update(self.extra)
        return d


def catalog_path(name: str) -> Path:
    """Path of a bundled catalog by stem, or the argument itself if it is a file."""
    p = Path(name)
    if p.exists():
        return p
    stem = p.name[: -len(".jsonl")] if p.name.endswith(".jsonl") else p.name
    stem = ALIASES.get(stem, stem)
    if stem in BUNDLED:
        return Path(str(resources.files("twoclosure") / "data" / f"{stem}.jsonl"))
    raise CatalogIOError(f"catalog not found: {name}")


def load_catalog(name: str, check_orders: bool = True) -> list[CatalogEntry]:
    """Read a catalog; each line is {name, spec, [order], ...}. Orders are asserted."""
    path = catalog_path(name)
    entries = []
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise CatalogIOError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            entry = CatalogEntry(
                name=rec.pop("name"),
                spec=rec.pop("spec"),
                order=rec.pop("order", None),
                extra=rec or None,
            )
        except (json.JSONDecodeError, KeyError, AttributeError) as exc:
            raise CatalogIOError(f"{path}:{lineno}: bad record ({exc})") from exc
        if check_orders and entry.order is not None:
            try:
                got = entry.group.order()
            except InputError as exc:
                raise CatalogIOError(f"{path}:{lineno}: bad spec ({exc})") from exc
            if got != entry.order:
                raise CatalogIOError(f"{path}:{lineno}: {entry.name} has order {got}, expected {entry.order}")
        entries.append(entry)
    return entries


def write_catalog(path, entries) -> None:
    with open(path, "w") as fh:
        for e in entries:
            fh.write(json.dumps(e.to_dict() if isinstance(e, CatalogEntry) else e) + "\n")


def fingerprint(G: PermGroup) -> tuple:
    """Isomorphism invariant: element orders, center, derived subgroup, subgroup counts."""
    elems = G.raw_elements()
    orders = Counter(element_order(e) for e in elems)
    lat = SubgroupLattice(G)
    subs = Counter()
    normal = Counter()
    for c in lat.classes:
        subs[c.order] += c.size
        if c.is_normal:
            normal[c.order] += 1
    return (
        G.order(),
        tuple(sorted(orders.items())),
        center(G).order(),
        G.derived_subgroup().order(),
        tuple(sorted(subs.items())),
        tuple(sorted(normal.items())),
        len(lat.classes),
    )


def minimal_faithful_action(G: PermGroup) -> PermGroup:
    """A faithful action of least degree, from the first faithful spec."""
    from twoclosure.t2c import RepBuilder, iter_rep_specs

    if G.order() == 1:
        return PermGroup.trivial(1)
    lat = SubgroupLattice(G)
    spec = next(iter_rep_specs(G, G.order(), lat))
    return RepBuilder(lat).action(spec)
