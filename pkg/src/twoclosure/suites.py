"""Verification suites: each one runs a theorem's checkable content over a catalog.

A suite turns catalog entries into items (plain JSON data: specs and
parameters) and checks each item independently, so items can be cached and
run in worker processes.  Checks return ``(status, detail)`` with status
``pass``, ``fail`` or ``skip``; details hold no timings so reports are
reproducible.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable

from twoclosure.cache import ResultCache, record_key
from twoclosure.catalog import CatalogEntry, load_catalog
from twoclosure.closure import dissection_check, two_closure, two_closure_bruteforce
from twoclosure.config import BRUTE_DEGREE_CAP
from twoclosure.constructions import (
    coset_action,
    imprimitive_wreath,
    product_action_direct_product,
    sylow_tower_of_symmetric,
    universal_embedding_action,
)
from twoclosure.errors import ContradictionWithTheorem, InputError, VerificationFailure
from twoclosure.groups import PermGroup
from twoclosure.groupspec import materialize
from twoclosure.perms import Permutation
from twoclosure.structure import (
    TAG_CYCLIC,
    TAG_ODD_GQ,
    SubgroupLattice,
    core,
    is_nilpotent_by_lcs,
    prime_divisors,
    structure_report,
)
from twoclosure.t2c import (
    NO_FAILURE,
    NOT_T2C,
    T2C,
    RepBuilder,
    fitting_tag,
    iter_rep_specs,
    t2c_search,
    theorem_classifier,
)

PASS, FAIL, SKIP = "pass", "fail", "skip"


def spec_of(G: PermGroup) -> str:
    return f"perm:{G.degree}:[{','.join(str(g) for g in G.generators)}]"


def _group(spec: str) -> PermGroup:
    return materialize(spec)


def catalog_actions(entries: list[CatalogEntry], max_degree: int) -> list[dict]:
    """Every faithful action of degree <= max_degree of every catalog group, deduplicated."""
    out = []
    seen = set()

    def add(subject, G):
        key = (G.degree, tuple(sorted(g.images for g in G.generators)))
        if key not in seen:
            seen.add(key)
            out.append({"subject": subject, "spec": spec_of(G)})

    for e in entries:
        G = e.group
        if G.degree <= max_degree:
            add(e.name, G)
        if G.order() == 1:
            continue
        lat = SubgroupLattice(G)
        builder = RepBuilder(lat)
        for spec in iter_rep_specs(G, max_degree, lat):
            orbits = "+".join(str(G.order() // lat.classes[i].order) for i in spec.blocks())
            add(f"{e.name} on {orbits}", builder.action(spec, check=False))
    return out


def _closure(G: PermGroup, exhaustive_degree: int):
    if G.degree <= exhaustive_degree:
        return two_closure_bruteforce(G, max_degree=exhaustive_degree)
    return two_closure(G, max_degree=max(G.degree, 24))


def _same_group(A: PermGroup, B: PermGroup) -> bool:
    """Order plus containment of generators both ways."""
    return A.order() == B.order() and all(g in A for g in B.generators) and all(g in B for g in A.generators)


def _prime_power(n: int):
    ps = prime_divisors(n)
    return ps[0] if len(ps) == 1 else None


# -- item builders ------------------------------------------------------------------


def _items_actions(max_degree):
    def build(entries, params):
        return catalog_actions(entries, params.get("max_degree", max_degree))

    return build


def _items_sampled_actions(entries, params):
    acts = [a for a in catalog_actions(entries, params.get("max_degree", 8)) if _group(a["spec"]).degree >= 3]
    rng = random.Random(params.get("seed", 0))
    chosen = sorted(rng.sample(range(len(acts)), min(params.get("actions", 50), len(acts))))
    return [dict(acts[i], seed=params.get("seed", 0) * 1000 + i) for i in chosen]


def _items_pairs(entries, params):
    limit = params.get("max_degree", 20)
    items = []
    for a in entries:
        for b in entries:
            d1, d2 = a.group.degree, b.group.degree
            if d1 >= 2 and d2 >= 2 and d1 * d2 <= limit:
                items.append({"subject": f"{a.name} , {b.name}", "left": a.spec, "right": b.spec})
    return items


def _items_two_orbit(entries, params):
    limit = params.get("max_degree", 10)
    items = []
    for e in entries:
        G = e.group
        if G.degree <= limit and len(G.orbits()) == 2:
            items.append({"subject": e.name, "spec": e.spec})
    return items


def _items_p_groups(entries, params):
    items = []
    for a in catalog_actions(entries, 9):
        G = _group(a["spec"])
        p = _prime_power(G.order()) if G.order() > 1 else None
        if p is None:
            continue
        # all p-group actions up to degree 8, and transitive ones of degree 4, 8 or 9
        if G.degree <= 8 or (G.degree in (4, 8, 9) and G.is_transitive()):
            items.append(a)
    for p, k in ((2, 2), (2, 3), (3, 2)):
        items.append({"subject": f"Sylow tower p={p} k={k}", "spec": spec_of(sylow_tower_of_symmetric(p, k))})
    return items


def _items_groups(entries, params):
    limit = params.get("max_order", 24)
    return [{"subject": e.name, "spec": e.spec} for e in entries if e.group.order() <= limit]


def _items_normal_pairs(entries, params):
    limit = params.get("max_order", 24)
    items = []
    for e in entries:
        G = e.group
        if G.order() > limit or G.order() == 1:
            continue
        lat = SubgroupLattice(G)
        for i, c in enumerate(lat.classes):
            if c.is_normal and 1 < c.order < G.order():
                items.append({"subject": f"{e.name} > N{i} (order {c.order})", "spec": e.spec, "normal": spec_of(c.representative)})
    return items


def _items_factorizations(entries, params):
    limit = params.get("max_degree", 24)
    items = []
    for e in entries:
        G = e.group
        n = G.order()
        if n == 1:
            continue
        lat = SubgroupLattice(G)
        trivial = 1 << lat.table.one
        proper = [i for i, c in enumerate(lat.classes) if c.order < n]
        for a in proper:
            for b in proper:
                if b < a:
                    continue
                ca, cb = lat.classes[a], lat.classes[b]
                if ca.core_mask & cb.core_mask != trivial:
                    continue
                meet = bin(ca.masks[0] & cb.masks[0]).count("1")
                if ca.order * cb.order != n * meet:
                    continue
                if n // ca.order + n // cb.order > limit:
                    continue
                items.append(
                    {
                        "subject": f"{e.name} = H{a} K{b} (orders {ca.order}, {cb.order})",
                        "spec": e.spec,
                        "H": spec_of(ca.conjugates[0]),
                        "K": spec_of(cb.conjugates[0]),
                    }
                )
    return items


# -- checks ------------------------------------------------------------------------


def check_oracle(item, params):
    G = _group(item["spec"])
    a = two_closure_bruteforce(G, max_degree=params.get("exhaustive_degree", BRUTE_DEGREE_CAP))
    b = two_closure(G)
    ok = a.closure.equals(b.closure)
    return (PASS if ok else FAIL), {"degree": G.degree, "order": G.order(), "closure_order": a.order, "backtrack_order": b.order}


def check_conjugation(item, params):
    G = _group(item["spec"])
    rng = random.Random(item["seed"])
    C = two_closure(G).closure
    n = G.degree
    bad = 0
    for _ in range(params.get("conjugators", 20)):
        img = list(range(n))
        rng.shuffle(img)
        x = Permutation(tuple(img))
        if not two_closure(G.conjugate(x)).closure.equals(C.conjugate(x)):
            bad += 1
    return (PASS if bad == 0 else FAIL), {"degree": n, "closure_order": C.order(), "mismatches": bad}


def _check_formula(item, params, combine):
    G1, G2 = _group(item["left"]), _group(item["right"])
    exhaustive = params.get("exhaustive_degree", 12)
    lhs = _closure(combine(G1, G2), exhaustive)
    rhs = combine(_closure(G1, exhaustive).closure, _closure(G2, exhaustive).closure)
    ok = _same_group(lhs.closure, rhs)
    return (PASS if ok else FAIL), {
        "degree": G1.degree * G2.degree,
        "engine": lhs.method,
        "closure_order": lhs.order,
        "formula_order": rhs.order(),
    }


def check_product(item, params):
    return _check_formula(item, params, product_action_direct_product)


def check_wreath(item, params):
    return _check_formula(item, params, imprimitive_wreath)


def check_dissection(item, params):
    G = _group(item["spec"])
    gamma = sorted(G.orbit(0))
    r = dissection_check(G, gamma)
    return (PASS if r.agree else FAIL), dict(r.to_dict(), degree=G.degree, gamma=gamma)


def check_p_group(item, params):
    G = _group(item["spec"])
    p = _prime_power(G.order())
    C = two_closure(G).closure
    q = _prime_power(C.order())
    return (PASS if q == p else FAIL), {"degree": G.degree, "p": p, "order": G.order(), "closure_order": C.order()}


def check_nilpotent(item, params):
    G = _group(item["spec"])
    C = two_closure(G).closure
    a, b = is_nilpotent_by_lcs(G), is_nilpotent_by_lcs(C)
    return (PASS if a == b else FAIL), {"degree": G.degree, "nilpotent": a, "closure_nilpotent": b, "closure_order": C.order()}


def check_universal_embedding(item, params):
    G = _group(item["spec"])
    N = _group(item["normal"])
    limit = params.get("delta_degree", 8)
    lat = SubgroupLattice(N)
    spec = next(iter_rep_specs(N, N.order(), lat))
    if spec.degree > limit:
        return SKIP, {"reason": f"smallest faithful action of N has degree {spec.degree}"}
    images = RepBuilder(lat).images(spec)
    ue = universal_embedding_action(G, N, images)
    ok = ue.is_faithful() and ue.check_restriction()
    return (PASS if ok else FAIL), {
        "delta_degree": spec.degree,
        "index": ue.index,
        "degree": ue.group.degree,
        "faithful": ue.is_faithful(),
    }


def check_lemma_sd(item, params):
    G = _group(item["spec"])
    H, K = _group(item["H"]), _group(item["K"])
    a, b = coset_action(G, H), coset_action(G, K)
    # G on the union of the two coset spaces, generators aligned
    gens = []
    for ga, gb in zip(a.images, b.images):
        gens.append(Permutation._trusted(list(ga.images) + [a.degree + x for x in gb.images]))
    A = PermGroup(a.degree + b.degree, gens)
    res = two_closure(A, max_degree=A.degree)
    gamma = set(range(a.degree))
    contained = all(
        Permutation._trusted([g.images[x] if (x in gamma) == side else x for x in range(A.degree)]) in res.closure
        for g in A.generators
        for side in (True, False)
    )
    hg, kg = core(G, H), core(G, K)
    direct = hg.order() * kg.order() == G.order()
    ok = contained and (direct or not res.equals_input)
    return (PASS if ok else FAIL), {
        "degree": A.degree,
        "blocks_in_closure": contained,
        "two_closed": res.equals_input,
        "cores_direct": direct,
    }


def check_theorem_a(item, params):
    G = _group(item["spec"])
    r = structure_report(G)
    if not r.is_soluble:
        return SKIP, {"reason": "insoluble"}
    try:
        v = t2c_search(G, max_degree=params.get("max_degree"), group_id=item["subject"])
    except ContradictionWithTheorem as exc:
        return FAIL, {"order": G.order(), "contradiction": str(exc)}
    detail = {
        "order": G.order(),
        "nilpotent": r.is_nilpotent,
        "outcome": v.outcome,
        "theorem": str(v.prediction),
        "witness_degree": v.witness_degree,
        "closure_order": v.closure_order,
        "max_degree": v.bound,
        "specs_checked": v.specs_checked,
        "specs_inherited": v.specs_inherited,
    }
    if v.prediction.verdict == NOT_T2C and v.outcome == NO_FAILURE:
        detail["unresolved"] = True
        if r.is_nilpotent and G.order() <= 16:
            return FAIL, detail
    return PASS, detail


def check_theorem_b(item, params):
    G = _group(item["spec"])
    pred = theorem_classifier(G)
    if pred.verdict != T2C:
        return SKIP, {"theorem": str(pred)}
    tag = fitting_tag(G)
    return (PASS if tag in (TAG_CYCLIC, TAG_ODD_GQ) else FAIL), {"theorem": str(pred), "fitting_tag": tag}


@dataclass(frozen=True)
class Suite:
    name: str
    catalog: str
    items: Callable
    check: Callable
    about: str


SUITES = {
    s.name: s
    for s in [
        Suite("oracle-equivalence", "groups_le24", _items_actions(8), check_oracle,
              "backtrack and exhaustive closures agree on faithful actions of degree <= 8"),
        Suite("lemma-2.3", "groups_le24", _items_sampled_actions, check_conjugation,
              "closure(G^x) = closure(G)^x for random x"),
        Suite("thm-5.1-product", "transitive_le6", _items_pairs, check_product,
              "closure of a product action is the product action of the closures"),
        Suite("thm-5.1-wreath", "transitive_le6", _items_pairs, check_wreath,
              "closure of an imprimitive wreath product is the wreath product of the closures"),
        Suite("dissection-6.5", "intransitive_le10", _items_two_orbit, check_dissection,
              "the three dissection conditions agree on two-orbit actions"),
        Suite("cor-p-group", "groups_le24", _items_p_groups, check_p_group,
              "the closure of a p-group is a p-group"),
        Suite("cor-nilpotent", "groups_le24", _items_actions(8), check_nilpotent,
              "G is nilpotent iff its closure is"),
        Suite("universal-embedding", "groups_le24", _items_normal_pairs, check_universal_embedding,
              "the Delta x G/N action is faithful and restricts to [G:N] copies of Delta"),
        Suite("lemma-sd", "groups_le24", _items_factorizations, check_lemma_sd,
              "G = HK with core-free intersection: block actions lie in the closure"),
        Suite("theorem-A", "groups_le24", _items_groups, check_theorem_a,
              "t2c search agrees with the soluble classification"),
        Suite("theorem-B", "groups_le24", _items_groups, check_theorem_b,
              "groups predicted totally 2-closed have a Fitting subgroup of the allowed shape"),
    ]
}


def _run_item(suite_name: str, item: dict, params: dict):
    start = time.perf_counter()
    status, detail = SUITES[suite_name].check(item, params)
    return status, detail, time.perf_counter() - start


def _item_spec(item: dict) -> str:
    return json.dumps({k: v for k, v in item.items() if k != "subject"}, sort_keys=True)


def run_suite(
    name: str,
    catalog: str | None = None,
    params: dict | None = None,
    jobs: int = 1,
    cache: ResultCache | None = None,
    entries: list[CatalogEntry] | None = None,
) -> dict:
    """Run a suite and return its report; ordering follows the catalog."""
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    suite = SUITES[name]
    params = dict(params or {})
    catalog = catalog or suite.catalog
    start = time.perf_counter()
    if entries is None:
        entries = load_catalog(catalog)
    items = suite.items(entries, params)
    keyed = [record_key(_item_spec(it), f"verify:{name}", params) for it in items]
    results: list = [None] * len(items)
    stored: dict[int, object] = {}
    todo = []
    for i, key in enumerate(keyed):
        cached = cache.get(key) if cache is not None else None
        if cached is not None:
            stored[i] = cached
            cache.hits += 1
            results[i] = (cached["status"], cached["detail"], 0.0)
            if cache.rng.random() >= cache.recheck_fraction:
                continue
            cache.rechecked += 1
        elif cache is not None:
            cache.misses += 1
        todo.append(i)
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_run_item, [name] * len(todo), [items[i] for i in todo], [params] * len(todo)))
    else:
        fresh = [_run_item(name, items[i], params) for i in todo]
    # single writer: comparisons and appends happen here, in catalog order
    for i, res in zip(todo, fresh):
        payload = {"status": res[0], "detail": res[1]}
        if i in stored:
            if json.dumps(payload, sort_keys=True) != json.dumps(stored[i], sort_keys=True):
                raise VerificationFailure(f"cached result for {items[i]['subject']} differs from a fresh run")
        elif cache is not None:
            cache.put(keyed[i], _item_spec(items[i]), f"verify:{name}", params, payload)
        results[i] = res
    checks = []
    for it, (status, detail, _) in zip(items, results):
        checks.append({"subject": it["subject"], "status": status, "detail": detail})
    counts = {
        "total": len(checks),
        "passed": sum(c["status"] == PASS for c in checks),
        "failed": sum(c["status"] == FAIL for c in checks),
        "skipped": sum(c["status"] == SKIP for c in checks),
    }
    report = {
        "suite": name,
        "about": suite.about,
        "catalog": catalog,
        "params": params,
        "passed": counts["failed"] == 0,
        "counts": counts,
        "checks": checks,
        "timestamp": {
            "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "elapsed_s": round(time.perf_counter() - start, 3),
            "check_s": [round(r[2], 4) for r in results],
        },
    }
    if cache is not None:
        report["timestamp"]["cache"] = cache.stats()
    return report
