import json

import pytest

from twoclosure.cache import ResultCache
from twoclosure.catalog import load_catalog
from twoclosure.errors import InputError, VerificationFailure
from twoclosure.suites import SUITES, catalog_actions, run_suite

GROUPS = load_catalog("groups_le24")
FEW = [e for e in GROUPS if e.order <= 8]
TRANS = [e for e in load_catalog("transitive_le6") if e.group.degree <= 4]


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_on_small_catalog(name):
    entries = {"thm-5.1-product": TRANS, "thm-5.1-wreath": TRANS,
               "dissection-6.5": load_catalog("intransitive_le10")[:60]}.get(name, FEW)
    params = {"max_degree": 6} if name in ("oracle-equivalence", "cor-nilpotent") else {}
    if name.startswith("thm-5.1"):
        params = {"max_degree": 12, "exhaustive_degree": 9}
    report = run_suite(name, entries=entries, params=params)
    assert report["passed"], [c for c in report["checks"] if c["status"] == "fail"]
    assert report["counts"]["total"] == len(report["checks"]) > 0


def test_unknown_suite():
    with pytest.raises(InputError):
        run_suite("lemma-9.9")


def test_report_is_reproducible():
    a = run_suite("theorem-A", entries=FEW)
    b = run_suite("theorem-A", entries=FEW, jobs=2)
    assert set(a) == {"suite", "about", "catalog", "params", "passed", "counts", "checks", "timestamp"}
    a.pop("timestamp"), b.pop("timestamp")
    assert json.dumps(a) == json.dumps(b)


def test_cache_recheck_in_suite(tmp_path):
    path = tmp_path / "c.jsonl"
    run_suite("theorem-B", entries=FEW, cache=ResultCache(path))
    # tamper with one stored payload; a full recheck must notice
    lines = path.read_text().splitlines()
    rec = json.loads(lines[3])
    rec["payload"]["status"] = "fail"
    lines[3] = json.dumps(rec)
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(VerificationFailure):
        run_suite("theorem-B", entries=FEW, cache=ResultCache(path, recheck_fraction=1.0))


def test_catalog_actions_are_faithful_and_distinct():
    acts = catalog_actions(FEW, 6)
    keys = {a["spec"] for a in acts}
    assert len(keys) == len(acts)
    from twoclosure.groupspec import materialize

    orders = {e.name: e.order for e in FEW}
    for a in acts:
        base = a["subject"].split(" on ")[0]
        assert materialize(a["spec"]).order() == orders[base]
