import json

import pytest

from pilekit.batteries import SUITES, Scale, UnknownSuite, run_instance, run_suite
from pilekit.catalog import cyclic
from pilekit.groups import GroupHom
from pilekit.gset import GSet
from pilekit.pile import Pile
from pilekit import serialize as sz


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_reports_are_reproducible(name):
    scale = Scale(seed=5, count=4, max_space=4)
    a = json.dumps(run_suite(name, scale, timestamp=False))
    b = json.dumps(run_suite(name, scale, timestamp=False))
    assert a == b
    report = json.loads(a)
    assert report["seed"] == 5 and "wall_time" not in report
    for r in report["records"]:
        assert r["status"] in ("pass", "fail", "skip")


def test_failure_records_rerun():
    # a failing zeta-injective record carries the instance; rerunning it gives the same verdict
    report = run_suite("zeta-injective", Scale(seed=0))
    failed = [r for r in report["records"] if r["status"] == "fail"]
    assert failed, "seed 0 is known to contain catalog-scope misses"
    for rec in failed:
        w = rec["witness"]
        pile = sz.pile_from_json(w["pile"])
        rho = sz.hom_from_json(pile.group, sz.group_from_json(w["L"]), w["rho"])
        again = run_instance("zeta-injective", pile, rho)
        assert again[0].status == "fail"
        assert rec["data"]["beyond_catalog"] is not None


def test_single_instance_mod_l():
    c2 = cyclic(2)
    pile = Pile(c2, GSet.trivial_action(c2, 1))
    recs = run_instance("mod-l", pile, GroupHom.identity(c2))
    assert recs[0].status == "pass"
