"""Acceptance gate: one test per criterion, each printing a PASS or FAIL line.

Run directly (``python tests/test_acceptance.py``) for the lines alone; under
pytest they are repeated in the terminal summary.
"""

import sys

import pytest

from pilekit import oracles
from pilekit.batteries import Scale, run_suite
from pilekit.catalog import catalog

LINES: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} ({title}): {detail}"
    LINES.append(line)
    print(line)


def summary(rep: dict) -> str:
    s = rep["summary"]
    return f"{s['pass']} pass, {s['fail']} fail, {s['skip']} skip"


def failed(rep: dict) -> list[str]:
    return [r["name"] for r in rep["records"] if r["status"] == "fail"]


def test_criterion_01_stab_sweep():
    rep = run_suite("stab", Scale(max_group=8, max_space=5), timestamp=False)
    n = len(rep["records"])
    ok = rep["summary"]["fail"] == 0 and n > 0
    report(1, "Stab e,f exhaustive", ok, f"{summary(rep)} over {n} actions")
    assert ok, failed(rep)[:5]


def test_criterion_02_g_partition():
    rep = run_suite("g-partition", Scale(max_group=8, max_space=5), timestamp=False)
    seeds = sum(r["data"]["seed_partitions"] for r in rep["records"])
    ok = rep["summary"]["fail"] == 0
    report(2, "aligned G-partition", ok, f"{summary(rep)}, {seeds} seed partitions checked")
    assert ok, failed(rep)[:5]


def test_criterion_03_cartesian_rigid():
    rep = run_suite("cartesian-rigid", Scale(seed=0, count=100), timestamp=False)
    ok = rep["summary"]["pass"] == 100
    report(3, "cartesian rigid", ok, summary(rep))
    assert ok, failed(rep)[:5]


def test_criterion_04_completion():
    rep = run_suite("completion", Scale(seed=0, count=100), timestamp=False)
    recs = rep["records"]
    basic = sum(1 for r in recs if r["data"]["basic"])
    floor = [r for r in recs if r["data"].get("floor_satisfied")]
    refined = sum(1 for r in floor if r["data"].get("refines"))
    impossible = sum(1 for r in floor if r["data"].get("refinement_possible") is False)
    ok = rep["summary"]["fail"] == 0
    report(4, "completion", ok,
           f"{summary(rep)}; basic held on {basic}/100; floor held on {len(floor)}, "
           f"refined on {refined}, no refining completion exists on {impossible} (oracle)")
    assert ok, failed(rep)[:5]


def test_criterion_05_basic_ep():
    rep = run_suite("basic-ep", Scale(seed=0, count=100), timestamp=False)
    ok = rep["summary"]["pass"] == 100
    report(5, "basic-pile projectivity", ok, summary(rep))
    assert ok, failed(rep)[:5]


def test_criterion_06_with_section():
    rep = run_suite("with-section", Scale(seed=0, count=25, catalog="p3"), timestamp=False)
    ok = rep["summary"]["pass"] == len(rep["records"]) >= 25
    report(6, "HNN' vs pHNN on transversals", ok, summary(rep))
    assert ok, failed(rep)[:5]


def test_criterion_07_hnn_kernel():
    rep = run_suite("hnn-kernel", Scale(seed=0, count=25, catalog="p3"), timestamp=False)
    ok = rep["summary"]["fail"] == 0 and len(rep["records"]) >= 25
    report(7, "kernel transfer", ok, summary(rep))
    assert ok, failed(rep)[:5]


def test_criterion_08_mod_l():
    rep = run_suite("mod-l", Scale(seed=0, count=25, catalog="p3"), timestamp=False)
    hand = next(r for r in rep["records"] if r["name"] == "fixed-point")
    orders = [q.order for q in catalog("p3")]
    hand_ok = hand["status"] == "pass" and hand["data"]["profile"] == orders
    ok = rep["summary"]["fail"] == 0 and len(rep["records"]) >= 26 and hand_ok
    report(8, "mod L", ok, f"{summary(rep)}; fixed-point C2 profile {hand['data']['profile']}")
    assert ok, failed(rep)[:5]


def test_criterion_09_phnn_structure():
    rep = run_suite("pile-hnn-structure", Scale(seed=0, count=25, catalog="p3"), timestamp=False)
    worked = next(r for r in rep["records"] if r["name"] == "worked-Cp")
    cp = catalog("p3")[1]
    expect = [len(oracles.homs_by_closure(cp, q)) * q.order for q in catalog("p3")]
    worked_ok = worked["status"] == "pass" and worked["data"]["profile"] == expect
    ok = rep["summary"]["fail"] == 0 and len(rep["records"]) >= 26 and worked_ok
    report(9, "pHNN structure", ok, f"{summary(rep)}; worked C2 profile {worked['data']['profile']}")
    assert ok, failed(rep)[:5]


def test_criterion_10_zeta_injective():
    rep = run_suite("zeta-injective", Scale(seed=0, count=25), timestamp=False)
    misses = [r for r in rep["records"] if r["status"] == "fail"]
    beyond = [f"{r['name']}->{r['data']['beyond_catalog']['group']}"
              for r in misses if r["data"].get("beyond_catalog")]
    ok = not misses
    detail = summary(rep)
    if misses:
        detail += f"; witnesses outside catalog p4: {', '.join(beyond) or 'none found'}"
    report(10, "zeta_G injective witness in p4", ok, detail)
    assert ok, [r["name"] for r in misses]


def test_criterion_11_ep_audit():
    rep = run_suite("ep-audit", Scale(seed=0, count=50), timestamp=False)
    verdicts = [r["data"]["verdict"] for r in rep["records"]]
    ok = rep["summary"]["pass"] == 50
    report(11, "EP solver audit", ok,
           f"{summary(rep)}; {verdicts.count('solved')} solved, {verdicts.count('unsolvable')} unsolvable")
    assert ok, failed(rep)[:5]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
