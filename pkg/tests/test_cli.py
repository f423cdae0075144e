import json
import subprocess
import sys

import pytest

from pilekit import serialize as sz
from pilekit.catalog import cyclic
from pilekit.cli import main
from pilekit.embedding import PileEmbeddingProblem
from pilekit.groups import subgroup_generated
from pilekit.gset import GSet
from pilekit.pile import Pile, PileMorphism, quotient_pile

C2_TABLE = {"order": 2, "mul": [[0, 1], [1, 0]]}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c2.json").write_text(json.dumps(C2_TABLE))
    (tmp_path / "p.json").write_text(json.dumps({"factors": [C2_TABLE], "free_letters": 0, "relators": []}))
    (tmp_path / "fixedpoint_c2.json").write_text(
        json.dumps({"group": C2_TABLE, "space": {"size": 1, "action": [[0, 0]]}}))
    return tmp_path


def test_standard_ext(capsys, files):
    code, out, _ = run(capsys, "pile", "standard-ext", "--group", str(files / "c2.json"),
                       "--subgroups", '[["t", [0,1]]]')
    doc = json.loads(out)
    assert code == 0 and doc["space"]["size"] == 1 and doc["space"]["action"] == [[0, 0]]


def test_hom_count(capsys, files):
    code, out, _ = run(capsys, "pres", "hom-count", "--pres", str(files / "p.json"),
                       "--target", str(files / "c2.json"))
    assert code == 0 and json.loads(out) == {"count": 2}


def test_verify_mod_l_single_pile(capsys, files):
    code, out, _ = run(capsys, "verify", "mod-l", "--pile", str(files / "fixedpoint_c2.json"),
                       "--rho", "id", "--catalog", "p3")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    assert doc["records"][0]["data"]["profile"] == [1, 2, 4, 4, 8, 8, 8, 8, 8]


def test_verify_stab_and_cartesian(capsys):
    code, out, _ = run(capsys, "verify", "stab", "--max-group", "8", "--max-space", "6")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run(capsys, "verify", "cartesian-rigid", "--seed", "7", "--count", "100")
    assert code == 0 and json.loads(out)["summary"]["pass"] == 100


def test_verify_unknown(capsys):
    code, out, err = run(capsys, "verify", "unknown")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "UnknownSuite"


def test_failing_suite_exits_5(capsys):
    code, out, _ = run(capsys, "verify", "completion", "--no-timestamp")
    assert code == 5 and json.loads(out)["status"] == "fail"


def test_reports_byte_identical(capsys, tmp_path):
    argv = ["verify", "with-section", "--seed", "3", "--count", "5", "--no-timestamp"]
    _, first, _ = run(capsys, *argv, "--out", str(tmp_path / "r.json"))
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert (tmp_path / "r.json").read_text() == first
    assert "wall_time" not in first


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--seed", "3", "--no-timestamp", "verify", "mod-l", "--count", "2")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 3


def test_invalid_json_exits_2(capsys):
    code, _, err = run(capsys, "pres", "hom-count", "--pres", "{bad", "--target", "C2")
    assert code == 2 and json.loads(err)["error"] == "InvalidInput"
    code, _, err = run(capsys, "pile", "check-morphism", "--morphism", "missing.json")
    assert code == 2


def test_check_commands(capsys, tmp_path):
    c4 = cyclic(4)
    reg = Pile(c4, GSet.regular(c4))
    _, q = quotient_pile(reg, subgroup_generated(c4, {2}))
    (tmp_path / "q.json").write_text(json.dumps(sz.morphism_to_json(q, with_piles=True)))
    for cmd in ("check-morphism", "check-epi", "check-rigid"):
        code, out, _ = run(capsys, "pile", cmd, "--morphism", str(tmp_path / "q.json"))
        assert code == 0
    bad = sz.morphism_to_json(q, with_piles=True)
    bad["space_map"] = [0, 0, 0, 0]
    code, _, err = run(capsys, "pile", "check-morphism", "--morphism", json.dumps(bad))
    assert code == 2 and json.loads(err)["error"] == "NotEquivariant"
    _, fixed = quotient_pile(Pile(c4, GSet.trivial_action(c4, 1)), c4.whole)
    code, _, err = run(capsys, "pile", "check-rigid", "--morphism",
                       json.dumps(sz.morphism_to_json(fixed, with_piles=True)))
    assert code == 2 and json.loads(err)["error"] == "StabilizerNotInjective"


def test_pile_constructions(capsys, tmp_path):
    c4 = cyclic(4)
    reg = Pile(c4, GSet.regular(c4))
    pj = json.dumps(sz.pile_to_json(reg))
    code, out, _ = run(capsys, "pile", "quotient", "--pile", pj, "--normal", "[0, 2]")
    assert code == 0 and json.loads(out)["pile"]["space"]["size"] == 2
    _, q = quotient_pile(reg, subgroup_generated(c4, {2}))
    _, top = quotient_pile(reg, c4.whole)
    qj = json.dumps(sz.morphism_to_json(q, with_piles=True))
    tj = json.dumps(sz.morphism_to_json(top, with_piles=True))
    code, out, _ = run(capsys, "pile", "connect", "--phi", tj, "--psi", qj)
    assert code == 0 and json.loads(out)["alpha"]["space_map"] == [0, 0]
    code, out, _ = run(capsys, "pile", "decompose", "--phi", tj, "--normal", "[0,2]")
    assert code == 0
    code, out, _ = run(capsys, "pile", "fiber-product", "--alpha", qj,
                       "--phi0", json.dumps(sz.morphism_to_json(PileMorphism.identity(q.target), True)))
    assert code == 0 and json.loads(out)["pile"]["space"]["size"] == 4


def test_ep_solve_and_unsolvable(capsys):
    c4 = cyclic(4)
    reg = Pile(c4, GSet.regular(c4))
    a, alpha = quotient_pile(reg, subgroup_generated(c4, {2}))
    unsolvable = PileEmbeddingProblem(PileMorphism.identity(a), alpha)
    code, out, _ = run(capsys, "ep", "solve-pile", "--problem", json.dumps(sz.pile_ep_to_json(unsolvable)))
    assert code == 3 and json.loads(out)["solved"] is False
    solvable = PileEmbeddingProblem(alpha, PileMorphism.identity(a))
    code, out, _ = run(capsys, "ep", "solve-pile", "--problem", json.dumps(sz.pile_ep_to_json(solvable)))
    assert code == 0 and json.loads(out)["gamma"]["group_map"] == [0, 1, 0, 1]
    code, out, _ = run(capsys, "ep", "solve-pair", "--problem",
                       json.dumps(sz.pair_ep_to_json(unsolvable.as_pair_problem())))
    assert code == 3
    code, out, _ = run(capsys, "ep", "transfer-quotient", "--problem",
                       json.dumps(sz.pile_ep_to_json(solvable)), "--normal", "[0, 2]")
    assert code == 0 and json.loads(out)["solved"] is True


def test_ep_solve_basic(capsys):
    problem = {
        "factors": [{"label": "x", "group": "C2"}], "free_rank": 1,
        "target": {"group": "C2", "space": {"action": [[0, 0]]}},
        "cover": {"group": "C2", "space": {"action": [[0, 0]]}},
        "alpha": {"group_map": [0, 1], "space_map": [0]},
        "phi": {"factor_homs": [[0, 1]], "free_images": [1], "label_points": [0]},
    }
    code, out, _ = run(capsys, "ep", "solve-basic", "--problem", json.dumps(problem))
    assert code == 0 and json.loads(out)["gamma"]["free_images"] == [1]


def test_pres_pipeline(capsys, tmp_path):
    pile = json.dumps({"group": "C2", "space": {"action": [[0, 0]]}})
    code, out, _ = run(capsys, "pres", "build-phnn", "--pile", pile, "--rho", "id")
    assert code == 0
    (tmp_path / "ph.json").write_text(out)
    code, out, _ = run(capsys, "pres", "mod-l", "--pres", str(tmp_path / "ph.json"))
    (tmp_path / "ml.json").write_text(out)
    one_letter = json.dumps({"free_letters": 1})
    code, out, _ = run(capsys, "pres", "compare-profiles", "--left", str(tmp_path / "ml.json"),
                       "--right", one_letter)
    assert code == 0 and json.loads(out)["equal"] is True
    code, out, _ = run(capsys, "pres", "compare-profiles", "--left", str(tmp_path / "ph.json"),
                       "--right", one_letter)
    doc = json.loads(out)
    assert code == 4 and doc["first_difference"]["group"] == "C2"
    code, out, _ = run(capsys, "pres", "hom-profile", "--pres", one_letter)
    (tmp_path / "prof.json").write_text(out)
    code, out, _ = run(capsys, "pres", "compare-profiles", "--left", str(tmp_path / "prof.json"),
                       "--right", str(tmp_path / "ml.json"))
    assert code == 0


def test_build_hnn_variants(capsys):
    code, out, _ = run(capsys, "pres", "build-hnn", "--group", "C2", "--stable", '[["t", [0,1], [0,1]]]')
    assert code == 0 and len(json.loads(out)["relators"]) == 1
    code, out, _ = run(capsys, "pres", "build-hnn-prime", "--group", "C2", "--stable", '[["t", [0,1]]]',
                       "--rho", "[0, 2]", "--L", "C4")
    assert code == 0 and json.loads(out)["free_letters"] == 1
    pile = json.dumps({"group": "C2", "space": {"action": [[0, 1], [1, 0]]}})
    code, out, _ = run(capsys, "pres", "build-hnn-prime", "--pile", pile)
    assert code == 0 and json.loads(out)["relators"] == []
    code, _, err = run(capsys, "pres", "build-phnn", "--pile", pile, "--rho", "[0, 1]")
    assert code == 2


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "pilekit.cli", "pres", "hom-count", "--pres",
                          str(files / "p.json"), "--target", "C2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"count": 2}
