"""Command-line verbs: payload shapes, exit codes, determinism."""

import json

import pytest

from srgkit.cli import TABLE1_TARGETS, main
from srgkit.graphcore import build_graph, from_graph6, to_edgelist


def run(capsys, *argv):
    """Invoke the CLI in-process; return (exit code, parsed stdout or None)."""
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_family_pass(capsys):
    code, report = run(capsys, "verify", "nu:n=3,q=3")
    assert code == 0
    assert report["v"] == 63
    assert report["srg"] == {"verdict": "pass", "params": [63, 32, 16, 16]}
    assert report["drg"]["verdict"] == "pass"
    assert report["closed_form"]["verdict"] == "pass"


def test_verify_family_fail_carries_witness(capsys):
    code, report = run(capsys, "verify", "johnson:n=9,i=1")
    assert code == 1
    assert report["srg"]["verdict"] == "fail"
    assert len(report["srg"]["witness"]) == 2
    assert report["drg"]["verdict"] == "fail"


def test_verify_distance_regular_family_passes(capsys):
    code, report = run(capsys, "verify", "sp6:q=2")
    assert code == 0
    assert report["srg"]["verdict"] == "fail"
    assert report["drg"] == {
        "verdict": "pass",
        "b": [14, 12, 8],
        "c": [1, 3, 7],
    }
    assert report["closed_form"]["verdict"] == "skipped"


def test_verify_graph_file(capsys, tmp_path):
    pentagon = build_graph(range(5), lambda a, b: (a - b) % 5 in (1, 4))
    path = tmp_path / "pentagon.el"
    path.write_text(to_edgelist(pentagon))
    code, report = run(capsys, "verify", str(path))
    assert code == 0
    assert report["source"] == "file"
    assert report["srg"]["params"] == [5, 2, 0, 1]


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "nonsense:q=2")[0] == 2
    assert run(capsys, "verify", "grassmann:n=7,q=2")[0] == 3
    # --max-v raises the guard: 540 vertices rejected at 500, allowed at 600
    assert run(capsys, "verify", "nu:n=4,q=3", "--max-v", "500")[0] == 3
    assert run(capsys, "verify", "nu:n=4,q=3", "--max-v", "600")[0] == 0


def test_verify_unreadable_file(capsys, tmp_path):
    path = tmp_path / "junk.g6"
    path.write_text("#\nnot numbers at all\n")
    code, _ = run(capsys, "verify", str(path))
    assert code == 2


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def test_gen_graph6_round_trips(capsys, tmp_path):
    path = tmp_path / "j7.g6"
    code, _ = run(capsys, "gen", "johnson:n=7,i=1", "-o", str(path))
    assert code == 0
    g = from_graph6(path.read_text().strip())
    assert g.n == 35
    assert set(g.degrees()) == {18}


def test_gen_edgelist(capsys, tmp_path):
    path = tmp_path / "flags.el"
    code, _ = run(
        capsys, "gen", "flags:q=4", "-o", str(path), "--format", "edgelist"
    )
    assert code == 0
    assert path.read_text().startswith("# vertices 105\n")


def test_gen_exit_codes(capsys, tmp_path):
    path = tmp_path / "never.g6"
    assert run(capsys, "gen", "bogus", "-o", str(path))[0] == 2
    assert run(capsys, "gen", "grassmann:n=7,q=2", "-o", str(path))[0] == 3
    assert not path.exists()


# ---------------------------------------------------------------------------
# scheme
# ---------------------------------------------------------------------------


def test_scheme_array_reports_union_criterion(capsys):
    code, report = run(capsys, "scheme", "6,4,4;1,1,3")
    assert code == 0
    assert report["relations"] == "pass"
    assert report["tensor"]["rank"] == 4
    third = report["union_criterion"]["3"]
    assert third["constant"] is True
    assert third["values"] == [16, 16, 16]
    assert third["params"] == [63, 32, 16, 16]
    assert report["union_criterion"]["2"]["constant"] is False


def test_scheme_array_constancy_is_not_an_srg_verdict(capsys):
    # The distance-3 graph of this array is strongly regular with
    # lambda != mu, so the lambda = mu certificate must come back False
    # while the off-class values still agree (the mu count).
    code, report = run(capsys, "scheme", "14,12,8;1,3,7")
    assert code == 0
    third = report["union_criterion"]["3"]
    assert third["constant"] is False
    assert third["values"][0] == third["values"][1]
    assert third["values"][2] != third["values"][0]


def test_scheme_small_rank_skips_union_criterion(capsys):
    code, report = run(capsys, "scheme", "3,2;1,1")
    assert code == 0
    assert report["tensor"]["rank"] == 3
    assert report["union_criterion"]["verdict"] == "skipped"


def test_scheme_exit_codes(capsys):
    assert run(capsys, "scheme", "not an array")[0] == 2
    # non-integral second valency: k_2 = 3*1/2
    assert run(capsys, "scheme", "3,1;1,2")[0] == 4
    assert run(capsys, "scheme", "dualpolar:5")[0] == 2
    assert run(capsys, "scheme", "dualpolar:x")[0] == 2


def test_scheme_g2_job(capsys):
    code, report = run(capsys, "scheme", "g2")
    assert code == 0
    assert report["gamma3"]["srg"] is True
    assert report["gamma3"]["params"] == [
        "q^5 + q^4 + q^3 + q^2 + q + 1",
        "q^5",
        "q^5 - q^4",
        "q^5 - q^4",
    ]
    assert report["gamma2"]["srg"] is False
    assert report["p33"] == ["q^5 - q^4"] * 3


def test_scheme_dual_polar_jobs(capsys):
    code, report = run(capsys, "scheme", "dualpolar:1")
    assert code == 0
    assert report["p33_equal"] is True
    assert report["graph_checked_qs"] == [2]
    code, report = run(capsys, "scheme", "dualpolar:1/2")
    assert code == 0
    assert report["p33_equal"] is False


def test_scheme_grassmann_job(capsys):
    code, report = run(capsys, "scheme", "grassmann")
    assert code == 0
    assert report["scan"]["all_nonzero"] is True
    assert report["scan"]["qs"][0] == 2 and report["scan"]["qs"][-1] == 16
    assert report["scan"]["ns"] == [6, 7, 8, 9, 10, 11, 12]
    assert len(report["alphas"]) == len(report["betas"]) == 3


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------


def test_table1_targets_cover_the_required_rows():
    expected = {params for _, params in TABLE1_TARGETS}
    assert len(TABLE1_TARGETS) >= 10
    assert (35, 18, 9, 9) in expected
    assert (120, 63, 30, 36) in expected
    assert (105, 32, 4, 12) in expected


def test_table1_runs_clean(capsys):
    code, report = run(capsys, "table1")
    assert code == 0
    assert report["all_pass"] is True
    assert len(report["targets"]) == len(TABLE1_TARGETS)
    for row in report["targets"]:
        assert row["verdict"] == "pass"
        assert row["srg"]["params"] == row["expected"]


# ---------------------------------------------------------------------------
# orbitals
# ---------------------------------------------------------------------------


def test_orbitals_verb_on_saved_generators(capsys, tmp_path):
    from srgkit.orbitals import PermGroupAction, save_gens

    pentagon = PermGroupAction(5, ((1, 2, 3, 4, 0),))
    path = tmp_path / "z5.gens"
    save_gens(pentagon, path)
    code, report = run(capsys, "orbitals", str(path))
    assert code == 0
    assert report["degree"] == 5
    assert report["rank"] == 5
    # the four non-diagonal classes pair up 1<->4 and 2<->3
    pairings = {entry["class"]: entry["self_paired"] for entry in report["classes"]}
    assert pairings == {1: False, 2: False, 3: False, 4: False}
    assert all(
        entry["srg"]["verdict"] == "skipped" for entry in report["classes"]
    )


def test_orbitals_verb_reports_srg_classes(capsys, tmp_path):
    import itertools

    from srgkit.orbitals import PermGroupAction, save_gens

    pairs = list(itertools.combinations(range(5), 2))
    index = {p: i for i, p in enumerate(pairs)}

    def induced(perm):
        return tuple(
            index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs
        )

    action = PermGroupAction(
        10, (induced((1, 2, 3, 4, 0)), induced((1, 2, 0, 3, 4)))
    )
    path = tmp_path / "pairs.gens"
    save_gens(action, path)
    code, report = run(capsys, "orbitals", str(path))
    assert code == 0
    assert report["rank"] == 3
    verdicts = {
        entry["length"]: entry["srg"]["params"] for entry in report["classes"]
    }
    assert verdicts == {3: [10, 3, 0, 1], 6: [10, 6, 3, 4]}


def test_orbitals_exit_code_on_missing_file(capsys):
    assert run(capsys, "orbitals", "/nonexistent/file.gens")[0] == 2


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------


def strip_timing(payload):
    if isinstance(payload, dict):
        return {
            k: strip_timing(v) for k, v in payload.items() if k != "seconds"
        }
    if isinstance(payload, list):
        return [strip_timing(v) for v in payload]
    return payload


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "nu:n=3,q=3"),
        ("scheme", "6,4,4;1,1,3"),
        ("scheme", "g2"),
    ],
)
def test_outputs_deterministic_up_to_timing(capsys, argv):
    first = strip_timing(run(capsys, *argv)[1])
    second = strip_timing(run(capsys, *argv)[1])
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
