import json
import os
import subprocess

import pytest

import mcgpres

CLI = os.environ.get("MCGPRES_CLI")


def test_trivial_and_small_groups():
    assert mcgpres.abelianize(1, 1) == ([], 0)
    assert mcgpres.abelianize(2, 1) == ([2], 1)
    assert mcgpres.generator_count(3, 2) == 9


def test_presentation_text():
    text = mcgpres.full_presentation(2, 1, "structured")
    data = json.loads(text)
    assert len(data["relators"]) == 1
    assert mcgpres.full_presentation(2, 1) == mcgpres.full_presentation(2, 1)


def test_word_reduction():
    assert mcgpres.reduce_word("a1*a1^-1*a2") == "a2"


def test_verify_and_basis():
    rep = mcgpres.verify(4, 3, jobs=2)
    assert rep["ok"]
    assert sum(f["failed"] for f in rep["families"]) == 0
    b = mcgpres.subgroup_basis(3, 3)
    assert b["ok"] and b["rank_B"] == 2 * 3 + 2 * 3 - 5


def test_extension_and_derivations():
    assert mcgpres.extend(2, 2)["ok"]
    reps = mcgpres.check_derivations(5, 4, jobs=2)
    assert all(r["ok"] for r in reps)
    eps = {(r["family"], r["branch"]): r["epsilon"] for r in reps}
    assert eps[("D1e'", "m=i")] == -2
    table, warnings = mcgpres.epsilon_table(4, 3)
    assert table[("D1b'", "i=1")] == (-2, "summary")
    assert len(warnings) == 1


def test_invalid_surface():
    with pytest.raises(ValueError):
        mcgpres.full_presentation(0, 1)
    with pytest.raises(mcgpres.InvalidSurface):
        mcgpres.verify(1, -1)


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


@pytest.mark.skipif(not CLI, reason="command-line tool not built")
class TestCli:
    def test_present(self):
        r = run("present", "--g", "3", "--n", "2", "--format", "structured")
        assert r.returncode == 0
        assert len(json.loads(r.stdout)["generators"]) == 9
        r = run("present", "--g", "1", "--n", "1", "--format", "structured")
        data = json.loads(r.stdout)
        assert data["generators"] == [] and data["relators"] == []

    def test_invalid_is_exit_2(self):
        assert run("present", "--g", "0", "--n", "1").returncode == 2
        assert run("extend", "--g", "2", "--n", "1").returncode == 2

    def test_reports(self):
        r = run("verify", "--g", "4", "--n", "3", "--format", "structured", "--jobs", "2")
        assert r.returncode == 0
        fams = json.loads(r.stdout)["families"]
        assert all(set(f) >= {"emitted", "verified", "failed", "first_witness"} for f in fams)
        r = run("abelianize", "--g", "2", "--n", "1", "--tietze", "20", "--seed", "7")
        assert r.returncode == 0 and "free_rank 1" in r.stdout
        assert run("extend", "--g", "2", "--n", "2").returncode == 0
        assert run("subgroup-basis", "--g", "3", "--n", "3").returncode == 0
        assert run("check-derivations", "--g", "4", "--n", "3").returncode == 0

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for p in (a, b):
            r = run("check-derivations", "--g", "5", "--n", "4", "--jobs", "3",
                    "--format", "structured", "--out", str(p))
            assert r.returncode == 0
        assert a.read_bytes() == b.read_bytes()
