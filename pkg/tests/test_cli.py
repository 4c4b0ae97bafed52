import subprocess
import sys

import pytest

from gluegraph import MultiGraph, parse_gfmt, to_gfmt, glue, make_spec
from gluegraph.cli import main, run_command
from gluegraph.graph import named

from oracles import brute_isomorphic


@pytest.fixture
def files(tmp_path):
    for tag in ("K3", "C3", "O1", "O2", "L3", "K2", "C4"):
        (tmp_path / f"{tag}.gfmt").write_text(to_gfmt(named(tag)))
    (tmp_path / "disc.gfmt").write_text("graph 2\n")
    (tmp_path / "bad.gfmt").write_text("graph 2\ne 0 5\n")
    return tmp_path


def run(*argv):
    return run_command([str(a) for a in argv])


def test_check(files):
    out = run("check", "--property", "euler", files / "C3.gfmt")
    assert (out.exit_code, out.stdout) == (0, "true\n")
    out = run("check", "--property", "euler", files / "L3.gfmt")
    assert (out.exit_code, out.stdout) == (1, "false\n")


def test_glue_bowtie(files):
    out = run("glue", files / "K3.gfmt", files / "K3.gfmt", "--pattern", files / "O1.gfmt", "--lmap", "0", "--rmap", "0")
    assert out.exit_code == 0
    g = parse_gfmt(out.stdout)
    bowtie = MultiGraph(5, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)))
    assert brute_isomorphic(g, bowtie)
    # round trip: the printed text is the in-memory result's serialization
    spec = make_spec(named("K3"), named("K3"), named("O1"), (0,), (0,))
    assert out.stdout == to_gfmt(glue(spec)) == to_gfmt(parse_gfmt(out.stdout))


def test_glue_with_edge_maps(files):
    out = run("glue", files / "K3.gfmt", files / "K3.gfmt", "--pattern", files / "K2.gfmt",
              "--lmap", "0,1", "--rmap", "0,1", "--lemap", "0", "--remap", "0")
    assert out.exit_code == 0 and parse_gfmt(out.stdout).m == 5


def test_glue_guard_rejection(files):
    out = run("glue", files / "L3.gfmt", files / "L3.gfmt", "--pattern", files / "O2.gfmt",
              "--lmap", "0,2", "--rmap", "0,1", "--guard", "Hb")
    assert out.exit_code == 2 and "Hb" in out.stderr and out.stdout == ""


def test_verify_class():
    out = run("verify-class", "--class", "13", "--max-n", "5", "--max-m", "4")
    assert (out.exit_code, out.stdout) == (0, "mismatches=0\n")


def test_verify_class_reports_mismatches():
    out = run("verify-class", "--class", "11", "--max-n", "3", "--max-m", "3")
    assert out.exit_code == 1
    assert out.stdout.startswith("mismatches=") and "edges=" in out.stdout


def test_closure_class_and_jobs():
    a = run("closure", "--class", "1", "--max-n", "3", "--max-m", "3")
    b = run("closure", "--class", "1", "--max-n", "3", "--max-m", "3", "--jobs", "2")
    assert a.exit_code == 0 and a.stdout == b.stdout
    assert a.stdout.splitlines()[0] == "closure n<=3 m<=3 count=40"


def test_closure_adhoc(files):
    out = run("closure", "--be", files / "O1.gfmt", "--bo", "O0", "--max-n", "3", "--max-m", "0")
    assert out.exit_code == 0 and "count=3" in out.stdout.splitlines()[0]
    out = run("closure", "--be", files / "K2.gfmt", "--bo", files / "O1.gfmt", "--max-n", "4", "--max-m", "3", "--canonical")
    assert out.exit_code == 0 and "count=4" in out.stdout.splitlines()[0]


def test_find_basis():
    out = run("find-basis", "--class", "13", "--max-n", "5", "--max-m", "4")
    assert out.exit_code == 0
    assert out.stdout.splitlines()[0] == "basis n<=5 m<=4 count=2"


def test_diagram(files):
    out = run("diagram", "--listed")
    assert out.exit_code == 0 and out.stdout.startswith("graph inclusions {")
    out = run("diagram", "--derived")
    assert out.exit_code == 0 and "--" in out.stdout
    out = run("diagram", "--diff")
    assert out.exit_code == 0 and out.stdout.endswith("unannotated=0 stale=0\n")


def test_dbsearch(files):
    out = run("dbsearch", files / "C4.gfmt", "--start", "0")
    assert (out.exit_code, out.stdout) == (0, "0 1 2 3\n")
    assert run("dbsearch", files / "disc.gfmt", "--start", "0").exit_code == 3


def test_catalog():
    out = run("catalog")
    lines = out.stdout.splitlines()
    assert out.exit_code == 0 and lines[0].startswith("class 1 be {O1,C1,K2} bo {O0,O1,O2}")
    assert any(line.startswith("class chordal_Ht") for line in lines)


def test_script_run(files):
    (files / "tri.txt").write_text("load #0\nload #0\nglue $0 $1 pattern O1 lmap 1 rmap 0\nglue $2 #0 pattern O2 lmap 0,2 rmap 0,1\n")
    out = run("script", "run", files / "tri.txt", "--basis", files / "K2.gfmt", "--trace", "--canonical")
    assert out.exit_code == 0
    assert out.stdout.count("# step") == 4
    body = "".join(line + "\n" for line in out.stdout.splitlines() if not line.startswith("#"))
    assert brute_isomorphic(parse_gfmt(body), named("C3"))


def test_script_guard_rejection(files):
    (files / "odd.txt").write_text("load #0\nglue $0 #0 pattern O2 lmap 0,2 rmap 0,1\n")
    out = run("script", "run", files / "odd.txt", "--basis", files / "L3.gfmt", "--guard", "Hb")
    assert out.exit_code == 2 and "step 1" in out.stderr


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["check", "--property", "euler"],
        ["check", "--property", "nonsense", "K3"],
        ["check", "--property", "euler", "{bad}"],
        ["glue", "K3", "K3", "--pattern", "O1", "--lmap", "0"],
        ["glue", "K3", "K3", "--pattern", "O1", "--lmap", "x", "--rmap", "0"],
        ["glue", "K3", "K3", "--pattern", "K2", "--lmap", "0,0", "--rmap", "0,1"],
        ["glue", "K3", "K3", "--pattern", "O1", "--lmap", "0", "--rmap", "0", "--guard", "nope"],
        ["closure", "--max-n", "3", "--max-m", "3"],
        ["closure", "--class", "1", "--be", "K2", "--max-n", "3", "--max-m", "3"],
        ["closure", "--be", "K2", "--max-n", "3", "--max-m", "3"],
        ["closure", "--class", "1", "--max-n", "3", "--max-m", "3", "--jobs", "0"],
        ["closure", "--class", "99", "--max-n", "3", "--max-m", "3"],
        ["closure", "--class", "1", "--max-n", "13", "--max-m", "3"],
        ["verify-class", "--class", "nope", "--max-n", "3", "--max-m", "3"],
        ["find-basis", "--class", "1", "--max-n", "x", "--max-m", "3"],
        ["diagram"],
        ["diagram", "--listed", "--diff"],
        ["dbsearch", "C4", "--start", "9"],
        ["script", "run", "/nonexistent/script.txt"],
    ],
)
def test_usage_errors_exit_3(argv):
    out = run_command(argv)
    assert out.exit_code == 3, (argv, out)
    assert out.stderr.startswith("error:")


def test_bad_gfmt_file(files):
    out = run("check", "--property", "euler", files / "bad.gfmt")
    assert out.exit_code == 3


def test_main_and_console_entry(files, capsys):
    assert main(["check", "--property", "euler", str(files / "C3.gfmt")]) == 0
    assert capsys.readouterr().out == "true\n"
    proc = subprocess.run(
        [sys.executable, "-m", "gluegraph.cli", "check", "--property", "euler", str(files / "L3.gfmt")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1 and proc.stdout == "false\n"


def test_deterministic_output():
    a = run("closure", "--class", "13", "--max-n", "4", "--max-m", "3")
    b = run("closure", "--class", "13", "--max-n", "4", "--max-m", "3")
    assert a == b
