import json
import subprocess
import sys

import pytest

from ramseycert import catalog
from ramseycert.cli import run
from ramseycert.core import LINEAR, DistanceColoring
from ramseycert.verifier import verify


def test_verify_table1():
    out = run(["verify", "t1_33344_173.cert", "--avoid", "3,3,4,4"])
    assert out.code == 0
    assert out.report["clique_numbers"] == [2, 2, 3, 3]
    assert "R(3,3,4,4) >= 174" in out.text


def test_verify_json_and_text_agree():
    a = run(["--json", "verify", "pentagon.cert"])
    b = run(["verify", "pentagon.cert"])
    rep = json.loads(a.text)
    assert rep == {**b.report}
    assert f"clique_numbers: {' '.join(map(str, rep['clique_numbers']))}" in b.text


def test_verify_failure_prints_witness(tmp_path):
    bad = tmp_path / "bad.cert"
    catalog.save(DistanceColoring.from_sets(6, LINEAR, [range(1, 6)]), bad)
    out = run(["verify", str(bad), "--avoid", "3"])
    assert out.code == 1
    assert "witness: colour 1 clique on vertices" in out.text
    w = out.report["witnesses"][0]["vertices"]
    assert len(w) >= 3


def test_cli_matches_library():
    cf = catalog.bundled("paley17.cert")
    out = run(["--json", "clique-number", "paley17.cert"])
    assert json.loads(out.text)["clique_numbers"] == list(verify(cf.coloring).clique_numbers)
    one = run(["clique-number", "paley17.cert", "--color", "2"])
    assert one.report["clique_number"] == 3 and len(one.report["witness"]) == 3


def test_construct_cyclify_k2_gives_pentagon(tmp_path):
    dst = tmp_path / "p.cert"
    out = run(["construct", "cyclify", "--in", "k2.cert", "--out", str(dst)])
    assert out.code == 0 and out.paths == [str(dst)]
    assert catalog.load_cert(dst).coloring == catalog.bundled("pentagon.cert").coloring


def test_construct_paley_and_compound(tmp_path):
    p = tmp_path / "p5.cert"
    assert run(["construct", "paley", "--q", "5", "--avoid", "3,3", "--out", str(p)]).code == 0
    out = run(["construct", "compound", "--in", str(p), "--with", str(p)])
    assert out.code == 0 and out.report["order"] == 41
    assert out.report["avoid"] == [3, 3, 3, 3]


def test_construct_extend():
    out = run(["construct", "extend", "--in", "pentagon.cert"])
    assert out.code == 0 and out.report["order"] == 14 and out.report["clique_numbers"] == [2, 2, 2]


def test_construct_double_and_broken_candidate():
    ok = run(["construct", "double", "--in", "paley101.cert", "--avoid", "7,7"])
    assert ok.code == 0 and ok.report["clique_numbers"] == [6, 6]
    bad = run(["construct", "double", "--in", "paley101.cert", "--avoid", "7,7",
               "--candidate", "crt-same-1"])
    assert bad.code == 1
    assert "certificate" not in bad.report and "witness:" in bad.text


def test_construct_gapped(tmp_path):
    out = run(["construct", "gapped", "--in", "mathon_77_202.cert", "--band", "s5_622.band",
               "--avoid", "7,7,3"])
    assert out.code == 0 and out.report["clique_numbers"] == [6, 6, 2]


def test_construct_neighborhood():
    out = run(["construct", "neighborhood", "--in", "paley17.cert", "--color", "1"])
    assert out.code == 0 and out.report["order"] == 8 and out.report["degree"] == 8


def test_construct_quadruple_refused():
    out = run(["construct", "quadruple", "--in", "pentagon.cert", "--variant", "cor3",
               "--avoid", "3,3"])
    assert out.code == 1


def test_search_and_nonexist(tmp_path):
    out = run(["search", "--order", "5", "--avoid", "3,3", "--out-dir", str(tmp_path)])
    assert out.code == 0 and len(out.report["solutions"]) == 1
    assert (tmp_path / "solution_1.cert").exists()
    assert run(["nonexist", "--order", "6", "--avoid", "3,3"]).code == 0
    found = run(["nonexist", "--order", "5", "--avoid", "3,3"])
    assert found.code == 1 and found.report["result"] == "exists"
    assert run(["nonexist", "--order", "30", "--avoid", "4,5", "--budget", "10"]).code == 2


def test_search_seeded_with_threshold(tmp_path):
    t1 = catalog.bundled("t1_33344_173.cert").coloring
    seed = DistanceColoring.from_sets(173, "cyclic", {s: t1.color_set(s) for s in (1, 2)}, 4)
    path = tmp_path / "seed.cert"
    catalog.save(seed, path)
    out = run(["search", "--order", "173", "--avoid", "3,3,4,4", "--min-dist", "2:48",
               "--seed", str(path), "--max-solutions", "5"])
    assert out.code == 0
    want = {str(s): sorted(t1.color_set(s)) for s in range(1, 5)}
    assert want in [sol["classes"] for sol in out.report["solutions"]]


def test_unsatisfiable_threshold_is_usage_error():
    out = run(["search", "--order", "10", "--avoid", "3,3", "--min-dist", "1:3", "--min-dist", "2:3"])
    assert out.code == 3 and "unsatisfiable" in out.report["error"]


def test_ledger():
    out = run(["ledger"])
    assert out.code == 0
    assert "R_4(7) >= 81206" in out.text and "R_4(9) >= 630566" in out.text
    rep = json.loads(run(["--json", "ledger"]).text)
    assert any(s["order"] == 81205 for s in rep["chain"])


def test_export_edge_list(tmp_path):
    out = run(["export", "pentagon.cert"])
    lines = out.text.splitlines()
    assert len(lines) == 10 and lines[0] == "0 1 1" and "0 2 2" in lines
    dst = tmp_path / "e.txt"
    assert run(["export", "pentagon.cert", "--out", str(dst)]).code == 0
    assert dst.read_text().splitlines() == lines


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["verify"], ["verify", "x", "--avoid", "3,1"],
                                  ["verify", "/nonexistent.cert"], ["--threads", "0", "ledger"]])
def test_usage_errors_exit_3(argv):
    assert run(argv).code == 3


def test_parse_error_exit_3(tmp_path):
    bad = tmp_path / "bad.cert"
    bad.write_text("ramsey-cert v1\norder 5\nmode cyclic\ncolors 2\navoid 3,oops\n")
    out = run(["verify", str(bad)])
    assert out.code == 3 and ":5:" in out.report["error"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ramseycert.cli", "verify", "pentagon.cert",
                           "--avoid", "3,3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "status: satisfied" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "ramseycert.cli", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 3 and "usage:" in proc.stderr
