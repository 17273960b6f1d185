import csv
import json
import subprocess
import sys

import pytest

from powerweight import engine
from powerweight.catalog import DocStats, parse_scheme
from powerweight.cli import run


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_transform(capsys):
    assert cli(capsys, "transform", "--model", "boxcox", "--p", "-1", "--k", "1", "--y", "2")[:2] == (0, "0.666667\n")
    assert cli(capsys, "transform", "--model", "tukey", "--p", "0.5", "--k", "0", "--y", "4")[1] == "2.000000\n"


def test_transform_domain_error(capsys):
    code, out, err = cli(capsys, "transform", "--model", "tukey", "--p", "1", "--k", "1", "--y", "-2")
    assert code == 1 and out == "" and "lambda2" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["transform", "--model", "tukey", "--p", "1", "--k", "1", "--y", "2", "--bogus"])
    assert exc.value.code == 2
    assert "--bogus" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        run([])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv, scheme, f, stats",
    [
        (["--scheme", "loga", "--f", "4"], "loga", 4, DocStats()),
        (["--scheme", "logln", "--f", "3", "--dl", "8"], "logln", 3, DocStats(8, 8.0)),
        (["--scheme", "bm25:1.2:0.75", "--f", "2", "--dl", "12", "--avedl", "8"], "bm25", 2, DocStats(12, 8.0)),
        (["--scheme", "logn", "--f", "5", "--avef", "2.5"], "logn", 5, DocStats(ave_term_freq=2.5)),
    ],
)
def test_weigh_matches_library(capsys, argv, scheme, f, stats):
    code, out, _ = cli(capsys, "weigh", *argv)
    assert code == 0
    assert out == f"{parse_scheme(scheme).weight(f, stats):.6f}\n"


def test_weigh_scale_flags(capsys):
    assert cli(capsys, "weigh", "--scheme", "bm25ir:1:0.5", "--f", "1")[1] == "0.500000\n"
    assert cli(capsys, "weigh", "--scheme", "bm25ir:1:0.5", "--f", "1", "--scale")[1] == "1.000000\n"
    assert cli(capsys, "weigh", "--scheme", "bm25:1:0.5", "--f", "1", "--no-scale")[1] == "0.500000\n"
    assert cli(capsys, "weigh", "--scheme", "boxcox:-1:0.5", "--f", "0", "--raw")[1] == "-1.000000\n"


def test_critical_k(capsys):
    assert cli(capsys, "critical-k", "--tol", "1e-9")[1] == "0.414214\n"
    out = cli(capsys, "critical-k", "--report")[1].splitlines()
    assert out[1] == "k,delta1,delta2,argmax_n"
    flags = [line.rsplit(",", 1)[1] for line in out[2:]]
    # the middle row sits on the mark itself, within the bisection tolerance
    assert flags[:2] == ["2", "2"] and flags[3:] == ["1", "1"]


def test_profile_bm25ir_to_dir(capsys, tmp_path):
    code, out, _ = cli(
        capsys, "profile", "--model", "bm25ir", "--k1", "1", "--b", "0.8", "--ratio", "0.1", "--fmax", "10",
        "--out", str(tmp_path),
    )
    assert code == 0 and "K=0.28" in out
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    entry = manifest["curves"][0]
    assert entry["parameters"]["K"] == 0.28
    rows = list(csv.reader(open(tmp_path / entry["file"])))
    assert rows[0] == ["f", "L"] and len(rows) == 12
    assert rows[1] == ["0", "0.000000"]


def test_profile_grid_and_stdout(capsys):
    code, out, _ = cli(capsys, "profile", "--model", "poisson2", "--k", "0", "10", "--fmax", "3", "--raw")
    assert code == 0
    blocks = out.split("# ")[1:]
    assert len(blocks) == 2
    assert blocks[0].splitlines()[1:] == ["f,L", "0,0.000000", "1,1.000000", "2,1.000000", "3,1.000000"]


def test_profile_named_and_errors(capsys):
    assert cli(capsys, "profile", "--model", "loga", "--fmax", "2")[0] == 0
    assert cli(capsys, "profile", "--model", "tukey", "--k", "1")[0] == 1
    assert cli(capsys, "profile")[0] == 1
    code, _, err = cli(capsys, "profile", "--model", "boxcox", "--p", "-1", "--k", "0", "--raw")
    assert code == 1 and err


def test_profile_figures(capsys, tmp_path):
    assert cli(capsys, "profile", "--figure", "1", "--out", str(tmp_path / "f1"))[0] == 0
    assert cli(capsys, "profile", "--figure", "2", "--out", str(tmp_path / "f2"))[0] == 0
    assert len(json.loads((tmp_path / "f1" / "manifest.json").read_text())["curves"]) == 12
    assert len(json.loads((tmp_path / "f2" / "manifest.json").read_text())["curves"]) == 18


def test_index_rank_compare(capsys, tmp_path, corpus_file):
    idx_path = tmp_path / "idx.json"
    code, out, _ = cli(capsys, "index", "--corpus", str(corpus_file), "--out", str(idx_path))
    assert code == 0 and out.startswith("3 documents")

    code, out, _ = cli(capsys, "rank", "--index", str(idx_path), "--query", "cat the", "--scheme", "bm25")
    assert code == 0
    expected = engine.rank_query("cat the", engine.load_index(idx_path), parse_scheme("bm25")).to_jsonl()
    assert out == expected
    assert [json.loads(line)["rank"] for line in out.splitlines()] == [1, 2, 3]

    code, out, _ = cli(capsys, "compare", "--index", str(idx_path), "--query", "cat", "--scheme-a", "bm25",
                       "--scheme-b", "freq")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("kendall_tau ")
    assert lines[1] == "rank,doc_a,score_a,doc_b,score_b" and len(lines) == 5


def test_index_errors(capsys, tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": 1}\n')
    code, _, err = cli(capsys, "index", "--corpus", str(bad), "--out", str(tmp_path / "x.json"))
    assert code == 1 and "text" in err
    code, _, err = cli(capsys, "rank", "--index", str(tmp_path / "missing.json"), "--query", "x")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "powerweight", "critical-k", "--tol", "1e-9"],
        capture_output=True, text=True, env={"POWERWEIGHT_LOG": "debug", "PATH": ""},
    )
    assert proc.returncode == 0 and proc.stdout == "0.414214\n"
