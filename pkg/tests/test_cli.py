import json
import subprocess
import sys

import pytest

from conftest import write_tree
from uvlfix.cli import main


@pytest.fixture
def phone_corpus(tmp_path, phone_model_bytes):
    return write_tree(tmp_path / "corpus", {"phones/phone_model.uvl": phone_model_bytes, "misc/ok.uvl": "features\n\tA\n"})


@pytest.fixture
def clean_corpus(tmp_path):
    return write_tree(tmp_path / "clean", {"d/a.uvl": "features\n\tA\n", "d/b.uvl": "features\n\tB\n"})


def test_scan_clean_corpus(clean_corpus, tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["scan", str(clean_corpus)]) == 0
    out = capsys.readouterr().out
    assert "exceptions: 0 (0.00%)" in out
    assert (tmp_path / "analysis.csv").read_text().count("\n") == 3


def test_scan_phone_corpus_exits_1(phone_corpus, tmp_path):
    code = main(["scan", str(phone_corpus), "--report", str(tmp_path / "r.csv"), "--summary", str(tmp_path / "s.txt")])
    assert code == 1
    assert "exceptions: 1 (50.00%)" in (tmp_path / "s.txt").read_text()


def test_report_defaults_beside_summary(clean_corpus, tmp_path):
    out = tmp_path / "out"
    out.mkdir()
    main(["scan", str(clean_corpus), "--summary", str(out / "summary.txt")])
    assert (out / "analysis.csv").exists()


def test_scan_missing_root(tmp_path):
    assert main(["scan", str(tmp_path / "missing")]) == 2


def test_scan_structured(phone_corpus, tmp_path, capsys):
    main(["scan", str(phone_corpus), "--format", "structured", "--report", str(tmp_path / "r.json")])
    doc = json.loads((tmp_path / "r.json").read_text())
    assert [f["status"] for f in doc["files"]] == ["ok", "exception"]
    assert json.loads(capsys.readouterr().out)["exceptions"] == 1


def test_scan_plot(clean_corpus, tmp_path):
    main(["scan", str(clean_corpus), "--report", str(tmp_path / "r.csv"), "--plot", str(tmp_path / "status.png")])
    assert (tmp_path / "status.png").read_bytes()[:4] == b"\x89PNG"


def test_fix_phone_corpus(phone_corpus, tmp_path, capsys):
    dst = tmp_path / "fixed"
    assert main(["fix", str(phone_corpus), "--out", str(dst)]) == 0
    log = (dst / "changes.log").read_text()
    assert "phones/phone_model.uvl:9:RULE-IDENT: '\\t\\t\\t\\t\\t5 MP' -> '\\t\\t\\t\\t\\t_5_MP'" in log.splitlines()
    capsys.readouterr()
    assert main(["scan", str(dst), "--report", str(tmp_path / "after.csv")]) == 0


def test_fix_with_restricted_rules(phone_corpus, tmp_path):
    dst = tmp_path / "fixed"
    assert main(["fix", str(phone_corpus), "--out", str(dst), "--rules", "RULE-BLANK"]) == 1
    assert "5 MP" in (dst / "phones" / "phone_model.uvl").read_text()


def test_fix_unknown_rule(phone_corpus, tmp_path):
    assert main(["fix", str(phone_corpus), "--out", str(tmp_path / "f"), "--rules", "RULE-X"]) == 2


def test_fix_dry_run_writes_nothing(phone_corpus, tmp_path, capsys):
    dst = tmp_path / "fixed"
    main(["fix", str(phone_corpus), "--out", str(dst), "--dry-run"])
    assert not dst.exists()
    assert "RULE-BLANK" in capsys.readouterr().out


def test_fix_refuses_non_empty_destination(phone_corpus, tmp_path):
    dst = write_tree(tmp_path / "fixed", {"old.txt": "x"})
    assert main(["fix", str(phone_corpus), "--out", str(dst)]) == 2
    assert main(["fix", str(phone_corpus), "--out", str(dst), "--force"]) == 0


def test_fix_structured_log(phone_corpus, tmp_path):
    dst = tmp_path / "fixed"
    main(["fix", str(phone_corpus), "--out", str(dst), "--format", "structured"])
    entries = json.loads((dst / "changes.json").read_text())
    assert {e["rule_id"] for e in entries} == {"RULE-BLANK", "RULE-IDENT"}


def test_compare(phone_corpus, tmp_path, capsys):
    dst = tmp_path / "fixed"
    main(["fix", str(phone_corpus), "--out", str(dst)])
    capsys.readouterr()
    assert main(["compare", str(phone_corpus), str(dst), "--plot", str(tmp_path / "cmp.png")]) == 0
    out = capsys.readouterr().out
    assert out.endswith("fixed: 1\nfix rate: 100.00%\n")
    assert (tmp_path / "cmp.png").exists()


def test_compare_without_exceptions(clean_corpus, capsys):
    assert main(["compare", str(clean_corpus), str(clean_corpus)]) == 0
    out = capsys.readouterr().out
    assert "fixed: 0" in out and "fix rate: n/a" in out


def test_compare_total_mismatch(clean_corpus, phone_corpus):
    write_tree(clean_corpus, {"d/c.uvl": "features\n\tC\n"})
    assert main(["compare", str(clean_corpus), str(phone_corpus)]) == 2


def test_console_entry_point(clean_corpus, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "uvlfix", "scan", str(clean_corpus), "--report", str(tmp_path / "r.csv")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("total files: 2\n")


def test_bad_usage_exits_2(capsys):
    assert main(["frobnicate"]) == 2
