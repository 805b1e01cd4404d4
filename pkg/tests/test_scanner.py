import os

import pytest

from conftest import write_tree
from uvlfix.scanner import discover


def test_empty_directory(tmp_path):
    assert discover(tmp_path) == []


def test_extension_filter_and_order(tmp_path):
    write_tree(tmp_path, {"ds1/sub/b.uvl": "", "ds1/a.uvl": "", "ds2/c.txt": ""})
    records = discover(tmp_path)
    assert [r.relative_path for r in records] == ["ds1/a.uvl", "ds1/sub/b.uvl"]
    assert [r.dataset for r in records] == ["ds1", "ds1"]
    assert records[1].file == "sub/b.uvl"


def test_file_directly_under_root_uses_root_name(tmp_path):
    root = write_tree(tmp_path / "corpus", {"top.UVL": ""})
    [record] = discover(root)
    assert record.dataset == "corpus"
    assert record.file == "top.UVL"


def test_byte_order_sorting(tmp_path):
    write_tree(tmp_path, {"d/b.uvl": "", "d/B.uvl": "", "d/a_.uvl": "", "d/a.uvl": ""})
    assert [r.relative_path for r in discover(tmp_path)] == ["d/B.uvl", "d/a.uvl", "d/a_.uvl", "d/b.uvl"]


def test_twenty_dataset_tree(tmp_path):
    files = {}
    for d in range(20):
        for f in range(d + 3):
            depth = "/".join(["n"] * (f % 3))
            files[f"dataset{d:02d}/{depth}/m{f}.uvl".replace("//", "/")] = ""
        files[f"dataset{d:02d}/README.md"] = ""
    write_tree(tmp_path, files)
    records = discover(tmp_path)
    expected = sum(d + 3 for d in range(20))
    assert len(records) == expected
    assert len({r.dataset for r in records}) == 20
    assert len({r.relative_path for r in records}) == expected
    assert discover(tmp_path) == records


def test_symlinks_are_not_followed(tmp_path):
    write_tree(tmp_path, {"ds/a.uvl": ""})
    os.symlink(tmp_path / "ds", tmp_path / "ds" / "loop")
    os.symlink(tmp_path / "ds" / "a.uvl", tmp_path / "ds" / "alias.uvl")
    assert [r.relative_path for r in discover(tmp_path)] == ["ds/a.uvl"]


def test_missing_root(tmp_path):
    with pytest.raises(FileNotFoundError):
        discover(tmp_path / "nope")


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
def test_unreadable_directory_is_recorded(tmp_path):
    write_tree(tmp_path, {"ok/a.uvl": "", "locked/b.uvl": ""})
    (tmp_path / "locked").chmod(0)
    try:
        errors = []
        records = discover(tmp_path, errors)
    finally:
        (tmp_path / "locked").chmod(0o755)
    assert [r.relative_path for r in records] == ["ok/a.uvl"]
    assert [d.category for d in errors] == ["io"]
