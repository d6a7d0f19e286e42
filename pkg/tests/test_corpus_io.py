import os

import pytest

from conftest import write_tree
from doccluster.corpus_io import load_corpus
from doccluster.errors import CorpusError


def test_lexicographic_order(tmp_path):
    write_tree(tmp_path, {"b.txt": "bee", "a.txt": "ay"})
    corpus = load_corpus(tmp_path)
    assert corpus.ids == ["a.txt", "b.txt"]
    assert corpus.documents[0].text == "ay"
    assert corpus.documents[0].byte_len == 2


def test_recursive_walk(tmp_path):
    write_tree(tmp_path, {"sub/c.txt": "sea", "a.txt": "ay", "notes.md": "skip me"})
    assert load_corpus(tmp_path).ids == ["a.txt", "sub/c.txt"]


def test_undecodable_file_is_skipped_with_warning(tmp_path):
    bad = b"\xff\xfe\x80 not utf8"
    with pytest.raises(UnicodeDecodeError):
        bad.decode("utf-8")
    write_tree(tmp_path, {"bad.txt": bad, "good.txt": "fine"})
    corpus = load_corpus(tmp_path)
    assert corpus.ids == ["good.txt"]
    assert len(corpus.load_warnings) == 1
    assert corpus.load_warnings[0][0] == "bad.txt"


def test_lossy_mode_keeps_undecodable_file(tmp_path):
    write_tree(tmp_path, {"bad.txt": b"caf\xe9 menu", "good.txt": "fine"})
    corpus = load_corpus(tmp_path, lossy=True)
    assert corpus.ids == ["bad.txt", "good.txt"]
    assert "�" in corpus.documents[0].text
    assert corpus.load_warnings == []


def test_control_bytes_are_treated_as_binary(tmp_path):
    write_tree(tmp_path, {"bin.txt": b"abc\x00\x01def", "ok.txt": "tab\tand\nnewline"})
    corpus = load_corpus(tmp_path)
    assert corpus.ids == ["ok.txt"]
    assert "control bytes" in corpus.load_warnings[0][1]


def test_size_cap(tmp_path):
    write_tree(tmp_path, {"big.txt": "x" * 100, "small.txt": "y"})
    corpus = load_corpus(tmp_path, max_bytes=50)
    assert corpus.ids == ["small.txt"]
    assert "exceeds" in corpus.load_warnings[0][1]


def test_missing_root(tmp_path):
    with pytest.raises(CorpusError, match="does not exist"):
        load_corpus(tmp_path / "nope")


def test_empty_corpus(tmp_path):
    write_tree(tmp_path, {"readme.md": "no txt here"})
    with pytest.raises(CorpusError, match="empty corpus"):
        load_corpus(tmp_path)


def test_extension_set(tmp_path):
    write_tree(tmp_path, {"a.txt": "a", "b.text": "b", "c.TXT": "c"})
    assert load_corpus(tmp_path, {"text", ".txt"}).ids == ["a.txt", "b.text", "c.TXT"]


def test_deterministic_and_thread_independent(tmp_path):
    files = {f"d{i % 7}/f{(i * 37) % 101:03d}.txt": f"doc {i}" for i in range(60)}
    write_tree(tmp_path, files)
    one = load_corpus(tmp_path)
    assert load_corpus(tmp_path) == one
    assert load_corpus(tmp_path, threads=8) == one
    for doc in one.documents:
        assert os.path.isfile(tmp_path / doc.id)
    assert len(set(one.ids)) == len(one.ids)
