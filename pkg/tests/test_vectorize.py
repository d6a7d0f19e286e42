import io
import math
import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_docs, streams_from
from oracles import dense_tfidf
from doccluster.errors import ContractViolation, VocabularyError, ZeroVectorError
from doccluster.vectorize import (
    PAPER_LITERAL,
    SMOOTH_TF,
    WeightedVector,
    build_matrix,
    build_vocabulary,
    tf_idf_weight,
    unit_normalize,
    vectorize_corpus,
)


def test_vocabulary_prunes_by_document_frequency():
    vocab = build_vocabulary(streams_from([["a", "b"], ["a", "c"]]), min_df=2)
    assert vocab.terms == ("a",)
    assert vocab.doc_freq == (2,)
    assert vocab.n_docs == 2


def test_vocabulary_without_pruning_is_sorted():
    vocab = build_vocabulary(streams_from([["c", "a"], ["b", "a"]]), min_df=1)
    assert vocab.terms == ("a", "b", "c")
    assert [vocab.index_of[t] for t in vocab.terms] == [0, 1, 2]


def test_df_is_not_tf():
    with pytest.raises(VocabularyError, match="lower min_df"):
        build_vocabulary(streams_from([["a", "a", "a"]]), min_df=2)


def test_min_df_must_be_positive():
    with pytest.raises(ContractViolation):
        build_vocabulary(streams_from([["a"]]), min_df=0)


def test_weight_formula():
    assert tf_idf_weight(10, 1000, 10, SMOOTH_TF) == pytest.approx(4.0, abs=1e-12)
    assert tf_idf_weight(10, 1000, 10, PAPER_LITERAL) == pytest.approx(2.0, abs=1e-12)
    for tf in (1, 2, 50):
        assert tf_idf_weight(tf, 7, 7) == 0.0
        assert tf_idf_weight(tf, 7, 7, PAPER_LITERAL) == 0.0
    assert tf_idf_weight(0, 100, 3) == 0.0
    assert tf_idf_weight(1, 100, 3, PAPER_LITERAL) == 0.0


@pytest.mark.parametrize("n, df", [(10, 0), (10, 11), (0, 0)])
def test_weight_contract(n, df):
    with pytest.raises(ContractViolation):
        tf_idf_weight(1, n, df)


def test_unit_normalize():
    v = unit_normalize(WeightedVector("x", (0, 1), (3.0, 4.0)))
    assert v.weights == pytest.approx((0.6, 0.8), abs=1e-12)
    assert v.norm_applied
    again = unit_normalize(v)
    assert again.weights == pytest.approx(v.weights, abs=1e-9)
    third = unit_normalize(WeightedVector("y", (0, 1, 2), (1.0, 1.0, 1.0)))
    assert third.weights == pytest.approx((1 / math.sqrt(3),) * 3, abs=1e-12)
    with pytest.raises(ZeroVectorError):
        unit_normalize(WeightedVector("z", (), ()))


def test_identical_docs_give_identical_rows():
    m = build_matrix(streams_from([["x", "y", "y"], ["x", "y", "y"], ["z", "q"]]), min_df=1)
    assert m.rows[0].weights == m.rows[1].weights
    assert m.rows[0].indices == m.rows[1].indices


def test_pruned_only_doc_is_empty():
    m = build_matrix(streams_from([["a", "b"], ["a", "b", "c"], ["lonely"]]), min_df=2)
    assert m.empty_docs == ["d2"]
    assert m.doc_ids == ["d0", "d1"]
    assert len(m) + len(m.empty_docs) == 3


HAND_DOCS = [
    ["apple", "apple", "banana", "date", "date", "date"],
    ["apple", "cherry", "cherry"],
    ["banana", "cherry", "cherry", "cherry", "elder"],
]


def test_hand_fixture_paper_literal():
    # df: apple 2, banana 2, cherry 2, date 1, elder 1; N = 3
    idf2, idf1 = math.log10(3 / 2), math.log10(3)
    raw = [
        {0: math.log10(2) * idf2, 3: math.log10(3) * idf1},     # banana tf=1 -> 0
        {2: math.log10(2) * idf2},                               # apple tf=1 -> 0
        {2: math.log10(3) * idf2},                               # banana, elder tf=1 -> 0
    ]
    m = vectorize_corpus(streams_from(HAND_DOCS), build_vocabulary(streams_from(HAND_DOCS), 1), PAPER_LITERAL)
    assert m.vocabulary.terms == ("apple", "banana", "cherry", "date", "elder")
    assert m.empty_docs == []
    for row, expect in zip(m.rows, raw):
        norm = math.sqrt(sum(w * w for w in expect.values()))
        assert row.indices == tuple(sorted(expect))
        assert row.weights == pytest.approx([expect[i] / norm for i in sorted(expect)], abs=1e-12)


def test_hand_fixture_matches_dense_oracle_both_modes():
    for mode in (SMOOTH_TF, PAPER_LITERAL):
        terms, dense = dense_tfidf(HAND_DOCS, 1, mode)
        m = build_matrix(streams_from(HAND_DOCS), 1, mode)
        assert list(m.vocabulary.terms) == terms
        rows = iter(m.rows)
        for d in dense:
            if d is None:
                continue
            got = next(rows).to_dense(len(terms))
            assert max(abs(a - b) for a, b in zip(got, d)) < 1e-12


def test_paper_literal_unique_terms_doc_is_empty():
    docs = [["alpha", "beta", "gamma"], ["alpha", "alpha", "zeta"], ["beta", "beta", "zeta", "zeta"]]
    m = build_matrix(streams_from(docs), 1, PAPER_LITERAL)
    assert m.empty_docs == ["d0"]
    smooth = build_matrix(streams_from(docs), 1, SMOOTH_TF)
    assert smooth.empty_docs == []


def test_row_invariants_random():
    rng = random.Random(3)
    for _ in range(50):
        docs = random_docs(rng)
        m = build_matrix(streams_from(docs), 1, SMOOTH_TF)
        for row in m.rows:
            assert all(w > 0 for w in row.weights)
            assert all(0 < w <= 1 for w in row.weights)
            assert list(row.indices) == sorted(set(row.indices))
            assert all(i < len(m.vocabulary) for i in row.indices)
            assert abs(row.l2_norm() - 1) < 1e-9
        ids = [s.doc_id for s in streams_from(docs)]
        assert [i for i in ids if i not in m.empty_docs] == m.doc_ids


def test_thread_count_does_not_change_rows():
    rng = random.Random(11)
    docs = [d for _ in range(20) for d in random_docs(rng)]
    s = streams_from(docs)
    assert build_matrix(s, 2, threads=1).rows == build_matrix(s, 2, threads=4).rows


def test_dump_format():
    m = build_matrix(streams_from([["a", "b", "b"], ["a", "c"]]), 1)
    buf = io.StringIO()
    m.dump(buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 2
    doc_id, entries = lines[0].split("\t")
    assert doc_id == "d0"
    assert entries == "1:1"
    assert lines[1] == "d1\t2:1"


def test_csr_matches_rows():
    m = build_matrix(streams_from(HAND_DOCS), 1)
    X = m.to_csr().toarray()
    for r, row in enumerate(m.rows):
        assert list(X[r]) == list(row.to_dense(len(m.vocabulary)))


@given(st.lists(st.floats(min_value=1e-3, max_value=1e3), min_size=1, max_size=20))
def test_normalize_idempotent(weights):
    v = unit_normalize(WeightedVector("h", tuple(range(len(weights))), tuple(weights)))
    assert abs(v.l2_norm() - 1) < 1e-9
    w = unit_normalize(v)
    assert max(abs(a - b) for a, b in zip(v.weights, w.weights)) < 1e-9
