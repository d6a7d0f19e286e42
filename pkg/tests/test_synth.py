import pytest

from doccluster.corpus_io import load_corpus
from doccluster.errors import ContractViolation, DocClusterError
from doccluster.kmeans import KMeansConfig, run_kmeans
from doccluster.preprocess import preprocess_corpus
from doccluster.similarity import MeasureKind, similarity
from doccluster.synth import SynthSpec, generate, purity, read_labels
from doccluster.vectorize import build_matrix


def small_spec(**kw):
    base = dict(n_topics=3, docs_per_topic=8, vocab_per_topic=30, shared_vocab=10, doc_length=40, seed=1)
    base.update(kw)
    return SynthSpec(**base)


def test_counts_and_labels(tmp_path):
    out = generate(small_spec(), tmp_path)
    files = sorted(p.name for p in out.docs_dir.iterdir())
    assert len(files) == 24
    assert read_labels(out.labels_path) == out.labels
    assert sorted(out.labels) == files
    assert out.labels_path.parent == tmp_path and out.labels_path.parent != out.docs_dir
    assert all(len(p.read_text().split()) == 40 for p in out.docs_dir.iterdir())


def test_thousand_documents(tmp_path):
    out = generate(SynthSpec(n_topics=5, docs_per_topic=200, doc_length=5), tmp_path)
    assert len(list(out.docs_dir.iterdir())) == 1000


def test_same_spec_is_byte_identical(tmp_path):
    a = generate(small_spec(overlap=0.4), tmp_path / "a")
    b = generate(small_spec(overlap=0.4), tmp_path / "b")
    for name in a.labels:
        assert (a.docs_dir / name).read_bytes() == (b.docs_dir / name).read_bytes()
    assert a.labels_path.read_bytes() == b.labels_path.read_bytes()
    c = generate(small_spec(overlap=0.4, seed=2), tmp_path / "c")
    assert any((a.docs_dir / n).read_bytes() != (c.docs_dir / n).read_bytes() for n in a.labels)


@pytest.mark.parametrize("zipf", [True, False])
def test_zero_overlap_gives_disjoint_topics(tmp_path, zipf):
    out = generate(small_spec(overlap=0.0, zipf=zipf), tmp_path)
    matrix = build_matrix(preprocess_corpus(load_corpus(out.docs_dir)), 1)
    topic = {d: out.labels[d] for d in matrix.doc_ids}
    for a in matrix.rows:
        for b in matrix.rows:
            if topic[a.doc_id] != topic[b.doc_id]:
                for kind in MeasureKind:
                    assert similarity(kind, a, b) == 0.0


@pytest.mark.parametrize("kind", list(MeasureKind))
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_zero_overlap_separates_topics(tmp_path, kind, seed):
    out = generate(small_spec(n_topics=4, docs_per_topic=15, overlap=0.0, seed=seed), tmp_path)
    matrix = build_matrix(preprocess_corpus(load_corpus(out.docs_dir)), 2)
    model = run_kmeans(matrix, KMeansConfig(k=4, measure=kind, seed=seed))
    assert model.converged
    assert purity(model, out.labels) == 1.0


def test_spec_validation():
    with pytest.raises(ContractViolation):
        SynthSpec(n_topics=0)
    with pytest.raises(ContractViolation):
        SynthSpec(overlap=1.5)
    with pytest.raises(ContractViolation):
        SynthSpec(shared_vocab=0, overlap=0.2)


def test_purity_definitions():
    labels = {f"d{i}": i % 2 for i in range(6)}
    assert purity({d: t for d, t in labels.items()}, labels) == 1.0
    assert purity({d: 0 for d in labels}, labels) == 0.5
    three = {f"d{i}": i % 3 for i in range(9)}
    assert purity({d: 0 for d in three}, three) == pytest.approx(1 / 3)


def test_purity_one_misassigned():
    # clusters {d0,d1,d2} all topic 0 and {d3,d4,d5} with d5 from topic 0:
    # majorities 3 + 2 -> 5/6
    labels = {"d0": 0, "d1": 0, "d2": 0, "d3": 1, "d4": 1, "d5": 0}
    assignment = {"d0": 0, "d1": 0, "d2": 0, "d3": 1, "d4": 1, "d5": 1}
    assert purity(assignment, labels) == pytest.approx(5 / 6)


def test_purity_permutation_invariant():
    labels = {f"d{i}": i % 3 for i in range(12)}
    assignment = {f"d{i}": (i * 7) % 4 for i in range(12)}
    perm = {0: 2, 1: 3, 2: 0, 3: 1}
    assert purity(assignment, labels) == purity({d: perm[c] for d, c in assignment.items()}, labels)


def test_purity_missing_label():
    with pytest.raises(DocClusterError, match="d9"):
        purity({"d9": 0}, {"d1": 0})


def test_bad_labels_file(tmp_path):
    (tmp_path / "l.tsv").write_text("a.txt 3\n")
    with pytest.raises(DocClusterError):
        read_labels(tmp_path / "l.tsv")
