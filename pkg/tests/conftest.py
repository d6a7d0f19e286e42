import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from doccluster.preprocess import TokenStream, load_stem_rules, load_stopwords
from doccluster.vectorize import WeightedVector, unit_normalize


@pytest.fixture(scope="session")
def stops():
    return load_stopwords()


@pytest.fixture(scope="session")
def rules():
    return load_stem_rules()


def streams_from(docs):
    return [TokenStream(f"d{i}", tuple(d)) for i, d in enumerate(docs)]


def random_docs(rng: random.Random, max_docs=10, max_terms=50):
    n_terms = rng.randint(2, max_terms)
    terms = [f"w{i}" for i in range(n_terms)]
    n_docs = rng.randint(2, max_docs)
    return [[rng.choice(terms) for _ in range(rng.randint(1, 30))] for _ in range(n_docs)]


def random_vector(rng: random.Random, dim=50, doc_id="v"):
    support = rng.sample(range(dim), rng.randint(1, dim))
    return unit_normalize(WeightedVector.from_mapping(doc_id, {i: rng.uniform(0.01, 5.0) for i in support}))


def write_tree(root: Path, files: dict):
    for rel, content in files.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(content, bytes):
            path.write_bytes(content)
        else:
            path.write_text(content, encoding="utf-8")
    return root


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(criterion: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
